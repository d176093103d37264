"""Symmetric functions in several named alphabets.

A value is a sparse map from k-tuples of partitions to coefficients: the key
(nu1, ..., nuk) stands for p_{nu1}[X_1] ... p_{nuk}[X_k] where X_1 < ... <
X_k are the value's alphabet symbols in their natural order (alphabetic
prefix, then numeric suffix, so X < X1 < X2 < X10 < Y).  A value with no
symbols is a plain coefficient in disguise; one with a single symbol is
interchangeable with a SymFunc.

Alphabet symbols also serve as the engine's alphabet expressions: X + 1,
(1/Q) X, X Y and friends are all just MultiSymFunc values, so plethystic
substitution composes with no special cases and products of any number of
alphabets work uniformly.

Truncation orders follow the same contract as SymFunc: the effective degree
of a term is the sum of its partition sizes across slots plus the
small-variable valuation of its coefficient; equality ignores the order.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .coeff import RAT_ONE, RAT_ZERO, RatFunc, format_ratfunc, latex_ratfunc
from .errors import DomainError
from .partition import EMPTY, Partition, concat, sort_key, z_stat
from .symfun import SymFunc, _min_order

_SYMBOL_RE = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")

Key = tuple[Partition, ...]


def _symbol_key(name: str) -> tuple[str, int]:
    m = re.match(r"(.*?)([0-9]+)\Z", name)
    if m:
        return (m.group(1), int(m.group(2)))
    return (name, -1)


def check_symbol(name: str) -> str:
    if not _SYMBOL_RE.match(name):
        raise DomainError(
            f"invalid alphabet symbol {name!r}: expected an uppercase identifier"
        )
    return name


def term_degree_multi(key: Key, c: RatFunc) -> int:
    return sum(lam.size for lam in key) + c.small_min_degree()


class MultiSymFunc:
    __slots__ = ("symbols", "terms", "order")

    def __init__(
        self,
        symbols: tuple[str, ...],
        terms: dict[Key, RatFunc],
        order: int | None = None,
    ):
        self.symbols = symbols
        self.terms = terms
        self.order = order

    @staticmethod
    def make(
        symbols: tuple[str, ...],
        terms: dict[Key, RatFunc],
        order: int | None = None,
    ) -> "MultiSymFunc":
        """Normalize: sort symbols, drop zero terms and out-of-order terms,
        prune slots no term uses."""
        symbols = tuple(symbols)
        perm = sorted(range(len(symbols)), key=lambda i: _symbol_key(symbols[i]))
        sorted_syms = tuple(symbols[i] for i in perm)
        if len(set(sorted_syms)) != len(sorted_syms):
            raise DomainError(f"duplicate alphabet symbols in {symbols}")
        clean: dict[Key, RatFunc] = {}
        for key, c in terms.items():
            if c.is_zero():
                continue
            if order is not None:
                # Polynomial small-variable tails above the order are cut;
                # closed forms with small denominators stay exact.
                if c.uses_smalls() and not c.den_uses_smalls():
                    c = c.truncate_small(order - sum(lam.size for lam in key))
                    if c.is_zero():
                        continue
                if term_degree_multi(key, c) > order:
                    continue
            k2 = tuple(Partition(key[i]) for i in perm)
            v = clean.get(k2)
            v = c if v is None else v + c
            if v.is_zero():
                clean.pop(k2, None)
            else:
                clean[k2] = v
        used = [
            i for i in range(len(sorted_syms)) if any(key[i] for key in clean)
        ]
        if len(used) != len(sorted_syms):
            sorted_syms = tuple(sorted_syms[i] for i in used)
            clean = {tuple(key[i] for i in used): c for key, c in clean.items()}
        return MultiSymFunc(sorted_syms, clean, order)

    @staticmethod
    def from_scalar(c: RatFunc | int | Fraction, order: int | None = None) -> "MultiSymFunc":
        c = RatFunc._coerce(c)
        return MultiSymFunc((), {(): c} if c else {}, order)

    @staticmethod
    def from_symfunc(F: SymFunc, symbol: str) -> "MultiSymFunc":
        check_symbol(symbol)
        terms: dict[Key, RatFunc] = {}
        for lam, c in F.terms.items():
            terms[(lam,)] = c
        return MultiSymFunc.make((symbol,), terms, F.order)

    @staticmethod
    def symbol(name: str) -> "MultiSymFunc":
        """The alphabet symbol itself, i.e. p_1[name]."""
        check_symbol(name)
        return MultiSymFunc((name,), {(Partition((1,)),): RAT_ONE})

    # -- structure

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return not self.symbols

    def as_ratfunc(self) -> RatFunc:
        if self.symbols:
            raise DomainError(
                f"value involves the alphabets {', '.join(self.symbols)}; "
                "expected a scalar"
            )
        return self.terms.get((), RAT_ZERO)

    def as_symfunc(self) -> SymFunc:
        if len(self.symbols) > 1:
            raise DomainError(
                f"value involves several alphabets ({', '.join(self.symbols)}); "
                "expected at most one"
            )
        if not self.symbols:
            return SymFunc.from_scalar(self.terms.get((), RAT_ZERO)).truncate(self.order)
        return SymFunc({key[0]: c for key, c in self.terms.items()}, self.order)

    def scalar_part(self) -> RatFunc:
        """The coefficient of the all-empty key (degree 0 in the alphabets)."""
        return self.terms.get((EMPTY,) * len(self.symbols), RAT_ZERO)

    def max_degree(self) -> int:
        return max((sum(l.size for l in key) for key in self.terms), default=0)

    def items_sorted(self) -> list[tuple[Key, RatFunc]]:
        def key_fn(key: Key):
            return (sum(l.size for l in key), tuple(sort_key(l) for l in key))

        return [(key, self.terms[key]) for key in sorted(self.terms, key=key_fn)]

    def truncate(self, order: int | None) -> "MultiSymFunc":
        if order is None or (self.order is not None and self.order <= order):
            return MultiSymFunc(self.symbols, self.terms, _min_order(self.order, order))
        terms = {
            key: c
            for key, c in self.terms.items()
            if term_degree_multi(key, c) <= order
        }
        pruned = MultiSymFunc.make(self.symbols, terms, order)
        return pruned

    def __eq__(self, other: object) -> bool:
        other = _coerce_multi(other)
        if other is NotImplemented:
            return NotImplemented
        return self.symbols == other.symbols and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.symbols, tuple(sorted(self.terms.items()))))

    # -- alignment

    def aligned_to(self, symbols: tuple[str, ...]) -> dict[Key, RatFunc]:
        """Re-key terms into a superset symbol tuple (already sorted)."""
        if symbols == self.symbols:
            return self.terms
        pos = {s: i for i, s in enumerate(symbols)}
        where = [pos[s] for s in self.symbols]
        k = len(symbols)
        out: dict[Key, RatFunc] = {}
        for key, c in self.terms.items():
            nk = [EMPTY] * k
            for i, lam in zip(where, key):
                nk[i] = lam
            out[tuple(nk)] = c
        return out

    @staticmethod
    def _union_symbols(a: "MultiSymFunc", b: "MultiSymFunc") -> tuple[str, ...]:
        return tuple(sorted(set(a.symbols) | set(b.symbols), key=_symbol_key))

    # -- arithmetic

    def __neg__(self) -> "MultiSymFunc":
        return MultiSymFunc(
            self.symbols, {k: -c for k, c in self.terms.items()}, self.order
        )

    def __add__(self, other) -> "MultiSymFunc":
        other = _coerce_multi(other)
        if other is NotImplemented:
            return NotImplemented
        order = _min_order(self.order, other.order)
        syms = MultiSymFunc._union_symbols(self, other)
        out = dict(self.aligned_to(syms))
        for key, c in other.aligned_to(syms).items():
            v = out.get(key)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(key, None)
            else:
                out[key] = v
        return MultiSymFunc.make(syms, out, order)

    __radd__ = __add__

    def __sub__(self, other) -> "MultiSymFunc":
        other = _coerce_multi(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiSymFunc":
        other = _coerce_multi(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scaled(self, c: RatFunc | int | Fraction) -> "MultiSymFunc":
        c = RatFunc._coerce(c)
        if c.is_zero():
            return MultiSymFunc(self.symbols, {}, self.order)
        out = {k: v * c for k, v in self.terms.items()}
        return MultiSymFunc.make(self.symbols, out, self.order)

    def __mul__(self, other) -> "MultiSymFunc":
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scaled(other)
        other = _coerce_multi(other)
        if other is NotImplemented:
            return NotImplemented
        order = _min_order(self.order, other.order)
        syms = MultiSymFunc._union_symbols(self, other)
        ta = self.aligned_to(syms)
        tb = other.aligned_to(syms)
        if len(ta) > len(tb):
            ta, tb = tb, ta
        out: dict[Key, RatFunc] = {}
        if order is None:
            for ka, a in ta.items():
                for kb, b in tb.items():
                    key = tuple(concat(x, y) for x, y in zip(ka, kb))
                    c = a * b
                    v = out.get(key)
                    v = c if v is None else v + c
                    if v.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = v
            return MultiSymFunc(syms, out, None)
        lhs = [(ka, a, term_degree_multi(ka, a)) for ka, a in ta.items()]
        for kb, b in tb.items():
            db = term_degree_multi(kb, b)
            for ka, a, da in lhs:
                if da + db > order:
                    continue
                key = tuple(concat(x, y) for x, y in zip(ka, kb))
                c = a * b
                v = out.get(key)
                v = c if v is None else v + c
                if v.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = v
        return MultiSymFunc(syms, out, order)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MultiSymFunc":
        if isinstance(other, (int, Fraction)):
            other = RatFunc._coerce(other)
        if isinstance(other, RatFunc):
            return self.scaled(other.reciprocal())
        return NotImplemented

    def __pow__(self, n: int) -> "MultiSymFunc":
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = MultiSymFunc.from_scalar(RAT_ONE, self.order)
        for _ in range(n):
            out = out * self
        return out

    def adams(self, n: int) -> "MultiSymFunc":
        """p_k -> p_{nk} in every slot, Frobenius on coefficients."""
        if n == 1:
            return self
        out = {
            tuple(Partition(tuple(p * n for p in lam)) for lam in key): c.frobenius(n)
            for key, c in self.terms.items()
        }
        order = None if self.order is None else self.order * n
        return MultiSymFunc(self.symbols, out, order)

    # -- contraction

    def pair_slot(self, G: SymFunc, symbol: str) -> "MultiSymFunc":
        """Hall-pair the named slot against G, leaving the other slots."""
        check_symbol(symbol)
        if symbol not in self.symbols:
            # Normalization prunes slots used only with the empty partition,
            # so a missing slot pairs through its constant term.
            return self.scaled(G.coefficient(EMPTY))
        i = self.symbols.index(symbol)
        rest = self.symbols[:i] + self.symbols[i + 1 :]
        out: dict[Key, RatFunc] = {}
        for key, c in self.terms.items():
            g = G.terms.get(key[i])
            if g is None:
                continue
            v = c * g * z_stat(key[i])
            keep = key[:i] + key[i + 1 :]
            w = out.get(keep)
            w = v if w is None else w + v
            if w.is_zero():
                out.pop(keep, None)
            else:
                out[keep] = w
        return MultiSymFunc.make(rest, out, self.order)

    def rename(self, mapping: dict[str, str]) -> "MultiSymFunc":
        syms = tuple(mapping.get(s, s) for s in self.symbols)
        for s in syms:
            check_symbol(s)
        return MultiSymFunc.make(syms, dict(self.terms), self.order)

    def __repr__(self) -> str:
        return f"MultiSymFunc({format_multisym(self)})"


def _coerce_multi(x) -> "MultiSymFunc":
    if isinstance(x, MultiSymFunc):
        return x
    if isinstance(x, SymFunc):
        return MultiSymFunc.from_symfunc(x, "X")
    if isinstance(x, (int, Fraction, RatFunc)):
        return MultiSymFunc.from_scalar(x)
    return NotImplemented


def promote(x, default_symbol: str = "X") -> MultiSymFunc:
    """Lift RatFunc/SymFunc/MultiSymFunc into MultiSymFunc."""
    if isinstance(x, MultiSymFunc):
        return x
    if isinstance(x, SymFunc):
        return MultiSymFunc.from_symfunc(x, default_symbol)
    if isinstance(x, (int, Fraction, RatFunc)):
        return MultiSymFunc.from_scalar(x)
    raise DomainError(f"cannot interpret {type(x).__name__} as an alphabet expression")


def demote(M: "MultiSymFunc"):
    """Shed unused generality: scalars come back as RatFunc, single-alphabet
    values as SymFunc (losing the symbol name), others unchanged."""
    if not isinstance(M, MultiSymFunc):
        return M
    if not M.symbols:
        return M.as_ratfunc()
    if len(M.symbols) == 1:
        return M.as_symfunc()
    return M


# ---------------------------------------------------------------------------
# rendering


def _term_body(key: Key, symbols: tuple[str, ...]) -> str:
    parts = []
    for lam, s in zip(key, symbols):
        if lam:
            idx = ",".join(str(p) for p in lam)
            parts.append(f"p[{idx}][{s}]")
    return "*".join(parts)


def format_multisym(M: MultiSymFunc) -> str:
    items = M.items_sorted()
    if not items:
        return "0"
    chunks = []
    for key, c in items:
        body = _term_body(key, M.symbols)
        if not body:
            s = format_ratfunc(c)
            chunks.append(f"({s})" if " " in s else s)
            continue
        s = format_ratfunc(c)
        if s == "1":
            chunks.append(body)
        elif s == "-1":
            chunks.append(f"-{body}")
        elif len(c.num.terms) > 1 and c.den.is_one():
            chunks.append(f"({s})*{body}")
        else:
            chunks.append(f"{s}*{body}")
    out = chunks[0]
    for body in chunks[1:]:
        if body.startswith("-") and not body.startswith("-("):
            out += " - " + body[1:]
        else:
            out += " + " + body
    return out


def multisym_json(M: MultiSymFunc, symbols: tuple[str, ...] | None = None) -> dict:
    """JSON form; ``symbols`` may name a superset of the value's alphabets to
    pin the slot count (pruned slots come back as empty indices)."""
    if symbols is None:
        symbols = M.symbols
    else:
        symbols = tuple(sorted(symbols, key=_symbol_key))
        if not set(M.symbols) <= set(symbols):
            raise DomainError("presentation symbols must cover the value's symbols")
    view = MultiSymFunc(symbols, M.aligned_to(symbols), M.order)
    payload = {
        "k": len(symbols),
        "N": M.order,
        "symbols": list(symbols),
        "terms": [
            {
                "index": [list(lam) for lam in key],
                "coeff": format_ratfunc(c),
            }
            for key, c in view.items_sorted()
        ],
    }
    return payload


def latex_multisym(M: MultiSymFunc) -> str:
    items = M.items_sorted()
    if not items:
        return "0"
    chunks = []
    for key, c in items:
        parts = []
        for lam, s in zip(key, M.symbols):
            if lam:
                idx = ",".join(str(p) for p in lam)
                m = re.match(r"(.*?)([0-9]+)\Z", s)
                sym = f"{m.group(1)}_{{{m.group(2)}}}" if m else s
                parts.append(f"p_{{{idx}}}[{sym}]")
        body = " ".join(parts)
        cs = latex_ratfunc(c)
        if not body:
            chunks.append(f"\\left({cs}\\right)" if " + " in cs or " - " in cs else cs)
            continue
        if cs == "1":
            chunks.append(body)
        elif cs == "-1":
            chunks.append(f"-{body}")
        elif c.den.is_one() and len(c.num.terms) > 1:
            chunks.append(f"\\left({cs}\\right) {body}")
        else:
            chunks.append(f"{cs} \\, {body}")
    out = chunks[0]
    for body in chunks[1:]:
        if body.startswith("-"):
            out += " - " + body[1:]
        else:
            out += " + " + body
    return out
