"""Single-alphabet symmetric functions over rational-function coefficients.

Everything is stored in the power-sum basis: a value is a sparse map from
partitions to coefficients, read as sum of coeff(lambda) * p_lambda, with
the empty partition indexing the constant term.  The p-basis makes both
plethysm and the Hall pairing term-local; conversions to and from the other
classical bases (m, e, h, s) go through small cached integer tables, and the
Macdonald basis is resolved lazily through the macdonald module.

A value may carry a truncation order: ``order=None`` means exact, an integer
N means terms of effective degree above N have been dropped, where the
effective degree of a term is |lambda| plus the minimum degree of its
coefficient in the declared small variables.  Binary operations propagate
the minimum order of their operands.  Equality compares terms only; the
order is bookkeeping, not part of the value.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .coeff import RAT_ONE, RAT_ZERO, RatFunc, format_ratfunc, latex_ratfunc
from .errors import DomainError
from .partition import EMPTY, Partition, concat, partitions_of, sort_key, z_stat

BASIS_NAMES = ("p", "m", "e", "h", "s", "H")


def _min_order(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def term_degree(lam: Partition, c: RatFunc) -> int:
    """Effective degree: partition size plus small-variable valuation."""
    return lam.size + c.small_min_degree()


class SymFunc:
    __slots__ = ("terms", "order")

    def __init__(self, terms: dict[Partition, RatFunc], order: int | None = None):
        self.terms = terms
        self.order = order

    @staticmethod
    def make(terms: dict[Partition, RatFunc], order: int | None = None) -> "SymFunc":
        clean = {}
        for lam, c in terms.items():
            if c.is_zero():
                continue
            if order is not None:
                # Coefficients that are polynomial in the small variables get
                # their tail above the order cut off; closed forms with small
                # denominators stand for complete series and stay exact.
                if c.uses_smalls() and not c.den_uses_smalls():
                    c = c.truncate_small(order - lam.size)
                    if c.is_zero():
                        continue
                if term_degree(lam, c) > order:
                    continue
            clean[lam] = c
        return SymFunc(clean, order)

    @staticmethod
    def zero(order: int | None = None) -> "SymFunc":
        return SymFunc({}, order)

    @staticmethod
    def one() -> "SymFunc":
        return SymFunc({EMPTY: RAT_ONE})

    @staticmethod
    def from_p(lam: Partition) -> "SymFunc":
        return SymFunc({Partition(lam): RAT_ONE})

    @staticmethod
    def from_scalar(c: RatFunc | int | Fraction) -> "SymFunc":
        c = RatFunc._coerce(c)
        return SymFunc({EMPTY: c} if c else {})

    # -- structure

    def is_zero(self) -> bool:
        return not self.terms

    def max_degree(self) -> int:
        return max((lam.size for lam in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        sizes = {lam.size for lam in self.terms}
        return len(sizes) <= 1

    def homogeneous_component(self, d: int) -> "SymFunc":
        return SymFunc(
            {lam: c for lam, c in self.terms.items() if lam.size == d}, self.order
        )

    def degrees(self) -> list[int]:
        return sorted({lam.size for lam in self.terms})

    def coefficient(self, lam: Partition) -> RatFunc:
        return self.terms.get(Partition(lam), RAT_ZERO)

    def items_sorted(self) -> list[tuple[Partition, RatFunc]]:
        return [(lam, self.terms[lam]) for lam in sorted(self.terms, key=sort_key)]

    def truncate(self, order: int | None) -> "SymFunc":
        if order is None or (self.order is not None and self.order <= order):
            return SymFunc(self.terms, _min_order(self.order, order))
        return SymFunc.make(self.terms, order)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, RatFunc)):
            other = SymFunc.from_scalar(other)
        if not isinstance(other, SymFunc):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted((lam, c) for lam, c in self.terms.items())))

    # -- arithmetic

    def __neg__(self) -> "SymFunc":
        return SymFunc({lam: -c for lam, c in self.terms.items()}, self.order)

    def __add__(self, other) -> "SymFunc":
        other = _coerce_symfunc(other)
        if other is NotImplemented:
            return NotImplemented
        order = _min_order(self.order, other.order)
        out = dict(self.terms)
        for lam, c in other.terms.items():
            v = out.get(lam)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(lam, None)
            else:
                out[lam] = v
        if order is not None and (self.order != order or other.order != order):
            return SymFunc.make(out, order)
        return SymFunc(out, order)

    __radd__ = __add__

    def __sub__(self, other) -> "SymFunc":
        other = _coerce_symfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "SymFunc":
        other = _coerce_symfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scaled(self, c: RatFunc | int | Fraction) -> "SymFunc":
        c = RatFunc._coerce(c)
        if c.is_zero():
            return SymFunc.zero(self.order)
        out = {lam: v * c for lam, v in self.terms.items()}
        if self.order is not None and c.small_min_degree() != 0:
            return SymFunc.make(out, self.order)
        return SymFunc(out, self.order)

    def __mul__(self, other) -> "SymFunc":
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scaled(other)
        if not isinstance(other, SymFunc):
            return NotImplemented
        order = _min_order(self.order, other.order)
        out: dict[Partition, RatFunc] = {}
        if order is None:
            for lam, a in self.terms.items():
                for mu, b in other.terms.items():
                    key = concat(lam, mu)
                    c = a * b
                    v = out.get(key)
                    v = c if v is None else v + c
                    if v.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = v
            return SymFunc(out, None)
        lhs = [(lam, a, term_degree(lam, a)) for lam, a in self.terms.items()]
        for mu, b in other.terms.items():
            db = term_degree(mu, b)
            for lam, a, da in lhs:
                if da + db > order:
                    continue
                key = concat(lam, mu)
                c = a * b
                v = out.get(key)
                v = c if v is None else v + c
                if v.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = v
        return SymFunc(out, order)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SymFunc":
        if isinstance(other, (int, Fraction)):
            other = RatFunc._coerce(other)
        if isinstance(other, RatFunc):
            return self.scaled(other.reciprocal())
        return NotImplemented

    def __pow__(self, n: int) -> "SymFunc":
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = SymFunc.one()
        for _ in range(n):
            out = out * self
        return out

    def adams(self, n: int) -> "SymFunc":
        """The n-th Adams operation: p_k -> p_{nk} and Frobenius on coefficients."""
        if n == 1:
            return self
        out = {
            Partition(tuple(p * n for p in lam)): c.frobenius(n)
            for lam, c in self.terms.items()
        }
        order = None if self.order is None else self.order * n
        return SymFunc(out, order)

    def omega(self) -> "SymFunc":
        """The standard involution: p_n -> (-1)^(n-1) p_n."""
        out = {}
        for lam, c in self.terms.items():
            if (lam.size - len(lam)) % 2:
                c = -c
            out[lam] = c
        return SymFunc(out, self.order)

    def __repr__(self) -> str:
        return f"SymFunc({format_symfunc(self)})"


def _coerce_symfunc(x) -> "SymFunc":
    if isinstance(x, SymFunc):
        return x
    if isinstance(x, (int, Fraction, RatFunc)):
        return SymFunc.from_scalar(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# Hall pairing


def hall_pair(F: SymFunc, G: SymFunc) -> RatFunc:
    """The Hall scalar product, (p_lam, p_mu) = delta * z_lam."""
    if len(F.terms) > len(G.terms):
        F, G = G, F
    total = RAT_ZERO
    for lam, a in F.terms.items():
        b = G.terms.get(lam)
        if b is not None:
            total = total + a * b * z_stat(lam)
    return total


# ---------------------------------------------------------------------------
# integer conversion tables

# (p_nu, h_mu): the number of ways to fill bins of sizes mu exactly with the
# parts of nu, parts distinguishable by position.


@lru_cache(maxsize=None)
def _fillings(parts: tuple[int, ...], caps: tuple[int, ...]) -> int:
    if not parts:
        return 1 if not any(caps) else 0
    v = parts[0]
    rest = parts[1:]
    total = 0
    seen = set()
    for j, c in enumerate(caps):
        if c < v or c in seen:
            continue
        seen.add(c)
        mult = sum(1 for x in caps if x == c)
        reduced = tuple(sorted(caps[:j] + (c - v,) + caps[j + 1 :], reverse=True))
        total += mult * _fillings(rest, reduced)
    return total


def pair_ph(nu: Partition, mu: Partition) -> int:
    """(p_nu, h_mu), equivalently the m_mu-coefficient of p_nu."""
    if nu.size != mu.size:
        return 0
    return _fillings(tuple(nu), tuple(mu))


@lru_cache(maxsize=None)
def _p_to_h_single(n: int) -> dict[Partition, int]:
    """h-expansion of p_n via Newton's identity p_n = n h_n - sum h_i p_{n-i}."""
    if n == 1:
        return {Partition((1,)): 1}
    out = {Partition((n,)): n}
    for i in range(1, n):
        for kap, c in _p_to_h_single(n - i).items():
            key = Partition(sorted(kap + (i,), reverse=True))
            out[key] = out.get(key, 0) - c
    out = {k: v for k, v in out.items() if v}
    return out


@lru_cache(maxsize=None)
def _p_to_h(nu: Partition) -> dict[Partition, int]:
    """h-expansion of p_nu; the coefficient of h_mu equals (p_nu, m_mu)."""
    out = {EMPTY: 1}
    for part in nu:
        nxt: dict[Partition, int] = {}
        single = _p_to_h_single(part)
        for kap, a in out.items():
            for rho, b in single.items():
                key = concat(kap, rho)
                nxt[key] = nxt.get(key, 0) + a * b
        out = {k: v for k, v in nxt.items() if v}
    return out


# ---------------------------------------------------------------------------
# basis conversions


@lru_cache(maxsize=None)
def _h_single(n: int) -> SymFunc:
    """h_n = sum over nu of p_nu / z_nu."""
    return SymFunc(
        {nu: RatFunc.from_fraction(Fraction(1, z_stat(nu))) for nu in partitions_of(n)}
    )


@lru_cache(maxsize=None)
def _e_single(n: int) -> SymFunc:
    """e_n = sum over nu of (-1)^(n - length) p_nu / z_nu."""
    terms = {}
    for nu in partitions_of(n):
        sign = -1 if (n - len(nu)) % 2 else 1
        terms[nu] = RatFunc.from_fraction(Fraction(sign, z_stat(nu)))
    return SymFunc(terms)


@lru_cache(maxsize=None)
def _from_basis_cached(b: str, lam: Partition) -> SymFunc:
    if b == "p":
        return SymFunc.from_p(lam)
    if b == "h":
        out = SymFunc.one()
        for part in lam:
            out = out * _h_single(part)
        return out
    if b == "e":
        out = SymFunc.one()
        for part in lam:
            out = out * _e_single(part)
        return out
    if b == "m":
        n = lam.size
        terms = {}
        for nu in partitions_of(n):
            a = _p_to_h(nu).get(lam, 0)
            if a:
                terms[nu] = RatFunc.from_fraction(Fraction(a, z_stat(nu)))
        return SymFunc(terms)
    if b == "s":
        return _schur(lam)
    raise DomainError(f"unknown basis {b!r}; expected one of {BASIS_NAMES}")


@lru_cache(maxsize=None)
def _schur(lam: Partition) -> SymFunc:
    """Jacobi-Trudi: s_lam = det(h_{lam_i - i + j}) expanded over permutations."""
    ell = len(lam)
    if ell == 0:
        return SymFunc.one()
    h_terms: dict[Partition, int] = {}
    for perm in itertools.permutations(range(ell)):
        inv = sum(
            1 for i in range(ell) for j in range(i + 1, ell) if perm[i] > perm[j]
        )
        idx = []
        ok = True
        for i in range(ell):
            k = lam[i] - (i + 1) + (perm[i] + 1)
            if k < 0:
                ok = False
                break
            if k > 0:
                idx.append(k)
        if not ok:
            continue
        key = Partition(sorted(idx, reverse=True))
        h_terms[key] = h_terms.get(key, 0) + (-1 if inv % 2 else 1)
    out = SymFunc.zero()
    for kap, c in h_terms.items():
        if c:
            out = out + _from_basis_cached("h", kap).scaled(c)
    return SymFunc(out.terms, None)


def from_basis(b: str, lam) -> SymFunc:
    """The basis element b_lambda as an exact p-expansion."""
    lam = Partition(lam)
    if b == "H":
        from . import macdonald

        return macdonald.macdonald_H(lam)
    return _from_basis_cached(b, lam)


def to_basis(b: str, F: SymFunc) -> dict[Partition, RatFunc]:
    """Coefficients of F in the requested basis, degree by degree."""
    if b == "p":
        return dict(F.terms)
    if b == "H":
        from . import macdonald

        return macdonald.to_macdonald(F)
    out: dict[Partition, RatFunc] = {}
    if b in ("m", "h", "e"):
        src = F.omega() if b == "e" else F
        tgt = "h" if b == "m" else "m"
        # coefficient on m_mu is (F, h_mu); coefficient on h_mu is (F, m_mu);
        # for e, twist by omega and read h-coefficients
        for d in src.degrees():
            comp = src.homogeneous_component(d)
            for mu in partitions_of(d):
                total = RAT_ZERO
                for nu, c in comp.terms.items():
                    a = pair_ph(nu, mu) if tgt == "h" else _p_to_h(nu).get(mu, 0)
                    if a:
                        total = total + c * a
                if not total.is_zero():
                    out[mu] = total
        return out
    if b == "s":
        for d in F.degrees():
            comp = F.homogeneous_component(d)
            for mu in partitions_of(d):
                c = hall_pair(comp, _schur(mu))
                if not c.is_zero():
                    out[mu] = c
        return out
    raise DomainError(f"unknown basis {b!r}; expected one of {BASIS_NAMES}")


# ---------------------------------------------------------------------------
# rendering


def _coeff_prefix(c: RatFunc) -> str:
    """Coefficient as a printable prefix: "" for 1, "-" for -1, else "c*"
    with parentheses when the numerator has several terms."""
    s = format_ratfunc(c)
    if s == "1":
        return ""
    if s == "-1":
        return "-"
    if len(c.num.terms) > 1 and c.den.is_one():
        return f"({s})*"
    return f"{s}*"


def format_symfunc(F: SymFunc, basis: str = "p") -> str:
    """Canonical text form, e.g. ``m[2] + (1 + q)*m[1,1]``."""
    if basis == "p":
        items = F.items_sorted()
    else:
        coeffs = to_basis(basis, F)
        items = [(lam, coeffs[lam]) for lam in sorted(coeffs, key=sort_key)]
    if not items:
        return "0"
    chunks = []
    for lam, c in items:
        if not lam:
            s = format_ratfunc(c)
            body = f"({s})" if " " in s else s
        else:
            idx = ",".join(str(p) for p in lam)
            body = f"{_coeff_prefix(c)}{basis}[{idx}]"
        chunks.append(body)
    text = chunks[0]
    for body in chunks[1:]:
        if body.startswith("-") and not body.startswith("-("):
            text += " - " + body[1:]
        else:
            text += " + " + body
    return text


def symfunc_json(F: SymFunc, basis: str = "p") -> dict:
    if basis == "p":
        items = F.items_sorted()
    else:
        coeffs = to_basis(basis, F)
        items = [(lam, coeffs[lam]) for lam in sorted(coeffs, key=sort_key)]
    return {
        "basis": basis,
        "terms": [
            {"index": list(lam), "coeff": format_ratfunc(c)} for lam, c in items
        ],
    }


def latex_symfunc(F: SymFunc, basis: str = "p") -> str:
    if basis == "p":
        items = F.items_sorted()
    else:
        coeffs = to_basis(basis, F)
        items = [(lam, coeffs[lam]) for lam in sorted(coeffs, key=sort_key)]
    if not items:
        return "0"
    name = {"H": "\\tilde H"}.get(basis, basis)
    chunks = []
    for lam, c in items:
        if not lam:
            chunks.append(latex_ratfunc(c))
            continue
        idx = ",".join(str(p) for p in lam)
        cs = latex_ratfunc(c)
        if cs == "1":
            cs = ""
        elif cs == "-1":
            cs = "-"
        elif c.den.is_one() and len(c.num.terms) > 1:
            cs = f"\\left({cs}\\right)"
        chunks.append(f"{cs}{name}_{{{idx}}}")
    out = chunks[0]
    for body in chunks[1:]:
        if body.startswith("-"):
            out += " - " + body[1:]
        else:
            out += " + " + body
    return out
