"""Exact rational-function coefficients over q, t and user variables.

The coefficient field is built in two layers.  ``LaurentPoly`` is a rational
multiple of a primitive integer Laurent polynomial: a ``Fraction`` scale
times a dict of exponent tuples with integer-content one and the first term
in canonical print order positive.  ``RatFunc`` is a reduced quotient of two
of those, normalized so the denominator is a true polynomial (no negative
exponents, each variable's minimum exponent zero) with scale exactly 1.
Every value has a unique representation, so ``==`` is mathematical equality
and the printed form is canonical.

Variables live in a process-wide registry.  Indices into exponent tuples are
assigned in registration order; q and t are always indices 0 and 1.
Variables may be flagged "small", which marks them as formal series
variables for truncation-degree accounting.

The canonical text encoding orders terms by total degree ascending, breaking
ties so that earlier-registered variables print first, and writes a quotient
as ``(num)/(den)`` with both sides parenthesized, e.g. ``(-1 + q)/(1 - t)``.
``parse_ratfunc`` accepts everything ``format_ratfunc`` emits.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as _igcd

from . import _intpoly as ip
from ._intpoly import Exp, Poly
from .errors import DomainError, ParseError

# ---------------------------------------------------------------------------
# variable registry

_NAMES: list[str] = []
_IDX: dict[str, int] = {}
_SMALL: list[bool] = []

_NAME_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


def register_variable(name: str, *, small: bool = False) -> "RatFunc":
    """Register a coefficient variable and return it as a RatFunc.

    Registration is idempotent, but re-registering with a different
    smallness flag is an error: a variable's series role is global.
    """
    if not _NAME_RE.match(name):
        raise DomainError(
            f"invalid variable name {name!r}: expected a lowercase identifier"
        )
    i = _IDX.get(name)
    if i is not None:
        if _SMALL[i] != small:
            kind = "small" if _SMALL[i] else "ordinary"
            raise DomainError(f"variable {name!r} is already registered as {kind}")
        return rf_var(name)
    _IDX[name] = len(_NAMES)
    _NAMES.append(name)
    _SMALL.append(small)
    return rf_var(name)


def variable_names() -> tuple[str, ...]:
    return tuple(_NAMES)


def var_index(name: str) -> int:
    i = _IDX.get(name)
    if i is None:
        raise DomainError(f"unknown variable {name!r}; register it first")
    return i


def is_registered(name: str) -> bool:
    return name in _IDX


def small_indices() -> tuple[int, ...]:
    return tuple(i for i, s in enumerate(_SMALL) if s)


def is_small(name: str) -> bool:
    return _SMALL[var_index(name)]


def reset_variables() -> None:
    """Restore the registry to just q and t.  Intended for tests."""
    _NAMES.clear()
    _IDX.clear()
    _SMALL.clear()
    ip.gcd_cache_clear()
    register_variable("q")
    register_variable("t")


# ---------------------------------------------------------------------------
# LaurentPoly: Fraction scale times primitive integer Laurent polynomial


class LaurentPoly:
    __slots__ = ("scale", "terms")

    def __init__(self, scale: Fraction, terms: Poly):
        self.scale = scale
        self.terms = terms

    # -- constructors

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly(Fraction(0), {})

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly(Fraction(1), {(): 1})

    @staticmethod
    def const(c: Fraction | int) -> "LaurentPoly":
        c = Fraction(c)
        return LaurentPoly(c, {(): 1}) if c else LaurentPoly.zero()

    @staticmethod
    def var(i: int) -> "LaurentPoly":
        return LaurentPoly(Fraction(1), {(0,) * i + (1,): 1})

    @staticmethod
    def from_int_terms(terms: Poly) -> "LaurentPoly":
        """Normalize a raw int dict (content and sign move into the scale)."""
        if any(e and not e[-1] for e in terms):
            merged: Poly = {}
            for e, c in terms.items():
                e = ip.trim(e)
                merged[e] = merged.get(e, 0) + c
            terms = merged
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return LaurentPoly.zero()
        g = ip.pcontent(terms)
        _, lead = ip.print_min_term(terms)
        if lead < 0:
            g = -g
        if g != 1:
            terms = {e: c // g for e, c in terms.items()}
        return LaurentPoly(Fraction(g), terms)

    @staticmethod
    def from_terms(d: dict[Exp, Fraction | int]) -> "LaurentPoly":
        """Normalize a dict of Fraction coefficients keyed by exponent tuples."""
        ints: Poly = {}
        lcm = 1
        items = []
        for e, c in d.items():
            c = Fraction(c)
            if not c:
                continue
            items.append((ip.trim(e), c))
            lcm = lcm * c.denominator // _igcd(lcm, c.denominator)
        for e, c in items:
            v = ints.get(e, 0) + int(c * lcm)
            if v:
                ints[e] = v
            else:
                ints.pop(e, None)
        lp = LaurentPoly.from_int_terms(ints)
        return LaurentPoly(lp.scale / lcm, lp.terms) if lp.terms else lp

    # -- predicates

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.scale == 1 and self.terms == {(): 1}

    def is_const(self) -> bool:
        return not self.terms or self.terms == {(): 1}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.scale == other.scale and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.scale, tuple(sorted(self.terms.items()))))

    # -- arithmetic

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(-self.scale, self.terms)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.terms:
            return other
        if not other.terms:
            return self
        sa, sb = self.scale, other.scale
        g = Fraction(
            _igcd(sa.numerator, sb.numerator),
            sa.denominator * sb.denominator // _igcd(sa.denominator, sb.denominator),
        )
        merged = ip.padd(
            ip.pscale(self.terms, int(sa / g)), ip.pscale(other.terms, int(sb / g))
        )
        lp = LaurentPoly.from_int_terms(merged)
        return LaurentPoly(lp.scale * g, lp.terms) if lp.terms else lp

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.terms or not other.terms:
            return LaurentPoly.zero()
        # primitive times primitive is primitive, and the first print term of
        # the product is the product of the first print terms, so no
        # renormalization is needed here
        return LaurentPoly(self.scale * other.scale, ip.pmul(self.terms, other.terms))

    def scaled(self, c: Fraction | int) -> "LaurentPoly":
        c = Fraction(c)
        if not c:
            return LaurentPoly.zero()
        return LaurentPoly(self.scale * c, self.terms)

    def shifted(self, s: Exp) -> "LaurentPoly":
        if not self.terms or not s:
            return self
        return LaurentPoly(self.scale, ip.pshift(self.terms, s))

    def frobenius(self, n: int) -> "LaurentPoly":
        """Raise every variable to the n-th power."""
        if n == 1 or not self.terms:
            return self
        return LaurentPoly(
            self.scale, {tuple(x * n for x in e): c for e, c in self.terms.items()}
        )

    # -- structure

    def mins(self) -> Exp:
        return ip.pmins(self.terms) if self.terms else ()

    def has_negative_exponent(self) -> bool:
        return any(x < 0 for x in self.mins())

    def small_min_degree(self) -> int:
        """Minimum total degree in the small variables across terms."""
        if not self.terms:
            return 0
        sm = small_indices()
        if not sm:
            return 0
        return min(sum(e[i] for i in sm if i < len(e)) for e in self.terms)

    def small_max_degree(self) -> int:
        if not self.terms:
            return 0
        sm = small_indices()
        if not sm:
            return 0
        return max(sum(e[i] for i in sm if i < len(e)) for e in self.terms)

    def uses_smalls(self) -> bool:
        sm = small_indices()
        return any(any(i < len(e) and e[i] for i in sm) for e in self.terms)

    def coeff_items(self) -> list[tuple[Exp, Fraction]]:
        """Terms with rational coefficients, in canonical print order."""
        if not self.terms:
            return []
        width = max(len(e) for e in self.terms)
        keys = sorted(self.terms, key=lambda e: ip.print_key(e, width))
        return [(e, self.scale * self.terms[e]) for e in keys]

    def __repr__(self) -> str:
        return f"LaurentPoly({_format_poly_side(self)})"


LP_ZERO = LaurentPoly.zero()
LP_ONE = LaurentPoly.one()


def _laurent_decompose(lp: LaurentPoly) -> tuple[Exp, Poly]:
    """Split off the exact monomial content, leaving a true polynomial with
    every variable's minimum exponent zero."""
    m = lp.mins()
    if not m:
        return (), lp.terms
    return m, ip.pshift(lp.terms, tuple(-x for x in m))


# ---------------------------------------------------------------------------
# RatFunc: reduced quotient of LaurentPolys


class RatFunc:
    """An element of the field of rational functions in the registered
    variables, held in fully reduced canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly):
        self.num = num
        self.den = den

    # -- construction and normalization

    @staticmethod
    def _raw(num: LaurentPoly, den: LaurentPoly) -> "RatFunc":
        """Wrap parts already known to be reduced and normalized."""
        if num.is_zero():
            return RAT_ZERO
        return RatFunc(num, den)

    @staticmethod
    def make(num: LaurentPoly, den: LaurentPoly, *, reduce: bool = True) -> "RatFunc":
        if den.is_zero():
            raise DomainError("division by zero in coefficient arithmetic")
        if num.is_zero():
            return RAT_ZERO
        if den.is_one():
            return RatFunc(num, LP_ONE)
        mn, tn = _laurent_decompose(num)
        md, td = _laurent_decompose(den)
        scale = num.scale / den.scale
        if reduce and td != {(): 1}:
            g = ip.pgcd(tn, td)
            if g != {(): 1}:
                qn = ip.pdivexact(tn, g)
                qd = ip.pdivexact(td, g)
                if qn is None or qd is None:
                    raise ArithmeticError("gcd failed to divide its inputs")
                tn, td = qn, qd
        # the quotients are primitive by the Gauss lemma but may have picked
        # up a sign; push signs into the scale
        _, cn = ip.print_min_term(tn)
        if cn < 0:
            tn, scale = ip.pneg(tn), -scale
        _, cd = ip.print_min_term(td)
        if cd < 0:
            td, scale = ip.pneg(td), -scale
        shift = ip.esub(mn, md)
        return RatFunc(
            LaurentPoly(scale, ip.pshift(tn, shift) if shift else tn),
            LaurentPoly(Fraction(1), td),
        )

    @staticmethod
    def from_int(c: int) -> "RatFunc":
        return RatFunc._raw(LaurentPoly.const(c), LP_ONE)

    @staticmethod
    def from_fraction(c: Fraction | int) -> "RatFunc":
        return RatFunc._raw(LaurentPoly.const(c), LP_ONE)

    # -- predicates and views

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_rational(self) -> bool:
        return self.num.is_const() and self.den.is_one()

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"not a rational constant: {format_ratfunc(self)}")
        return self.num.scale if self.num.terms else Fraction(0)

    def is_polynomial(self) -> bool:
        """True polynomial coefficients: denominator 1, no negative powers."""
        return self.den.is_one() and not self.num.has_negative_exponent()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def as_monomial(self) -> tuple[Fraction, Exp] | None:
        """(coefficient, exponents) when the value is c times one monomial."""
        if self.den.is_one() and len(self.num.terms) == 1:
            (e, c), = self.num.terms.items()
            return self.num.scale * c, e
        return None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatFunc.from_fraction(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- arithmetic

    @staticmethod
    def _coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc.from_fraction(x)
        return NotImplemented

    def __neg__(self) -> "RatFunc":
        if self.is_zero():
            return self
        return RatFunc(-self.num, self.den)

    def __add__(self, other) -> "RatFunc":
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        d1, d2 = self.den, other.den
        if d1.terms == d2.terms:
            if d1.is_one():
                return RatFunc._raw(self.num + other.num, LP_ONE)
            return RatFunc.make(self.num + other.num, d1)
        g = ip.pgcd(d1.terms, d2.terms)
        if g == {(): 1}:
            num = self.num * d2 + other.num * d1
            # reduced fractions with coprime denominators sum to a reduced
            # fraction over the product denominator
            return RatFunc._raw(num, d1 * d2)
        e1 = ip.pdivexact(d1.terms, g)
        e2 = ip.pdivexact(d2.terms, g)
        if e1 is None or e2 is None:
            raise ArithmeticError("gcd failed to divide a denominator")
        lp_e1 = LaurentPoly(Fraction(1), e1)
        lp_e2 = LaurentPoly(Fraction(1), e2)
        t = self.num * lp_e2 + other.num * lp_e1
        if t.is_zero():
            return RAT_ZERO
        # only the common factor g can still cancel against the numerator
        mt, tt = _laurent_decompose(t)
        h = ip.pgcd(tt, g)
        if h == {(): 1}:
            return RatFunc._raw(t, LaurentPoly(Fraction(1), ip.pmul(g, ip.pmul(e1, e2))))
        qn = ip.pdivexact(tt, h)
        qg = ip.pdivexact(g, h)
        if qn is None or qg is None:
            raise ArithmeticError("gcd failed to divide in fraction addition")
        num_lp = LaurentPoly(t.scale, ip.pshift(qn, mt) if mt else qn)
        den_lp = LaurentPoly(Fraction(1), ip.pmul(qg, ip.pmul(e1, e2)))
        _, cn = ip.print_min_term(num_lp.terms)
        if cn < 0:
            num_lp = LaurentPoly(-num_lp.scale, ip.pneg(num_lp.terms))
        _, cd = ip.print_min_term(den_lp.terms)
        if cd < 0:
            den_lp = LaurentPoly(Fraction(1), ip.pneg(den_lp.terms))
            num_lp = -num_lp
        return RatFunc._raw(num_lp, den_lp)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "RatFunc":
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RAT_ZERO
        if other.is_rational():
            return RatFunc._raw(self.num.scaled(other.num.scale), self.den)
        if self.is_rational():
            return RatFunc._raw(other.num.scaled(self.num.scale), other.den)
        if self.den.is_one() and other.den.is_one():
            return RatFunc._raw(self.num * other.num, LP_ONE)
        # cross-cancellation keeps the product reduced without a final gcd
        n1, d2 = _cross_cancel(self.num, other.den)
        n2, d1 = _cross_cancel(other.num, self.den)
        return RatFunc._raw(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def reciprocal(self) -> "RatFunc":
        if self.is_zero():
            raise DomainError("division by zero in coefficient arithmetic")
        return RatFunc.make(self.den, self.num, reduce=False)

    def __truediv__(self, other) -> "RatFunc":
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> "RatFunc":
        other = RatFunc._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.reciprocal()

    def __pow__(self, n: int) -> "RatFunc":
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            if self.is_zero():
                raise DomainError("0^0 in coefficient arithmetic")
            return RAT_ONE
        base = self if n > 0 else self.reciprocal()
        n = abs(n)
        out = base
        for bit in bin(n)[3:]:
            out = out * out
            if bit == "1":
                out = out * base
        return out

    def frobenius(self, n: int) -> "RatFunc":
        """Raise every variable to the n-th power.  Substituting powers for
        the variables preserves coprimality of numerator and denominator,
        so no re-reduction is needed; the denominator normalization (scale 1,
        zero minimum exponents, positive first term) is preserved as well."""
        if n == 1 or self.is_zero():
            return self
        return RatFunc(self.num.frobenius(n), self.den.frobenius(n))

    # -- series/small-variable structure

    def den_uses_smalls(self) -> bool:
        return self.den.uses_smalls()

    def uses_smalls(self) -> bool:
        return self.num.uses_smalls() or self.den.uses_smalls()

    def small_min_degree(self) -> int:
        return self.num.small_min_degree() - self.den.small_min_degree()

    def truncate_small(self, order: int) -> "RatFunc":
        """Drop numerator terms of small-variable degree above ``order``.
        Only valid when the denominator is free of small variables."""
        if self.den.uses_smalls():
            raise DomainError("cannot truncate a value with small variables in its denominator")
        if self.num.small_max_degree() <= order:
            return self
        kept = {e: c for e, c in self.num.terms.items()
                if sum(e[i] for i in small_indices() if i < len(e)) <= order}
        lp = LaurentPoly.from_int_terms(kept)
        return RatFunc.make(lp.scaled(self.num.scale) if lp.terms else LP_ZERO, self.den)

    def drop_smalls(self) -> "RatFunc":
        """Set every small variable to zero (constant term of the series)."""
        if not self.uses_smalls():
            return self
        return substitute(self, {n: RAT_ZERO for n in variable_names() if is_small(n)})

    def __repr__(self) -> str:
        return f"RatFunc({format_ratfunc(self)})"


def _cross_cancel(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Divide out gcd(num, den); den stays normalized (scale 1, positive
    first term, zero mins)."""
    if den.is_one() or num.is_zero():
        return num, den
    mn, tn = _laurent_decompose(num)
    g = ip.pgcd(tn, den.terms)
    if g == {(): 1}:
        return num, den
    qn = ip.pdivexact(tn, g)
    qd = ip.pdivexact(den.terms, g)
    if qn is None or qd is None:
        raise ArithmeticError("gcd failed to divide in cross-cancellation")
    scale = num.scale
    _, cn = ip.print_min_term(qn)
    if cn < 0:
        qn, scale = ip.pneg(qn), -scale
    _, cd = ip.print_min_term(qd)
    if cd < 0:
        qd, scale = ip.pneg(qd), -scale
    return (
        LaurentPoly(scale, ip.pshift(qn, mn) if mn else qn),
        LaurentPoly(Fraction(1), qd),
    )


RAT_ZERO = RatFunc(LP_ZERO, LP_ONE)
RAT_ONE = RatFunc(LP_ONE, LP_ONE)


def rf_var(name: str) -> RatFunc:
    return RatFunc(LaurentPoly.var(var_index(name)), LP_ONE)


def rf_int(c: int) -> RatFunc:
    return RatFunc.from_int(c)


def rf_fraction(c: Fraction | int) -> RatFunc:
    return RatFunc.from_fraction(c)


# ---------------------------------------------------------------------------
# substitution


def substitute(rf: RatFunc, assignment: dict[str, "RatFunc | int | Fraction"]) -> RatFunc:
    """Simultaneously substitute values for variables.

    Substituting zero (or anything else) for a variable that appears with a
    negative exponent is rejected, as is any assignment that zeroes the
    denominator.
    """
    targets: dict[int, RatFunc] = {}
    for name, val in assignment.items():
        v = RatFunc._coerce(val)
        if v is NotImplemented:
            raise DomainError(f"cannot substitute {val!r} for {name!r}")
        targets[var_index(name)] = v
    if not targets:
        return rf
    num = _eval_poly(rf.num, targets)
    den = _eval_poly(rf.den, targets)
    if den.is_zero():
        raise DomainError("substitution produced a zero denominator")
    return num / den


def _eval_poly(lp: LaurentPoly, targets: dict[int, RatFunc]) -> RatFunc:
    if lp.is_zero():
        return RAT_ZERO
    pow_cache: dict[tuple[int, int], RatFunc] = {}

    def vp(i: int, n: int) -> RatFunc:
        key = (i, n)
        got = pow_cache.get(key)
        if got is None:
            base = targets.get(i)
            if base is None:
                got = RatFunc(LaurentPoly.var(i), LP_ONE) ** n
            else:
                if base.is_zero() and n < 0:
                    raise DomainError(
                        f"substituting 0 for {variable_names()[i]!r}, which appears "
                        "with a negative exponent"
                    )
                got = base ** n
            pow_cache[key] = got
        return got

    total = RAT_ZERO
    for e, c in lp.terms.items():
        term = RatFunc.from_fraction(lp.scale * c)
        for i, x in enumerate(e):
            if x:
                term = term * vp(i, x)
        total = total + term
    return total


# ---------------------------------------------------------------------------
# power-series expansion in the small variables


def series_expand(rf: RatFunc, order: int) -> RatFunc:
    """Expand a value as a power series in the small variables, truncated
    beyond total small degree ``order``.

    The denominator must have a nonzero part free of small variables (the
    value must actually be a power series); the result's denominator is free
    of small variables, with numerator terms of small degree at most
    ``order``.
    """
    if order < 0:
        raise DomainError("series order must be nonnegative")
    if not rf.den.uses_smalls():
        return rf.truncate_small(order) if rf.num.uses_smalls() else rf
    sm = set(small_indices())
    d0_terms: Poly = {}
    dplus_terms: Poly = {}
    for e, c in rf.den.terms.items():
        if any(i < len(e) and e[i] for i in sm):
            dplus_terms[e] = c
        else:
            d0_terms[e] = c
    if not d0_terms:
        raise DomainError(
            "value is not a power series in the small variables "
            "(denominator vanishes when they are set to zero)"
        )
    d0 = RatFunc.make(LaurentPoly.from_int_terms(d0_terms), LP_ONE)
    dplus = RatFunc.make(LaurentPoly.from_int_terms(dplus_terms), LP_ONE)
    r = -(dplus / d0)
    # 1/(d0 (1 + dplus/d0)) with dplus of small degree >= 1: geometric series
    inv = RAT_ONE
    power = RAT_ONE
    for _ in range(order):
        power = (power * r).truncate_small(order)
        if power.is_zero():
            break
        inv = inv + power
    num = RatFunc.make(rf.num, LP_ONE)
    return (num * inv / d0).truncate_small(order)


# ---------------------------------------------------------------------------
# canonical text encoding


def _format_monomial(e: Exp) -> str:
    parts = []
    names = variable_names()
    for i, x in enumerate(e):
        if not x:
            continue
        name = names[i] if i < len(names) else f"v{i}"
        parts.append(name if x == 1 else f"{name}^{x}")
    return "*".join(parts)


def _format_poly_side(lp: LaurentPoly) -> str:
    items = lp.coeff_items()
    if not items:
        return "0"
    chunks: list[str] = []
    for k, (e, c) in enumerate(items):
        mono = _format_monomial(e)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        if k == 0:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(chunks)


def format_ratfunc(rf: RatFunc) -> str:
    """Render in the canonical form, e.g. ``(-1 + q)/(1 - t)``."""
    if rf.is_zero():
        return "0"
    num = _format_poly_side(rf.num)
    if rf.den.is_one():
        return num
    return f"({num})/({_format_poly_side(rf.den)})"


def _latex_name(name: str) -> str:
    m = re.match(r"([a-z]+)([0-9]+)\Z", name)
    if m:
        return f"{m.group(1)}_{{{m.group(2)}}}"
    return name


def _latex_monomial(e: Exp) -> str:
    parts = []
    names = variable_names()
    for i, x in enumerate(e):
        if not x:
            continue
        name = _latex_name(names[i] if i < len(names) else f"v_{{{i}}}")
        parts.append(name if x == 1 else f"{name}^{{{x}}}")
    return " ".join(parts)


def _latex_fraction(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    sign = "-" if c < 0 else ""
    return f"{sign}\\tfrac{{{abs(c.numerator)}}}{{{c.denominator}}}"


def _latex_poly_side(lp: LaurentPoly) -> str:
    items = lp.coeff_items()
    if not items:
        return "0"
    chunks: list[str] = []
    for k, (e, c) in enumerate(items):
        mono = _latex_monomial(e)
        if not mono:
            body = _latex_fraction(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{_latex_fraction(abs(c))} {mono}"
        if k == 0:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(chunks)


def latex_ratfunc(rf: RatFunc) -> str:
    if rf.is_zero():
        return "0"
    num = _latex_poly_side(rf.num)
    if rf.den.is_one():
        return num
    return f"\\frac{{{num}}}{{{_latex_poly_side(rf.den)}}}"


# -- parser for the canonical encoding (also accepts general +-*/^ forms)

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[a-z][a-z0-9_]*)|(?P<op>\^|[-+*/()]))"
)


def _tokenize_rf(s: str) -> list[tuple[str, str, int, int]]:
    out = []
    pos = 0
    while pos < len(s):
        m = _TOKEN_RE.match(s, pos)
        if not m:
            if s[pos:].strip():
                bad = pos + len(s[pos:]) - len(s[pos:].lstrip())
                raise ParseError(f"unexpected character {s[bad]!r}", bad, bad + 1)
            break
        pos = m.end()
        if m.group("int") is not None:
            out.append(("int", m.group("int"), m.start("int"), m.end("int")))
        elif m.group("name") is not None:
            out.append(("name", m.group("name"), m.start("name"), m.end("name")))
        else:
            out.append(("op", m.group("op"), m.start("op"), m.end("op")))
    out.append(("end", "", len(s), len(s)))
    return out


class _RfParser:
    def __init__(self, s: str):
        self.text = s
        self.toks = _tokenize_rf(s)
        self.i = 0

    def peek(self) -> tuple[str, str, int, int]:
        return self.toks[self.i]

    def next(self) -> tuple[str, str, int, int]:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op: str) -> None:
        kind, val, a, b = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", a, b)

    def parse(self) -> RatFunc:
        v = self.expr()
        kind, val, a, b = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", a, b)
        return v

    def expr(self) -> RatFunc:
        v = self.term()
        while True:
            kind, val, _, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                w = self.term()
                v = v + w if val == "+" else v - w
            else:
                return v

    def term(self) -> RatFunc:
        v = self.factor()
        while True:
            kind, val, _, _ = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                w = self.factor()
                v = v * w if val == "*" else v / w
            else:
                return v

    def factor(self) -> RatFunc:
        kind, val, a, b = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return -self.factor()
        return self.power()

    def power(self) -> RatFunc:
        v = self.atom()
        kind, val, _, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            sign = 1
            kind, val, a, b = self.next()
            if kind == "op" and val == "-":
                sign = -1
                kind, val, a, b = self.next()
            if kind != "int":
                raise ParseError("expected an integer exponent", a, b)
            v = v ** (sign * int(val))
        return v

    def atom(self) -> RatFunc:
        kind, val, a, b = self.next()
        if kind == "int":
            return RatFunc.from_int(int(val))
        if kind == "name":
            if not is_registered(val):
                raise ParseError(f"unknown variable {val!r}", a, b)
            return rf_var(val)
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect_op(")")
            return v
        raise ParseError(f"unexpected {val!r}" if val else "unexpected end of input", a, b)


def parse_ratfunc(s: str) -> RatFunc:
    """Parse the canonical coefficient encoding (and general arithmetic over
    registered variables and integers)."""
    return _RfParser(s).parse()


register_variable("q")
register_variable("t")
