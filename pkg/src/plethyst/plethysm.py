"""Plethystic substitution, exponential and logarithm.

Alphabet expressions are ordinary MultiSymFunc values: X + 1 is a two-term
value, (1-u)/(1-q) a scalar one, X*Y a single term with two slots.  The n-th
power sum acts on such a value by the Adams operation (partitions scaled by
n in every slot, Frobenius on coefficients), and plethysm F[A] expands F in
the p-basis and multiplies out.

pExp and pLog work on degree-truncated series.  The grading counts alphabet
symbols and the declared small variables; q and t never contribute, which is
why pExp(u X) is fine and pExp(q) is rejected.  Scalar coefficients whose
denominators involve small variables are power-series-expanded on the
degree-0 slot and rejected elsewhere (a 1/(1-u) riding on an alphabet term
has no well-defined truncation degree).
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import RatFunc, format_ratfunc, series_expand
from .errors import DomainError, TruncationError
from .multisym import MultiSymFunc, promote
from .partition import EMPTY, Partition
from .symfun import SymFunc, _min_order

Plethable = "RatFunc | SymFunc | MultiSymFunc | int | Fraction"


def pleth_pn(n: int, A) -> MultiSymFunc:
    """p_n[A]: the n-th Adams operation on an alphabet expression."""
    if n < 1:
        raise DomainError(f"p_{n} is not defined; power sums need n >= 1")
    return promote(A).adams(n)


def pleth(F, A, order: int | None = None):
    """Plethystic substitution F[A].

    F is a symmetric function (or a scalar, which is its own image); A is
    any alphabet expression.  The result is a MultiSymFunc over the symbols
    of A; scalar results can be read off with ``.as_ratfunc()``.
    """
    if isinstance(F, (int, Fraction, RatFunc)):
        out = MultiSymFunc.from_scalar(F)
        return out.truncate(order) if order is not None else out
    if isinstance(F, MultiSymFunc):
        F = F.as_symfunc()
    if not isinstance(F, SymFunc):
        raise DomainError(f"cannot substitute into a {type(F).__name__}")
    M = promote(A)
    order = _min_order(order, M.order)
    psis: dict[int, MultiSymFunc] = {}
    for lam in F.terms:
        for part in lam:
            if part not in psis:
                psis[part] = M.adams(part).truncate(order)
    out = MultiSymFunc.from_scalar(0, order)
    prod_cache: dict[Partition, MultiSymFunc] = {
        EMPTY: MultiSymFunc.from_scalar(1, order)
    }

    def product_for(lam: Partition) -> MultiSymFunc:
        got = prod_cache.get(lam)
        if got is None:
            head = Partition(lam[1:])
            got = (product_for(head) * psis[lam[0]]).truncate(order)
            prod_cache[lam] = got
        return got

    for lam, c in F.terms.items():
        out = out + product_for(lam).scaled(c)
    return out


def coproduct(F: SymFunc) -> MultiSymFunc:
    """F[X + Y], the coproduct in two alphabets."""
    return pleth(F, MultiSymFunc.symbol("X") + MultiSymFunc.symbol("Y"))


def _mobius(n: int) -> int:
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def _expand_scalar_coeffs(M: MultiSymFunc, order: int, what: str) -> MultiSymFunc:
    """Series-expand the degree-0 slot's coefficient in the small variables;
    reject small denominators riding on alphabet terms."""
    empty_key = (EMPTY,) * len(M.symbols)
    terms = {}
    for key, c in M.terms.items():
        if key == empty_key:
            if c.den_uses_smalls():
                c = series_expand(c, order)
        elif c.den_uses_smalls():
            raise DomainError(
                f"{what}: the coefficient {format_ratfunc(c)} on an alphabet term "
                "has a small variable in its denominator, so its truncation degree "
                "is undefined; expand it first or rewrite the input"
            )
        terms[key] = c
    return MultiSymFunc.make(M.symbols, terms, order)


def _require_order(M: MultiSymFunc, order: int | None, what: str) -> int:
    order = _min_order(order, M.order)
    if order is None:
        raise TruncationError(f"{what} needs a truncation order")
    if order < 0:
        raise TruncationError(f"{what}: truncation order must be nonnegative")
    return order


def pexp(A, order: int | None = None) -> MultiSymFunc:
    """Plethystic exponential: sum of h_n[A] = exp(sum p_n[A]/n), truncated.

    The input must vanish in total degree 0 (alphabet symbols plus small
    variables); a nonzero constant term is rejected.
    """
    M = promote(A)
    order = _require_order(M, order, "pExp")
    M = _expand_scalar_coeffs(M.truncate(order), order, "pExp")
    from .multisym import term_degree_multi

    for key, c in M.terms.items():
        d = term_degree_multi(key, c)
        if d <= 0:
            if d == 0 and not any(key):
                raise DomainError("pExp undefined at nonzero constant term")
            raise DomainError(
                "pExp input is not positively graded "
                f"(term of degree {d}: {format_ratfunc(c)})"
            )
    S = MultiSymFunc.from_scalar(0, order)
    for n in range(1, order + 1):
        S = S + M.adams(n).truncate(order).scaled(Fraction(1, n))
    out = MultiSymFunc.from_scalar(1, order)
    P = MultiSymFunc.from_scalar(1, order)
    for k in range(1, order + 1):
        P = (P * S).scaled(Fraction(1, k))
        if P.is_zero():
            break
        out = out + P
    return out


def plog(S, order: int | None = None) -> MultiSymFunc:
    """Plethystic logarithm, inverse to pExp on constant-term-1 series."""
    M = promote(S)
    order = _require_order(M, order, "pLog")
    M = _expand_scalar_coeffs(M.truncate(order), order, "pLog")
    const = M.scalar_part().drop_smalls()
    if not const.is_one():
        raise DomainError(
            f"pLog needs constant term 1, found {format_ratfunc(const)}"
        )
    R = M - 1
    from .multisym import term_degree_multi

    for key, c in R.terms.items():
        if term_degree_multi(key, c) <= 0:
            raise DomainError(
                "pLog input is not a positively graded series plus 1 "
                f"(offending coefficient {format_ratfunc(c)})"
            )
    # formal log in the graded ring
    B = MultiSymFunc.from_scalar(0, order)
    P = MultiSymFunc.from_scalar(1, order)
    for k in range(1, order + 1):
        P = P * R
        if P.is_zero():
            break
        B = B + P.scaled(Fraction(1 if k % 2 else -1, k))
    # invert B = sum_n psi_n(L)/n by Moebius inversion
    out = MultiSymFunc.from_scalar(0, order)
    for n in range(1, order + 1):
        mu = _mobius(n)
        if mu:
            out = out + B.adams(n).truncate(order).scaled(Fraction(mu, n))
    return out


def reproducing_pair(F: SymFunc) -> SymFunc:
    """Hall-pair F[X] against the kernel pExp[XY] in X; the identity
    (F[X], pExp[XY])_X = F[Y] makes this the identity map."""
    N = F.max_degree()
    if N == 0:
        return F
    # Each kernel term p_nu[X] p_nu[Y] has total degree 2|nu|, so reaching
    # X-degree N takes order 2N.
    K = pexp(MultiSymFunc.symbol("X") * MultiSymFunc.symbol("Y"), 2 * N)
    out = K.pair_slot(F, "X")
    return out.as_symfunc().truncate(F.order)
