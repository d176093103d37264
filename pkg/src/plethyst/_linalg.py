"""Exact linear algebra over Laurent-polynomial matrices.

The one consumer is the triangularity solve for the Macdonald basis: an
overdetermined but consistent linear system whose entries are polynomials
in q and t with rational scales.  Forward elimination is fraction-free
(Bareiss), so every intermediate entry is a minor of the original matrix
and stays a polynomial; surplus rows must reduce to zero exactly, which
doubles as a consistency check on the system.  Back substitution switches
to rational-function arithmetic, where each division is by a determinant.
"""

from __future__ import annotations

from . import _intpoly as ip
from .coeff import LP_ONE, LP_ZERO, LaurentPoly, RatFunc
from .errors import DomainError


def _divexact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Quotient a/b when b divides a exactly; used for Bareiss pivots."""
    if a.is_zero():
        return a
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if b.is_const():
        return a.scaled(1 / b.scale)
    amins, bmins = ip.pmins(a.terms), ip.pmins(b.terms)
    pa = ip.pshift(a.terms, tuple(-x for x in amins)) if any(amins) else a.terms
    pb = ip.pshift(b.terms, tuple(-x for x in bmins)) if any(bmins) else b.terms
    q = ip.pdivexact(pa, pb)
    if q is None:
        raise ArithmeticError("inexact division in fraction-free elimination")
    width = max(len(amins), len(bmins))
    shift = ip.trim(
        tuple(
            (amins[i] if i < len(amins) else 0) - (bmins[i] if i < len(bmins) else 0)
            for i in range(width)
        )
    )
    if any(shift):
        q = ip.pshift(q, shift)
    # primitive/primitive quotients are primitive and the print-min sign
    # convention is multiplicative, so no renormalization is needed
    return LaurentPoly(a.scale / b.scale, q)


def solve_exact(
    rows: list[list[LaurentPoly]], rhs: list[LaurentPoly]
) -> list[RatFunc]:
    """Solve rows * x = rhs for a system with at least as many equations as
    unknowns.  The solution must exist and be unique; surplus equations are
    eliminated alongside the rest and checked to vanish, so an inconsistent
    or underdetermined system raises instead of returning junk."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    if m < n:
        raise DomainError(f"system has {m} equations for {n} unknowns")
    A = [list(rows[i]) + [rhs[i]] for i in range(m)]
    prev = LP_ONE
    for k in range(n):
        piv = None
        for i in range(k, m):
            if not A[i][k].is_zero():
                if piv is None or len(A[i][k].terms) < len(A[piv][k].terms):
                    piv = i
        if piv is None:
            raise DomainError("singular system: no pivot available")
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
        pk = A[k][k]
        for i in range(k + 1, m):
            aik = A[i][k]
            for j in range(k + 1, n + 1):
                A[i][j] = _divexact(pk * A[i][j] - aik * A[k][j], prev)
            A[i][k] = LP_ZERO
        prev = pk
    for i in range(n, m):
        for j in range(n + 1):
            if not A[i][j].is_zero():
                raise DomainError("inconsistent system: surplus equation is nonzero")
    x = [RatFunc.from_int(0)] * n
    for i in range(n - 1, -1, -1):
        s = RatFunc.make(A[i][n], LP_ONE)
        for j in range(i + 1, n):
            if not A[i][j].is_zero():
                s = s - RatFunc.make(A[i][j], LP_ONE) * x[j]
        x[i] = s / RatFunc.make(A[i][i], LP_ONE)
    return x
