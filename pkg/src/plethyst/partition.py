"""Partitions and the partition-indexed quantities of Macdonald theory.

A partition is a weakly decreasing tuple of positive integers.  Cells of the
Young diagram are addressed as (row, col), both zero-based, so the cell in
row r and column c of lambda exists when c < lambda[r].  Arms count cells
strictly to the right, legs cells strictly below.

Enumeration order is fixed once and for all: ``partitions_of(n)`` lists the
partitions of n in reverse lexicographic order, (n) first and (1^n) last,
and ``sort_key`` extends that to a graded order over all partitions.  All
user-visible term ordering derives from these.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .coeff import RAT_ONE, RatFunc, rf_var
from .errors import DomainError


class Partition(tuple):
    """A partition as an immutable tuple of weakly decreasing positive parts."""

    def __new__(cls, parts=()):
        parts = tuple(parts)
        if any(p < 0 for p in parts):
            raise DomainError(f"partition parts must be nonnegative: {parts}")
        if 0 in parts:
            parts = tuple(p for p in parts if p)
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise DomainError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def conjugate(self) -> "Partition":
        if not self:
            return self
        out = []
        for c in range(self[0]):
            out.append(sum(1 for p in self if p > c))
        return Partition(out)

    def cells(self) -> list[tuple[int, int]]:
        return [(r, c) for r, p in enumerate(self) for c in range(p)]

    def arm(self, r: int, c: int) -> int:
        return self[r] - c - 1

    def leg(self, r: int, c: int) -> int:
        return sum(1 for p in self[r + 1 :] if p > c)

    def __repr__(self) -> str:
        return f"Partition({format_partition(self)!r})"


EMPTY = Partition(())


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n, reverse lexicographic: (n) first, (1^n) last."""
    if n < 0:
        raise DomainError("cannot partition a negative integer")
    out: list[Partition] = []

    def rec(rem: int, cap: int, prefix: tuple[int, ...]) -> None:
        if rem == 0:
            out.append(Partition(prefix))
            return
        for p in range(min(rem, cap), 0, -1):
            rec(rem - p, p, prefix + (p,))

    rec(n, n, ())
    return tuple(out)


@lru_cache(maxsize=None)
def _rank_in_degree(lam: Partition) -> int:
    return partitions_of(lam.size).index(lam)


def sort_key(lam: Partition) -> tuple[int, int]:
    """Graded reverse-lexicographic sort key over all partitions."""
    return (lam.size, _rank_in_degree(lam))


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    """mu <= lam in dominance order (partial sums); sizes must agree."""
    if mu.size != lam.size:
        raise DomainError(
            f"dominance order compares partitions of equal size: "
            f"|{format_partition(mu) or '()'}| = {mu.size}, "
            f"|{format_partition(lam) or '()'}| = {lam.size}"
        )
    sm = sl = 0
    for i in range(max(len(mu), len(lam))):
        sm += mu[i] if i < len(mu) else 0
        sl += lam[i] if i < len(lam) else 0
        if sm > sl:
            return False
    return True


def n_stat(lam: Partition) -> int:
    """n(lambda) = sum of (i-1) * lambda_i over rows (1-based i)."""
    return sum(r * p for r, p in enumerate(lam))


def z_stat(lam: Partition) -> int:
    """The centralizer order z_lambda = prod_i i^{m_i} m_i!."""
    z = 1
    mult = 1
    for i, p in enumerate(lam):
        z *= p
        if i + 1 < len(lam) and lam[i + 1] == p:
            mult += 1
            z *= mult
        else:
            mult = 1
    return z


def q_factor() -> RatFunc:
    """Q = (q-1)(1-t), the normalizing alphabet of the Macdonald pairing."""
    q, t = rf_var("q"), rf_var("t")
    return (q - 1) * (1 - t)


def alpha_factors(lam: Partition) -> list[RatFunc]:
    """The polynomial factors of alpha_lambda, one pair (q^a - t^{l+1}),
    (q^{a+1} - t^l) per cell, with multiplicity."""
    q, t = rf_var("q"), rf_var("t")
    out: list[RatFunc] = []
    conj = lam.conjugate()
    for r, c in lam.cells():
        a = lam[r] - c - 1
        l = conj[c] - r - 1
        out.append(q**a - t ** (l + 1))
        out.append(q ** (a + 1) - t**l)
    return out


@lru_cache(maxsize=None)
def alpha(lam: Partition) -> RatFunc:
    """alpha_lambda = (H_lambda, H_lambda)_* as a polynomial in q and t."""
    out = RAT_ONE
    for f in alpha_factors(lam):
        out = out * f
    return out


@lru_cache(maxsize=None)
def b_poly(lam: Partition) -> RatFunc:
    """B_lambda = sum over cells (r, c) of q^c t^r."""
    q, t = rf_var("q"), rf_var("t")
    out = RatFunc.from_int(0)
    for r, c in lam.cells():
        out = out + q**c * t**r
    return out


@lru_cache(maxsize=None)
def d_poly(lam: Partition) -> RatFunc:
    """D_lambda = -1 - Q B_lambda."""
    return RatFunc.from_int(-1) - q_factor() * b_poly(lam)


def concat(lam: Partition, mu: Partition) -> Partition:
    """Multiset union of parts (the index of p_lambda p_mu)."""
    return Partition(sorted(lam + mu, reverse=True))


def with_part(lam: Partition, m: int) -> Partition:
    """lambda with a part m adjoined and re-sorted; m = 0 adjoins nothing."""
    if m < 0:
        raise DomainError(f"cannot adjoin a negative part {m}")
    if m == 0:
        return lam
    return Partition(sorted(lam + (m,), reverse=True))


def hook_monomial(lam: Partition) -> RatFunc:
    """(-1)^{|lambda|} q^{n(lambda')} t^{n(lambda)}, a recurring specialization."""
    q, t = rf_var("q"), rf_var("t")
    sign = -1 if lam.size % 2 else 1
    return sign * q ** n_stat(lam.conjugate()) * t ** n_stat(lam)


def parse_partition(text: str) -> Partition:
    """Parse "3,1,1" (parts in any order; zeros dropped; "" is empty)."""
    text = text.strip()
    if not text:
        return EMPTY
    parts = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk.isdigit():
            raise DomainError(f"invalid partition part {chunk!r} in {text!r}")
        parts.append(int(chunk))
    return Partition(sorted(parts, reverse=True))


def format_partition(lam: Partition) -> str:
    return ",".join(str(p) for p in lam)
