"""Exact fixed-space-dimension distributions for GU_n(q) and Sp_2n(q)
(Rudvalis-Shinoda), plus the counting bound on unitary fixers.

Everything is big-rational arithmetic on plain (n, q) integers; no field or
matrix construction happens here, so arbitrarily large parameters are fine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .clgroups import Family, GroupSpec, gu_order, sp_order
from .ffield import is_prime_power


def _check_prime_power(q: int) -> None:
    if not is_prime_power(q):
        raise ValueError(f"q={q} is not a prime power")


def rs_gu_fixed_dim(n: int, q: int, k: int) -> Fraction:
    """Probability that a uniform element of GU_n(q) has a k-dimensional
    fixed space (eigenspace of 1 in the natural module over GF(q^2))."""
    _check_prime_power(q)
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range [0, {n}]")
    total = Fraction(0)
    for i in range(n - k + 1):
        sign = (-1) ** i
        num = sign * (-q) ** comb(i, 2)
        den = (-q) ** (k * i) * gu_order(i, q)
        total += Fraction(num, den)
    return total / gu_order(k, q)


def rs_sp_fixed_dim(n: int, q: int, k: int) -> Fraction:
    """Probability that a uniform element of Sp_2n(q) has a k-dimensional
    fixed space; valid in both odd and even characteristic."""
    _check_prime_power(q)
    if not 0 <= k <= 2 * n:
        raise ValueError(f"k={k} out of range [0, {2 * n}]")
    if k % 2 == 0:
        kk = k // 2
        total = Fraction(0)
        for i in range(n - kk + 1):
            total += Fraction(
                (-1) ** i * q ** (i * (i + 1)), sp_order(i, q) * q ** (2 * i * kk)
            )
        return total / sp_order(kk, q)
    kk = (k - 1) // 2
    total = Fraction(0)
    for i in range(n - kk):
        total += Fraction(
            (-1) ** i * q ** (i * (i + 1)), sp_order(i, q) * q ** (2 * i * (kk + 1))
        )
    return total / (sp_order(kk, q) * q ** (2 * kk + 1))


def gu_fixed_count_bound(n: int, q: int, k: int) -> Fraction:
    """Upper bound (1 + q^-(k+1)) * q^(n^2 - k^2) on the number of elements
    of GU_n(q) with a k-dimensional fixed space."""
    _check_prime_power(q)
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range [0, {n}]")
    return (1 + Fraction(1, q ** (k + 1))) * q ** (n * n - k * k)


@dataclass(frozen=True)
class FixedSpaceDistribution:
    spec: GroupSpec
    probs: tuple[Fraction, ...]  # indexed by fixed-space dimension k

    def __post_init__(self):
        if any(p < 0 for p in self.probs):
            raise ValueError("negative probability in fixed-space distribution")
        if sum(self.probs) != 1:
            raise ValueError("fixed-space distribution does not sum to 1")

    @property
    def dim(self) -> int:
        return len(self.probs) - 1


def fixed_space_distribution(spec: GroupSpec) -> FixedSpaceDistribution:
    """The exact fixed-dimension law for GU and Sp specs (GL has no closed
    form here; GL consumers tally by enumeration instead)."""
    if spec.family is Family.GU:
        probs = tuple(rs_gu_fixed_dim(spec.n, spec.q, k) for k in range(spec.n + 1))
    elif spec.family in (Family.SP_ODD, Family.SP_EVEN):
        probs = tuple(rs_sp_fixed_dim(spec.n, spec.q, k) for k in range(2 * spec.n + 1))
    else:
        raise ValueError("no closed-form fixed-space distribution for GL")
    return FixedSpaceDistribution(spec, probs)
