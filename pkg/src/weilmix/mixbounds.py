"""Total-variation bounds for the tensor-product chain on Irr(G).

Upper bounds: the exact character sum (grouped by fixed-space dimension via
the Rudvalis-Shinoda laws, or enumeration tallies for GL) and the per-family
closed forms.  Lower bounds: the closed-form constants assembled from the
Chebyshev arguments, plus a tunable Chebyshev bound built from exact first
and second moments of the transvection statistics.

All assembly is exact rational / quadratic-ring arithmetic; floats appear
only at the final bound emission, rounded up for upper bounds and down for
lower bounds so the emitted numbers remain valid bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from .clgroups import (
    Family,
    GroupSpec,
    enumerate_group,
    fixed_space_codim,
    group_order,
)
from .ffield import SquareClass, kappa_sign
from .fixdist import rs_gu_fixed_dim, rs_sp_fixed_dim
from .transprod import (
    PairMode,
    SpClassLabel,
    codim_dist_gl,
    codim_dist_gu,
    codim_dist_sp,
    sp_odd_class_dist,
)
from .weilchar import (
    WeilScalar,
    WeilVariant,
    abs_ratio_squared,
    check_variant,
    rational_upper,
    sqrt_lower,
    weil_degree,
    weil_value_by_codim,
    weil_value_sp_odd_class,
)

RationalC = Union[int, Fraction]


def round_up(x: float) -> float:
    return math.nextafter(x, math.inf)


def round_down(x: float) -> float:
    return math.nextafter(x, -math.inf)


@dataclass(frozen=True)
class ChainSpec:
    group: GroupSpec
    variant: WeilVariant
    r: int

    def __post_init__(self):
        check_variant(self.group, self.variant)
        if self.r < 0:
            raise ValueError("step count r must be nonnegative")


# ---------------------------------------------------------------------------
# exact character-sum upper bound (Cauchy-Schwarz route)


@lru_cache(maxsize=64)
def _fixed_dim_counts(spec: GroupSpec) -> tuple[int, ...]:
    """count of elements by fixed-space dimension k = 0..dim, exact."""
    order = group_order(spec)
    dim = spec.dim
    if spec.family is Family.GU:
        probs = [rs_gu_fixed_dim(spec.n, spec.q, k) for k in range(dim + 1)]
    elif spec.family in (Family.SP_ODD, Family.SP_EVEN):
        probs = [rs_sp_fixed_dim(spec.n, spec.q, k) for k in range(dim + 1)]
    else:
        tally = [0] * (dim + 1)
        for g in enumerate_group(spec):
            tally[dim - fixed_space_codim(spec, g)] += 1
        return tuple(tally)
    counts = []
    for p in probs:
        c = p * order
        if c.denominator != 1:
            raise AssertionError("fixed-dimension count is not an integer")
        counts.append(int(c))
    assert sum(counts) == order
    assert counts[dim] == 1
    return tuple(counts)


def charbound_sum(chain: ChainSpec) -> Fraction:
    """Exact value of sum over non-identity classes of |C| |chi(C)/d|^{2r};
    this quantity bounds 4 * ||K^r - pi||_TV^2."""
    spec = chain.group
    try:
        counts = _fixed_dim_counts(spec)
    except ValueError as exc:
        raise ValueError(
            f"{exc}; no exact character sum for a GL group of this size, "
            "use upper_closed instead"
        ) from exc
    dim = spec.dim
    total = Fraction(0)
    for k in range(dim):  # k = dim excluded: that is the identity
        if counts[k] == 0:
            continue
        ratio2 = abs_ratio_squared(spec, chain.variant, dim - k)
        total += counts[k] * ratio2**chain.r
    return total


# ---------------------------------------------------------------------------
# closed-form upper bounds


@dataclass(frozen=True)
class ClosedUpper:
    r: int
    value: float  # rounded up
    four_tv_squared: Optional[Fraction]  # exact (2*value)^2 when rational


def upper_closed(spec: GroupSpec, variant: WeilVariant, c: RationalC) -> ClosedUpper:
    """The family's closed-form TV upper bound at its own step count:
    GL: 1/(2 q^c) at r = n+c; GU: 0.7 q^-c at r = n+c;
    SpOdd: 1/(2 sqrt(q^c - 1)) at r = 2n+c; SpEven: 1/(2 sqrt(q^2c - 1))
    at r = n+c."""
    check_variant(spec, variant)
    c = Fraction(c)
    if c <= 0:
        raise ValueError("c must be positive")
    n, q = spec.n, spec.q
    fam = spec.family
    if fam in (Family.GL, Family.GU, Family.SP_EVEN):
        r = n + c
    else:
        r = 2 * n + c
    if r.denominator != 1:
        raise ValueError(f"r = {r} is not an integer for c = {c}")
    r = int(r)
    qc = float(q) ** float(c)
    exact_sq: Optional[Fraction] = None
    if fam is Family.GL:
        value = 1.0 / (2.0 * qc)
        if c.denominator == 1:
            exact_sq = Fraction(1, q ** (2 * int(c)))
    elif fam is Family.GU:
        value = 0.7 / qc
        if c.denominator == 1:
            exact_sq = Fraction(49, 25) * Fraction(1, q ** (2 * int(c)))
    elif fam is Family.SP_ODD:
        value = 1.0 / (2.0 * math.sqrt(qc - 1.0))
        if c.denominator == 1:
            exact_sq = Fraction(1, q ** int(c) - 1)
    else:
        value = 1.0 / (2.0 * math.sqrt(qc * qc - 1.0))
        if c.denominator == 1:
            exact_sq = Fraction(1, q ** (2 * int(c)) - 1)
    return ClosedUpper(r, round_up(value), exact_sq)


@dataclass(frozen=True)
class ClosedLower:
    r: int
    value: float  # rounded down, clamped to [0, 1]
    validity: str


def lower_closed(spec: GroupSpec, variant: WeilVariant, c: RationalC) -> ClosedLower:
    """Closed-form TV lower bound constants:
    GL: 1 - 11.25 q^(2-2c) - 18 q^(1-c) at r = n-c (n >= 3);
    GU: 1 - 32 q^(2-2c) - 16 q^(1-c) at r = n-c (n >= 3);
    SpOdd, q=1 mod 4: 1 - 32 q^-2c - 8 q^-c at r = 2n-2c (n >= 2);
    SpOdd, q=3 mod 4: 1 - 16 q^-2c - 12 q^-c at r = 2n-2c, r even (n >= 2);
    SpEven: 1 - 16 q^-2c - 6 q^-c at r = n-c (n >= 2)."""
    check_variant(spec, variant)
    c = Fraction(c)
    if c <= 0:
        raise ValueError("c must be positive")
    n, q = spec.n, spec.q
    fam = spec.family
    if fam in (Family.GL, Family.GU):
        if n < 3:
            raise ValueError("lower bound needs n >= 3 for GL/GU")
        if c.denominator != 1:
            raise ValueError("c must be an integer for GL/GU")
        r = n - int(c)
        qc = float(q) ** int(c)
        if fam is Family.GL:
            value = 1.0 - 11.25 * q * q / (qc * qc) - 18.0 * q / qc
            validity = f"r = n - c, n >= 3, c = {c}"
        else:
            value = 1.0 - 32.0 * q * q / (qc * qc) - 16.0 * q / qc
            validity = f"r = n - c, n >= 3, c = {c}"
    elif fam is Family.SP_ODD:
        if n < 2:
            raise ValueError("lower bound needs n >= 2 for Sp")
        r2 = 2 * n - 2 * c
        if r2.denominator != 1:
            raise ValueError("2c must be an integer for SpOdd")
        r = int(r2)
        qc = float(q) ** float(c)
        if q % 4 == 1:
            value = 1.0 - 32.0 / (qc * qc) - 8.0 / qc
            validity = f"r = 2n - 2c, n >= 2, c = {c} (half-integers allowed)"
        else:
            if r % 2:
                raise ValueError("q = 3 mod 4 requires even r")
            value = 1.0 - 16.0 / (qc * qc) - 12.0 / qc
            validity = f"r = 2n - 2c even, n >= 2, c = {c}"
    else:
        if n < 2:
            raise ValueError("lower bound needs n >= 2 for Sp")
        if c.denominator != 1:
            raise ValueError("c must be an integer for SpEven")
        r = n - int(c)
        qc = float(q) ** int(c)
        value = 1.0 - 16.0 / (qc * qc) - 6.0 / qc
        validity = f"r = n - c, n >= 2, c = {c}"
    if r < 0:
        raise ValueError(f"c = {c} gives negative step count")
    return ClosedLower(r, min(1.0, max(0.0, round_down(value))), validity)


# ---------------------------------------------------------------------------
# moments of the transvection statistics under K^r


@dataclass(frozen=True)
class MomentReport:
    statistic: str  # "f_C" or "f_*"
    class_parameter: Optional[SquareClass]  # SpOdd f_C only: parameter class of C
    r: int
    mean_squared: Fraction  # exact; mean = mean_sign * sqrt(mean_squared)
    mean_sign: int
    second_moment: WeilScalar  # exact in the delta extension
    variance: WeilScalar  # exact
    variance_upper: Fraction  # rational upper bound (equals variance when rational)
    mean_is_exact: bool = True
    variance_is_rational: bool = field(default=True)

    @property
    def mean(self) -> float:
        """Signed mean, with |mean| rounded down (safe for lower bounds)."""
        m = round_down(float(sqrt_lower(self.mean_squared)))
        return self.mean_sign * m

    @property
    def plancherel_mean(self) -> int:
        return 0

    @property
    def plancherel_variance(self) -> int:
        return 1


def _kappa_or_one(q: int) -> int:
    return kappa_sign(q) if q % 2 else 1


def moments(chain: ChainSpec) -> MomentReport:
    """Mean and variance of f_C (or f_* for SpOdd q = 3 mod 4, even r) after
    r chain steps, assembled exactly from the two-step product laws."""
    spec = chain.group
    n, q, r = spec.n, spec.q, chain.r
    fam = spec.family
    deg = weil_degree(spec, chain.variant)
    kappa = _kappa_or_one(q)

    if fam in (Family.GL, Family.GU, Family.SP_EVEN):
        if fam is Family.GL:
            size = Fraction((q**n - 1) * (q ** (n - 1) - 1), q - 1)
            pair = codim_dist_gl(n, q)
        elif fam is Family.GU:
            size = Fraction(
                (q**n - (-1) ** n) * (q ** (n - 1) - (-1) ** (n - 1)), q + 1
            )
            pair = codim_dist_gu(n, q)
        else:
            size = Fraction(q ** (2 * n) - 1)
            pair = codim_dist_sp(n, q)
        ratio_c = weil_value_by_codim(spec, chain.variant, 1).as_fraction() / deg
        mean_sq = size * (ratio_c * ratio_c) ** r
        mean_sign = 1 if (ratio_c >= 0 or r % 2 == 0) else -1
        second = Fraction(0)
        for e in (0, 1, 2):
            p = pair[e]
            if p:
                ratio_e = weil_value_by_codim(spec, chain.variant, e).as_fraction() / deg
                second += p * ratio_e**r
        second *= size
        var = second - mean_sq
        return MomentReport(
            statistic="f_C",
            class_parameter=None,
            r=r,
            mean_squared=mean_sq,
            mean_sign=mean_sign,
            second_moment=WeilScalar.rational(second, kappa, q),
            variance=WeilScalar.rational(var, kappa, q),
            variance_upper=var,
        )

    # odd-characteristic symplectic
    if n < 2:
        raise ValueError("SpOdd moments need n >= 2 (class-level two-step law)")
    size = Fraction(q ** (2 * n) - 1, 2)
    inv_deg_r = Fraction(1, deg**r)
    if q % 4 == 1:
        # f_C with C the class of positive character value +q^{(2n-1)/2},
        # which under the fixed phase convention is the nonsquare-parameter
        # class; its pair law is the label-swapped table.
        ratio = weil_value_sp_odd_class(spec, SpClassLabel.parse("A22")) * Fraction(1, deg)
        mean_sq = size * ratio.abs_squared() ** r  # |chi(C)/d|^2 = 1/q per step
        weighted = sp_pair_weighted_sum(
            n, q, r, PairMode.PAIRS_FROM_C, SquareClass.NONSQUARE
        )
        second = weighted * inv_deg_r * size
        var = second - WeilScalar.rational(mean_sq, kappa, q)
        var_up = rational_upper(var)
        return MomentReport(
            statistic="f_C",
            class_parameter=SquareClass.NONSQUARE,
            r=r,
            mean_squared=mean_sq,
            mean_sign=1,
            second_moment=second,
            variance=var,
            variance_upper=var_up,
            variance_is_rational=var.is_rational(),
        )
    if r % 2:
        raise ValueError("SpOdd with q = 3 mod 4 requires even r (f_* statistic)")
    mean_sq = Fraction(q ** (2 * n) - 1) * Fraction(1, q) ** r
    mean_sign = 1 if r % 4 == 0 else -1
    weighted = sp_pair_weighted_sum(n, q, r, PairMode.ALL_TRANSVECTIONS)
    second = weighted * inv_deg_r * Fraction(q ** (2 * n) - 1)
    var = second - WeilScalar.rational(mean_sq, kappa, q)
    return MomentReport(
        statistic="f_*",
        class_parameter=None,
        r=r,
        mean_squared=mean_sq,
        mean_sign=mean_sign,
        second_moment=second,
        variance=var,
        variance_upper=var.as_fraction(),
    )


# ---------------------------------------------------------------------------
# Chebyshev lower bound from the moments


def chebyshev_lower(chain: ChainSpec, threshold: Optional[float] = None) -> float:
    """max over 0 < t < |mean| of 1 - 1/t^2 - Var/( |mean| - t )^2, the
    two-event total-variation lower bound; 0 when vacuous."""
    try:
        rep = moments(chain)
    except ValueError:
        return 0.0
    if rep.mean_squared <= 1:
        return 0.0
    m = round_down(float(sqrt_lower(rep.mean_squared)))
    v = round_up(max(0.0, float(rep.variance_upper)))

    def bound_at(t: float) -> float:
        if not 0.0 < t < m:
            return -math.inf
        return 1.0 - 1.0 / (t * t) - v / ((m - t) * (m - t))

    if threshold is not None:
        best = bound_at(float(threshold))
    else:
        lo, hi = 1e-9 * m, m * (1 - 1e-9)
        phi = (math.sqrt(5.0) - 1.0) / 2.0
        a, b = lo, hi
        x1 = b - phi * (b - a)
        x2 = a + phi * (b - a)
        f1, f2 = bound_at(x1), bound_at(x2)
        for _ in range(64):
            if f1 < f2:
                a, x1, f1 = x1, x2, f2
                x2 = a + phi * (b - a)
                f2 = bound_at(x2)
            else:
                b, x2, f2 = x2, x1, f1
                x1 = b - phi * (b - a)
                f1 = bound_at(x1)
        best = max(f1, f2)
    if not math.isfinite(best) or best <= 0.0:
        return 0.0
    return min(1.0, round_down(best))


# ---------------------------------------------------------------------------
# the odd-symplectic weighted power sums (identity-guarded)


def sp_odd_closed_form(n: int, q: int, r: int, mode: PairMode) -> WeilScalar:
    """Closed form of sum over classes T of omega(T)^r p(T) for products of
    two transvections of Sp_2n(q), q odd, n >= 2 (pairs from the
    square-parameter class, or all-transvection pairs for even r)."""
    if n < 2 or q % 2 == 0:
        raise ValueError("requires n >= 2 and odd q")
    if r < 0:
        raise ValueError("r must be nonnegative")
    kappa = kappa_sign(q)
    delta = WeilScalar.of(0, 1, kappa, q)
    bigd = q ** (2 * n) - 1
    scale = Fraction(q ** ((n - 2) * r), bigd)
    if mode is PairMode.ALL_TRANSVECTIONS:
        if r % 2:
            raise ValueError("all-transvection sum requires even r")
        inner = (
            q ** (2 * r)
            + (q - 2) * kappa ** (r // 2) * q ** (3 * r // 2)
            + q**r * (q ** (2 * n) - q)
        )
        return WeilScalar.rational(scale * inner, kappa, q)
    d3r = delta**(3 * r)  # (kappa*q)^{3r/2} with the fixed root choice
    if q % 4 == 1:
        rational_part = Fraction(2 * q ** (2 * r) + q**r * (q ** (2 * n) - q))
        coeff = Fraction(q - 1, 2) + (-1) ** r * Fraction(q - 5, 2)
        total = WeilScalar.rational(rational_part, kappa, q) + d3r * coeff
    else:
        coeff = (-1) ** r * Fraction(q - 3, 2) + Fraction(q + 1, 2)
        total = d3r * coeff + WeilScalar.rational(
            Fraction((-q) ** r * (q ** (2 * n) - q)), kappa, q
        )
    return total * scale


def sp_pair_weighted_sum(
    n: int,
    q: int,
    r: int,
    mode: PairMode,
    source_class: SquareClass = SquareClass.SQUARE,
) -> WeilScalar:
    """sum of p(T) chi(T)^r over the two-transvection class law, via the
    closed form.  Drawing both factors from the nonsquare-parameter class
    conjugates delta: the A21/A22 (and D) masses swap while the A-values
    negate, leaving the rational part untouched."""
    total = sp_odd_closed_form(n, q, r, mode)
    if mode is PairMode.PAIRS_FROM_C and source_class is SquareClass.NONSQUARE:
        total = WeilScalar(total.a, -total.b, total.kappa, total.q)
    return total


def sp_odd_assembled_sum(
    n: int,
    q: int,
    r: int,
    mode: PairMode,
    source_class: SquareClass = SquareClass.SQUARE,
) -> WeilScalar:
    """The same sum assembled from the class distribution and the class
    values of the Weil character."""
    from .clgroups import make_spec

    spec = make_spec("SpOdd", n, q)
    dist = sp_odd_class_dist(n, q, mode, source_class)
    kappa = kappa_sign(q)
    total = WeilScalar.rational(0, kappa, q)
    for label, p in dist.probs.items():
        total = total + (weil_value_sp_odd_class(spec, label) ** r) * p
    return total


def weighted_weil_sum(n: int, q: int, r: int, mode: PairMode) -> WeilScalar:
    """Compute the closed form AND the distribution-times-values assembly,
    assert exact equality in the delta extension, and return the value.  A
    mismatch means a formula was falsified and raises immediately."""
    closed = sp_odd_closed_form(n, q, r, mode)
    assembled = sp_odd_assembled_sum(n, q, r, mode)
    if closed != assembled:
        raise AssertionError(
            f"weighted Weil sum mismatch at (n={n}, q={q}, r={r}, {mode.value}): "
            f"closed {closed} vs assembled {assembled}"
        )
    return closed


# ---------------------------------------------------------------------------
# bound profiles over a range of step counts


@dataclass(frozen=True)
class BoundRow:
    r: int
    upper_closed: Optional[float]
    upper_from_sum: Optional[float]
    upper_tv: float
    lower_closed: Optional[float]
    lower_chebyshev: float
    lower_tv: float
    exact_char_sum: Optional[Fraction]


@dataclass(frozen=True)
class BoundProfile:
    group: GroupSpec
    variant: WeilVariant
    rows: tuple[BoundRow, ...]


def _char_sum_available(spec: GroupSpec, limit: int = 200_000) -> bool:
    if spec.family is Family.GL:
        return group_order(spec) <= limit and spec.q ** (spec.dim**2) <= 4 * limit
    return True


def profile(
    spec: GroupSpec,
    variant: WeilVariant,
    r_values: Sequence[int],
    include_exact_sum: bool = False,
) -> BoundProfile:
    """Tabulate upper/lower TV bounds per step count r: the closed-form upper
    when r falls in its validity window, optionally the exact character
    sum (as an upper via sqrt/2), and the best available lower bound."""
    check_variant(spec, variant)
    n = spec.n
    rows = []
    for r in r_values:
        if r < 0:
            raise ValueError("negative step count")
        upper_c: Optional[float] = None
        base = 2 * n if spec.family is Family.SP_ODD else n
        if r > base:
            upper_c = upper_closed(spec, variant, r - base).value
        exact_sum: Optional[Fraction] = None
        upper_s: Optional[float] = None
        if include_exact_sum and _char_sum_available(spec):
            exact_sum = charbound_sum(ChainSpec(spec, variant, r))
            upper_s = min(1.0, round_up(0.5 * math.sqrt(float(exact_sum))))
        lc = _lower_closed_at_r(spec, variant, r)
        cheb = chebyshev_lower(ChainSpec(spec, variant, r))
        lower = max(lc if lc is not None else 0.0, cheb)
        uppers = [u for u in (upper_c, upper_s) if u is not None]
        upper_tv = min(uppers) if uppers else 1.0
        rows.append(
            BoundRow(
                r=r,
                upper_closed=upper_c,
                upper_from_sum=upper_s,
                upper_tv=min(1.0, upper_tv),
                lower_closed=lc,
                lower_chebyshev=cheb,
                lower_tv=max(0.0, min(1.0, lower)),
                exact_char_sum=exact_sum,
            )
        )
    return BoundProfile(spec, variant, tuple(rows))


def _lower_closed_at_r(spec: GroupSpec, variant: WeilVariant, r: int) -> Optional[float]:
    n = spec.n
    try:
        if spec.family in (Family.GL, Family.GU, Family.SP_EVEN):
            c = n - r
            if c <= 0:
                return None
            return lower_closed(spec, variant, c).value
        c = Fraction(2 * n - r, 2)
        if c <= 0:
            return None
        return lower_closed(spec, variant, c).value
    except ValueError:
        return None
