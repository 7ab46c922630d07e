"""Monte Carlo estimators, exact brute-force oracles, and the verification
suite binding every closed form to an independent computation.

Reproducibility contract: every Monte Carlo routine partitions its samples
into fixed-size blocks; block i runs on random.Random(derive_seed(seed, i)).
Results are integer tallies merged by addition, so the outcome is identical
for any thread count and any block execution order.

Statistical tolerances: frequency checks use 3-sigma binomial errors.  At
the default 10^5 samples a binomial sigma is at most ~0.0016, while every
closed-form gap probed here (wrong exponent, wrong constant) shifts the
probability by >= 1% = 6+ sigma, so the checks separate truth from mutation.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Callable, Optional, Sequence

from .clgroups import (
    Family,
    GroupSpec,
    SpTransvection,
    enumerate_group,
    enumerate_transvections,
    fixed_space_codim,
    group_order,
    make_spec,
    make_transvection,
    row_echelon,
    sample_transvection_params,
    sample_uniform,
    transvection_census,
    transvection_uw,
)
from .ffield import SquareClass, count_adjacent_squares, gf, sq2_census
from .fixdist import gu_fixed_count_bound, rs_gu_fixed_dim, rs_sp_fixed_dim
from .mixbounds import ChainSpec, charbound_sum, moments, upper_closed, weighted_weil_sum
from .transprod import (
    CodimDistribution,
    PairMode,
    SpClassLabel,
    classify_sp_pair,
    classify_sp_product_matrix,
    codim_dist_gl,
    codim_dist_gu,
    codim_dist_sp,
    sp_odd_class_dist,
)
from .weilchar import WeilVariant, default_variant, weil_value_sp_odd_class

MC_BLOCK = 8192
PAIR_ORACLE_LIMIT = 10**8
_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_seed(master: int, index: int) -> int:
    """Child seed for block/worker `index`: documented splitmix64 mixing."""
    return splitmix64((master & _MASK64) ^ ((index + 1) * 0x9E3779B97F4A7C15 & _MASK64))


@dataclass(frozen=True)
class Histogram:
    keys: tuple[str, ...]
    counts: dict[str, int]
    total: int
    seed: int

    def __post_init__(self):
        assert sum(self.counts.values()) == self.total

    def frequency(self, key: str) -> float:
        return self.counts.get(key, 0) / self.total if self.total else 0.0

    def merge(self, other: "Histogram") -> "Histogram":
        counts = Counter(self.counts)
        counts.update(other.counts)
        keys = tuple(sorted(set(self.keys) | set(other.keys)))
        return Histogram(keys, dict(counts), self.total + other.total, self.seed)

    def to_json(self) -> str:
        return json.dumps(
            {
                "counts": {k: self.counts.get(k, 0) for k in sorted(self.keys)},
                "total": self.total,
                "seed": self.seed,
            },
            sort_keys=True,
        )


def _run_blocks(
    samples: int,
    seed: int,
    block_fn: Callable[[Random, int], Counter],
    threads: int = 1,
) -> Counter:
    """Split `samples` into fixed-size blocks with derived seeds; merge
    tallies by addition (identical result for every thread count)."""
    blocks = []
    offset = 0
    i = 0
    while offset < samples:
        size = min(MC_BLOCK, samples - offset)
        blocks.append((i, size))
        offset += size
        i += 1
    def run(block):
        idx, size = block
        return block_fn(Random(derive_seed(seed, idx)), size)
    total: Counter = Counter()
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for tally in pool.map(run, blocks):
                total.update(tally)
    else:
        for block in blocks:
            total.update(run(block))
    return total


def mc_fixed_dim(spec: GroupSpec, samples: int, seed: int, threads: int = 1) -> Histogram:
    """Histogram of fixed-space dimensions over Haar draws."""
    dim = spec.dim

    def block(rng: Random, size: int) -> Counter:
        tally: Counter = Counter()
        for _ in range(size):
            g = sample_uniform(spec, rng)
            tally[str(dim - fixed_space_codim(spec, g))] += 1
        return tally

    counts = _run_blocks(samples, seed, block, threads)
    keys = tuple(str(k) for k in range(dim + 1))
    return Histogram(keys, dict(counts), samples, seed)


def _outer_sum_rank(f, pairs: Sequence[tuple[list[int], list[int]]]) -> int:
    """rank of sum_t u_t w_t^T maintained in factored form; O(s^2 d)."""
    basis: list[tuple[int, list[int], list[int]]] = []  # (pivot, u, accumulated w)
    for u0, w0 in pairs:
        u = list(u0)
        w = list(w0)
        for piv, bu, bw in basis:
            c = u[piv]  # bu is normalised with bu[piv] == 1
            if c:
                # u contains c * bu; fold c*w into that basis row instead
                for j in range(len(bw)):
                    bw[j] = f.add(bw[j], f.mul(c, w[j]))
                for j in range(len(u)):
                    u[j] = f.sub(u[j], f.mul(c, bu[j]))
        piv = next((j for j, x in enumerate(u) if x), None)
        if piv is None:
            continue
        scale = f.inv(u[piv])
        bu = [f.mul(scale, x) for x in u]
        bw = [f.mul(u[piv], x) for x in w]
        basis.append((piv, bu, bw))
    if not basis:
        return 0
    rows = [bw for _, _, bw in basis]
    return len(row_echelon(rows, f)[1])


def _product_codim(spec: GroupSpec, rng: Random, steps: int,
                   class_tag: Optional[SquareClass]) -> int:
    """Fixed-space codimension of a product of `steps` uniform transvections,
    without materialising the full matrix."""
    f = spec.matrix_field
    pairs: list[tuple[list[int], list[int]]] = []
    for _ in range(steps):
        params = sample_transvection_params(spec, rng, class_tag)
        u, w = transvection_uw(spec, params)
        # M_new - I = (M - I) + (M u) w^T; M u = u + sum u_s (w_s . u)
        mu = list(u)
        for us, ws in pairs:
            dot = 0
            for a, b in zip(ws, u):
                if a and b:
                    dot = f.add(dot, f.mul(a, b))
            if dot:
                for j in range(len(mu)):
                    mu[j] = f.add(mu[j], f.mul(dot, us[j]))
        pairs.append((mu, w))
    return _outer_sum_rank(f, pairs)


def mc_transv_product(
    spec: GroupSpec,
    steps: int,
    samples: int,
    seed: int,
    class_tag: Optional[SquareClass] = None,
    threads: int = 1,
) -> Histogram:
    """Histogram of fixed-space codimensions of products of `steps` uniform
    transvections (SpOdd: from one class via class_tag, or from all
    transvections with class_tag=None; single-class families ignore the tag)."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if spec.family is Family.SP_ODD and class_tag is None:
        tag = None  # all transvections, the f_* walk
    elif spec.family is Family.SP_ODD:
        tag = class_tag
    else:
        tag = None

    def block(rng: Random, size: int) -> Counter:
        tally: Counter = Counter()
        for _ in range(size):
            tally[str(_product_codim(spec, rng, steps, tag))] += 1
        return tally

    counts = _run_blocks(samples, seed, block, threads)
    keys = tuple(str(k) for k in range(min(steps, spec.dim) + 1))
    return Histogram(keys, dict(counts), samples, seed)


# ---------------------------------------------------------------------------
# exact oracles


def oracle_fixed_dim_exact(spec: GroupSpec) -> dict[int, int]:
    """Tally of fixed-space dimensions over the fully enumerated group."""
    tally: Counter = Counter()
    for g in enumerate_group(spec):
        tally[spec.dim - fixed_space_codim(spec, g)] += 1
    return dict(tally)


def oracle_pair_exact(spec: GroupSpec, limit: int = PAIR_ORACLE_LIMIT) -> CodimDistribution:
    """Exact codimension law of a product of two uniform transvections by
    full double enumeration."""
    census = sum(transvection_census(spec).values())
    if census * census > limit:
        raise ValueError(f"census^2 = {census**2} exceeds pair-oracle limit")
    tv = enumerate_transvections(spec)
    tally: Counter = Counter()
    for a in tv:
        for b in tv:
            tally[fixed_space_codim(spec, a * b)] += 1
    total = len(tv) ** 2
    return CodimDistribution({e: Fraction(c, total) for e, c in tally.items() if c})


def oracle_sp_class_exact(
    n: int,
    q: int,
    mode: PairMode,
    source_class: SquareClass = SquareClass.SQUARE,
    limit: int = PAIR_ORACLE_LIMIT,
) -> dict[SpClassLabel, Fraction]:
    """Exact class law of two-transvection products in Sp_2n(q) by parametric
    enumeration of (alpha, beta, v) with u fixed to e1 (transitivity)."""
    spec = make_spec("SpOdd", n, q)
    f = spec.matrix_field
    d = spec.dim
    if mode is PairMode.ALL_TRANSVECTIONS:
        alphas = list(range(1, q))
    elif source_class is SquareClass.SQUARE:
        alphas = f.squares()
    else:
        alphas = f.nonsquares()
    tuple_count = len(alphas) ** 2 * (q**d - 1)
    if tuple_count > limit:
        raise ValueError(f"{tuple_count} oracle tuples exceed the limit")
    u = tuple([1] + [0] * (d - 1))
    tally: Counter = Counter()
    total = 0
    for v in itertools.product(range(q), repeat=d):
        if not any(v):
            continue
        for a in alphas:
            for b in alphas:
                tally[classify_sp_pair(spec, a, u, b, v)] += 1
                total += 1
    return {lab: Fraction(c, total) for lab, c in tally.items()}


# ---------------------------------------------------------------------------
# verification registry


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # ExactMatch | WithinTolerance | FAIL
    details: str

    @property
    def ok(self) -> bool:
        return self.status != "FAIL"


@dataclass(frozen=True)
class VerifyReport:
    level: str
    checks: tuple[CheckResult, ...]

    @property
    def n_fail(self) -> int:
        return sum(1 for c in self.checks if not c.ok)

    @property
    def ok(self) -> bool:
        return self.n_fail == 0

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "n_checks": len(self.checks),
            "n_fail": self.n_fail,
            "checks": [
                {"name": c.name, "status": c.status, "details": c.details}
                for c in self.checks
            ],
        }


def _exact(name: str, ok: bool, details: str) -> CheckResult:
    return CheckResult(name, "ExactMatch" if ok else "FAIL", details)


def _stat(name: str, ok: bool, details: str) -> CheckResult:
    return CheckResult(name, "WithinTolerance" if ok else "FAIL", details)


def _variant_for(spec: GroupSpec) -> WeilVariant:
    return default_variant(spec.family)


def _check_adjacent_squares(qs) -> CheckResult:
    for q in qs:
        f = gf(q)
        squares = set(f.squares())
        brute = sum(1 for x in squares if f.add(x, 1) in squares)
        if brute != count_adjacent_squares(q):
            return _exact(
                "ffield/adjacent-squares",
                False,
                f"q={q}: closed {count_adjacent_squares(q)} vs enumerated {brute}",
            )
    return _exact("ffield/adjacent-squares", True, f"q in {list(qs)}")


def _check_sq2_census(qs) -> CheckResult:
    for q in qs:
        census = sq2_census(q)  # internal parity + count assertions
        expected_total = (q - 3) // 2 if q >= 5 else 0
        if census.split_count + census.nonsplit_count != expected_total:
            return _exact("ffield/sq2-census", False, f"q={q}: wrong total")
    return _exact("ffield/sq2-census", True, f"q in {list(qs)}")


def _check_trace_zero(qs) -> CheckResult:
    from .ffield import ff_make

    for q in qs:
        fs = ff_make(q)
        count = sum(1 for c in range(q * q) if fs.ext.add(c, fs.frobenius(c)) == 0)
        if count != q:
            return _exact("ffield/trace-zero-count", False, f"q={q}: {count} != {q}")
    return _exact("ffield/trace-zero-count", True, f"q in {list(qs)}")


def _check_rs_vs_enum(specs) -> CheckResult:
    for fam, n, q in specs:
        spec = make_spec(fam, n, q)
        order = group_order(spec)
        tally = oracle_fixed_dim_exact(spec)
        rs = rs_gu_fixed_dim if fam == "GU" else rs_sp_fixed_dim
        for k in range(spec.dim + 1):
            if rs(n, q, k) != Fraction(tally.get(k, 0), order):
                return _exact(
                    "fixdist/rs-vs-enumeration",
                    False,
                    f"{spec} at k={k}: {rs(n, q, k)} vs {Fraction(tally.get(k, 0), order)}",
                )
    return _exact("fixdist/rs-vs-enumeration", True, f"{len(list(specs))} specs")


def _check_rs_sums(ns, qs) -> CheckResult:
    for q in qs:
        for n in ns:
            if sum(rs_gu_fixed_dim(n, q, k) for k in range(n + 1)) != 1:
                return _exact("fixdist/sums-to-one", False, f"GU n={n} q={q}")
            if sum(rs_sp_fixed_dim(n, q, k) for k in range(2 * n + 1)) != 1:
                return _exact("fixdist/sums-to-one", False, f"Sp n={n} q={q}")
    return _exact("fixdist/sums-to-one", True, f"n in {list(ns)}, q in {list(qs)}")


def _check_gu_bound(ns, qs) -> CheckResult:
    from .clgroups import gu_order

    for q in qs:
        for n in ns:
            for k in range(n + 1):
                count = rs_gu_fixed_dim(n, q, k) * gu_order(n, q)
                if count.denominator != 1 or count > gu_fixed_count_bound(n, q, k):
                    return _exact(
                        "fixdist/gu-count-bound", False, f"n={n} q={q} k={k}"
                    )
    return _exact("fixdist/gu-count-bound", True, f"n in {list(ns)}, q in {list(qs)}")


_PAIR_FNS = {"GL": codim_dist_gl, "GU": codim_dist_gu, "SpOdd": codim_dist_sp, "SpEven": codim_dist_sp}


def _check_pair_oracle(specs) -> CheckResult:
    for fam, n, q in specs:
        spec = make_spec(fam, n, q)
        if _PAIR_FNS[fam](n, q) != oracle_pair_exact(spec):
            return _exact("transprod/pair-oracle", False, f"{spec}")
    return _exact("transprod/pair-oracle", True, f"{len(list(specs))} specs")


def _check_sp_class_oracle(nqs, modes) -> CheckResult:
    for n, q in nqs:
        for mode in modes:
            closed = sp_odd_class_dist(n, q, mode).probs
            oracle = oracle_sp_class_exact(n, q, mode)
            if closed != oracle:
                return _exact(
                    "transprod/sp-class-oracle", False, f"(n={n}, q={q}, {mode.value})"
                )
    return _exact("transprod/sp-class-oracle", True, f"{list(nqs)}")


def _check_classify_matrix_route(nqs, tuples_per_spec: int) -> CheckResult:
    for n, q in nqs:
        spec = make_spec("SpOdd", n, q)
        rng = Random(derive_seed(0xC1A55, n * 1000 + q))
        d = spec.dim
        done = 0
        while done < tuples_per_spec:
            a = rng.randrange(1, q)
            b = rng.randrange(1, q)
            u = tuple(rng.randrange(q) for _ in range(d))
            v = tuple(rng.randrange(q) for _ in range(d))
            if not any(u) or not any(v):
                continue
            lab1 = classify_sp_pair(spec, a, u, b, v)
            s_mat = make_transvection(spec, SpTransvection(a, u)) * make_transvection(
                spec, SpTransvection(b, v)
            )
            lab2 = classify_sp_product_matrix(spec, s_mat)
            if lab1 != lab2:
                return _exact(
                    "transprod/classify-matrix-route",
                    False,
                    f"(n={n}, q={q}) {a},{u},{b},{v}: {lab1} vs {lab2}",
                )
            done += 1
    return _exact(
        "transprod/classify-matrix-route", True, f"{list(nqs)} x {tuples_per_spec} tuples"
    )


def _check_weil_class_values(nqs) -> CheckResult:
    from .transprod import A21, A22, A31, A32, D21, D22

    for n, q in nqs:
        spec = make_spec("SpOdd", n, q)
        a21 = weil_value_sp_odd_class(spec, A21)
        if weil_value_sp_odd_class(spec, A22) != -a21:
            return _exact("weilchar/class-symmetries", False, f"(n={n}, q={q}) A22")
        if a21.abs_squared() != Fraction(q ** (2 * n - 1)):
            return _exact("weilchar/class-symmetries", False, f"(n={n}, q={q}) |A21|^2")
        if weil_value_sp_odd_class(spec, D21) != weil_value_sp_odd_class(spec, D22):
            return _exact("weilchar/class-symmetries", False, f"(n={n}, q={q}) D")
        if weil_value_sp_odd_class(spec, A31) != -weil_value_sp_odd_class(spec, A32):
            return _exact("weilchar/class-symmetries", False, f"(n={n}, q={q}) A3")
    return _exact("weilchar/class-symmetries", True, f"{list(nqs)}")


def _check_weighted_sums(nqs, rmax: int) -> CheckResult:
    for n, q in nqs:
        for r in range(rmax + 1):
            weighted_weil_sum(n, q, r, PairMode.PAIRS_FROM_C)  # raises on mismatch
            if r % 2 == 0:
                weighted_weil_sum(n, q, r, PairMode.ALL_TRANSVECTIONS)
    return _exact("mixbounds/weighted-sum-guard", True, f"{list(nqs)}, r <= {rmax}")


def _check_domination(grid) -> CheckResult:
    for fam, n, q, c in grid:
        spec = make_spec(fam, n, q)
        variant = _variant_for(spec)
        u = upper_closed(spec, variant, c)
        s = charbound_sum(ChainSpec(spec, variant, u.r))
        if s > u.four_tv_squared:
            return _exact(
                "mixbounds/domination",
                False,
                f"{spec} c={c}: sum {s} > {u.four_tv_squared}",
            )
    return _exact("mixbounds/domination", True, f"{len(grid)} combinations")


def _check_moment_values() -> CheckResult:
    gl = moments(ChainSpec(make_spec("GL", 2, 3), WeilVariant.GL_WEIL, 1))
    if gl.variance.as_fraction() != Fraction(10, 9):
        return _exact("mixbounds/moments", False, f"GL var {gl.variance}")
    sp = moments(ChainSpec(make_spec("SpEven", 2, 2), WeilVariant.SP_EVEN_LINEAR, 1))
    if sp.variance.as_fraction() != Fraction(3, 4):
        return _exact("mixbounds/moments", False, f"SpEven var {sp.variance}")
    s1 = moments(ChainSpec(make_spec("GU", 3, 2), WeilVariant.GU_WEIL, 1)).mean_sign
    s2 = moments(ChainSpec(make_spec("GU", 3, 2), WeilVariant.GU_WEIL, 2)).mean_sign
    if (s1, s2) != (-1, 1):
        return _exact("mixbounds/moments", False, f"GU parity signs {(s1, s2)}")
    return _exact("mixbounds/moments", True, "GL 10/9, SpEven 3/4, GU parity")


def _check_mc_fixed_dim(specs, samples: int, seed: int) -> CheckResult:
    for fam, n, q in specs:
        spec = make_spec(fam, n, q)
        hist = mc_fixed_dim(spec, samples, seed)
        rs = rs_gu_fixed_dim if fam == "GU" else rs_sp_fixed_dim
        for k in range(spec.dim + 1):
            p = float(rs(n, q, k))
            sigma = (p * (1 - p) / samples) ** 0.5
            err = abs(hist.frequency(str(k)) - p)
            if err > max(3 * sigma, 1e-12):
                return _stat(
                    "mcengine/mc-fixed-dim",
                    False,
                    f"{spec} k={k}: err {err:.5f} > 3 sigma {3*sigma:.5f}",
                )
    return _stat("mcengine/mc-fixed-dim", True, f"{len(list(specs))} specs x {samples} draws")


def _check_mc_transv_product(cases, samples: int, seed: int) -> CheckResult:
    for fam, n, q, steps in cases:
        spec = make_spec(fam, n, q)
        # SpOdd runs both the all-transvection walk (rank-level law) and,
        # when the class analysis applies, the one-class walk against the
        # codim marginal of the class-level law.
        runs: list[tuple[Optional[SquareClass], CodimDistribution]] = []
        if steps == 2:
            runs.append((None, _PAIR_FNS[fam](n, q)))
            if fam == "SpOdd" and n >= 2:
                runs.append(
                    (SquareClass.SQUARE, sp_odd_class_dist(n, q).codim_marginal())
                )
        else:
            runs.append((None, None))
        for tag, dist in runs:
            hist = mc_transv_product(spec, steps, samples, seed, class_tag=tag)
            if steps == 1:
                if hist.frequency("1") != 1.0:
                    return _stat(
                        "mcengine/mc-transv-product", False, f"{spec} s=1 not codim 1"
                    )
                continue
            for e in (0, 1, 2):
                p = float(dist[e])
                sigma = (p * (1 - p) / samples) ** 0.5
                err = abs(hist.frequency(str(e)) - p)
                if err > max(3 * sigma, 1e-12):
                    return _stat(
                        "mcengine/mc-transv-product",
                        False,
                        f"{spec} s={steps} tag={tag} e={e}: err {err:.5f} > {3*sigma:.5f}",
                    )
    return _stat("mcengine/mc-transv-product", True, f"{len(cases)} cases x {samples}")


def _check_sampler_gof(specs, draws: int, seed: int) -> CheckResult:
    from scipy.stats import chi2

    for fam, n, q in specs:
        spec = make_spec(fam, n, q)
        els = list(enumerate_group(spec))
        idx = {g: i for i, g in enumerate(els)}
        rng = Random(derive_seed(seed, group_order(spec)))
        counts = [0] * len(els)
        for _ in range(draws):
            counts[idx[sample_uniform(spec, rng)]] += 1
        expected = draws / len(els)
        stat = sum((c - expected) ** 2 / expected for c in counts)
        crit = chi2.ppf(0.99, len(els) - 1)
        if stat >= crit:
            return _stat(
                "mcengine/sampler-gof",
                False,
                f"{spec}: chi2 {stat:.1f} >= crit {crit:.1f}",
            )
    return _stat("mcengine/sampler-gof", True, f"{len(list(specs))} specs x {draws} draws")


def _check_mc_determinism() -> CheckResult:
    spec = make_spec("SpOdd", 1, 3)
    a = mc_fixed_dim(spec, 3000, 42).to_json()
    b = mc_fixed_dim(spec, 3000, 42).to_json()
    c = mc_fixed_dim(spec, 3000, 42, threads=4).to_json()
    h1 = mc_transv_product(make_spec("SpEven", 2, 2), 2, 3000, 7).to_json()
    h2 = mc_transv_product(make_spec("SpEven", 2, 2), 2, 3000, 7, threads=3).to_json()
    ok = a == b == c and h1 == h2
    return _exact("mcengine/mc-determinism", ok, "byte-identical reruns across thread counts")


def _quick_checks() -> list[tuple[str, Callable[[], CheckResult]]]:
    small_grid = [
        (fam, n, q, c)
        for fam in ("GU", "SpOdd", "SpEven")
        for n in (1, 2, 3)
        for q in (2, 3, 4, 5)
        for c in (1, 2)
        if (fam != "SpOdd" or q % 2) and (fam != "SpEven" or q % 2 == 0)
    ]
    return [
        ("ffield/adjacent-squares", lambda: _check_adjacent_squares([5, 7, 9, 13, 17, 25])),
        ("ffield/sq2-census", lambda: _check_sq2_census([3, 5, 7, 9, 13, 25])),
        ("ffield/trace-zero-count", lambda: _check_trace_zero([2, 3, 4, 5])),
        ("fixdist/sums-to-one", lambda: _check_rs_sums(range(1, 5), [2, 3, 4, 5])),
        ("fixdist/rs-vs-enumeration",
         lambda: _check_rs_vs_enum([("GU", 2, 2), ("SpOdd", 1, 3), ("SpEven", 1, 2)])),
        ("fixdist/gu-count-bound", lambda: _check_gu_bound(range(1, 6), [2, 3, 4, 5])),
        ("transprod/pair-oracle",
         lambda: _check_pair_oracle(
             [("GL", 2, 3), ("GU", 2, 2), ("SpOdd", 1, 3), ("SpEven", 2, 2)])),
        ("transprod/sp-class-oracle",
         lambda: _check_sp_class_oracle([(2, 3), (2, 5)], list(PairMode))),
        ("weilchar/class-symmetries",
         lambda: _check_weil_class_values([(2, 3), (2, 5), (3, 7)])),
        ("mixbounds/weighted-sum-guard", lambda: _check_weighted_sums([(2, 3), (2, 5)], 4)),
        ("mixbounds/domination", lambda: _check_domination(small_grid)),
        ("mixbounds/moments", _check_moment_values),
        ("mcengine/mc-fixed-dim",
         lambda: _check_mc_fixed_dim([("GU", 2, 2), ("SpOdd", 1, 3)], 20000, 314159)),
        ("mcengine/mc-transv-product",
         lambda: _check_mc_transv_product(
             [("SpOdd", 1, 3, 2), ("SpEven", 2, 2, 2), ("GL", 2, 3, 1)], 20000, 2718)),
        ("mcengine/mc-determinism", _check_mc_determinism),
    ]


def _full_checks() -> list[tuple[str, Callable[[], CheckResult]]]:
    from .ffield import is_prime_power

    odd_q = [q for q in range(3, 122, 2) if is_prime_power(q)]
    full_grid = [
        (fam, n, q, c)
        for fam in ("GU", "SpOdd", "SpEven")
        for n in range(1, 7)
        for q in (2, 3, 4, 5, 7, 9)
        for c in (1, 2, 3)
        if (fam != "SpOdd" or q % 2) and (fam != "SpEven" or q % 2 == 0)
    ]
    return [
        ("ffield/adjacent-squares", lambda: _check_adjacent_squares(odd_q)),
        ("ffield/sq2-census", lambda: _check_sq2_census(odd_q)),
        ("ffield/trace-zero-count", lambda: _check_trace_zero([2, 3, 4, 5, 7, 8, 9])),
        ("fixdist/sums-to-one", lambda: _check_rs_sums(range(1, 9), [2, 3, 4, 5, 7, 8, 9])),
        ("fixdist/rs-vs-enumeration",
         lambda: _check_rs_vs_enum(
             [("GU", 2, 2), ("GU", 2, 3), ("GU", 3, 2),
              ("SpOdd", 1, 3), ("SpOdd", 1, 5), ("SpOdd", 2, 3),
              ("SpEven", 1, 2), ("SpEven", 1, 4), ("SpEven", 2, 2)])),
        ("fixdist/gu-count-bound",
         lambda: _check_gu_bound(range(1, 9), [2, 3, 4, 5, 7, 8, 9])),
        ("transprod/pair-oracle",
         lambda: _check_pair_oracle(
             [("GL", 2, 3), ("GL", 3, 2), ("GL", 2, 4),
              ("GU", 2, 2), ("GU", 2, 3), ("GU", 3, 2),
              ("SpOdd", 1, 3), ("SpEven", 2, 2), ("SpOdd", 2, 3)])),
        ("transprod/sp-class-oracle",
         lambda: _check_sp_class_oracle([(2, 3), (2, 5), (2, 7)], list(PairMode))),
        ("transprod/classify-matrix-route",
         lambda: _check_classify_matrix_route([(2, 3), (2, 5), (2, 7)], 100_000)),
        ("weilchar/class-symmetries",
         lambda: _check_weil_class_values([(2, 3), (2, 5), (3, 7), (4, 9)])),
        ("mixbounds/weighted-sum-guard",
         lambda: _check_weighted_sums([(2, 3), (2, 5), (3, 3), (2, 7)], 4)),
        ("mixbounds/domination", lambda: _check_domination(full_grid)),
        ("mixbounds/moments", _check_moment_values),
        ("mcengine/mc-fixed-dim",
         lambda: _check_mc_fixed_dim(
             [("GU", 2, 2), ("SpOdd", 1, 3), ("SpEven", 1, 4)], 100_000, 314159)),
        ("mcengine/mc-transv-product",
         lambda: _check_mc_transv_product(
             [("SpOdd", 1, 3, 2), ("SpEven", 2, 2, 2), ("GL", 3, 2, 2),
              ("SpOdd", 10, 3, 2), ("SpOdd", 2, 9, 2), ("SpEven", 10, 2, 2),
              ("GU", 3, 3, 2), ("SpOdd", 2, 5, 1)],
             100_000, 2718)),
        ("mcengine/sampler-gof",
         lambda: _check_sampler_gof(
             [("SpOdd", 1, 3), ("GU", 2, 2), ("GL", 2, 3)], 100_000, 55555)),
        ("mcengine/mc-determinism", _check_mc_determinism),
    ]


def verify(level: str = "quick") -> VerifyReport:
    """Run the named invariant checks; failures (including exceptions inside
    a check) are reported as FAIL rows, never raised."""
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    builders = _quick_checks() if level == "quick" else _full_checks()
    results: list[CheckResult] = []
    for name, thunk in builders:
        try:
            results.append(thunk())
        except Exception as exc:  # a crashed check is a failed check
            results.append(CheckResult(name, "FAIL", f"exception: {exc!r}"))
    return VerifyReport(level, tuple(results))
