"""Two-transvection product laws against full pair enumeration, and the
odd-symplectic class analysis against its parametric oracle."""

from collections import Counter
from fractions import Fraction
from itertools import product as iproduct
from random import Random

import pytest

from weilmix.clgroups import (
    SpTransvection,
    enumerate_transvections,
    fixed_space_codim,
    make_spec,
    make_transvection,
)
from weilmix.ffield import SquareClass
from weilmix.transprod import (
    A21,
    A22,
    A31,
    A32,
    C1,
    C3,
    D21,
    D22,
    IDENTITY,
    CodimDistribution,
    PairMode,
    SpClassLabel,
    classify_sp_pair,
    classify_sp_product_matrix,
    codim_dist_gl,
    codim_dist_gu,
    codim_dist_sp,
    sp_all_transvection_pair_summary,
    sp_odd_class_dist,
)


def enumerated_pair_dist(spec) -> CodimDistribution:
    tv = enumerate_transvections(spec)
    tally = Counter()
    for a in tv:
        for b in tv:
            tally[fixed_space_codim(spec, a * b)] += 1
    total = len(tv) ** 2
    return CodimDistribution({e: Fraction(c, total) for e, c in tally.items() if c})


def test_gl_examples():
    d = codim_dist_gl(2, 3)
    assert (d[2], d[1], d[0]) == (Fraction(3, 4), Fraction(1, 8), Fraction(1, 8))
    d = codim_dist_gl(2, 2)
    assert (d[2], d[1], d[0]) == (Fraction(2, 3), Fraction(0), Fraction(1, 3))
    assert sum(codim_dist_gl(3, 2).probs.values()) == 1


def test_gu_examples():
    d = codim_dist_gu(2, 2)
    assert (d[2], d[1], d[0]) == (Fraction(2, 3), Fraction(0), Fraction(1, 3))
    d = codim_dist_gu(2, 3)
    assert (d[2], d[1], d[0]) == (
        Fraction(24, 32),
        Fraction(4, 32),
        Fraction(4, 32),
    )


def test_sp_examples():
    d = codim_dist_sp(1, 3)
    assert (d[2], d[1], d[0]) == (Fraction(3, 4), Fraction(1, 8), Fraction(1, 8))
    d = codim_dist_sp(1, 2)
    assert (d[2], d[1], d[0]) == (Fraction(2, 3), Fraction(0), Fraction(1, 3))
    d = codim_dist_sp(2, 2)
    assert (d[2], d[1], d[0]) == (Fraction(14, 15), Fraction(0), Fraction(1, 15))


def test_preconditions():
    with pytest.raises(ValueError):
        codim_dist_gl(1, 3)
    with pytest.raises(ValueError):
        codim_dist_gu(1, 3)
    with pytest.raises(ValueError):
        codim_dist_gl(2, 6)


PAIR_ORACLE_SPECS = [
    ("GL", 2, 3, codim_dist_gl),
    ("GL", 3, 2, codim_dist_gl),
    ("GL", 2, 4, codim_dist_gl),
    ("GU", 2, 2, codim_dist_gu),
    ("GU", 2, 3, codim_dist_gu),
    ("GU", 3, 2, codim_dist_gu),
    ("SpOdd", 1, 3, codim_dist_sp),
    ("SpEven", 2, 2, codim_dist_sp),
    ("SpOdd", 2, 3, codim_dist_sp),
]


@pytest.mark.parametrize("fam,n,q,fn", PAIR_ORACLE_SPECS)
def test_codim_dist_vs_pair_enumeration(fam, n, q, fn):
    spec = make_spec(fam, n, q)
    assert fn(n, q) == enumerated_pair_dist(spec)


def oracle_sp_class_tally(n, q, mode, source=SquareClass.SQUARE):
    """Exact class law by enumerating (alpha, beta, v) with u = e1 fixed
    (legitimate by transitivity of Sp on nonzero vectors)."""
    spec = make_spec("SpOdd", n, q)
    f = spec.matrix_field
    d = spec.dim
    if mode is PairMode.ALL_TRANSVECTIONS:
        alphas = list(range(1, q))
    else:
        alphas = f.squares() if source is SquareClass.SQUARE else f.nonsquares()
    u = tuple([1] + [0] * (d - 1))
    tally = Counter()
    total = 0
    for v in iproduct(range(q), repeat=d):
        if not any(v):
            continue
        for a in alphas:
            for b in alphas:
                tally[classify_sp_pair(spec, a, u, b, v)] += 1
                total += 1
    return {lab: Fraction(c, total) for lab, c in tally.items()}


@pytest.mark.parametrize("n,q", [(2, 3), (2, 5)])
@pytest.mark.parametrize("mode", [PairMode.PAIRS_FROM_C, PairMode.ALL_TRANSVECTIONS])
def test_class_dist_vs_parametric_oracle(n, q, mode):
    assert sp_odd_class_dist(n, q, mode).probs == oracle_sp_class_tally(n, q, mode)


@pytest.mark.parametrize("n,q", [(2, 3), (2, 5)])
def test_class_dist_nonsquare_source(n, q):
    got = sp_odd_class_dist(n, q, source_class=SquareClass.NONSQUARE)
    assert got.probs == oracle_sp_class_tally(
        n, q, PairMode.PAIRS_FROM_C, SquareClass.NONSQUARE
    )


def test_class_dist_2_5_values():
    dist = sp_odd_class_dist(2, 5)
    assert dist[IDENTITY] == Fraction(1, 312)
    assert dist[A22] == Fraction(1, 312)
    assert dist[A31] == Fraction(120, 624)
    assert dist[D21] == Fraction(250, 624)
    assert dist[C1(1)] == Fraction(250, 624)
    assert dist[A21] == 0
    assert not any(lab.kind.value == "C3" for lab in dist.probs)


def test_class_dist_2_3_values():
    dist = sp_odd_class_dist(2, 3)
    assert dist[A22] == Fraction(2, 80)
    assert dist[A32] == Fraction(24, 80)
    assert dist[D22] == Fraction(54, 80)
    assert dist[IDENTITY] == 0
    assert len(dist.probs) == 3


def test_all_transvection_summary():
    s = sp_all_transvection_pair_summary(1, 3)
    assert (s["Identity"], s["Rank1"], s["Rank2"]) == (
        Fraction(1, 8),
        Fraction(1, 8),
        Fraction(6, 8),
    )
    s = sp_all_transvection_pair_summary(2, 5)
    assert (s["Identity"], s["Rank1"], s["Rank2"]) == (
        Fraction(1, 624),
        Fraction(3, 624),
        Fraction(620, 624),
    )
    assert sum(s.values()) == 1


@pytest.mark.parametrize("n,q", [(2, 3), (2, 5)])
def test_all_mode_rank_marginal_matches_codim_dist(n, q):
    dist = sp_odd_class_dist(n, q, PairMode.ALL_TRANSVECTIONS)
    assert dist.codim_marginal() == codim_dist_sp(n, q)


@pytest.mark.parametrize("n,q", [(2, 3), (2, 5)])
def test_c_pairs_codim_marginal_matches_conditioned_enumeration(n, q):
    """Marginal of the class law = codim law of products of two square-class
    transvections, computed from matrices."""
    spec = make_spec("SpOdd", n, q)
    tv = enumerate_transvections(spec, SquareClass.SQUARE)
    tally = Counter()
    for a in tv:
        for b in tv:
            tally[fixed_space_codim(spec, a * b)] += 1
    total = len(tv) ** 2
    enum = {e: Fraction(c, total) for e, c in tally.items() if c}
    marginal = sp_odd_class_dist(n, q).codim_marginal()
    assert marginal == CodimDistribution(enum)


def test_classify_examples():
    spec = make_spec("SpOdd", 2, 3)
    u = (1, 0, 0, 0)
    # alpha=1, beta=2, v=u: 1+2=0 -> Identity (mixed classes at q=3)
    assert classify_sp_pair(spec, 1, u, 2, u) is IDENTITY
    spec5 = make_spec("SpOdd", 2, 5)
    u5 = (1, 0, 0, 0)
    v_perp = (0, 1, 0, 0)  # (u|v)=0, independent
    assert classify_sp_pair(spec5, 1, u5, 1, v_perp) == A31
    v_pair = (0, 0, 1, 0)  # (u|v)=1
    assert classify_sp_pair(spec5, 1, u5, 4, v_pair) == D21


def test_classify_requires_legal_input():
    spec = make_spec("SpOdd", 2, 3)
    with pytest.raises(ValueError):
        classify_sp_pair(spec, 0, (1, 0, 0, 0), 1, (0, 1, 0, 0))
    with pytest.raises(ValueError):
        classify_sp_pair(make_spec("SpOdd", 1, 3), 1, (1, 0), 1, (0, 1))


@pytest.mark.parametrize("n,q,tuples", [(2, 3, 4000), (2, 5, 4000), (2, 7, 2500)])
def test_classify_agrees_with_matrix_route(n, q, tuples):
    spec = make_spec("SpOdd", n, q)
    rng = Random(2024)
    d = spec.dim
    done = 0
    while done < tuples:
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
        assert classify_sp_product_matrix(spec, s_mat) == lab1
        done += 1


def test_label_parsing_and_ordering():
    assert str(C1(3)) == "C1(3)"
    assert SpClassLabel.parse("C1(3)") == C1(3)
    assert SpClassLabel.parse("A21") == A21
    assert {A21: 1}[SpClassLabel.parse("A21")] == 1
    with pytest.raises(ValueError):
        SpClassLabel.parse("C3")  # missing index
    assert IDENTITY.rank == 0 and A22.rank == 1 and D21.rank == 2 and C3(2).rank == 2
