"""Rudvalis-Shinoda distributions against enumeration tallies and the exact
sum/bound identities."""

from collections import Counter
from fractions import Fraction

import pytest

from weilmix.clgroups import (
    enumerate_group,
    fixed_space_codim,
    group_order,
    make_spec,
)
from weilmix.fixdist import (
    fixed_space_distribution,
    gu_fixed_count_bound,
    rs_gu_fixed_dim,
    rs_sp_fixed_dim,
)


def test_gu_examples():
    assert rs_gu_fixed_dim(2, 2, 2) == Fraction(1, 18)
    assert rs_gu_fixed_dim(1, 2, 0) == Fraction(2, 3)
    assert [rs_gu_fixed_dim(2, 2, k) for k in (0, 1, 2)] == [
        Fraction(10, 18),
        Fraction(7, 18),
        Fraction(1, 18),
    ]


def test_sp_examples():
    assert rs_sp_fixed_dim(1, 3, 1) == Fraction(1, 3)
    assert rs_sp_fixed_dim(1, 3, 0) == Fraction(5, 8)
    for n, q in [(1, 3), (2, 3), (3, 4)]:
        assert rs_sp_fixed_dim(n, q, 2 * n) == Fraction(1, group_order(make_spec("SpOdd" if q % 2 else "SpEven", n, q)))


def test_out_of_range():
    with pytest.raises(ValueError):
        rs_gu_fixed_dim(2, 2, 3)
    with pytest.raises(ValueError):
        rs_sp_fixed_dim(2, 3, 5)
    with pytest.raises(ValueError):
        rs_gu_fixed_dim(2, 6, 1)  # 6 is not a prime power


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
@pytest.mark.parametrize("n", range(1, 9))
def test_gu_sums_to_one(n, q):
    assert sum(rs_gu_fixed_dim(n, q, k) for k in range(n + 1)) == 1


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
@pytest.mark.parametrize("n", range(1, 9))
def test_sp_sums_to_one(n, q):
    assert sum(rs_sp_fixed_dim(n, q, k) for k in range(2 * n + 1)) == 1


RS_ORACLE_SPECS = [
    ("GU", 2, 2),
    ("GU", 2, 3),
    ("GU", 3, 2),
    ("SpOdd", 1, 3),
    ("SpOdd", 1, 5),
    ("SpOdd", 2, 3),
    ("SpEven", 1, 2),
    ("SpEven", 1, 4),
    ("SpEven", 2, 2),
]


@pytest.mark.parametrize("fam,n,q", RS_ORACLE_SPECS)
def test_rs_matches_enumeration(fam, n, q):
    spec = make_spec(fam, n, q)
    order = group_order(spec)
    tally = Counter(
        spec.dim - fixed_space_codim(spec, g) for g in enumerate_group(spec)
    )
    dist = fixed_space_distribution(spec)
    for k, prob in enumerate(dist.probs):
        assert prob == Fraction(tally.get(k, 0), order), (fam, n, q, k)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
@pytest.mark.parametrize("n", range(1, 9))
def test_gu_count_bound_dominates(n, q):
    order = None
    from weilmix.clgroups import gu_order

    order = gu_order(n, q)
    for k in range(n + 1):
        count = rs_gu_fixed_dim(n, q, k) * order
        assert count.denominator == 1
        assert count <= gu_fixed_count_bound(n, q, k), (n, q, k)


def test_gu_count_bound_examples():
    assert gu_fixed_count_bound(2, 2, 1) == 10
    assert rs_gu_fixed_dim(2, 2, 1) * 18 == 7
    assert gu_fixed_count_bound(2, 2, 0) == 24
    assert rs_gu_fixed_dim(2, 2, 0) * 18 == 10
    assert gu_fixed_count_bound(3, 3, 3) >= 1


def test_distribution_identity_mass():
    spec = make_spec("GU", 2, 3)
    dist = fixed_space_distribution(spec)
    assert dist.probs[-1] == Fraction(1, group_order(spec))
    with pytest.raises(ValueError):
        fixed_space_distribution(make_spec("GL", 2, 3))
