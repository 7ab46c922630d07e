"""Field construction, square classes, and the adjacent-square lemmas, all
checked against exhaustive enumeration."""

import itertools

import pytest

from weilmix.ffield import (
    Field,
    SquareClass,
    count_adjacent_squares,
    ff_make,
    gf,
    is_prime_power,
    kappa_sign,
    prime_power_decompose,
    sq2_census,
)

ODD_PRIME_POWERS_LE_121 = [
    q for q in range(3, 122, 2) if is_prime_power(q)
]


def poly_eval_mod_p(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def brute_is_irreducible_deg2(coeffs, p):
    return all(poly_eval_mod_p(coeffs, x, p) != 0 for x in range(p))


def test_modulus_gf9_is_smallest_irreducible():
    # exhaustive check over all monic quadratics over GF(3), low-degree-first order
    first = None
    for c0, c1 in itertools.product(range(3), repeat=2):
        if brute_is_irreducible_deg2((c0, c1, 1), 3):
            first = (c0, c1, 1)
            break
    assert first == (1, 0, 1)  # x^2 + 1
    assert gf(9).modulus == first


def test_modulus_gf4():
    assert gf(4).modulus == (1, 1, 1)  # x^2 + x + 1, the only irreducible quadratic


def test_prime_field_modulus_and_kappa():
    f = gf(7)
    assert f.modulus == (0, 1)  # the polynomial x
    assert kappa_sign(7) == -1
    assert kappa_sign(5) == 1
    assert kappa_sign(9) == 1
    assert kappa_sign(121) == 1


def test_prime_power_decompose():
    assert prime_power_decompose(8) == (2, 3)
    assert prime_power_decompose(121) == (11, 2)
    assert prime_power_decompose(7) == (7, 1)
    for bad in (1, 6, 12, 100):
        with pytest.raises(ValueError):
            prime_power_decompose(bad)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27])
def test_field_axioms_exhaustive(q):
    f = gf(q)
    els = range(q)
    for a in els:
        assert f.add(a, 0) == a
        assert f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
    # associativity/commutativity/distributivity on a full triple product for small q
    if q <= 9:
        for a in els:
            for b in els:
                assert f.add(a, b) == f.add(b, a)
                assert f.mul(a, b) == f.mul(b, a)
                for c in els:
                    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))


def test_gf3_add():
    assert gf(3).add(2, 2) == 1


def test_gf4_inverse_of_x():
    f = gf(4)
    x = f.from_coeffs((0, 1))
    x_plus_1 = f.from_coeffs((1, 1))
    assert f.inv(x) == x_plus_1
    assert f.mul(x, x_plus_1) == 1


def test_frobenius_involution_gf9():
    spec = ff_make(9)
    for y in range(81):
        assert spec.frobenius(spec.frobenius(y)) == y
    fixed = [y for y in range(81) if spec.frobenius(y) == y]
    assert len(fixed) == 9
    assert sorted(spec.embed(x) for x in range(9)) == sorted(fixed)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9])
def test_trace_zero_set_size(q):
    spec = ff_make(q)
    zero_trace = [
        c for c in range(q * q) if spec.ext.add(c, spec.frobenius(c)) == 0
    ]
    assert len(zero_trace) == q
    assert spec.trace_zero_unit() in zero_trace


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13, 25])
def test_theta_gamma_eta_orders(q):
    spec = ff_make(q)
    assert spec.ext.element_order(spec.theta) == q * q - 1
    assert spec.ext.element_order(spec.gamma) == q - 1
    assert spec.ext.element_order(spec.eta_elt) == q + 1


def test_square_class_gf7():
    f = gf(7)
    squares = sorted({f.mul(x, x) for x in range(1, 7)})
    assert squares == [1, 2, 4]
    assert f.square_class(3) is SquareClass.NONSQUARE
    assert f.square_class(2) is SquareClass.SQUARE
    assert f.square_class(0) is SquareClass.ZERO


@pytest.mark.parametrize("q", [3, 5, 7, 9, 13, 27])
def test_square_class_matches_enumeration(q):
    f = gf(q)
    squares = {f.mul(x, x) for x in range(1, q)}
    assert len(squares) == (q - 1) // 2
    for x in range(1, q):
        assert f.is_square(x) == (x in squares)


def test_even_q_everything_is_square():
    for q in (2, 4, 8, 16):
        f = gf(q)
        for x in range(1, q):
            assert f.square_class(x) is SquareClass.SQUARE
            s = f.sqrt(x)
            assert s is not None and f.mul(s, s) == x


def brute_adjacent_squares(q):
    f = gf(q)
    squares = set(f.squares())
    return sum(1 for x in squares if f.add(x, 1) in squares)


def test_adjacent_squares_examples():
    assert count_adjacent_squares(13) == 2
    assert count_adjacent_squares(7) == 1
    assert count_adjacent_squares(5) == 0
    with pytest.raises(ValueError):
        count_adjacent_squares(8)


@pytest.mark.parametrize("q", ODD_PRIME_POWERS_LE_121)
def test_adjacent_squares_vs_enumeration(q):
    assert count_adjacent_squares(q) == brute_adjacent_squares(q)


def brute_sq2_counts(q):
    """Independent census: walk lambda over powers of gamma and eta directly."""
    spec = ff_make(q)
    base, ext = spec.base, spec.ext
    four = base.scalar(4)
    two = base.scalar(2)
    sq = set(base.squares())
    split_alphas = set()
    lam = spec.gamma
    for _ in range(1, q - 1):
        t = ext.add(lam, ext.inv(lam))
        alpha_ext = ext.sub(spec.embed(two), t)
        alpha = spec._embed_table.index(alpha_ext) if alpha_ext in spec._embed_table else None
        if alpha is not None and alpha in sq and alpha != four:
            split_alphas.add(alpha)
        lam = ext.mul(lam, spec.gamma)
    nonsplit_alphas = set()
    lam = spec.eta_elt
    for _ in range(1, q + 1):
        t = ext.add(lam, ext.inv(lam))
        alpha_ext = ext.sub(spec.embed(two), t)
        alpha = spec._embed_table.index(alpha_ext) if alpha_ext in spec._embed_table else None
        if alpha is not None and alpha in sq and alpha != four:
            nonsplit_alphas.add(alpha)
        lam = ext.mul(lam, spec.eta_elt)
    assert not (split_alphas & nonsplit_alphas)
    return len(split_alphas), len(nonsplit_alphas)


def test_sq2_census_examples():
    assert sq2_census(13).counts() == (2, 3)
    assert sq2_census(7).counts() == (1, 1)
    assert sq2_census(5).counts() == (0, 1)
    assert sq2_census(3).counts() == (0, 0)


@pytest.mark.parametrize("q", [q for q in ODD_PRIME_POWERS_LE_121 if q >= 5])
def test_sq2_census_vs_enumeration(q):
    census = sq2_census(q)
    assert census.counts() == brute_sq2_counts(q)
    assert census.split_count + census.nonsplit_count == (q - 3) // 2
    # parity is asserted per alpha inside sq2_census; check index ranges here
    for e in census.entries:
        if e.split:
            assert 1 <= e.index <= (q - 3) // 2
        else:
            assert 1 <= e.index <= (q - 1) // 2


def test_field_errors():
    f = gf(5)
    with pytest.raises(ZeroDivisionError):
        f.inv(0)
    with pytest.raises(ValueError):
        Field(12)
    with pytest.raises(ValueError, match="limit"):
        Field(2**31 - 1)  # prime, but far beyond the construction limit
