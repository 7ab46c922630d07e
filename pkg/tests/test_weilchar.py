"""Weil character values and the quadratic-extension scalar arithmetic."""

from fractions import Fraction

import pytest

from weilmix.clgroups import enumerate_group, fixed_space_codim, make_spec
from weilmix.transprod import A21, A22, A31, A32, C1, C3, D21, D22, IDENTITY
from weilmix.weilchar import (
    WeilVariant,
    abs_ratio_squared,
    check_variant,
    default_variant,
    rational_lower,
    rational_upper,
    sqrt_lower,
    sqrt_upper,
    weil_degree,
    weil_scalar,
    weil_value_by_codim,
    weil_value_sp_odd_class,
)


def test_degrees():
    assert weil_degree(make_spec("GL", 2, 3), WeilVariant.GL_WEIL) == 9
    assert weil_degree(make_spec("SpOdd", 2, 3), WeilVariant.SP_ODD_WEIL) == 9
    assert weil_degree(make_spec("SpEven", 2, 2), WeilVariant.SP_EVEN_LINEAR) == 16
    assert weil_degree(make_spec("SpEven", 2, 2), WeilVariant.SP_EVEN_UNITARY) == 16


def test_variant_compatibility():
    with pytest.raises(ValueError):
        check_variant(make_spec("GL", 2, 3), WeilVariant.GU_WEIL)
    with pytest.raises(ValueError):
        weil_degree(make_spec("SpOdd", 2, 3), WeilVariant.SP_EVEN_LINEAR)
    assert default_variant(make_spec("SpEven", 1, 2).family) is WeilVariant.SP_EVEN_LINEAR


def test_values_by_codim_examples():
    gu22 = make_spec("GU", 2, 2)
    assert weil_value_by_codim(gu22, WeilVariant.GU_WEIL, 0).as_fraction() == 4
    gu32 = make_spec("GU", 3, 2)
    assert weil_value_by_codim(gu32, WeilVariant.GU_WEIL, 1).as_fraction() == -4
    sp12 = make_spec("SpEven", 1, 2)
    assert weil_value_by_codim(sp12, WeilVariant.SP_EVEN_UNITARY, 1).as_fraction() == -2
    assert weil_value_by_codim(sp12, WeilVariant.SP_EVEN_LINEAR, 1).as_fraction() == 2
    with pytest.raises(ValueError):
        weil_value_by_codim(gu22, WeilVariant.GU_WEIL, 3)


@pytest.mark.parametrize(
    "fam,n,q,variant",
    [
        ("GL", 2, 3, WeilVariant.GL_WEIL),
        ("GU", 2, 2, WeilVariant.GU_WEIL),
        ("GU", 3, 2, WeilVariant.GU_WEIL),
        ("SpOdd", 1, 3, WeilVariant.SP_ODD_WEIL),
        ("SpEven", 1, 4, WeilVariant.SP_EVEN_LINEAR),
        ("SpEven", 1, 4, WeilVariant.SP_EVEN_UNITARY),
    ],
)
def test_modulus_squared_over_enumerated_groups(fam, n, q, variant):
    """|value|^2 at each codim equals the family's modulus law, exactly."""
    spec = make_spec(fam, n, q)
    deg = weil_degree(spec, variant)
    for g in enumerate_group(spec):
        codim = fixed_space_codim(spec, g)
        val = weil_value_by_codim(spec, variant, codim)
        ker = spec.dim - codim
        if fam == "SpOdd":
            expected = Fraction(q**ker)
        elif fam in ("GL", "GU"):
            expected = Fraction(q ** (2 * ker))
        else:
            expected = Fraction(q ** (2 * ker))
        assert val.abs_squared() == expected
        assert abs_ratio_squared(spec, variant, codim) == expected / deg**2


def test_gu_formula_verbatim_on_enumerated_groups():
    for n, q in [(2, 2), (3, 2)]:
        spec = make_spec("GU", n, q)
        for g in enumerate_group(spec):
            ker = spec.dim - fixed_space_codim(spec, g)
            val = weil_value_by_codim(spec, WeilVariant.GU_WEIL, spec.dim - ker)
            assert val.as_fraction() == (-1) ** n * (-q) ** ker


def test_sp_odd_class_values():
    sp25 = make_spec("SpOdd", 2, 5)
    v = weil_value_sp_odd_class(sp25, A21)
    assert (v.a, v.b) == (0, -5)  # -5 sqrt(5)
    sp23 = make_spec("SpOdd", 2, 3)
    v = weil_value_sp_odd_class(sp23, A21)
    assert (v.a, v.b) == (0, 3)  # +3 sqrt(-3) = i * 3^{3/2}
    sp35 = make_spec("SpOdd", 3, 5)
    v = weil_value_sp_odd_class(sp35, C3(2))
    assert v.as_fraction() == 25
    assert weil_value_sp_odd_class(sp25, IDENTITY).as_fraction() == 25


def test_sp_odd_class_value_symmetries():
    for n, q in [(2, 3), (2, 5), (3, 7)]:
        spec = make_spec("SpOdd", n, q)
        a21 = weil_value_sp_odd_class(spec, A21)
        a22 = weil_value_sp_odd_class(spec, A22)
        assert a22 == -a21
        assert a21.abs_squared() == Fraction(q ** (2 * n - 1))
        d21 = weil_value_sp_odd_class(spec, D21)
        d22 = weil_value_sp_odd_class(spec, D22)
        assert d21 == d22
        assert weil_value_sp_odd_class(spec, A31) == -weil_value_sp_odd_class(spec, A32)
        assert weil_value_sp_odd_class(spec, C1(1)) == weil_value_sp_odd_class(spec, C3(2))


def test_weil_scalar_arithmetic():
    d5 = weil_scalar(0, 1, 5)
    assert (d5 * d5).as_fraction() == 5
    d3 = weil_scalar(0, 1, 3)
    assert (d3 * d3).as_fraction() == -3
    x = weil_scalar(0, -5, 5)
    assert (x**4).as_fraction() == 15625
    assert (x**0).as_fraction() == 1
    y = weil_scalar(Fraction(1, 2), 2, 5)
    z = weil_scalar(3, Fraction(-1, 3), 5)
    assert (y + z) - z == y
    assert y * z == z * y
    with pytest.raises(ValueError):
        d5 * d3
    with pytest.raises(ValueError):
        d5 ** (-1)
    with pytest.raises(ValueError):
        weil_scalar(1, 1, 5).as_fraction()


def test_float_conversion():
    x = weil_scalar(1, 1, 5)
    assert abs(float(x) - (1 + 5**0.5)) < 1e-12
    c = weil_scalar(2, 1, 3)
    with pytest.raises(ValueError):
        float(c)
    re, im = c.float_parts()
    assert (re, abs(im - 3**0.5)) == (2.0, abs(im - 3**0.5))


def test_sqrt_bounds_are_directional():
    for x in [Fraction(2), Fraction(5, 7), Fraction(123456, 7)]:
        lo, hi = sqrt_lower(x), sqrt_upper(x)
        assert lo * lo <= x <= hi * hi
        assert hi - lo < Fraction(1, 10**15)
    assert sqrt_lower(Fraction(4)) == 2 == sqrt_upper(Fraction(4))


def test_rational_bounds_on_real_scalars():
    for a, b in [(1, 1), (1, -1), (Fraction(3, 7), Fraction(-2, 5)), (0, 3)]:
        x = weil_scalar(a, b, 5)
        lo, hi = rational_lower(x), rational_upper(x)
        assert lo <= hi
        assert hi - lo < Fraction(1, 10**15)
        true = float(a) + float(b) * 5**0.5
        assert float(lo) - 1e-9 <= true <= float(hi) + 1e-9
    # kappa = -1 values must be rational to admit real bounds
    assert rational_upper(weil_scalar(Fraction(7, 3), 0, 3)) == Fraction(7, 3)
    with pytest.raises(ValueError):
        rational_upper(weil_scalar(1, 1, 3))
