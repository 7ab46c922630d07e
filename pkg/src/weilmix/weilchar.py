"""Exact Weil character values for the four group families.

Values live in the ring Z[delta] with delta^2 = kappa*q (kappa = +1 for
q = 1 mod 4, -1 for q = 3 mod 4), represented as WeilScalar = a + b*delta
with rational a, b.  For q = 3 mod 4, delta stands for one fixed choice of
sqrt(-q); all even-power sums are independent of that choice, and odd-power
outputs carry the convention.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

from .clgroups import Family, GroupSpec
from .ffield import kappa_sign
from .transprod import SpClassKind, SpClassLabel


class WeilVariant(enum.Enum):
    GL_WEIL = "gl"
    GU_WEIL = "gu"
    SP_ODD_WEIL = "sp-odd"
    SP_EVEN_LINEAR = "linear"
    SP_EVEN_UNITARY = "unitary"


_COMPATIBLE = {
    Family.GL: (WeilVariant.GL_WEIL,),
    Family.GU: (WeilVariant.GU_WEIL,),
    Family.SP_ODD: (WeilVariant.SP_ODD_WEIL,),
    Family.SP_EVEN: (WeilVariant.SP_EVEN_LINEAR, WeilVariant.SP_EVEN_UNITARY),
}


def default_variant(family: Family) -> WeilVariant:
    return _COMPATIBLE[family][0]


def check_variant(spec: GroupSpec, variant: WeilVariant) -> None:
    if variant not in _COMPATIBLE[spec.family]:
        raise ValueError(f"variant {variant.value} incompatible with {spec.family.value}")


RationalLike = Union[int, Fraction]


@dataclass(frozen=True)
class WeilScalar:
    """a + b*delta with delta^2 = kappa*q."""

    a: Fraction
    b: Fraction
    kappa: int
    q: int

    @classmethod
    def of(cls, a: RationalLike, b: RationalLike, kappa: int, q: int) -> "WeilScalar":
        if kappa not in (1, -1):
            raise ValueError("kappa must be +1 or -1")
        return cls(Fraction(a), Fraction(b), kappa, q)

    @classmethod
    def rational(cls, a: RationalLike, kappa: int, q: int) -> "WeilScalar":
        return cls.of(a, 0, kappa, q)

    def _match(self, other: "WeilScalar") -> None:
        if (self.kappa, self.q) != (other.kappa, other.q):
            raise ValueError("mismatched (kappa, q) in WeilScalar arithmetic")

    def __add__(self, other: "WeilScalar") -> "WeilScalar":
        self._match(other)
        return WeilScalar(self.a + other.a, self.b + other.b, self.kappa, self.q)

    def __sub__(self, other: "WeilScalar") -> "WeilScalar":
        self._match(other)
        return WeilScalar(self.a - other.a, self.b - other.b, self.kappa, self.q)

    def __neg__(self) -> "WeilScalar":
        return WeilScalar(-self.a, -self.b, self.kappa, self.q)

    def __mul__(self, other) -> "WeilScalar":
        if isinstance(other, (int, Fraction)):
            return WeilScalar(self.a * other, self.b * other, self.kappa, self.q)
        self._match(other)
        d2 = self.kappa * self.q
        return WeilScalar(
            self.a * other.a + self.b * other.b * d2,
            self.a * other.b + self.b * other.a,
            self.kappa,
            self.q,
        )

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "WeilScalar":
        if e < 0:
            raise ValueError("negative powers not supported")
        out = WeilScalar.rational(1, self.kappa, self.q)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} has a nonzero delta part")
        return self.a

    def abs_squared(self) -> Fraction:
        """|a + b*delta|^2 as an exact rational.  Always defined for
        kappa = -1 (complex modulus); for kappa = +1 defined when the value
        is purely rational or purely a delta multiple (which covers every
        character value here)."""
        if self.kappa == -1:
            return self.a * self.a + self.q * self.b * self.b
        if self.b == 0:
            return self.a * self.a
        if self.a == 0:
            return self.q * self.b * self.b
        raise ValueError("mixed a + b*sqrt(q) has no rational square")

    def __float__(self) -> float:
        if self.kappa == -1 and self.b != 0:
            raise ValueError("complex value has no float representation")
        return float(self.a) + float(self.b) * (self.q ** 0.5)

    def float_parts(self) -> tuple[float, float]:
        """(real, imag) under delta = i*sqrt(q) when kappa = -1."""
        if self.kappa == 1:
            return float(self.a) + float(self.b) * self.q ** 0.5, 0.0
        return float(self.a), float(self.b) * self.q ** 0.5

    def __str__(self) -> str:
        root = f"sqrt({self.kappa * self.q})"
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*{root}"
        return f"{self.a} + {self.b}*{root}"


def weil_scalar(a: RationalLike, b: RationalLike, q: int) -> WeilScalar:
    return WeilScalar.of(a, b, kappa_sign(q), q)


def weil_degree(spec: GroupSpec, variant: WeilVariant) -> int:
    """Dimension of the driving representation: q^n for GL/GU/SpOdd, q^2n
    for both even-characteristic symplectic characters."""
    check_variant(spec, variant)
    if spec.family is Family.SP_EVEN:
        return spec.q ** (2 * spec.n)
    return spec.q**spec.n


def weil_value_by_codim(spec: GroupSpec, variant: WeilVariant, codim: int) -> WeilScalar:
    """Character value on an element whose fixed space has the given
    codimension.  Exact for GL/GU/SpEven; for SpOdd only the modulus depends
    on the codimension, so the returned value fixes the documented phase
    (rational for even kernel dimension, a pure delta multiple otherwise)."""
    check_variant(spec, variant)
    n, q = spec.n, spec.q
    dim = spec.dim
    if not 0 <= codim <= dim:
        raise ValueError(f"codim {codim} out of range [0, {dim}]")
    ker = dim - codim
    if spec.family is Family.GL:
        return WeilScalar.rational(q**ker, 1, q)
    if spec.family is Family.GU:
        return WeilScalar.rational((-1) ** n * (-q) ** ker, 1, q)
    if spec.family is Family.SP_EVEN:
        if variant is WeilVariant.SP_EVEN_LINEAR:
            return WeilScalar.rational(q**ker, 1, q)
        return WeilScalar.rational((-q) ** ker, 1, q)
    kappa = kappa_sign(q)
    if ker % 2 == 0:
        return WeilScalar.of(q ** (ker // 2), 0, kappa, q)
    return WeilScalar.of(0, q ** ((ker - 1) // 2), kappa, q)


def weil_value_sp_odd_class(spec: GroupSpec, label: SpClassLabel) -> WeilScalar:
    """Exact value of the degree-q^n odd-symplectic Weil character on the
    labelled classes of rank-<=2 transvection products (n >= 2)."""
    if spec.family is not Family.SP_ODD:
        raise ValueError("class values require an SpOdd spec")
    if spec.n < 2:
        raise ValueError("class labels require n >= 2")
    n, q = spec.n, spec.q
    kappa = kappa_sign(q)
    k = label.kind
    if k is SpClassKind.IDENTITY:
        return WeilScalar.of(q**n, 0, kappa, q)
    if k is SpClassKind.A21:
        return WeilScalar.of(0, -kappa * q ** (n - 1), kappa, q)
    if k is SpClassKind.A22:
        return WeilScalar.of(0, kappa * q ** (n - 1), kappa, q)
    if k is SpClassKind.A31:
        return WeilScalar.of(q ** (n - 1), 0, kappa, q)
    if k is SpClassKind.A32:
        return WeilScalar.of(-(q ** (n - 1)), 0, kappa, q)
    if k is SpClassKind.C1:
        return WeilScalar.of(-((-1) ** label.index) * q ** (n - 1), 0, kappa, q)
    if k is SpClassKind.C3:
        return WeilScalar.of((-1) ** label.index * q ** (n - 1), 0, kappa, q)
    if k in (SpClassKind.D21, SpClassKind.D22):
        return WeilScalar.of(kappa * q ** (n - 1), 0, kappa, q)
    raise ValueError(f"unsupported label {label}")


def abs_ratio_squared(spec: GroupSpec, variant: WeilVariant, codim: int) -> Fraction:
    """|chi(g)/chi(1)|^2 for g of the given fixed-space codimension; exact
    rational for every family."""
    check_variant(spec, variant)
    n, q = spec.n, spec.q
    ker = spec.dim - codim
    if spec.family is Family.SP_ODD:
        return Fraction(q**ker, q ** (2 * n))
    if spec.family is Family.SP_EVEN:
        return Fraction(q ** (2 * ker), q ** (4 * n))
    return Fraction(q ** (2 * ker), q ** (2 * n))


# directional rational bounds on sqrt(x), used when a rigorous rational
# over/under-approximation of an irrational quantity is required

_SQRT_BITS = 64


def sqrt_lower(x: Fraction) -> Fraction:
    if x < 0:
        raise ValueError("sqrt of negative")
    scale = 1 << _SQRT_BITS
    num = isqrt(x.numerator * x.denominator * scale * scale)
    return Fraction(num, x.denominator * scale)


def sqrt_upper(x: Fraction) -> Fraction:
    if x < 0:
        raise ValueError("sqrt of negative")
    scale = 1 << _SQRT_BITS
    num = isqrt(x.numerator * x.denominator * scale * scale)
    if Fraction(num, x.denominator * scale) ** 2 == x:
        return Fraction(num, x.denominator * scale)
    return Fraction(num + 1, x.denominator * scale)


def rational_upper(x: WeilScalar) -> Fraction:
    """A rational upper bound on the real value a + b*sqrt(q) (kappa=+1) or
    the real part a (kappa=-1, where b must vanish)."""
    if x.kappa == -1:
        return x.as_fraction()
    if x.b == 0:
        return x.a
    root = sqrt_upper(Fraction(x.q)) if x.b > 0 else sqrt_lower(Fraction(x.q))
    return x.a + x.b * root


def rational_lower(x: WeilScalar) -> Fraction:
    if x.kappa == -1:
        return x.as_fraction()
    if x.b == 0:
        return x.a
    root = sqrt_lower(Fraction(x.q)) if x.b > 0 else sqrt_upper(Fraction(x.q))
    return x.a + x.b * root
