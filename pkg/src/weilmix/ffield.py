"""Exact arithmetic in small finite fields and their quadratic extensions.

An element of GF(p^k) is encoded as the integer sum(c_i * p**i) where
(c_0, ..., c_{k-1}) are its coordinates in the power basis of the defining
polynomial.  All per-field tables are built once and cached, so arithmetic
is table lookups on plain ints.  Fields are immutable after construction
and safe to share between threads.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

#: largest q for which flat q*q add/mul tables are materialised (matrix work
#: requires them; scalar-only fields such as GF(121^2) stay table-free).
_FLAT_TABLE_MAX_Q = 512

#: hard cap on constructible fields: exp/log tables are O(q).  Large q only
#: ever appears in closed-form bound arithmetic, which is plain-int work and
#: never builds a field.
MAX_FIELD_SIZE = 1 << 20


class SquareClass(enum.Enum):
    ZERO = "zero"
    SQUARE = "square"
    NONSQUARE = "nonsquare"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power_decompose(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def is_prime_power(q: int) -> bool:
    try:
        prime_power_decompose(q)
        return True
    except ValueError:
        return False


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p), coefficients low-degree first


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p) if p > 2 else m[-1]
    while a and len(a) - 1 >= dm:
        shift = len(a) - 1 - dm
        factor = (a[-1] * inv_lead) % p
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _poly_trim(a)
    return a


def _poly_mul_mod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _poly_mod(out, m, p)


def _poly_divides(d: list[int], f: list[int], p: int) -> bool:
    return not _poly_mod(f, d, p)


def _is_irreducible(f: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    deg = len(f) - 1
    if deg <= 1:
        return deg == 1
    for d in range(1, deg // 2 + 1):
        for coeffs in itertools.product(range(p), repeat=d):
            cand = list(coeffs) + [1]
            if _poly_divides(cand, f, p):
                return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over GF(p).

    Coefficient tuples are compared low-degree-first.
    """
    for coeffs in itertools.product(range(p), repeat=k):
        cand = list(coeffs) + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise RuntimeError(f"no irreducible polynomial of degree {k} over GF({p})")


class Field:
    """GF(p^k) with int-coded elements in [0, q)."""

    def __init__(self, q: int):
        p, k = prime_power_decompose(q)
        if q > MAX_FIELD_SIZE:
            raise ValueError(
                f"q={q} exceeds the field construction limit {MAX_FIELD_SIZE}; "
                "closed-form operations take (n, q) integers directly"
            )
        self.q = q
        self.p = p
        self.k = k
        self.modulus: tuple[int, ...] = _smallest_irreducible(p, k)
        self._digits: list[tuple[int, ...]] = [self._decode(x) for x in range(q)]
        self.generator = self._find_generator()
        self._build_log_tables()
        if q <= _FLAT_TABLE_MAX_Q:
            self._build_flat_tables()
        else:
            self.add_table = None
            self.mul_table = None
        self.neg_table = tuple(self._neg_raw(x) for x in range(q))
        self.inv_table = tuple(
            self.exp[(q - 1 - self.log[x]) % (q - 1)] if x else 0 for x in range(q)
        )

    # -- construction helpers

    def _decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    def _encode(self, digits) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.p + d
        return code

    def _mul_raw(self, a: int, b: int) -> int:
        da, db = self._digits[a], self._digits[b]
        prod = _poly_mul_mod(list(da), list(db), list(self.modulus), self.p)
        prod += [0] * (self.k - len(prod))
        return self._encode(prod)

    def _neg_raw(self, a: int) -> int:
        return self._encode(tuple((-d) % self.p for d in self._digits[a]))

    def _pow_raw(self, a: int, e: int) -> int:
        out, base = 1, a
        while e:
            if e & 1:
                out = self._mul_raw(out, base)
            base = self._mul_raw(base, base)
            e >>= 1
        return out

    def _find_generator(self) -> int:
        n = self.q - 1
        if n == 1:
            return 1
        factors = _prime_factors(n)
        for x in range(1, self.q):
            if all(self._pow_raw(x, n // f) != 1 for f in factors):
                return x
        raise RuntimeError("no multiplicative generator found")

    def _build_log_tables(self) -> None:
        n = self.q - 1
        exp = [0] * n
        log = [0] * self.q
        acc = 1
        for i in range(n):
            exp[i] = acc
            log[acc] = i
            acc = self._mul_raw(acc, self.generator)
        self.exp = tuple(exp)
        self.log = tuple(log)

    def _build_flat_tables(self) -> None:
        q = self.q
        add = [0] * (q * q)
        mul = [0] * (q * q)
        for a in range(q):
            da = self._digits[a]
            base = a * q
            for b in range(q):
                db = self._digits[b]
                add[base + b] = self._encode(
                    tuple((x + y) % self.p for x, y in zip(da, db))
                )
        n = q - 1
        exp, log = self.exp, self.log
        for a in range(1, q):
            la = log[a]
            base = a * q
            for b in range(1, q):
                mul[base + b] = exp[(la + log[b]) % n]
        self.add_table = add
        self.mul_table = mul

    # -- arithmetic

    def add(self, a: int, b: int) -> int:
        if self.add_table is not None:
            return self.add_table[a * self.q + b]
        da, db = self._digits[a], self._digits[b]
        return self._encode(tuple((x + y) % self.p for x, y in zip(da, db)))

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg_table[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def scalar(self, m: int) -> int:
        """The integer m viewed as m * 1 in the prime subfield."""
        return m % self.p

    def coeffs(self, a: int) -> tuple[int, ...]:
        return self._digits[a]

    def from_coeffs(self, digits) -> int:
        digits = tuple(int(d) % self.p for d in digits)
        if len(digits) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {len(digits)}")
        return self._encode(digits)

    # -- squares

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        if self.p == 2:
            return True
        return self.log[a] % 2 == 0

    def square_class(self, a: int) -> SquareClass:
        if a == 0:
            return SquareClass.ZERO
        return SquareClass.SQUARE if self.is_square(a) else SquareClass.NONSQUARE

    def sqrt(self, a: int) -> Optional[int]:
        """A square root of a, or None if a is a nonsquare."""
        if a == 0:
            return 0
        la = self.log[a]
        if self.p == 2:
            # squaring is a bijection in characteristic 2
            n = self.q - 1
            return self.exp[(la * ((n + 1) // 2)) % n] if n % 2 == 1 else self.exp[la // 2]
        if la % 2:
            return None
        return self.exp[la // 2]

    def squares(self) -> list[int]:
        """Nonzero squares, ascending by code."""
        return sorted(x for x in range(1, self.q) if self.is_square(x))

    def nonsquares(self) -> list[int]:
        return sorted(x for x in range(1, self.q) if not self.is_square(x))

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        la = self.log[a]
        from math import gcd

        return n // gcd(la, n)

    def __repr__(self) -> str:
        return f"Field(q={self.q})"


@lru_cache(maxsize=None)
def gf(q: int) -> Field:
    return Field(q)


def kappa_sign(q: int) -> int:
    """(-1)^((q-1)/2) for odd q."""
    if q % 2 == 0:
        raise ValueError("kappa is defined for odd q only")
    return 1 if q % 4 == 1 else -1


class FieldSpec:
    """GF(q) together with GF(q^2), the subfield embedding, and the fixed
    generator theta of GF(q^2)^x (gamma = theta^(q+1), eta = theta^(q-1))."""

    def __init__(self, q: int):
        self.q = q
        self.base = gf(q)
        self.ext = gf(q * q)
        self.p = self.base.p
        self.k = self.base.k
        self.modulus = self.base.modulus
        self.kappa = kappa_sign(q) if q % 2 else None
        self.theta = self.ext.generator
        self.theta_order = q * q - 1
        self.gamma = self.ext.pow(self.theta, q + 1)
        self.eta_elt = self.ext.pow(self.theta, q - 1)
        self._embed_table = self._build_embedding()
        self._trace_zero_unit: Optional[int] = None

    def _build_embedding(self) -> tuple[int, ...]:
        ext, base = self.ext, self.base
        if self.k == 1:
            return tuple(range(self.q))
        root = None
        for y in range(ext.q):
            acc = 0
            for c in reversed(self.modulus):
                acc = ext.add(ext.mul(acc, y), ext.scalar(c))
            if acc == 0:
                root = y
                break
        if root is None:
            raise RuntimeError("base modulus has no root in the quadratic extension")
        table = []
        for x in range(self.q):
            acc = 0
            for c in reversed(base.coeffs(x)):
                acc = ext.add(ext.mul(acc, root), ext.scalar(c))
            table.append(acc)
        return tuple(table)

    def embed(self, x: int) -> int:
        """Image of x in GF(q^2) under the fixed subfield embedding."""
        return self._embed_table[x]

    def frobenius(self, y: int) -> int:
        """y -> y^q on GF(q^2); an involution fixing exactly the base field."""
        return self.ext.pow(y, self.q)

    def in_base(self, y: int) -> bool:
        return self.frobenius(y) == y

    def trace_zero_unit(self) -> int:
        """Smallest nonzero c in GF(q^2) with c + c^q = 0."""
        if self._trace_zero_unit is None:
            ext = self.ext
            for c in range(1, ext.q):
                if ext.add(c, self.frobenius(c)) == 0:
                    self._trace_zero_unit = c
                    break
            else:
                raise RuntimeError("no trace-zero unit found")
        return self._trace_zero_unit

    def dlog(self, y: int, base_elt: int, order: int) -> int:
        """Discrete log of y to base_elt, scanning exponents 0..order-1."""
        acc = 1
        for i in range(order):
            if acc == y:
                return i
            acc = self.ext.mul(acc, base_elt)
        raise ValueError("element not in the cyclic group generated by the base")

    def __repr__(self) -> str:
        return f"FieldSpec(q={self.q})"


@lru_cache(maxsize=None)
def ff_make(q: int) -> FieldSpec:
    """Build the paired field structure for GF(q); errors on non prime powers."""
    prime_power_decompose(q)
    return FieldSpec(q)


# ---------------------------------------------------------------------------
# square-counting results used by the odd-characteristic symplectic analysis


def count_adjacent_squares(q: int) -> int:
    """Number of pairs (x, y) of nonzero squares in GF(q) with x + 1 = y.

    Closed form: (q-5)/4 for q = 1 mod 4 and (q-3)/4 for q = 3 mod 4.
    """
    if q % 2 == 0:
        raise ValueError("q must be odd")
    prime_power_decompose(q)
    return (q - 5) // 4 if q % 4 == 1 else (q - 3) // 4


@dataclass(frozen=True)
class Sq2Entry:
    alpha: int
    split: bool  # True: 2 - alpha = gamma^i + gamma^-i; False: eta^j + eta^-j
    index: int  # canonical representative, min(i, order - i)


@dataclass(frozen=True)
class Sq2Census:
    q: int
    split_count: int
    nonsplit_count: int
    entries: tuple[Sq2Entry, ...]

    def counts(self) -> tuple[int, int]:
        return self.split_count, self.nonsplit_count


def sq2_census(q: int) -> Sq2Census:
    """Classify 2 - alpha = lambda + 1/lambda over nonzero squares alpha != 4.

    lambda lies in GF(q)^x (split, a power of gamma) exactly when the
    discriminant alpha*(alpha-4) is a nonzero square; otherwise lambda has
    norm 1 in GF(q^2) (a power of eta).  The index parities are asserted per
    alpha: split indices are even and nonsplit odd for q = 1 mod 4, and the
    reverse for q = 3 mod 4.
    """
    if q % 2 == 0:
        raise ValueError("q must be odd")
    spec = ff_make(q)
    base, ext = spec.base, spec.ext
    if q == 3:
        return Sq2Census(q, 0, 0, ())

    four = base.scalar(4)
    two = base.scalar(2)
    half = ext.inv(ext.scalar(2))
    entries = []
    split = nonsplit = 0
    for alpha in base.squares():
        if alpha == four:
            continue
        disc = base.mul(alpha, base.sub(alpha, four))
        cls = base.square_class(disc)
        t_ext = spec.embed(base.sub(two, alpha))
        s = ext.sqrt(spec.embed(disc))
        assert s is not None  # every base-field element is a square in GF(q^2)
        lam = ext.mul(ext.add(t_ext, s), half)
        if cls is SquareClass.SQUARE:
            i = spec.dlog(lam, spec.gamma, q - 1)
            i = min(i, (q - 1) - i)
            want_even = q % 4 == 1
            if (i % 2 == 0) != want_even:
                raise AssertionError(
                    f"split index parity violated at q={q}, alpha={alpha}, i={i}"
                )
            entries.append(Sq2Entry(alpha, True, i))
            split += 1
        else:
            j = spec.dlog(lam, spec.eta_elt, q + 1)
            j = min(j, (q + 1) - j)
            want_odd = q % 4 == 1
            if (j % 2 == 1) != want_odd:
                raise AssertionError(
                    f"nonsplit index parity violated at q={q}, alpha={alpha}, j={j}"
                )
            entries.append(Sq2Entry(alpha, False, j))
            nonsplit += 1

    expected = ((q - 5) // 4, (q - 1) // 4) if q % 4 == 1 else ((q - 3) // 4, (q - 3) // 4)
    if (split, nonsplit) != expected:
        raise AssertionError(
            f"square census counts {(split, nonsplit)} != expected {expected} at q={q}"
        )
    return Sq2Census(q, split, nonsplit, tuple(entries))
