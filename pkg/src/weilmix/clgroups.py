"""Matrix groups over small finite fields: GL_n(q), GU_n(q), Sp_2n(q) with
their canonical forms, transvections, element enumeration, and exactly
uniform sampling.

Matrices are immutable `Mat` values over a table-driven `Field`; group
elements are plain `Mat` instances validated against the group's form.  All
samplers take an explicit `random.Random` so parallel callers seed their own
generators (see `mcengine.derive_seed`).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from random import Random
from typing import Iterator, Optional, Sequence

from .ffield import Field, FieldSpec, SquareClass, ff_make, gf, prime_power_decompose

DEFAULT_ENUM_LIMIT = 10**7
SAMPLER_REJECTION_CAP = 10**4


class Family(enum.Enum):
    GL = "GL"
    GU = "GU"
    SP_ODD = "SpOdd"
    SP_EVEN = "SpEven"


class FormKind(enum.Enum):
    NONE = "none"
    SYMPLECTIC = "symplectic"
    HERMITIAN = "hermitian"


# ---------------------------------------------------------------------------
# matrices


class Mat:
    """Immutable matrix over a Field; data is a flat row-major tuple of codes."""

    __slots__ = ("field", "n", "m", "data", "_hash")

    def __init__(self, field: Field, n: int, m: int, data: Sequence[int]):
        self.field = field
        self.n = n
        self.m = m
        self.data = tuple(data)
        if len(self.data) != n * m:
            raise ValueError("matrix data length mismatch")
        self._hash = hash((field.q, n, m, self.data))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        data = [0] * (n * n)
        for i in range(n):
            data[i * n + i] = 1
        return cls(field, n, n, data)

    @classmethod
    def zeros(cls, field: Field, n: int, m: int) -> "Mat":
        return cls(field, n, m, [0] * (n * m))

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[int]]) -> "Mat":
        n = len(rows)
        m = len(rows[0]) if n else 0
        return cls(field, n, m, [x for row in rows for x in row])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i * self.m + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i * self.m : (i + 1) * self.m]

    def col(self, j: int) -> tuple[int, ...]:
        return self.data[j :: self.m]

    def rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.n)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self._hash == other._hash
            and self.data == other.data
            and self.field.q == other.field.q
            and self.n == other.n
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.n))
        return f"Mat(q={self.field.q}, [{body}])"

    def __mul__(self, other: "Mat") -> "Mat":
        f = self.field
        if other.field is not f and other.field.q != f.q:
            raise ValueError("field mismatch in matrix product")
        if self.m != other.n:
            raise ValueError("shape mismatch in matrix product")
        n, k, m = self.n, self.m, other.m
        mul = f.mul_table
        add = f.add_table
        if mul is None or add is None:
            raise ValueError(f"matrix arithmetic needs flat tables (q={f.q} too large)")
        q = f.q
        a, b = self.data, other.data
        out = [0] * (n * m)
        for i in range(n):
            arow = a[i * k : (i + 1) * k]
            orow = i * m
            for j in range(m):
                acc = 0
                off = j
                for t in range(k):
                    acc = add[acc * q + mul[arow[t] * q + b[off]]]
                    off += m
                out[orow + j] = acc
        return Mat(f, n, m, out)

    def __add__(self, other: "Mat") -> "Mat":
        f = self.field
        return Mat(f, self.n, self.m, [f.add(x, y) for x, y in zip(self.data, other.data)])

    def __sub__(self, other: "Mat") -> "Mat":
        f = self.field
        return Mat(f, self.n, self.m, [f.sub(x, y) for x, y in zip(self.data, other.data)])

    def __neg__(self) -> "Mat":
        f = self.field
        return Mat(f, self.n, self.m, [f.neg(x) for x in self.data])

    def scale(self, c: int) -> "Mat":
        f = self.field
        return Mat(f, self.n, self.m, [f.mul(c, x) for x in self.data])

    def transpose(self) -> "Mat":
        return Mat(
            self.field,
            self.m,
            self.n,
            [self.data[i * self.m + j] for j in range(self.m) for i in range(self.n)],
        )

    def map_entries(self, fn) -> "Mat":
        return Mat(self.field, self.n, self.m, [fn(x) for x in self.data])

    def pow(self, e: int) -> "Mat":
        if self.n != self.m:
            raise ValueError("pow of non-square matrix")
        out = Mat.identity(self.field, self.n)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def rank(self) -> int:
        return len(row_echelon(self.rows(), self.field)[1])

    def is_identity(self) -> bool:
        return self == Mat.identity(self.field, self.n)


# ---------------------------------------------------------------------------
# linear algebra helpers (lists of code rows over a Field)


def row_echelon(rows: list[list[int]], f: Field) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form; returns (rows, pivot column indices)."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = f.inv(rows[r][c])
        rows[r] = [f.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def nullspace_basis(rows: list[list[int]], f: Field, ncols: int) -> list[list[int]]:
    if not rows:
        basis = []
        for j in range(ncols):
            v = [0] * ncols
            v[j] = 1
            basis.append(v)
        return basis
    ech, pivots = row_echelon(rows, f)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for j in free:
        v = [0] * ncols
        v[j] = 1
        for r, c in enumerate(pivots):
            v[c] = f.neg(ech[r][j])
        basis.append(v)
    return basis


def solve_particular(rows: list[list[int]], rhs: list[int], f: Field) -> Optional[list[int]]:
    """One solution x of rows @ x = rhs, or None if inconsistent."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ech, pivots = row_echelon(aug, f)
    for row in ech:
        if row[-1] and not any(row[:-1]):
            return None
    x = [0] * ncols
    for r, c in enumerate(pivots):
        if c == ncols:
            return None
        x[c] = ech[r][-1]
    return x


def vec_add(f: Field, u: Sequence[int], v: Sequence[int]) -> list[int]:
    return [f.add(a, b) for a, b in zip(u, v)]


def vec_scale(f: Field, c: int, v: Sequence[int]) -> list[int]:
    return [f.mul(c, x) for x in v]


def vec_is_multiple(f: Field, u: Sequence[int], v: Sequence[int]) -> Optional[int]:
    """t with v = t*u, or None if v is not a multiple of u (u nonzero)."""
    lead = next((i for i, x in enumerate(u) if x), None)
    if lead is None:
        raise ValueError("u must be nonzero")
    t = f.div(v[lead], u[lead])
    for a, b in zip(u, v):
        if f.mul(t, a) != b:
            return None
    return t


# ---------------------------------------------------------------------------
# group specifications


@dataclass(frozen=True)
class GroupSpec:
    family: Family
    n: int
    q: int

    def __post_init__(self):
        prime_power_decompose(self.q)  # validate without building tables
        if self.family is Family.SP_ODD and self.q % 2 == 0:
            raise ValueError("SpOdd requires odd q")
        if self.family is Family.SP_EVEN and self.q % 2 == 1:
            raise ValueError("SpEven requires even q")
        if self.n < 1:
            raise ValueError("n must be positive")

    @property
    def dim(self) -> int:
        """Dimension of the natural module (and matrix size)."""
        return self.n if self.family in (Family.GL, Family.GU) else 2 * self.n

    @property
    def matrix_q(self) -> int:
        return self.q * self.q if self.family is Family.GU else self.q

    @property
    def matrix_field(self) -> Field:
        return gf(self.matrix_q)

    @property
    def fieldspec(self) -> FieldSpec:
        return ff_make(self.q)

    @property
    def is_symplectic(self) -> bool:
        return self.family in (Family.SP_ODD, Family.SP_EVEN)

    def __str__(self) -> str:
        return f"{self.family.value}(n={self.n}, q={self.q})"


def sp_family(q: int) -> Family:
    return Family.SP_ODD if q % 2 else Family.SP_EVEN


def make_spec(family: Family | str, n: int, q: int) -> GroupSpec:
    if isinstance(family, str):
        family = Family(family)
    return GroupSpec(family, n, q)


@dataclass(frozen=True)
class FormData:
    kind: FormKind
    gram: Optional[Mat]


@lru_cache(maxsize=None)
def form_data(spec: GroupSpec) -> FormData:
    f = spec.matrix_field
    d = spec.dim
    if spec.family is Family.GL:
        return FormData(FormKind.NONE, None)
    if spec.family is Family.GU:
        return FormData(FormKind.HERMITIAN, Mat.identity(f, d))
    n = spec.n
    data = [0] * (d * d)
    one = 1
    minus_one = f.neg(1)
    for i in range(n):
        data[i * d + (n + i)] = one
        data[(n + i) * d + i] = minus_one
    return FormData(FormKind.SYMPLECTIC, Mat(f, d, d, data))


def group_conjugate(spec: GroupSpec, x: int) -> int:
    """Entry conjugation: frobenius for GU, identity otherwise."""
    if spec.family is Family.GU:
        return spec.fieldspec.frobenius(x)
    return x


def form_value(spec: GroupSpec, u: Sequence[int], v: Sequence[int]) -> int:
    """(u|v): u^T J v for symplectic, sum(conj(u_i) v_i) for Hermitian."""
    f = spec.matrix_field
    if spec.family is Family.GU:
        fs = spec.fieldspec
        acc = 0
        for a, b in zip(u, v):
            acc = f.add(acc, f.mul(fs.frobenius(a), b))
        return acc
    if spec.is_symplectic:
        n = spec.n
        acc = 0
        for i in range(n):
            acc = f.add(acc, f.mul(u[i], v[n + i]))
            acc = f.sub(acc, f.mul(u[n + i], v[i]))
        return acc
    raise ValueError("GL carries no form")


def preserves_form(spec: GroupSpec, M: Mat) -> bool:
    """True iff M^T * gram * sigma(M) = gram (sigma = conjugation for GU)."""
    fd = form_data(spec)
    if fd.kind is FormKind.NONE:
        return True
    sigma_m = M.map_entries(lambda x: group_conjugate(spec, x)) if spec.family is Family.GU else M
    return M.transpose() * fd.gram * sigma_m == fd.gram


def in_group(spec: GroupSpec, M: Mat) -> bool:
    if M.n != spec.dim or M.field.q != spec.matrix_q:
        return False
    if M.rank() != spec.dim:
        return False
    return preserves_form(spec, M)


# ---------------------------------------------------------------------------
# orders (pure integer formulas; no field construction)


def gl_order(n: int, q: int) -> int:
    out = q ** (n * (n - 1) // 2)
    for i in range(1, n + 1):
        out *= q**i - 1
    return out


def gu_order(n: int, q: int) -> int:
    out = q ** (n * (n - 1) // 2)
    for i in range(1, n + 1):
        out *= q**i - (-1) ** i
    return out


def sp_order(n: int, q: int) -> int:
    out = q ** (n * n)
    for i in range(1, n + 1):
        out *= q ** (2 * i) - 1
    return out


def group_order(spec: GroupSpec) -> int:
    if spec.family is Family.GL:
        return gl_order(spec.n, spec.q)
    if spec.family is Family.GU:
        return gu_order(spec.n, spec.q)
    return sp_order(spec.n, spec.q)


# ---------------------------------------------------------------------------
# transvections


@dataclass(frozen=True)
class GLTransvection:
    v: tuple[int, ...]
    w_star: tuple[int, ...]


@dataclass(frozen=True)
class GUTransvection:
    v: tuple[int, ...]  # isotropic direction
    c: int  # nonzero scalar with c + c^q = 0


@dataclass(frozen=True)
class SpTransvection:
    alpha: int
    v: tuple[int, ...]


TransvectionParams = GLTransvection | GUTransvection | SpTransvection


def _require_nonzero_vec(v: Sequence[int], name: str) -> None:
    if not any(v):
        raise ValueError(f"{name} must be a nonzero vector")


def make_transvection(spec: GroupSpec, params: TransvectionParams) -> Mat:
    f = spec.matrix_field
    d = spec.dim
    ident = Mat.identity(f, d)
    if spec.family is Family.GL:
        if not isinstance(params, GLTransvection):
            raise ValueError("GL expects (v, w_star) parameters")
        v, w = params.v, params.w_star
        _require_nonzero_vec(v, "v")
        _require_nonzero_vec(w, "w_star")
        pairing = 0
        for a, b in zip(w, v):
            pairing = f.add(pairing, f.mul(a, b))
        if pairing != 0:
            raise ValueError("GL transvection requires w_star(v) = 0")
        data = list(ident.data)
        for i in range(d):
            if v[i]:
                for j in range(d):
                    data[i * d + j] = f.add(data[i * d + j], f.mul(v[i], w[j]))
        return Mat(f, d, d, data)
    if spec.family is Family.GU:
        if not isinstance(params, GUTransvection):
            raise ValueError("GU expects (v, c) parameters")
        v, c = params.v, params.c
        _require_nonzero_vec(v, "v")
        if c == 0:
            raise ValueError("c must be nonzero")
        fs = spec.fieldspec
        if f.add(c, fs.frobenius(c)) != 0:
            raise ValueError("GU transvection requires c + c^q = 0")
        if form_value(spec, v, v) != 0:
            raise ValueError("GU transvection requires isotropic v")
        cq = fs.frobenius(c)
        w_row = [f.mul(cq, fs.frobenius(x)) for x in v]
        data = list(ident.data)
        for i in range(d):
            if v[i]:
                for j in range(d):
                    data[i * d + j] = f.add(data[i * d + j], f.mul(v[i], w_row[j]))
        return Mat(f, d, d, data)
    if not isinstance(params, SpTransvection):
        raise ValueError("Sp expects (alpha, v) parameters")
    alpha, v = params.alpha, params.v
    _require_nonzero_vec(v, "v")
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    w_row = vec_scale(f, alpha, symplectic_covector(spec, v))
    data = list(ident.data)
    for i in range(d):
        if v[i]:
            for j in range(d):
                data[i * d + j] = f.add(data[i * d + j], f.mul(v[i], w_row[j]))
    return Mat(f, d, d, data)


def symplectic_covector(spec: GroupSpec, v: Sequence[int]) -> list[int]:
    """Row vector v^T J for the canonical Gram [[0, I], [-I, 0]]."""
    f = spec.matrix_field
    n = spec.n
    return [f.neg(x) for x in v[n:]] + list(v[:n])


def transvection_class_tag(spec: GroupSpec, alpha: int) -> Optional[SquareClass]:
    if spec.family is Family.SP_ODD:
        return spec.matrix_field.square_class(alpha)
    return None


def transvection_census(spec: GroupSpec) -> dict[Optional[SquareClass], int]:
    """Exact class sizes of transvections, keyed by class tag (None = single class)."""
    n, q = spec.n, spec.q
    if spec.family is Family.GL:
        if n < 2:
            raise ValueError("GL transvections require n >= 2")
        return {None: (q**n - 1) * (q ** (n - 1) - 1) // (q - 1)}
    if spec.family is Family.GU:
        if n < 2:
            raise ValueError("GU transvections require n >= 2")
        count = (q**n - (-1) ** n) * (q ** (n - 1) - (-1) ** (n - 1)) // (q + 1)
        return {None: count}
    total = q ** (2 * n) - 1
    if spec.family is Family.SP_EVEN:
        return {None: total}
    return {SquareClass.SQUARE: total // 2, SquareClass.NONSQUARE: total // 2}


def _all_vectors(f: Field, d: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(f.q), repeat=d)


def _nonzero_vectors(f: Field, d: int) -> Iterator[tuple[int, ...]]:
    return (v for v in _all_vectors(f, d) if any(v))


def isotropic_vectors(spec: GroupSpec) -> list[tuple[int, ...]]:
    f = spec.matrix_field
    return [
        v
        for v in _nonzero_vectors(f, spec.dim)
        if form_value(spec, v, v) == 0
    ]


def trace_zero_units(spec: GroupSpec) -> list[int]:
    fs = spec.fieldspec
    f = spec.matrix_field
    return [c for c in range(1, f.q) if f.add(c, fs.frobenius(c)) == 0]


def enumerate_transvections(
    spec: GroupSpec, class_tag: Optional[SquareClass] = None
) -> list[Mat]:
    """All distinct transvections (of the given SpOdd class, when provided)."""
    f = spec.matrix_field
    seen: dict[Mat, None] = {}
    if spec.family is Family.GL:
        d = spec.dim
        for v in _nonzero_vectors(f, d):
            rows = [list(v)]
            for w in _basis_combinations(nullspace_basis(rows, f, d), f):
                seen.setdefault(
                    make_transvection(spec, GLTransvection(tuple(v), tuple(w)))
                )
    elif spec.family is Family.GU:
        units = trace_zero_units(spec)
        for v in isotropic_vectors(spec):
            for c in units:
                seen.setdefault(make_transvection(spec, GUTransvection(v, c)))
    else:
        if class_tag is None:
            alphas = list(range(1, f.q))
        elif class_tag is SquareClass.SQUARE:
            alphas = f.squares()
        elif class_tag is SquareClass.NONSQUARE:
            alphas = f.nonsquares()
        else:
            raise ValueError("invalid class tag")
        if spec.family is Family.SP_EVEN and class_tag is not None:
            raise ValueError("SpEven has a single transvection class")
        for v in _nonzero_vectors(f, spec.dim):
            for alpha in alphas:
                seen.setdefault(make_transvection(spec, SpTransvection(alpha, tuple(v))))
    return list(seen)


def _basis_combinations(basis: list[list[int]], f: Field) -> Iterator[list[int]]:
    """All nonzero vectors in the span of the given basis."""
    d = len(basis[0]) if basis else 0
    for coeffs in itertools.product(range(f.q), repeat=len(basis)):
        if not any(coeffs):
            continue
        v = [0] * d
        for c, b in zip(coeffs, basis):
            if c:
                v = vec_add(f, v, vec_scale(f, c, b))
        yield v


def fixed_space_codim(spec: GroupSpec, M: Mat) -> int:
    """rank(M - I) over the natural module's field."""
    return (M - Mat.identity(M.field, M.n)).rank()


def extract_transvection_data(
    spec: GroupSpec, M: Mat
) -> tuple[tuple[int, ...], SquareClass]:
    """Recover (direction line, square class of the parameter) from a symplectic
    transvection; the class is independent of the direction's scaling."""
    if not spec.is_symplectic:
        raise ValueError("transvection data extraction is symplectic-only")
    f = M.field
    d = M.n
    delta = M - Mat.identity(f, d)
    v = None
    for j in range(d):
        col = delta.col(j)
        if any(col):
            v = col
            break
    if v is None:
        raise ValueError("matrix is the identity, not a transvection")
    w_expected = symplectic_covector(spec, v)
    i0 = next(i for i in range(d) if v[i])
    j0 = next((j for j in range(d) if w_expected[j]), None)
    if j0 is None:
        raise ValueError("not a symplectic transvection")
    mu = f.div(delta[i0, j0], f.mul(v[i0], w_expected[j0]))
    for i in range(d):
        for j in range(d):
            if delta[i, j] != f.mul(mu, f.mul(v[i], w_expected[j])):
                raise ValueError("not a symplectic transvection")
    return tuple(v), f.square_class(mu)


# ---------------------------------------------------------------------------
# enumeration


def _generating_set(spec: GroupSpec) -> list[list[Mat]]:
    """Escalating candidate generating sets; closure validates against the order."""
    f = spec.matrix_field
    d = spec.dim
    if spec.is_symplectic:
        dirs = []
        for i in range(d):
            e = [0] * d
            e[i] = 1
            dirs.append(tuple(e))
        for j in range(1, d):
            e = [0] * d
            e[0] = 1
            e[j] = 1
            dirs.append(tuple(e))
        gens = [make_transvection(spec, SpTransvection(1, v)) for v in dirs]
        if spec.family is Family.SP_ODD:
            nu = f.nonsquares()[0]
            gens.append(make_transvection(spec, SpTransvection(nu, dirs[0])))
        extra = [
            make_transvection(spec, SpTransvection(alpha, v))
            for v in dirs
            for alpha in range(1, f.q)
        ]
        return [gens, extra]
    if spec.family is Family.GU:
        fs = spec.fieldspec
        units = trace_zero_units(spec)
        iso = isotropic_vectors(spec)
        base = [make_transvection(spec, GUTransvection(v, units[0])) for v in iso[: 4 * d]]
        eta = fs.eta_elt
        torus = list(Mat.identity(f, d).data)
        torus[0] = eta
        base.append(Mat(f, d, d, torus))
        perms = []
        if d >= 2:
            shift = [[1 if j == (i + 1) % d else 0 for j in range(d)] for i in range(d)]
            perms.append(Mat.from_rows(f, shift))
            swap = [[1 if (j == i and i >= 2) or {i, j} == {0, 1} else 0 for j in range(d)] for i in range(d)]
            perms.append(Mat.from_rows(f, swap))
        full = [make_transvection(spec, GUTransvection(v, c)) for v in iso for c in units]
        # transvections need not generate SU for tiny q (SU_3(2) is the classic
        # exception); top up with fixed-seed Haar draws, validated downstream
        haar_rng = Random(0xC0FFEE)
        haar = [sample_uniform(spec, haar_rng) for _ in range(8)]
        return [base, perms, full, haar]
    raise ValueError("GL enumerates by direct filtering")


def _closure(seed: list[Mat], gens: list[Mat], target: int, limit: int) -> Optional[dict[Mat, None]]:
    known: dict[Mat, None] = {}
    frontier: list[Mat] = []
    for g in seed + gens:
        if g not in known:
            known[g] = None
            frontier.append(g)
    while frontier:
        nxt: list[Mat] = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in known:
                    known[y] = None
                    nxt.append(y)
                    if len(known) > target:
                        raise RuntimeError("closure exceeded the group order; bad generators")
        frontier = nxt
    return known


@lru_cache(maxsize=32)
def _enumerated(spec: GroupSpec, limit: int) -> tuple[Mat, ...]:
    order = group_order(spec)
    if order > limit:
        raise ValueError(f"group order {order} exceeds enumeration limit {limit}")
    f = spec.matrix_field
    d = spec.dim
    if spec.family is Family.GL:
        out = []
        for entries in itertools.product(range(f.q), repeat=d * d):
            M = Mat(f, d, d, entries)
            if M.rank() == d:
                out.append(M)
        assert len(out) == order
        return tuple(out)
    ident = Mat.identity(f, d)
    known: dict[Mat, None] = {ident: None}
    gens_so_far: list[Mat] = []
    for tier in _generating_set(spec):
        new = [g for g in tier if g not in gens_so_far]
        if not new:
            continue
        gens_so_far.extend(new)
        known = _closure(list(known), gens_so_far, order, limit)
        if len(known) == order:
            return tuple(known)
    raise RuntimeError(
        f"generating set failed to produce {spec}: got {len(known)} of {order}"
    )


def enumerate_group(spec: GroupSpec, limit: int = DEFAULT_ENUM_LIMIT) -> Iterator[Mat]:
    """Yield each group element exactly once (GL: filtering; GU/Sp: closure)."""
    return iter(_enumerated(spec, limit))


# ---------------------------------------------------------------------------
# exact uniform sampling


def _rand_vector(f: Field, d: int, rng: Random) -> list[int]:
    return [rng.randrange(f.q) for _ in range(d)]


def _rand_nonzero_vector(f: Field, d: int, rng: Random) -> list[int]:
    for _ in range(SAMPLER_REJECTION_CAP):
        v = _rand_vector(f, d, rng)
        if any(v):
            return v
    raise RuntimeError("rejection cap hit sampling a nonzero vector")


def _uniform_solution(
    rows: list[list[int]], rhs: list[int], f: Field, d: int, rng: Random,
    nonzero: bool = False,
) -> list[int]:
    """Uniform point of the affine solution set {x : rows x = rhs}."""
    if rows:
        x0 = solve_particular(rows, rhs, f)
        if x0 is None:
            raise RuntimeError("inconsistent sampling constraints")
        basis = nullspace_basis(rows, f, d)
    else:
        x0 = [0] * d
        basis = [[1 if j == i else 0 for j in range(d)] for i in range(d)]
    for _ in range(SAMPLER_REJECTION_CAP):
        x = list(x0)
        for b in basis:
            c = rng.randrange(f.q)
            if c:
                x = vec_add(f, x, vec_scale(f, c, b))
        if not nonzero or any(x):
            return x
    raise RuntimeError("rejection cap hit sampling a solution-space point")


def sample_uniform(spec: GroupSpec, rng: Random) -> Mat:
    """Exactly uniform group element."""
    f = spec.matrix_field
    d = spec.dim
    if spec.family is Family.GL:
        for _ in range(SAMPLER_REJECTION_CAP):
            M = Mat(f, d, d, [rng.randrange(f.q) for _ in range(d * d)])
            if M.rank() == d:
                return M
        raise RuntimeError("rejection cap hit sampling GL")
    if spec.family is Family.GU:
        fs = spec.fieldspec
        cols: list[list[int]] = []
        for i in range(d):
            for attempt in range(SAMPLER_REJECTION_CAP + 1):
                if attempt == SAMPLER_REJECTION_CAP:
                    raise RuntimeError("rejection cap hit sampling a GU column")
                c = _rand_vector(f, d, rng)
                if form_value(spec, c, c) != 1:
                    continue
                if all(form_value(spec, prev, c) == 0 for prev in cols):
                    cols.append(c)
                    break
        data = [cols[j][i] for i in range(d) for j in range(d)]
        return Mat(f, d, d, data)
    # symplectic: build images of the hyperbolic basis pairs (e_i, f_i)
    n = spec.n
    cols: list[Optional[list[int]]] = [None] * d
    chosen: list[tuple[int, list[int]]] = []  # (basis index, image)
    for i in range(n):
        rows = []
        rhs = []
        for idx, img in chosen:
            rows.append(symplectic_covector(spec, img))
            rhs.append(0)
        x = _uniform_solution(rows, rhs, f, d, rng, nonzero=True)
        cols[i] = x
        chosen.append((i, x))
        rows = []
        rhs = []
        for idx, img in chosen:
            rows.append(symplectic_covector(spec, img))
            rhs.append(1 if idx == i else 0)
        y = _uniform_solution(rows, rhs, f, d, rng)
        cols[n + i] = y
        chosen.append((n + i, y))
    data = [cols[j][i] for i in range(d) for j in range(d)]
    return Mat(f, d, d, data)


def sample_transvection_params(
    spec: GroupSpec, rng: Random, class_tag: Optional[SquareClass] = None
) -> TransvectionParams:
    """Uniform transvection parameters for the requested class."""
    f = spec.matrix_field
    d = spec.dim
    if spec.family is Family.GL:
        if class_tag is not None:
            raise ValueError("GL has a single transvection class")
        v = _rand_nonzero_vector(f, d, rng)
        w = _uniform_solution([list(v)], [0], f, d, rng, nonzero=True)
        return GLTransvection(tuple(v), tuple(w))
    if spec.family is Family.GU:
        if class_tag is not None:
            raise ValueError("GU has a single transvection class")
        for _ in range(SAMPLER_REJECTION_CAP):
            v = _rand_nonzero_vector(f, d, rng)
            if form_value(spec, v, v) == 0:
                c0 = spec.fieldspec.trace_zero_unit()
                t = spec.fieldspec.embed(rng.randrange(1, spec.q))
                return GUTransvection(tuple(v), f.mul(t, c0))
        raise RuntimeError("rejection cap hit sampling an isotropic vector")
    if spec.family is Family.SP_EVEN:
        if class_tag is not None:
            raise ValueError("SpEven has a single transvection class")
        alpha = rng.randrange(1, f.q)
    else:
        if class_tag is None:
            alpha = rng.randrange(1, f.q)
        elif class_tag is SquareClass.SQUARE:
            alpha = f.exp[2 * rng.randrange((f.q - 1) // 2) % (f.q - 1)]
        elif class_tag is SquareClass.NONSQUARE:
            alpha = f.exp[(2 * rng.randrange((f.q - 1) // 2) + 1) % (f.q - 1)]
        else:
            raise ValueError("invalid class tag")
    v = _rand_nonzero_vector(f, d, rng)
    return SpTransvection(alpha, tuple(v))


def sample_transvection(
    spec: GroupSpec, rng: Random, class_tag: Optional[SquareClass] = None
) -> tuple[Mat, TransvectionParams]:
    """Uniform transvection of the requested class, with its parameters."""
    params = sample_transvection_params(spec, rng, class_tag)
    return make_transvection(spec, params), params


def transvection_uw(spec: GroupSpec, params: TransvectionParams) -> tuple[list[int], list[int]]:
    """(u, w) with the transvection acting as x -> x + (w . x) u; the matrix
    is I + u w^T.  Lets walk statistics avoid full matrix products."""
    f = spec.matrix_field
    if isinstance(params, GLTransvection):
        return list(params.v), list(params.w_star)
    if isinstance(params, GUTransvection):
        fs = spec.fieldspec
        cq = fs.frobenius(params.c)
        return list(params.v), [f.mul(cq, fs.frobenius(x)) for x in params.v]
    return list(params.v), vec_scale(f, params.alpha, symplectic_covector(spec, params.v))
