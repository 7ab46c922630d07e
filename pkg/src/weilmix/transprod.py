"""Exact distributions of the product of two uniform transvections.

Codimension-level closed forms cover GL, GU, and Sp in both characteristics.
For odd-characteristic Sp the product of two transvections is classified down
to the conjugacy-class labels of the rank-<=2 case analysis (classes named by
the standard Sp_4 labels A21, A22, A31, A32, C1(j), C3(i), D21, D22), both by
a parameter-level decision tree and by an independent matrix-level route.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .clgroups import (
    Family,
    GroupSpec,
    Mat,
    extract_transvection_data,
    form_value,
    make_spec,
    row_echelon,
    vec_add,
    vec_is_multiple,
    vec_scale,
)
from .ffield import SquareClass, is_prime_power


# ---------------------------------------------------------------------------
# codimension-level distributions


@dataclass(frozen=True)
class CodimDistribution:
    probs: dict[int, Fraction]

    def __post_init__(self):
        if any(p < 0 for p in self.probs.values()):
            raise ValueError("negative probability")
        if sum(self.probs.values()) != 1:
            raise ValueError("codimension distribution does not sum to 1")

    def __getitem__(self, e: int) -> Fraction:
        return self.probs.get(e, Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CodimDistribution):
            return NotImplemented
        keys = set(self.probs) | set(other.probs)
        return all(self[k] == other[k] for k in keys)


def _check_nq(n: int, q: int, min_n: int) -> None:
    if n < min_n:
        raise ValueError(f"n={n} below minimum {min_n}")
    if not is_prime_power(q):
        raise ValueError(f"q={q} is not a prime power")


def codim_dist_gl(n: int, q: int) -> CodimDistribution:
    """Fixed-space codimension of a product of two uniform GL_n(q) transvections."""
    _check_nq(n, q, 2)
    denom = (q**n - 1) * (q ** (n - 1) - 1)
    return CodimDistribution(
        {
            2: Fraction(q ** (2 * n - 1) - 3 * q**n + q ** (n - 1) + q * q, denom),
            1: Fraction(2 * q**n - 2 * q ** (n - 1) - q * q - q + 2, denom),
            0: Fraction(q - 1, denom),
        }
    )


def codim_dist_gu(n: int, q: int) -> CodimDistribution:
    """Fixed-space codimension of a product of two uniform GU_n(q) transvections."""
    _check_nq(n, q, 2)
    sn, sn1 = (-1) ** n, (-1) ** (n - 1)
    denom = (q**n - sn) * (q ** (n - 1) - sn1)
    return CodimDistribution(
        {
            2: Fraction(q ** (2 * n - 1) - sn1 * q**n - sn * q ** (n - 1) - q * q, denom),
            1: Fraction(q * q - q - 2, denom),
            0: Fraction(q + 1, denom),
        }
    )


def codim_dist_sp(n: int, q: int) -> CodimDistribution:
    """Fixed-space codimension of a product of two uniform symplectic
    transvections; valid for both parities of q."""
    _check_nq(n, q, 1)
    denom = q ** (2 * n) - 1
    return CodimDistribution(
        {
            2: Fraction(q ** (2 * n) - q, denom),
            1: Fraction(q - 2, denom),
            0: Fraction(1, denom),
        }
    )


# ---------------------------------------------------------------------------
# Sp_4-style class labels for odd-characteristic symplectic products


class SpClassKind(enum.Enum):
    IDENTITY = "Identity"
    A21 = "A21"
    A22 = "A22"
    A31 = "A31"
    A32 = "A32"
    C1 = "C1"
    C3 = "C3"
    D21 = "D21"
    D22 = "D22"


@dataclass(frozen=True)
class SpClassLabel:
    kind: SpClassKind
    index: Optional[int] = None

    def __post_init__(self):
        if self.kind in (SpClassKind.C1, SpClassKind.C3):
            if self.index is None or self.index < 1:
                raise ValueError(f"{self.kind.value} needs a positive index")
        elif self.index is not None:
            raise ValueError(f"{self.kind.value} takes no index")

    def __str__(self) -> str:
        if self.index is not None:
            return f"{self.kind.value}({self.index})"
        return self.kind.value

    @classmethod
    def parse(cls, text: str) -> "SpClassLabel":
        text = text.strip()
        if "(" in text:
            kind, rest = text.split("(", 1)
            return cls(SpClassKind(kind), int(rest.rstrip(")")))
        return cls(SpClassKind(text))

    @property
    def rank(self) -> int:
        """Codimension of the fixed space for elements of this class."""
        if self.kind is SpClassKind.IDENTITY:
            return 0
        if self.kind in (SpClassKind.A21, SpClassKind.A22):
            return 1
        return 2


IDENTITY = SpClassLabel(SpClassKind.IDENTITY)
A21 = SpClassLabel(SpClassKind.A21)
A22 = SpClassLabel(SpClassKind.A22)
A31 = SpClassLabel(SpClassKind.A31)
A32 = SpClassLabel(SpClassKind.A32)
D21 = SpClassLabel(SpClassKind.D21)
D22 = SpClassLabel(SpClassKind.D22)


def C1(j: int) -> SpClassLabel:
    return SpClassLabel(SpClassKind.C1, j)


def C3(i: int) -> SpClassLabel:
    return SpClassLabel(SpClassKind.C3, i)


class PairMode(enum.Enum):
    PAIRS_FROM_C = "c-pairs"
    ALL_TRANSVECTIONS = "all"


def _split_nonsplit_label(spec: GroupSpec, m: int) -> SpClassLabel:
    """Label for trace 2 - m (m = alpha*beta after normalising (u|v) = 1,
    m not in {0, 4}): eigenvalues are gamma^i (split) or eta^j (nonsplit)."""
    fs = spec.fieldspec
    base, ext = fs.base, fs.ext
    q = spec.q
    four = base.scalar(4)
    disc = base.mul(m, base.sub(m, four))
    t_ext = fs.embed(base.sub(base.scalar(2), m))
    s = ext.sqrt(fs.embed(disc))
    assert s is not None
    lam = ext.mul(ext.add(t_ext, s), ext.inv(ext.scalar(2)))
    if base.is_square(disc):
        i = fs.dlog(lam, fs.gamma, q - 1)
        i = min(i, (q - 1) - i)
        return C3(i)
    j = fs.dlog(lam, fs.eta_elt, q + 1)
    j = min(j, (q + 1) - j)
    return C1(j)


def classify_sp_pair(
    spec: GroupSpec,
    alpha: int,
    u: Sequence[int],
    beta: int,
    v: Sequence[int],
) -> SpClassLabel:
    """Conjugacy class of T(alpha, u) * T(beta, v) in odd-characteristic
    Sp_2n(q), n >= 2, via the rank-<=2 case analysis."""
    if spec.family is not Family.SP_ODD or spec.n < 2:
        raise ValueError("classification requires SpOdd with n >= 2")
    f = spec.matrix_field
    if alpha == 0 or beta == 0 or not any(u) or not any(v):
        raise ValueError("parameters must be nonzero")
    t = vec_is_multiple(f, u, v)
    if t is not None:
        # v = t*u, so T(alpha, u) T(beta, v) = T(alpha + beta t^2, v') on one line
        s = f.add(alpha, f.mul(beta, f.mul(t, t)))
        if s == 0:
            return IDENTITY
        return A21 if f.is_square(s) else A22
    pairing = form_value(spec, u, v)
    if pairing == 0:
        minus_ab = f.neg(f.mul(alpha, beta))
        return A31 if f.is_square(minus_ab) else A32
    # rescale u so that (u|v) = 1; the parameter picks up the square factor
    alpha1 = f.mul(alpha, f.mul(pairing, pairing))
    m = f.mul(alpha1, beta)
    if m == f.scalar(4):
        # D-class: decided by the parameter class of -(S restricted to <u, v>)
        y = _restriction_2x2(spec, alpha1, beta)
        mu_class = _neg_unipotent_param_class(spec, y)
        return D21 if mu_class is SquareClass.SQUARE else D22
    return _split_nonsplit_label(spec, m)


def _restriction_2x2(spec, alpha, beta) -> Mat:
    """Matrix of T(alpha,u) T(beta,v) restricted to <u, v> in basis (u, v),
    assuming (u|v) = 1."""
    f = spec.matrix_field
    ab = f.mul(alpha, beta)
    return Mat(f, 2, 2, (f.sub(1, ab), alpha, f.neg(beta), 1))


def _neg_unipotent_param_class(spec, y: Mat) -> SquareClass:
    """Square class of the transvection parameter of -y, where y is a 2x2
    symplectic matrix with trace -2 (basis with (w1|w2) = 1)."""
    f = y.field
    sub2 = make_spec("SpOdd", 1, spec.q)
    neg_y = -y
    _, cls = extract_transvection_data(sub2, neg_y)
    return cls


# ---------------------------------------------------------------------------
# matrix-level classification (independent of the parameter route)


def classify_sp_product_matrix(spec: GroupSpec, s_mat: Mat) -> SpClassLabel:
    """Classify a product of two transvections from its matrix alone:
    rank, the symmetric form ((S-I)x | y) on rank-2 images, and the
    restriction of S to its moved subspace."""
    if spec.family is not Family.SP_ODD or spec.n < 2:
        raise ValueError("classification requires SpOdd with n >= 2")
    f = spec.matrix_field
    d = spec.dim
    delta = s_mat - Mat.identity(f, d)
    rank = delta.rank()
    if rank == 0:
        return IDENTITY
    if rank == 1:
        _, cls = extract_transvection_data(spec, s_mat)
        return A21 if cls is SquareClass.SQUARE else A22
    if rank != 2:
        raise ValueError("matrix is not a product of two transvections")
    # basis of the image of S - I
    cols = [list(delta.col(j)) for j in range(d)]
    ech, pivots = row_echelon(cols, f)
    w1, w2 = [list(ech[i]) for i in range(2)]
    g12 = form_value(spec, w1, w2)
    if g12 == 0:
        # totally isotropic image: A31/A32 by the discriminant class of the
        # symmetric bilinear form B(x, y) = ((S-I)x | y)
        disc = _moved_form_discriminant(spec, delta)
        return A31 if f.is_square(f.neg(disc)) else A32
    # nondegenerate 2-dim moved space; normalise (w1|w2) = 1
    w1 = vec_scale(f, f.inv(g12), w1)
    y = _restrict_to_plane(spec, s_mat, w1, w2)
    tr = f.add(y[0, 0], y[1, 1])
    if tr == f.neg(f.scalar(2)):
        mu_class = _neg_unipotent_param_class(spec, y)
        return D21 if mu_class is SquareClass.SQUARE else D22
    m = f.sub(f.scalar(2), tr)  # trace = 2 - alpha*beta
    return _split_nonsplit_label(spec, m)


def _moved_form_discriminant(spec, delta: Mat) -> int:
    """det of the Gram matrix of B(x,y) = (delta x | y) on a complement of
    ker(delta); well-defined up to squares."""
    f = delta.field
    d = delta.n
    basis = []
    rows = []
    for j in range(d):
        e = [0] * d
        e[j] = 1
        cand_rows = rows + [[delta[i, j] for i in range(d)]]  # delta e_j as column
        # keep e_j if delta e_j enlarges the image span
        ech, piv = row_echelon(cand_rows, f)
        if len(piv) > len(rows):
            basis.append(e)
            rows = [r for r in ech[: len(piv)]]
            if len(basis) == 2:
                break
    x1, x2 = basis
    dx1 = _apply(delta, x1)
    dx2 = _apply(delta, x2)
    b11 = form_value(spec, dx1, x1)
    b12 = form_value(spec, dx1, x2)
    b22 = form_value(spec, dx2, x2)
    return f.sub(f.mul(b11, b22), f.mul(b12, b12))


def _apply(M: Mat, x: Sequence[int]) -> list[int]:
    f = M.field
    out = []
    for i in range(M.n):
        acc = 0
        row = M.row(i)
        for a, b in zip(row, x):
            if a and b:
                acc = f.add(acc, f.mul(a, b))
        out.append(acc)
    return out


def _restrict_to_plane(spec, s_mat: Mat, w1, w2) -> Mat:
    """2x2 matrix of s_mat on the S-invariant plane spanned by (w1, w2),
    using coordinates via the symplectic form with (w1|w2) = 1."""
    f = s_mat.field
    out = []
    for w in (w1, w2):
        img = _apply(s_mat, w)
        # img = a*w1 + b*w2 with a = (img|w2), b = (w1|img) since (w1|w2)=1
        a = form_value(spec, img, w2)
        b = form_value(spec, w1, img)
        check = vec_add(f, vec_scale(f, a, w1), vec_scale(f, b, w2))
        if check != list(img):
            raise ValueError("plane is not invariant; not a 2-transvection product")
        out.append((a, b))
    (a1, b1), (a2, b2) = out
    return Mat(f, 2, 2, (a1, a2, b1, b2))


# ---------------------------------------------------------------------------
# closed-form class-level distributions


@dataclass(frozen=True)
class SpOddClassDistribution:
    n: int
    q: int
    mode: PairMode
    source_class: SquareClass
    probs: dict[SpClassLabel, Fraction]

    def __post_init__(self):
        if sum(self.probs.values()) != 1:
            raise ValueError("class distribution does not sum to 1")
        if any(p <= 0 for p in self.probs.values()):
            raise ValueError("zero-mass labels must be omitted")

    def __getitem__(self, label: SpClassLabel) -> Fraction:
        return self.probs.get(label, Fraction(0))

    def codim_marginal(self) -> CodimDistribution:
        out: dict[int, Fraction] = {}
        for label, p in self.probs.items():
            out[label.rank] = out.get(label.rank, Fraction(0)) + p
        return CodimDistribution(out)


def _c_labels(q: int, mode: PairMode) -> tuple[list[SpClassLabel], list[SpClassLabel]]:
    """(C3 labels, C1 labels) carrying mass for the given mode."""
    if mode is PairMode.ALL_TRANSVECTIONS:
        return (
            [C3(i) for i in range(1, (q - 3) // 2 + 1)],
            [C1(j) for j in range(1, (q - 1) // 2 + 1)],
        )
    if q % 4 == 1:
        c3 = [C3(i) for i in range(2, (q - 3) // 2 + 1, 2)]
        c1 = [C1(j) for j in range(1, (q - 1) // 2 + 1, 2)]
    else:
        c3 = [C3(i) for i in range(1, (q - 3) // 2 + 1, 2)]
        c1 = [C1(j) for j in range(2, (q - 1) // 2 + 1, 2)]
    return c3, c1


def sp_odd_class_dist(
    n: int,
    q: int,
    mode: PairMode = PairMode.PAIRS_FROM_C,
    source_class: SquareClass = SquareClass.SQUARE,
) -> SpOddClassDistribution:
    """Class-level law of a product of two uniform transvections of Sp_2n(q),
    q odd, n >= 2.  PAIRS_FROM_C draws both factors from one transvection
    class (source_class = the square-parameter class by default; passing
    NONSQUARE swaps the A21/A22 and D21/D22 masses); ALL_TRANSVECTIONS draws
    them uniformly from all transvections."""
    _check_nq(n, q, 2)
    if q % 2 == 0:
        raise ValueError("q must be odd")
    bigd = q ** (2 * n) - 1
    probs: dict[SpClassLabel, Fraction] = {}
    c3_labels, c1_labels = _c_labels(q, mode)

    if mode is PairMode.ALL_TRANSVECTIONS:
        probs[IDENTITY] = Fraction(1, bigd)
        half_rank1 = Fraction(q - 2, 2 * bigd)
        if half_rank1:
            probs[A21] = half_rank1
            probs[A22] = half_rank1
        half_perp = Fraction(q ** (2 * n - 1) - q, 2 * bigd)
        probs[A31] = half_perp
        probs[A32] = half_perp
        # the alpha*beta = 4 mass splits evenly between the two D classes
        probs[D21] = Fraction(q ** (2 * n - 1), 2 * bigd)
        probs[D22] = Fraction(q ** (2 * n - 1), 2 * bigd)
        for lab in c3_labels + c1_labels:
            probs[lab] = Fraction(q ** (2 * n - 1), bigd)
        return SpOddClassDistribution(n, q, mode, source_class, probs)

    if source_class is SquareClass.SQUARE:
        a21_num, a22_num = ((q - 5), (q - 1)) if q % 4 == 1 else ((q - 3), (q + 1))
    elif source_class is SquareClass.NONSQUARE:
        a21_num, a22_num = ((q - 1), (q - 5)) if q % 4 == 1 else ((q + 1), (q - 3))
    else:
        raise ValueError("source_class must be SQUARE or NONSQUARE")
    if q % 4 == 1:
        probs[IDENTITY] = Fraction(2, bigd)
        probs[A31] = Fraction(q ** (2 * n - 1) - q, bigd)
        d_label = D21 if source_class is SquareClass.SQUARE else D22
    else:
        probs[A32] = Fraction(q ** (2 * n - 1) - q, bigd)
        d_label = D22 if source_class is SquareClass.SQUARE else D21
    if a21_num:
        probs[A21] = Fraction(a21_num, 2 * bigd)
    if a22_num:
        probs[A22] = Fraction(a22_num, 2 * bigd)
    probs[d_label] = Fraction(2 * q ** (2 * n - 1), bigd)
    for lab in c3_labels + c1_labels:
        probs[lab] = Fraction(2 * q ** (2 * n - 1), bigd)
    return SpOddClassDistribution(n, q, mode, source_class, probs)


def sp_all_transvection_pair_summary(n: int, q: int) -> dict[str, Fraction]:
    """Rank-level collapse for products of two uniform transvections of
    Sp_2n(q), q odd: enough for even-power Weil sums."""
    _check_nq(n, q, 1)
    if q % 2 == 0:
        raise ValueError("q must be odd")
    bigd = q ** (2 * n) - 1
    return {
        "Identity": Fraction(1, bigd),
        "Rank1": Fraction(q - 2, bigd),
        "Rank2": Fraction(q ** (2 * n) - q, bigd),
    }
