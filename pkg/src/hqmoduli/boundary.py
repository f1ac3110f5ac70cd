"""Moduli coordinates for ordered m-tuples of distinct boundary (null)
points: Cartan angular invariant, semi-normalized Gram matrices, the
associated t-vector, and the congruence test.

A semi-normalized Gram matrix has zero diagonal, ones on the first
off-diagonal, and g_13 = -e^{-i*alpha} with alpha in [0, pi/2].  The
remaining freedom is simultaneous conjugation of all entries by a unit
quaternion, which rotation normalization removes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateInputError, DomainError, InconsistencyError, UsageError
from .gram import gram, inertia, rescale_gram
from .hform import HVector, PointClass, classify, herm
from .qmatrix import QMatrix
from .quat import ONE, J, Quaternion, nu, quat, rotation_normalize_vector

PRODUCT_EPS = 1e-12      # below this, a pairwise product counts as zero
SEMI_TOL = 1e-8          # postcondition tolerance for the normalized form


@dataclass(frozen=True)
class ModuliCoordinate:
    """Complete invariant of a boundary tuple: stratum tag + canonical
    t-vector (and the Cartan invariant of the leading triple)."""

    stratum: str
    v: tuple[Quaternion, ...]
    alpha: float

    def to_json(self) -> dict:
        return {"stratum": self.stratum,
                "alpha": self.alpha,
                "v": [q.to_json() for q in self.v]}


def _check_boundary_tuple(points) -> list[HVector]:
    points = list(points)
    if len(points) < 3:
        raise UsageError("need at least 3 boundary points")
    for p in points:
        if classify(p) != PointClass.NULL:
            raise DomainError("boundary tuple must consist of null points")
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            h = abs(herm(points[i], points[j]))
            if h <= PRODUCT_EPS * points[i].norm() * points[j].norm():
                raise DegenerateInputError(
                    f"points {i + 1} and {j + 1} have vanishing product; "
                    "distinct null points cannot be orthogonal")
    return points


def triple_product(p1: HVector, p2: HVector, p3: HVector) -> Quaternion:
    """<p1, p2, p3> = <p2,p1><p3,p2><p1,p3> (lift dependent only up to
    lambda-bar (.) lambda)."""
    return herm(p2, p1) * herm(p3, p2) * herm(p1, p3)


def cartan_invariant(p1: HVector, p2: HVector, p3: HVector) -> float:
    """Angular invariant arccos(Re(-T)/|T|) in [0, pi/2] of a triple of
    distinct null points, T the triple Hermitian product."""
    _check_boundary_tuple([p1, p2, p3])
    t = triple_product(p1, p2, p3)
    at = abs(t)
    if at <= PRODUCT_EPS:
        raise DomainError("triple product vanishes; points not distinct")
    c = max(-1.0, min(1.0, -t.re() / at))
    return math.acos(c)


def semi_normalize(points):
    """Diagonal rescaling D and the resulting semi-normalized Gram
    matrix.

    Returns (d, G, alpha) with d the list of diagonal entries of D and
    gram(p_i d_i) = G.  Chain-solves the unit off-diagonal conditions
    left to right, then applies the nu-based rotation that makes g_13 a
    unit complex number of the form -e^{-i*alpha}.
    """
    points = _check_boundary_tuple(points)
    m = len(points)

    lam = [ONE] * m
    for i in range(1, m):
        # <p_{i-1} lam_{i-1}, p_i lam_i> = conj(lam_i) h lam_{i-1} = 1
        h = herm(points[i - 1], points[i])
        lam[i] = (h * lam[i - 1]).inverse().conj()

    # q = <p_1, p_3 lam_3>; rotate its imaginary part onto the i-axis
    q = lam[2].conj() * herm(points[0], points[2])
    aq = abs(q)
    if q.im_vec().norm() <= 1e-14 * (1.0 + aq):
        lam1 = ONE / math.sqrt(aq)
    else:
        lam1 = nu(q.im_vec()) / math.sqrt(aq)

    d = [lam1]
    for i in range(2, m + 1):  # 1-based index
        if i % 2 == 1:
            d.append(lam[i - 1] * lam1)
        else:
            d.append(lam[i - 1] * lam1.conj().inverse())

    g = rescale_gram(gram(points), d)
    g13 = g.entry(0, 2)
    if abs(g13.a2) > SEMI_TOL or abs(g13.a3) > SEMI_TOL:
        raise InconsistencyError("g_13 failed to land in the complex plane")
    if g13.a1 < 0.0:
        # conjugate everything by j to flip the sign of alpha
        d = [x * J for x in d]
        g = rescale_gram(gram(points), d)
        g13 = g.entry(0, 2)

    for i in range(m):
        if abs(g.entry(i, i)) > SEMI_TOL:
            raise InconsistencyError("nonzero diagonal after normalization")
        if i >= 1 and abs(g.entry(i - 1, i) - ONE) > SEMI_TOL:
            raise InconsistencyError("off-diagonal chain entry is not 1")
    if abs(abs(g13) - 1.0) > SEMI_TOL:
        raise InconsistencyError("g_13 is not a unit quaternion")

    alpha = math.acos(max(-1.0, min(1.0, -g13.a0)))
    return d, g, alpha


def gram_to_vector(g: QMatrix) -> list[Quaternion]:
    """The t-vector (g_13, g_14, g_24, ..., g_1m, ..., g_{m-2,m}) of a
    semi-normalized m x m Gram matrix, t = (m-1)(m-2)/2."""
    m = g.shape[0]
    out = []
    for j in range(3, m + 1):          # 1-based column
        for i in range(1, j - 1):      # rows 1 .. j-2
            out.append(g.entry(i - 1, j - 1))
    return out


def vector_to_gram(v) -> QMatrix:
    """Hermitian completion of a t-vector back to the semi-normalized
    Gram matrix (zero diagonal, unit first off-diagonal)."""
    v = [quat(x) for x in v]
    t = len(v)
    # t = (m-1)(m-2)/2
    m = int(round((3 + math.sqrt(1 + 8 * t)) / 2))
    if (m - 1) * (m - 2) // 2 != t:
        raise UsageError(f"vector length {t} is not triangular")
    g = QMatrix.zeros(m, m)
    for i in range(1, m):
        g.set_entry(i - 1, i, ONE)
        g.set_entry(i, i - 1, ONE)
    pos = 0
    for j in range(3, m + 1):
        for i in range(1, j - 1):
            g.set_entry(i - 1, j - 1, v[pos])
            g.set_entry(j - 1, i - 1, v[pos].conj())
            pos += 1
    return g


def validate_boundary_vector(v, n: int) -> bool:
    """True iff the t-vector completes to a Gram matrix realizable by m
    distinct null points in H^{n,1}: n_plus <= n and n_minus = 1."""
    v = [quat(x) for x in v]
    if not v:
        raise UsageError("empty boundary vector")
    v1 = v[0]
    if (abs(abs(v1) - 1.0) > 1e-6 or abs(v1.a2) > 1e-6 or abs(v1.a3) > 1e-6
            or v1.a0 > 1e-6 or v1.a1 < -1e-6):
        raise UsageError("v_1 must be a unit complex -e^{-i*alpha}, "
                         "alpha in [0, pi/2]")
    iner = inertia(vector_to_gram(v))
    return iner.n_plus <= n and iner.n_minus == 1


def boundary_coordinate(points) -> ModuliCoordinate:
    """Canonical moduli coordinate of an ordered tuple of distinct null
    points: semi-normalize, extract the t-vector, rotation-normalize."""
    _, g, alpha = semi_normalize(points)
    v = gram_to_vector(g)
    _, vn, tag = rotation_normalize_vector(v)
    return ModuliCoordinate(tag, tuple(vn), alpha)


def coordinate_distance(a: ModuliCoordinate, b: ModuliCoordinate) -> float:
    """Max entrywise quaternion distance; infinity when strata differ."""
    if a.stratum != b.stratum or len(a.v) != len(b.v):
        return math.inf
    return max((abs(x - y) for x, y in zip(a.v, b.v)), default=0.0)


def congruent_boundary(p, q, eps: float = 1e-8) -> bool:
    """True iff the two boundary tuples are congruent under the isometry
    group: stratum tags match and canonical vectors agree within eps."""
    if len(list(p)) != len(list(q)):
        return False
    return coordinate_distance(boundary_coordinate(p),
                               boundary_coordinate(q)) <= eps
