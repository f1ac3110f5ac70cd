"""Triangles of quaternionic lines in the quaternionic hyperbolic plane.

A triple of positive polar vectors p_1, p_2, p_3 in H^{2,1} determines a
triangle of quaternionic lines.  Its congruence class is encoded by the
unique normalized Gram matrix

    ( 1          r3         r2        )
    ( r3         1          r1 e^{ia} )
    ( r2         r1 e^{-ia} 1         )

with r_t >= 0 and sin(a) >= 0, summarized as an (r1, r2, r3; alpha)
parameter vector.  The triangle exists in H^{2,1} iff det G <= 0, with
det G = 1 - (r1^2 + r2^2 + r3^2) + 2 r1 r2 r3 cos(alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, InconsistencyError, UsageError
from .gram import gram, inertia, realize, span_dimension
from .hform import (ASYMPTOTIC_EPS, BALL, HVector, PairConfiguration,
                    PointClass, classify, herm)
from .positive import one_normalize
from .qmatrix import QMatrix
from .quat import Quaternion

DET_TOL = 1e-12          # tolerance on det G <= 0 in the existence test
PRODUCT_EPS = 1e-12      # below this, the triple product counts as zero
PARAM_TOL = 1e-8         # tolerance for parameter round trips


@dataclass(frozen=True)
class TriangleParams:
    """Parameters (r1, r2, r3; alpha) of a normalized triangle Gram
    matrix; alpha lies in [0, pi] (sin alpha >= 0)."""

    r1: float
    r2: float
    r3: float
    alpha: float

    def __post_init__(self):
        if min(self.r1, self.r2, self.r3) < 0.0:
            raise UsageError("side parameters r_t must be nonnegative")
        if not (-1e-12 <= self.alpha <= math.pi + 1e-12):
            raise UsageError("alpha must lie in [0, pi]")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.r1, self.r2, self.r3, self.alpha)

    def to_json(self) -> dict:
        return {"r1": self.r1, "r2": self.r2, "r3": self.r3,
                "alpha": self.alpha}


class TriangleClass(Enum):
    PARABOLIC111 = "Parabolic111"
    ELLIPTIC = "Elliptic"
    HYPERBOLIC_PLANAR = "HyperbolicPlanar"
    HYPERBOLIC_FULL = "HyperbolicFull"


def _check_positive_triple(points) -> list[HVector]:
    points = list(points)
    if len(points) != 3:
        raise UsageError("a triangle needs exactly 3 points")
    for p in points:
        if classify(p) != PointClass.POSITIVE:
            raise DomainError("triangle vertices must be positive vectors")
    return points


def triple_product(p1: HVector, p2: HVector, p3: HVector) -> Quaternion:
    return herm(p2, p1) * herm(p3, p2) * herm(p1, p3)


def triple_product_vanishes(p1: HVector, p2: HVector, p3: HVector) -> bool:
    """True when some pairwise product vanishes, the case the angular
    invariant's pi/2 fallback conflates with Re = 0."""
    t = triple_product(p1, p2, p3)
    scale = (p1.norm() * p2.norm() * p3.norm()) ** 2
    return abs(t) <= PRODUCT_EPS * max(scale, 1.0)


def triangle_angular_invariant(p1: HVector, p2: HVector, p3: HVector) -> float:
    """arccos(Re T / |T|) in [0, pi] for the triple product T of a
    positive triple; pi/2 when T vanishes.  Invariant under
    permutations, rescalings and isometries."""
    _check_positive_triple([p1, p2, p3])
    if triple_product_vanishes(p1, p2, p3):
        return math.pi / 2.0
    t = triple_product(p1, p2, p3)
    return math.acos(max(-1.0, min(1.0, t.re() / abs(t))))


def normalize_triangle(p1: HVector, p2: HVector, p3: HVector) -> QMatrix:
    """The unique normalized Gram matrix of a positive triple: unit
    diagonal, g_12 and g_13 real nonnegative, g_23 = r1 e^{i alpha} with
    sin alpha >= 0."""
    _check_positive_triple([p1, p2, p3])
    _, g = one_normalize([p1, p2, p3])
    return g


def triangle_params(p1: HVector, p2: HVector, p3: HVector) -> TriangleParams:
    """(r1, r2, r3; alpha) read off the normalized Gram matrix; alpha is
    recorded as 0 when g_23 = 0 leaves it undetermined."""
    g = normalize_triangle(p1, p2, p3)
    r3 = max(0.0, g.entry(0, 1).re())
    r2 = max(0.0, g.entry(0, 2).re())
    g23 = g.entry(1, 2)
    r1 = abs(g23)
    alpha = math.atan2(g23.a1, g23.a0) if r1 > PRODUCT_EPS else 0.0
    alpha = min(max(alpha, 0.0), math.pi)
    return TriangleParams(r1, r2, r3, alpha)


def gram_from_params(params: TriangleParams) -> QMatrix:
    r1, r2, r3, a = params.as_tuple()
    g = QMatrix.eye(3)
    g23 = Quaternion(r1 * math.cos(a), r1 * math.sin(a))
    g.set_entry(0, 1, r3)
    g.set_entry(1, 0, r3)
    g.set_entry(0, 2, r2)
    g.set_entry(2, 0, r2)
    g.set_entry(1, 2, g23)
    g.set_entry(2, 1, g23.conj())
    return g


def triangle_det(params: TriangleParams) -> float:
    r1, r2, r3, a = params.as_tuple()
    return 1.0 - (r1 * r1 + r2 * r2 + r3 * r3) \
        + 2.0 * r1 * r2 * r3 * math.cos(a)


def triangle_exists(params: TriangleParams, tol: float = DET_TOL) -> bool:
    """Existence of an (r1, r2, r3; alpha)-triangle in H^{2,1}:
    det G <= 0 in closed form."""
    return triangle_det(params) <= tol


def realize_triangle(params: TriangleParams,
                     model: str = BALL) -> tuple[HVector, ...]:
    """Explicit positive triple in H^{2,1} with the given normalized
    Gram matrix; RealizationError when no such triangle exists."""
    return realize(gram_from_params(params), 2, model)


def classify_triangle(p1: HVector, p2: HVector,
                      p3: HVector) -> TriangleClass:
    """Class of the span of a positive triple from the Gram signature:
    rank-one (all products of modulus 1, parabolic span), positive rank
    two (elliptic plane), or hyperbolic span of dimension 2 or 3."""
    points = _check_positive_triple([p1, p2, p3])
    iner = inertia(gram(points))
    sig = (iner.n_plus, iner.n_minus)
    if sig == (1, 0):
        params = triangle_params(*points)
        if max(abs(params.r1 - 1), abs(params.r2 - 1), abs(params.r3 - 1),
               abs(params.alpha)) > 1e-6:
            raise InconsistencyError(
                "rank-one triangle Gram is not of type (1,1,1;0)")
        if span_dimension(points) != 2:
            raise InconsistencyError(
                "parabolic triangle span has unexpected dimension")
        return TriangleClass.PARABOLIC111
    if sig == (2, 0):
        return TriangleClass.ELLIPTIC
    if sig == (1, 1):
        return TriangleClass.HYPERBOLIC_PLANAR
    if sig == (2, 1):
        return TriangleClass.HYPERBOLIC_FULL
    raise InconsistencyError(f"impossible triangle signature {sig}")


def side_from_r(r: float, eps: float = ASYMPTOTIC_EPS) -> PairConfiguration:
    """Geometry of one side from its parameter r = |<p_a, p_b>|: the two
    lines intersect at angle arccos r, are asymptotic (ideal), or are
    ultraparallel at distance 2 arccosh r."""
    if r < 0.0:
        raise UsageError("side parameter must be nonnegative")
    if abs(r - 1.0) <= eps:
        return PairConfiguration("asymptotic")
    if r < 1.0:
        return PairConfiguration("intersecting", angle=math.acos(r))
    return PairConfiguration("ultraparallel", distance=2.0 * math.acosh(r))


def side_data(params: TriangleParams) -> tuple[PairConfiguration, ...]:
    return tuple(side_from_r(r) for r in (params.r1, params.r2, params.r3))
