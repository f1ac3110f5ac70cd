"""Boundary (null) tuples: Cartan invariant, semi-normalization, and the
congruence test."""

import math

import numpy as np
import pytest

from hqmoduli.boundary import (ModuliCoordinate, boundary_coordinate,
                               cartan_invariant, congruent_boundary,
                               coordinate_distance, gram_to_vector,
                               semi_normalize, validate_boundary_vector,
                               vector_to_gram)
from hqmoduli.errors import DomainError, UsageError
from hqmoduli.gram import gram, rescale_gram
from hqmoduli.hform import BALL, HVector, random_isometry
from hqmoduli.quat import Quaternion, quat
from hqmoduli.sampling import random_null_tuple, random_rescaling

SEMI_TOL = 1e-8


def real_null_tuple(m, n=2):
    """Null points with all-real coordinates (a real hyperbolic form)."""
    pts = []
    for t in range(m):
        theta = 0.4 + 0.9 * t
        entries = [math.cos(theta), math.sin(theta)] + [0.0] * (n - 2) + [1.0]
        pts.append(HVector.from_entries(entries, BALL))
    return tuple(pts)


def apply_action(points, g, d):
    return tuple(g.apply(p).rescale(x) for p, x in zip(points, d))


# ---------------------------------------------------------------------------
# Cartan invariant

def test_cartan_zero_on_real_form():
    pts = real_null_tuple(3)
    assert cartan_invariant(*pts) <= 1e-9


def test_cartan_range_and_invariance():
    for trial in range(30):
        pts = random_null_tuple(3, 3, seed=500 + trial)
        alpha = cartan_invariant(*pts)
        assert 0.0 <= alpha <= math.pi / 2 + 1e-12
        g = random_isometry(3, seed=600 + trial)
        d = random_rescaling(3, seed=700 + trial)
        alpha2 = cartan_invariant(*apply_action(pts, g, d))
        assert abs(alpha - alpha2) <= 1e-10


def test_cartan_rejects_coincident_points():
    z = HVector.from_entries([1, 0, 1], BALL)
    with pytest.raises(DomainError):
        cartan_invariant(z, z, HVector.from_entries([0, 1, 1], BALL))


# ---------------------------------------------------------------------------
# semi-normalization

def check_semi_normalized(g, tol=SEMI_TOL):
    m = g.shape[0]
    for i in range(m):
        assert abs(g.entry(i, i)) <= tol
        if i >= 1:
            assert abs(g.entry(i - 1, i) - quat(1)) <= tol
    g13 = g.entry(0, 2)
    assert abs(abs(g13) - 1.0) <= tol
    assert abs(g13.a2) <= tol and abs(g13.a3) <= tol
    assert g13.a0 <= tol and g13.a1 >= -tol


def test_semi_normalize_postconditions_and_action():
    for trial in range(20):
        m = 5
        pts = random_null_tuple(3, m, seed=800 + trial)
        d, g, alpha = semi_normalize(pts)
        check_semi_normalized(g)
        assert 0.0 <= alpha <= math.pi / 2 + 1e-12
        got = rescale_gram(gram(pts), d)
        assert (got - g).norm() <= 1e-9 * (1 + g.norm())


def test_semi_normalize_triple_angle_is_cartan():
    for trial in range(20):
        pts = random_null_tuple(2, 3, seed=900 + trial)
        _, _, alpha = semi_normalize(pts)
        assert abs(alpha - cartan_invariant(*pts)) <= 1e-9


def test_semi_normalize_of_semi_normalized_is_stable():
    pts = random_null_tuple(2, 4, seed=42)
    _, g1, a1 = semi_normalize(pts)
    from hqmoduli.gram import realize
    pts2 = realize(g1, 2)
    _, g2, a2 = semi_normalize(pts2)
    assert abs(a1 - a2) <= 1e-8


# ---------------------------------------------------------------------------
# t-vector and admissibility

def test_vector_round_trip():
    pts = random_null_tuple(3, 5, seed=31)
    _, g, _ = semi_normalize(pts)
    v = gram_to_vector(g)
    assert len(v) == (5 - 1) * (5 - 2) // 2
    assert (vector_to_gram(v) - g).norm() <= 1e-12


def test_vector_ordering_is_column_major():
    pts = random_null_tuple(3, 4, seed=33)
    _, g, _ = semi_normalize(pts)
    v = gram_to_vector(g)
    want = [g.entry(0, 2), g.entry(0, 3), g.entry(1, 3)]
    assert all(abs(a - b) <= 1e-14 for a, b in zip(v, want))


def test_validate_boundary_vector_true_for_real_tuples():
    pts = random_null_tuple(3, 5, seed=35)
    _, g, _ = semi_normalize(pts)
    assert validate_boundary_vector(gram_to_vector(g), 3)


def test_validate_boundary_vector_false_when_n_too_small():
    pts = random_null_tuple(3, 5, seed=37)
    _, g, _ = semi_normalize(pts)
    v = gram_to_vector(g)
    assert not validate_boundary_vector(v, 1)


def test_validate_boundary_vector_malformed_v1():
    with pytest.raises(UsageError):
        validate_boundary_vector([quat(0.5)], 2)
    with pytest.raises(UsageError):
        validate_boundary_vector([Quaternion(0.0, 0.0, 1.0, 0.0)], 2)


def test_vector_to_gram_rejects_non_triangular_length():
    with pytest.raises(UsageError):
        vector_to_gram([quat(-1), quat(0)])


# ---------------------------------------------------------------------------
# moduli coordinate and congruence

def test_real_form_tuple_lands_in_real_stratum():
    coord = boundary_coordinate(real_null_tuple(4))
    assert coord.stratum == "Z_R"
    for q in coord.v:
        assert q.is_real(1e-8)
    assert coord.alpha <= 1e-8


def test_boundary_coordinate_invariant_under_action():
    for trial in range(20):
        pts = random_null_tuple(2, 4, seed=1100 + trial)
        g = random_isometry(2, seed=1200 + trial)
        d = random_rescaling(4, seed=1300 + trial)
        c1 = boundary_coordinate(pts)
        c2 = boundary_coordinate(apply_action(pts, g, d))
        assert c1.stratum == c2.stratum
        assert coordinate_distance(c1, c2) <= 1e-8


def test_congruent_boundary_oracle_and_negatives():
    pts = random_null_tuple(2, 4, seed=51)
    g = random_isometry(2, seed=52)
    d = random_rescaling(4, seed=53)
    assert congruent_boundary(pts, apply_action(pts, g, d))
    assert congruent_boundary(pts, pts)
    swapped = (pts[1], pts[0]) + pts[2:]
    assert not congruent_boundary(pts, swapped)
    other = random_null_tuple(2, 4, seed=54)
    assert not congruent_boundary(pts, other)


def test_coordinate_distance_cross_stratum_is_infinite():
    a = ModuliCoordinate("Z_R", (quat(1),), 0.0)
    b = ModuliCoordinate("P_C", (quat(1),), 0.0)
    assert coordinate_distance(a, b) == math.inf
