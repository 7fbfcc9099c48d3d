import math

import numpy as np
import pytest

from pychen.checks import IDENTITY_SAMPLES, IDENTITY_TOL, TRANSPORT_TOL, WEINGARTEN_TOL, embedding_identity_residuals
from pychen.errors import DimensionError, HorizontalityError
from pychen.quaternion import left_mul_array
from pychen.spaceform import (
    STANDARD_TRIPLE, HorizontalVector, SpaceFormPoint, curvature_tensor, geodesic, jq_apply, push_tangent,
    sigma, sigma_closed_array,
)


@pytest.fixture
def rng():
    return np.random.default_rng(11)


@pytest.mark.parametrize('c', [1, -1])
def test_embedding_identities(c):
    worst = embedding_identity_residuals(2, c, count=IDENTITY_SAMPLES)
    for key in ('quadric', 'isometry', 'sigma-closed', 'sigma-inner', 'sigma-position', 'sigma-trace',
                'sigma-j', 'triple'):
        assert worst[key] <= IDENTITY_TOL, key
    assert worst['weingarten'] <= WEINGARTEN_TOL
    assert worst['transport'] <= TRANSPORT_TOL


def test_closed_geodesics_have_length_pi(rng):
    p = SpaceFormPoint.random(2, 1, rng)
    X = p.random_horizontal(rng)
    q = geodesic(p, X, math.pi)
    np.testing.assert_allclose(q.P.entries, p.P.entries, atol=1e-12)


def test_geodesic_needs_unit_speed(rng):
    p = SpaceFormPoint.random(2, -1, rng)
    with pytest.raises(HorizontalityError):
        geodesic(p, 2.0 * p.random_horizontal(rng), 0.3)


def test_fiber_directions_push_to_zero(rng):
    p = SpaceFormPoint.random(2, 1, rng)
    vertical = left_mul_array(np.array([0.0, 1.0, 0.0, 0.0]), p.z)
    assert push_tangent(p, vertical).value.max_abs() < 1e-12


def test_vertical_vector_is_not_horizontal(rng):
    p = SpaceFormPoint.random(2, 1, rng)
    with pytest.raises(HorizontalityError):
        HorizontalVector(p.z, STANDARD_TRIPLE.apply_array(2, p.z), p.c)


@pytest.mark.parametrize('c', [1, -1])
def test_complex_structures_are_isometries(rng, c):
    p = SpaceFormPoint.random(3, c, rng)
    X = p.random_horizontal(rng)
    for q in (1, 2, 3):
        JX = jq_apply(p, q, X)
        assert JX.norm() == pytest.approx(1.0, abs=1e-12)
        assert JX.inner(X) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DimensionError):
        jq_apply(p, 4, X)


def test_sigma_matches_closed_form(rng):
    p = SpaceFormPoint.random(2, -1, rng)
    X, Y = p.random_horizontal(rng), p.random_horizontal(rng)
    value = sigma(p, X, Y).value.entries
    np.testing.assert_allclose(value, sigma_closed_array(p.z, X.v, Y.v, p.c), atol=1e-8)


def test_holomorphic_sectional_curvature(rng):
    # <R(X, JX)JX, X> = 4c for unit X
    for c in (1, -1):
        p = SpaceFormPoint.random(2, c, rng)
        X = p.random_horizontal(rng)
        JX = jq_apply(p, 1, X)
        assert curvature_tensor(p, X, JX, JX).inner(X) == pytest.approx(4.0 * c, abs=1e-10)


def test_sigma_is_invariant_under_the_quaternionic_structure(rng):
    p = SpaceFormPoint.random(2, -1, rng)
    X, Y = p.random_horizontal(rng), p.random_horizontal(rng)
    base = sigma(p, X, Y).value.entries
    for q in (1, 2, 3):
        turned = sigma(p, jq_apply(p, q, X), jq_apply(p, q, Y)).value.entries
        np.testing.assert_allclose(turned, base, atol=1e-8)
