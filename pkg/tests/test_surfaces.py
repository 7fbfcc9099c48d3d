import math

import numpy as np
import pytest

from pychen.chart import GaugeTwistedChart, chart
from pychen.errors import ChartError, SpecError
from pychen.family import FamilySpec, radius_interval
from pychen.laplace import laplace_beltrami, position_field, relative_difference
from pychen.shape import (
    census_defect, covariant_derivative_residual, curvature_adapted_residual, jacobi_matrix, normal_jacobi,
    scalar_invariants, shape_operator,
)


@pytest.fixture(scope='module')
def sphere_frame():
    spec = FamilySpec('P1k', 2, 0, math.pi / 4)
    return shape_operator(chart(spec), np.zeros(spec.n))


@pytest.fixture(scope='module')
def horosphere_frame():
    spec = FamilySpec('H3', 2)
    return shape_operator(chart(spec), np.zeros(spec.n))


@pytest.mark.parametrize('args', [
    ('P9', 2, 0, 0.5),
    ('P1k', 1, 0, 0.5),
    ('P1k', 3, 3, 0.5),
    ('P1k', 2, None, 0.5),
    ('P1k', 2, 0, math.pi / 2),
    ('P2', 2, None, 0.8),
    ('H1k', 2, 0, -0.1),
    ('H2', 2, None, None),
])
def test_illegal_specs(args):
    with pytest.raises(SpecError):
        FamilySpec(*args)


def test_family_classes():
    assert FamilySpec('p1k', 3, 0, 0.5).klass == 'A1'
    assert FamilySpec('p1k', 3, 2, 0.5).klass == 'A1'
    assert FamilySpec('P1k', 3, 1, 0.5).klass == 'A2'
    assert FamilySpec('h2', 2, r=1.0).klass == 'B'
    assert FamilySpec('H3', 2).klass == 'A0'
    assert radius_interval('P2') == (0.0, math.pi / 4)


@pytest.mark.parametrize('spec', [
    FamilySpec('P1k', 3, 1, 0.6), FamilySpec('H1k', 2, 0, 0.7), FamilySpec('P2', 2, r=0.3),
    FamilySpec('H2', 3, r=0.9), FamilySpec('H3', 3),
])
def test_table_multiplicities_fill_the_tangent_space(spec):
    assert sum(row.multiplicity for row in spec.principal_curvatures()) == spec.n
    assert len(spec.alphas()) == 3


def test_chart_needs_a_spec():
    with pytest.raises(ChartError):
        chart('P1k')


def test_sphere_spectrum(sphere_frame):
    gap, same = census_defect(sphere_frame)
    assert same
    assert gap <= 1e-6
    # mu = cot(pi/4) = 1 on D, alpha = 2 cot(pi/2) = 0 on the U_q
    np.testing.assert_allclose(sorted(sphere_frame.alphas), [0.0, 0.0, 0.0], atol=1e-6)
    assert sphere_frame.principal_residual() <= 1e-6


def test_sphere_is_curvature_adapted(sphere_frame):
    assert curvature_adapted_residual(sphere_frame) <= 1e-6
    np.testing.assert_allclose(normal_jacobi(sphere_frame), jacobi_matrix(sphere_frame), atol=1e-8)


def test_sphere_scalars(sphere_frame):
    s = scalar_invariants(sphere_frame)
    assert s.f == pytest.approx(4.0, abs=1e-6)
    assert s.f2 == pytest.approx(4.0, abs=1e-6)


def test_sphere_covariant_derivative(sphere_frame):
    assert covariant_derivative_residual(sphere_frame) <= 1e-5


def test_horosphere_spectrum(horosphere_frame):
    values = np.sort(horosphere_frame.eigenvalues)
    np.testing.assert_allclose(values[:4], 1.0, atol=1e-6)
    np.testing.assert_allclose(values[4:], 2.0, atol=1e-6)


def test_horosphere_level_is_constant():
    hc = chart(FamilySpec('H3', 2))
    points = hc.sample_points(5, seed=1)
    levels = [hc.level(u) for u in points]
    assert max(levels) - min(levels) <= 1e-12


def test_laplacian_ignores_coordinates_and_gauge():
    base = chart(FamilySpec('P1k', 2, 0, 0.9))
    rng = np.random.default_rng(5)
    matrix = np.eye(base.n) + 0.2 * rng.normal(size=(base.n, base.n))
    twist = 0.3 * rng.normal(size=(3, base.n + 1))
    twisted = GaugeTwistedChart(base, matrix, twist)
    u = np.full(base.n, 0.01)
    direct = laplace_beltrami(position_field(base), base, twisted.to_base(u))
    through = laplace_beltrami(position_field(twisted), twisted, u)
    assert relative_difference(through, direct) <= 2e-6


def table_spectrum(spec):
    return np.sort([row.value for row in spec.principal_curvatures() for _ in range(row.multiplicity)])


def test_complex_tube_spectrum():
    spec = FamilySpec('P2', 2, r=math.pi / 6)
    frame = shape_operator(chart(spec), np.zeros(spec.n))
    s3 = math.sqrt(3.0)
    expected = [-2 * s3, -2 * s3, -1 / s3, -1 / s3, 2 / s3, s3, s3]
    np.testing.assert_allclose(np.sort(frame.eigenvalues), expected, atol=1e-6)
    gap, same = census_defect(frame)
    assert same
    assert gap <= 1e-6


@pytest.mark.parametrize('spec', [
    FamilySpec('H1k', 2, 0, 0.7),
    FamilySpec('H1k', 3, 2, 0.5),
    FamilySpec('H2', 2, r=0.6),
    FamilySpec('P1k', 3, 1, 0.6),
], ids=repr)
def test_table_spectrum(spec):
    tube = chart(spec)
    for u in tube.sample_points(2, seed=4):
        frame = shape_operator(tube, u)
        np.testing.assert_allclose(np.sort(frame.eigenvalues), table_spectrum(spec), atol=1e-6)
        assert census_defect(frame)[1]
        assert curvature_adapted_residual(frame) <= 1e-6


@pytest.mark.parametrize('spec', [
    FamilySpec('P2', 2, r=math.pi / 6),
    FamilySpec('H2', 2, r=0.6),
    FamilySpec('P1k', 3, 1, 0.6),
    FamilySpec('H1k', 2, 0, 0.7),
], ids=repr)
def test_points_lie_at_the_radius_from_the_core(spec):
    tube = chart(spec)
    for u in tube.sample_points(6, seed=2):
        assert tube.distance_to_core(u) == pytest.approx(spec.r, abs=1e-10)


def test_horospheres_have_no_core():
    with pytest.raises(ChartError):
        chart(FamilySpec('H3', 2)).distance_to_core(np.zeros(7))


def test_clifford_lift():
    spec = FamilySpec('P1k', 3, 1, math.pi / 4)
    tube = chart(spec)
    for u in tube.sample_points(3, seed=0):
        z = tube.lift(u)
        assert np.linalg.norm(z[:2]) == pytest.approx(math.sqrt(0.5), abs=1e-12)
        assert np.linalg.norm(z[2:]) == pytest.approx(math.sqrt(0.5), abs=1e-12)
