import math

import numpy as np
import pytest

from pychen.chart import MetricPatch, RoundSphereChart, chart
from pychen.errors import ChartError, ConfigError, ContractError, DomainError
from pychen.family import FamilySpec
from pychen.finite_difference import FDConfig, derivative, partials, richardson_extrapolate, second_derivative
from pychen.laplace import (
    MatrixField, constant_field, convergence_order, induced_metric, iterated_laplacian, laplace_beltrami,
    position_field, relative_difference,
)


@pytest.fixture(scope='module')
def sphere():
    return RoundSphereChart(3)


def test_richardson_removes_the_leading_error():
    cfg = FDConfig(h=1e-2, richardson_levels=2)
    assert derivative(lambda t: np.sin(0.3 + t), cfg) == pytest.approx(math.cos(0.3), abs=1e-11)
    assert second_derivative(lambda t: np.exp(t), cfg) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(ContractError):
        richardson_extrapolate([1.0], p=2)


def test_partials_of_a_quadratic():
    grad = partials(lambda u: u[0] ** 2 + 3 * u[0] * u[1], np.array([0.5, -1.0]), FDConfig(h=1e-2))
    np.testing.assert_allclose(grad, [-2.0, 1.5], atol=1e-10)


@pytest.mark.parametrize('kwargs', [{'h': 1.0}, {'h': 1e-7}, {'richardson_levels': 5}, {'order': 4}])
def test_fd_config_validation(kwargs):
    with pytest.raises(ConfigError):
        FDConfig(**kwargs)


def test_embedding_of_round_sphere_is_an_eigenfunction(sphere):
    # Delta x = n x on the unit sphere S^n
    field = MatrixField(sphere.embedding, 'x')
    u = np.array([0.05, -0.1, 0.02])
    value = laplace_beltrami(field, sphere, u)
    assert relative_difference(value, 3.0 * sphere.embedding(u)) <= 1e-7


def test_constants_are_harmonic(sphere):
    value = laplace_beltrami(constant_field(np.ones(2)), sphere, np.zeros(3))
    np.testing.assert_allclose(value, 0.0, atol=1e-12)


def test_plain_stencil_is_second_order(sphere):
    field = MatrixField(lambda u: sphere.embedding(u)[-1] ** 3, 'x_4^3')
    assert convergence_order(field, sphere, np.array([0.02, 0.01, -0.03])) == pytest.approx(2.0, abs=0.3)


def test_iterated_laplacian_on_round_sphere(sphere):
    field = MatrixField(sphere.embedding, 'x')
    u = np.array([0.01, 0.02, -0.01])
    nested = iterated_laplacian(field, sphere, u, 2)
    layered = iterated_laplacian(field, sphere, u, 2, closed_form=3.0 * field)
    assert relative_difference(layered, 9.0 * sphere.embedding(u)) <= 1e-5
    assert relative_difference(nested, 9.0 * sphere.embedding(u)) <= 1e-3
    with pytest.raises(ContractError):
        iterated_laplacian(field, sphere, u, 4)


def test_stencil_leaving_the_chart(sphere):
    with pytest.raises(DomainError):
        laplace_beltrami(MatrixField(sphere.embedding), sphere, np.array([0.25, 0.0, 0.0]))


def test_induced_metric_of_a_model_hypersurface():
    spec = FamilySpec('P2', 2, r=0.4)
    patch = induced_metric(chart(spec), np.zeros(spec.n))
    assert patch.n == spec.n
    assert np.all(patch.eigenvalues > 0)
    np.testing.assert_allclose(patch.g @ patch.g_inv, np.eye(spec.n), atol=1e-10)


def test_degenerate_metric():
    with pytest.raises(ChartError):
        MetricPatch(np.diag([1.0, 0.0]))


def test_position_laplacian_is_finite_everywhere_on_the_sample():
    spec = FamilySpec('H1k', 2, 1, 0.8)
    hc = chart(spec)
    for u in hc.sample_points(3, seed=2):
        assert np.all(np.isfinite(laplace_beltrami(position_field(hc), hc, u)))
