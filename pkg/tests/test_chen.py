import math

import numpy as np
import pytest

from pychen.chart import chart
from pychen.closed_forms import (
    FieldExpression, bilaplacian_expression, complex_tube_bilaplacian_expression, horosphere_bilaplacian_expression,
    live_keys, sphere_bilaplacian_expression, tube_bilaplacian_expression,
)
from pychen.coefficients import (
    TypeCoefficients, a2_consistency, admissible_roots, closed_form_minimal_radius, condition_residuals,
    mean_curvature, minimal_radius_numeric, radii_for_token, solve_type_coefficients, special_radii,
)
from pychen.errors import ConfigError, ContractError, DegenerateSpectrumError, SpecError
from pychen.family import FamilySpec
from pychen.shape import shape_operator
from pychen.spectral import best_fit_one_type, spectral_decomposition, type_pde_residual

SQRT369 = math.sqrt(369.0)


def frame_of(spec):
    return shape_operator(chart(spec), np.zeros(spec.n))


@pytest.fixture(scope='module')
def sphere():
    spec = FamilySpec('P1k', 2, 0, math.pi / 4)
    return frame_of(spec), solve_type_coefficients(spec)


class TestTypeCoefficients:

    def test_sphere(self):
        coeffs = solve_type_coefficients(FamilySpec('P1k', 2, 0, math.pi / 4))
        assert coeffs.verdict == 'two-type'
        assert (coeffs.a, coeffs.b) == (pytest.approx(52.0), pytest.approx(640.0))
        assert coeffs.lambda_u == pytest.approx(32.0)
        assert coeffs.lambda_v == pytest.approx(20.0)

    def test_sphere_about_a_hyperplane_matches_the_point_sphere(self):
        point = solve_type_coefficients(FamilySpec('P1k', 2, 0, 0.6))
        plane = solve_type_coefficients(FamilySpec('P1k', 2, 1, math.pi / 2 - 0.6))
        np.testing.assert_allclose(plane.eigenvalues, point.eigenvalues, rtol=1e-12)

    def test_one_type_sphere(self):
        coeffs = solve_type_coefficients(FamilySpec('P1k', 2, 0, math.pi / 3))
        assert coeffs.verdict == 'one-type'
        # 2(n+1)(mu^2 + 1) with mu^2 = 1/3
        assert coeffs.lambda_u == pytest.approx(64.0 / 3.0)

    def test_complex_tube_at_special_radius(self):
        coeffs = solve_type_coefficients(FamilySpec('P2', 2, r=0.5 * math.atan(math.sqrt(2.0))))
        assert (coeffs.a, coeffs.b) == (pytest.approx(42.0), pytest.approx(432.0))
        np.testing.assert_allclose(coeffs.eigenvalues, [18.0, 24.0], rtol=1e-10)

    def test_complex_tube_cubic(self):
        coeffs = solve_type_coefficients(FamilySpec('P2', 2, r=math.pi / 6))
        assert coeffs.verdict == 'three-type'
        np.testing.assert_allclose(coeffs.eigenvalues, [16.0, 80.0 / 3.0, 48.0], rtol=1e-9)

    @pytest.mark.parametrize('r, expected', [
        (math.pi / 4, [28.0, 32.0]),
        (math.atan(3.0 / math.sqrt(7.0)), [256.0 / 9.0, 256.0 / 7.0]),
    ])
    def test_clifford_tubes(self, r, expected):
        coeffs = solve_type_coefficients(FamilySpec('P1k', 3, 1, r))
        assert coeffs.verdict == 'two-type'
        np.testing.assert_allclose(coeffs.eigenvalues, expected, rtol=1e-10)

    def test_other_tubes_are_not_two_type(self):
        assert solve_type_coefficients(FamilySpec('P1k', 3, 1, 0.5)).verdict == 'not-2'
        assert solve_type_coefficients(FamilySpec('H1k', 3, 1, 0.5)).verdict == 'not-2'
        assert solve_type_coefficients(FamilySpec('H3', 2)).verdict == 'infinite'

    def test_hyperbolic_spheres_are_two_type(self):
        for r in (0.3, 1.0, 2.5):
            assert solve_type_coefficients(FamilySpec('H1k', 2, 0, r)).verdict == 'two-type'

    def test_degenerate_spectra(self):
        with pytest.raises(DegenerateSpectrumError):
            TypeCoefficients.two_type(4.0, 4.0)
        with pytest.raises(DegenerateSpectrumError):
            TypeCoefficients.three_type(-3.0, 3.0, -1.0)


class TestSpecialRadii:

    def test_sphere_radii(self):
        radii = {s.label + ':' + ','.join(s.tags): s.radius for s in special_radii('P1k', 2, 0)}
        assert radii['one-type:'] == pytest.approx(math.pi / 3)
        assert radii['two-type:mass-symmetric'] == pytest.approx(math.atan(math.sqrt(2.0)))
        assert radii['two-type:minimal'] == pytest.approx(math.atan(math.sqrt(7.0 / 3.0)))

    def test_clifford_tube_radii(self):
        radii = {s.label: s for s in special_radii('P1k', 3, 1)}
        assert radii['two-type-a'].radius == pytest.approx(math.pi / 4)
        assert set(radii['two-type-a'].tags) == {'mass-symmetric', 'minimal'}
        assert radii['two-type-b'].radius == pytest.approx(math.atan(3.0 / math.sqrt(7.0)))
        assert radii['two-type-c'].duplicate_of == 'two-type-b'
        assert radii['two-type-a'].clifford == pytest.approx((math.sqrt(0.5), math.sqrt(0.5)))

    def test_complex_tube_radii(self):
        radii = radii_for_token('auto:two-type', 'P2', 2)
        expected = [0.5 * math.atan(math.sqrt(30.0 / (3.0 + SQRT369))), 0.5 * math.atan(math.sqrt(2.0))]
        np.testing.assert_allclose(sorted(radii), sorted(expected), rtol=1e-12)

    @pytest.mark.parametrize('family, m, k', [('H1k', 3, 1), ('H2', 2, None), ('H1k', 2, 0), ('H3', 2, None)])
    def test_hyperbolic_families_have_none(self, family, m, k):
        assert admissible_roots(family, m, k) == {}
        assert special_radii(family, m, k) == []

    def test_unknown_token(self):
        with pytest.raises(ConfigError):
            radii_for_token('auto:three-type', 'P2', 2)

    def test_illegal_core(self):
        with pytest.raises(SpecError):
            special_radii('P1k', 2, 5)


class TestMinimality:

    def test_sphere_root_matches_closed_form(self):
        numeric = minimal_radius_numeric('P1k', 2, 0)
        assert numeric == pytest.approx(closed_form_minimal_radius('P1k', 2, 0), abs=1e-10)

    def test_clifford_torus_is_minimal(self):
        assert abs(mean_curvature('P1k', 3, 1, math.pi / 4)) <= 1e-9
        assert minimal_radius_numeric('P1k', 3, 1) == pytest.approx(math.pi / 4, abs=1e-10)

    def test_no_root_in_hyperbolic_space(self):
        assert minimal_radius_numeric('H1k', 2, 0) is None


class TestClosedForms:

    def test_field_expression_algebra(self):
        e = FieldExpression.of('e', d=2.0, xi=1.0)
        assert e['sigma_mu'] == e['sigma_nu'] == 2.0
        assert (e - e).max_coefficient_gap(FieldExpression()) == 0.0
        assert (3 * e)['xi'] == 3.0
        with pytest.raises(ContractError):
            FieldExpression({'curvature': 1.0})

    def test_reduced_sphere_form(self):
        spec = FamilySpec('P1k', 2, 0, 0.7)
        reduced = sphere_bilaplacian_expression(spec)
        assert bilaplacian_expression(spec).max_coefficient_gap(reduced, live_keys(spec)) <= 1e-9

    def test_reduced_form_of_sphere_about_a_hyperplane(self):
        spec = FamilySpec('P1k', 3, 2, 0.7)
        assert live_keys(spec)[-1] == 'sigma_nu'
        reduced = sphere_bilaplacian_expression(spec)
        assert bilaplacian_expression(spec).max_coefficient_gap(reduced, live_keys(spec)) <= 1e-9

    def test_reduced_tube_form(self):
        spec = FamilySpec('P1k', 3, 1, 0.6)
        assert bilaplacian_expression(spec).max_coefficient_gap(tube_bilaplacian_expression(spec)) <= 1e-9

    def test_two_type_complex_tube_coefficients(self):
        spec = FamilySpec('P2', 2, r=0.5 * math.atan(math.sqrt(2.0)))
        reduced = complex_tube_bilaplacian_expression(spec)
        assert reduced['xi'] == pytest.approx(42.0 * math.sqrt(2.0))
        assert reduced['sigma_xi'] == pytest.approx(-54.0)
        assert reduced['sigma_mu'] == pytest.approx(-24.0)

    def test_horosphere_form(self):
        expr = horosphere_bilaplacian_expression(FamilySpec('H3', 2))
        assert (expr['xi'], expr['sigma_xi']) == (96.0, 48.0)
        spec = FamilySpec('H3', 2)
        assert bilaplacian_expression(spec).max_coefficient_gap(expr, live_keys(spec)) <= 1e-9

    def test_a2_consistency_vanishes_at_special_radii(self):
        for item in special_radii('P1k', 3, 1):
            assert abs(a2_consistency(item.spec())) <= 1e-9


class TestSpectral:

    def test_sphere_decomposition(self, sphere):
        frame, coeffs = sphere
        decomposition = spectral_decomposition(frame, coeffs)
        assert decomposition.eigenvalues == pytest.approx([32.0, 20.0])
        points = frame.chart.sample_points(3, seed=0)
        assert decomposition.reconstruction_residual(points) <= 1e-8
        assert max(decomposition.eigen_residuals(points[1])) <= 1e-4

    def test_sphere_type_equation(self, sphere):
        frame, coeffs = sphere
        assert type_pde_residual(frame, coeffs, points=frame.chart.sample_points(4, seed=0)) <= 1e-4

    def test_sphere_conditions(self, sphere):
        frame, coeffs = sphere
        report = condition_residuals(frame, coeffs)
        assert report.verdict
        assert report.worst <= 1e-9

    def test_conditions_need_order_two(self, sphere):
        frame, _ = sphere
        with pytest.raises(ContractError):
            condition_residuals(frame, TypeCoefficients('not-2'))

    def test_generic_sphere_is_not_one_type(self, sphere):
        frame, _ = sphere
        assert best_fit_one_type(frame.chart, frame.chart.sample_points(6, seed=0))['residual'] > 1e-2

    def test_mass_symmetric_sphere(self):
        spec = FamilySpec('P1k', 2, 0, math.atan(math.sqrt(2.0)))
        decomposition = spectral_decomposition(frame_of(spec), solve_type_coefficients(spec))
        assert decomposition.mass_center_gap() <= 1e-8

    def test_one_type_sphere(self):
        spec = FamilySpec('P1k', 2, 0, math.pi / 3)
        frame, coeffs = frame_of(spec), solve_type_coefficients(spec)
        assert type_pde_residual(frame, coeffs, points=frame.chart.sample_points(4, seed=1)) <= 1e-4

    @pytest.mark.parametrize('r, gap', [(math.pi / 4, 0.0), (math.atan(3.0 / math.sqrt(7.0)), 1.0 / 32.0)])
    def test_clifford_tube_mass_centers(self, r, gap):
        spec = FamilySpec('P1k', 3, 1, r)
        decomposition = spectral_decomposition(frame_of(spec), solve_type_coefficients(spec))
        assert decomposition.mass_center_gap() == pytest.approx(gap, abs=1e-6)


@pytest.fixture(scope='module', params=[
    0.5 * math.atan(math.sqrt(2.0)),
    0.5 * math.atan(math.sqrt(30.0 / (3.0 + SQRT369))),
], ids=['alpha2', 'cubic-root'])
def complex_tube(request):
    spec = FamilySpec('P2', 2, r=request.param)
    return frame_of(spec), solve_type_coefficients(spec)


class TestComplexTubes:

    def test_two_type(self, complex_tube):
        frame, coeffs = complex_tube
        assert coeffs.verdict == 'two-type'
        assert condition_residuals(frame, coeffs).worst <= 1e-9
        assert type_pde_residual(frame, coeffs, points=frame.chart.sample_points(3, seed=0)) <= 1e-4

    def test_decomposition(self, complex_tube):
        frame, coeffs = complex_tube
        decomposition = spectral_decomposition(frame, coeffs)
        assert sorted(decomposition.eigenvalues) == pytest.approx(sorted(coeffs.eigenvalues))
        assert decomposition.mass_center_gap() <= 1e-8
        points = frame.chart.sample_points(3, seed=0)
        assert decomposition.reconstruction_residual(points) <= 1e-8
        assert max(decomposition.eigen_residuals(points[1])) <= 1e-4


def test_complex_tube_components_from_the_laplacian():
    # x_u = (Delta x - l_v (x - x0)) / (l_u - l_v)
    spec = FamilySpec('P2', 2, r=0.5 * math.atan(math.sqrt(2.0)))
    frame, coeffs = frame_of(spec), solve_type_coefficients(spec)
    decomposition = spectral_decomposition(frame, coeffs)
    (l_u, _), (l_v, _) = decomposition.components
    u = frame.chart.sample_points(2, seed=3)[1]
    x = frame.chart.position(u)
    lap = decomposition.closed.field('laplacian')(u)
    expected = (lap - l_v * (x - decomposition.x0)) / (l_u - l_v)
    np.testing.assert_allclose(decomposition.component(0, u), expected, atol=1e-7)
    assert sorted([l_u, l_v]) == pytest.approx([18.0, 24.0])


@pytest.mark.parametrize('spec', [
    FamilySpec('H1k', 2, 0, 0.7), FamilySpec('H2', 2, r=0.6), FamilySpec('H1k', 3, 1, 0.5),
], ids=repr)
def test_hyperbolic_families_are_not_one_type(spec):
    tube = chart(spec)
    assert best_fit_one_type(tube, tube.sample_points(6, seed=0))['residual'] > 0.1
