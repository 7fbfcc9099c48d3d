import math

import pytest

from pychen import checks
from pychen.checks import CHECK_NAMES, CheckContext, CheckGraph, make_record, run_check
from pychen.errors import ConfigError, DomainError
from pychen.family import FamilySpec


@pytest.fixture(scope='module')
def sphere_ctx():
    return CheckContext(FamilySpec('P1k', 2, 0, math.pi / 4))


@pytest.fixture(scope='module')
def horosphere_ctx():
    return CheckContext(FamilySpec('H3', 2))


class TestCheckGraph:

    def test_full_order(self):
        assert CheckGraph().execution_order() == [
            'sigma-identities', 'special-radii', 'mass-symmetry', 'minimality', 'table1', 'beltrami',
            'chen2', 'chen3', 'covariant-derivative', 'horosphere', 'one-type',
        ]

    def test_selected_order(self):
        assert CheckGraph().execution_order(['chen2', 'table1']) == ['table1', 'chen2']

    def test_prerequisites(self):
        assert CheckGraph().prerequisites('chen2') == ['beltrami', 'sigma-identities', 'special-radii', 'table1']

    def test_unknown_check(self):
        with pytest.raises(ConfigError):
            CheckGraph().execution_order(['table1', 'chen4'])

    def test_registry_covers_every_node(self):
        assert set(checks.CHECKS) == set(CHECK_NAMES)


class TestRecords:

    def test_lower_bounds(self):
        spec = FamilySpec('H3', 2)
        record = make_record('one-type', spec, {'fit': 0.5}, {'fit:min': 1e-2})
        assert record['pass']
        assert not make_record('one-type', spec, {'fit': 1e-3}, {'fit:min': 1e-2})['pass']

    def test_record_layout(self):
        record = make_record('table1', FamilySpec('P2', 2, r=0.3), {'spectrum': 1e-9}, {'spectrum': 1e-6},
                             expected=[1.0], provenance='closed-form')
        assert set(record) == {'check', 'family', 'params', 'residuals', 'tolerances', 'expected', 'pass'}
        assert record['params'] == {'m': 2, 'k': None, 'radius': 0.3}
        assert record['expected'] == {'value': [1.0], 'provenance': 'closed-form'}

    def test_failures_become_records(self, monkeypatch, sphere_ctx):
        def broken(ctx):
            raise DomainError('stencil left the chart')

        monkeypatch.setitem(checks.CHECKS, 'table1', broken)
        record = run_check('table1', sphere_ctx)
        assert not record['pass']
        assert 'DomainError' in record['error']


class TestSphere:

    def test_table(self, sphere_ctx):
        record = run_check('table1', sphere_ctx)
        assert record['pass'], record['residuals']

    def test_beltrami(self, sphere_ctx):
        assert run_check('beltrami', sphere_ctx)['pass']

    def test_two_type(self, sphere_ctx):
        record = run_check('chen2', sphere_ctx)
        assert record['pass'], record['residuals']
        assert record['expected']['value']['a'] == pytest.approx(52.0)
        assert record['expected']['value']['b'] == pytest.approx(640.0)
        assert record['eigenvalue_bounds'] == {'lambda_1_upper': pytest.approx(20.0),
                                               'lambda_2_upper': pytest.approx(32.0)}

    def test_covariant_derivative(self, sphere_ctx):
        assert run_check('covariant-derivative', sphere_ctx)['pass']

    def test_not_mass_symmetric(self, sphere_ctx):
        record = run_check('mass-symmetry', sphere_ctx)
        assert record['pass']
        assert record['residuals']['x0-gap'] > 1e-3

    def test_not_one_type(self, sphere_ctx):
        assert run_check('one-type', sphere_ctx)['pass']

    def test_checks_that_do_not_apply(self, sphere_ctx):
        assert run_check('horosphere', sphere_ctx) is None
        assert run_check('chen3', sphere_ctx) is None


class TestHorosphere:

    def test_constant_bilaplacian(self, horosphere_ctx):
        record = run_check('horosphere', horosphere_ctx)
        assert record['pass'], record['residuals']
        assert record['expected']['value'] == 'Delta^2 x = 48 (2 xi + sigma(xi, xi))'

    def test_no_two_type_equation(self, horosphere_ctx):
        record = run_check('chen2', horosphere_ctx)
        assert record['verdict'] == 'infinite'
        assert record['residuals'] == {}

    def test_not_minimal_family(self, horosphere_ctx):
        assert run_check('minimality', horosphere_ctx) is None


def test_special_radii_of_clifford_tubes():
    record = run_check('special-radii', CheckContext(FamilySpec('P1k', 3, 1, math.pi / 4)))
    assert record['pass'], record['residuals']
    assert any('minimal' in item['tags'] for item in record['expected']['value'])
    assert record['residuals']['clifford'] <= 1e-12


def test_special_radii_of_hyperbolic_tubes():
    record = run_check('special-radii', CheckContext(FamilySpec('H1k', 3, 1, 0.5)))
    assert record['pass']
    assert record['residuals']['admissible-roots'] == 0.0


def test_minimal_clifford_torus():
    record = run_check('minimality', CheckContext(FamilySpec('P1k', 3, 1, math.pi / 4)))
    assert record['pass']
    assert record['residuals']['mean-curvature'] <= 1e-9
    assert record['minimal_radius'] == pytest.approx(math.pi / 4)


def test_complex_tube_at_a_generic_radius():
    ctx = CheckContext(FamilySpec('P2', 2, r=0.9 * math.pi / 6))
    record = run_check('chen3', ctx)
    assert record['pass'], record['residuals']
    assert run_check('chen2', ctx)['residuals']['two-type-fit'] > 1e-2


@pytest.mark.parametrize('spec', [FamilySpec('H1k', 2, 0, 0.7), FamilySpec('H2', 2, r=0.6)], ids=repr)
def test_embedding_identities_in_hyperbolic_space(spec):
    record = run_check('sigma-identities', CheckContext(spec))
    assert record['pass'], record['residuals']
    assert checks.IDENTITY_SAMPLES >= 200


def test_table_reports_the_distance_to_the_core():
    record = run_check('table1', CheckContext(FamilySpec('P2', 2, r=math.pi / 6), samples=3))
    assert record['pass'], record['residuals']
    assert record['residuals']['core-distance'] <= 1e-8


def test_minimality_without_a_minimal_radius_does_not_apply():
    assert run_check('minimality', CheckContext(FamilySpec('H1k', 2, 0, 0.7))) is None


def test_minimality_checks_the_bracketed_root():
    record = run_check('minimality', CheckContext(FamilySpec('P1k', 4, 1, 0.5)))
    assert record['pass']
    assert record['residuals']['root-residual'] <= 1e-9
