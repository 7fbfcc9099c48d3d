"""Named verification checks and the graph of their dependencies.

Every check maps one FamilySpec to a record

    {check, family, params, residuals, tolerances, expected, pass}

``tolerances`` are upper bounds on the residual of the same name; a key
ending in ``:min`` is a lower bound on the residual named by the rest of
the key.
"""

import math
from functools import cached_property

import networkx as nx
import numpy as np

from .chart import chart as build_chart
from .closed_forms import (
    ClosedForms, FieldExpression, Ingredients, auxiliary_expressions, bilaplacian_expression,
    closed_form_fields, complex_tube_bilaplacian_expression, horosphere_bilaplacian_expression,
    laplacian_expression, live_keys, position_expression, sphere_bilaplacian_expression,
    tube_bilaplacian_expression,
)
from .coefficients import (
    admissible_roots, closed_form_minimal_radius, condition_residuals, eigenvalue_bounds,
    mean_curvature, minimal_radius_numeric, solve_type_coefficients, special_radii,
)
from .diagnostics import say
from .errors import ConfigError, PyChenError
from .family import FamilySpec
from .finite_difference import LAYERED_FD, ORACLE_FD
from .laplace import laplace_beltrami, position_field, relative_difference
from .quaternion import QMatrix, identity_array, projector_array, real_form_array, trace_metric_array
from .shape import (
    census_defect, covariant_derivative_residual, curvature_adapted_residual, jacobi_matrix,
    normal_jacobi, shape_operator,
)
from .spaceform import (
    STANDARD_TRIPLE, HorizontalVector, SigmaOracle, SigmaValue, SpaceFormPoint, jq_apply, push_tangent,
    shape_operator_of_embedding, sigma_closed_array, sigma_transport_defect, weingarten_fd,
)
from .spectral import (
    DEFAULT_SAMPLES, DEFAULT_SEED, RECONSTRUCTION_TOL, best_fit_one_type, best_fit_two_type, decompose,
    horosphere_spread, spectral_decomposition, type_pde_residual,
)

CHECK_NAMES = (
    'table1', 'sigma-identities', 'beltrami', 'chen2', 'chen3', 'horosphere',
    'mass-symmetry', 'minimality', 'special-radii', 'one-type', 'covariant-derivative',
)

TABLE_TOL = 1e-6
IDENTITY_TOL = 1e-8
WEINGARTEN_TOL = 1e-7
TRANSPORT_TOL = 1e-6
BELTRAMI_TOL = 1e-6
LAYERED_TOL = 1e-4
CLOSED_FORM_TOL = 1e-9
PDE2_TOL = 1e-4
PDE3_TOL = 1e-3
MISFIT_MIN = 1e-2
COVARIANT_TOL = 1e-5
HOROSPHERE_SPREAD_TOL = 1e-5
MASS_TOL = 1e-8
MASS_A2_TOL = 1e-6
MASS_GAP_MIN = 1e-3
MINIMAL_ROOT_TOL = 1e-10
CLIFFORD_TOL = 1e-12
RADIUS_MATCH_TOL = 1e-10
IDENTITY_SAMPLES = 200


class CheckGraph:
    """
    Dependency graph of the named checks.
    """

    def __init__(self):
        self.graph = nx.DiGraph()
        self._build_graph()

    def _build_graph(self):
        for name in CHECK_NAMES:
            self.graph.add_node(name)
        self.graph.add_edge('sigma-identities', 'beltrami')
        self.graph.add_edge('table1', 'beltrami')
        for later in ('chen2', 'chen3', 'horosphere', 'one-type'):
            self.graph.add_edge('beltrami', later)
        self.graph.add_edge('table1', 'covariant-derivative')
        for later in ('chen2', 'mass-symmetry', 'minimality'):
            self.graph.add_edge('special-radii', later)

    def prerequisites(self, name):
        return sorted(nx.ancestors(self.graph, name))

    def execution_order(self, selected=None):
        """
        The selected checks in lexicographic topological order.

        :param selected: names to run; None runs every check.
        :raises ConfigError: on unknown names.
        """
        if selected is None:
            selected = CHECK_NAMES
        unknown = sorted(set(selected) - set(CHECK_NAMES))
        if unknown:
            raise ConfigError(f"unknown checks: {', '.join(unknown)} (expected from {', '.join(CHECK_NAMES)})")
        wanted = set(selected)
        return [name for name in nx.lexicographical_topological_sort(self.graph) if name in wanted]


class CheckContext:
    """
    Lazily built objects shared by the checks of one FamilySpec.
    """

    def __init__(self, spec, samples=DEFAULT_SAMPLES, seed=DEFAULT_SEED, oracle_cfg=ORACLE_FD):
        self.spec = spec
        self.samples = samples
        self.seed = seed
        self.oracle_cfg = oracle_cfg

    @cached_property
    def chart(self):
        return build_chart(self.spec)

    @cached_property
    def points(self):
        return self.chart.sample_points(self.samples, self.seed)

    @cached_property
    def frame(self):
        return shape_operator(self.chart, np.zeros(self.chart.n))

    @cached_property
    def coeffs(self):
        return solve_type_coefficients(self.spec)

    @cached_property
    def decomposition(self):
        return spectral_decomposition(self.frame, self.coeffs)


def _passes(residuals, tolerances):
    for key, tol in tolerances.items():
        if key.endswith(':min'):
            if not residuals[key[:-4]] > tol:
                return False
        elif not residuals[key] <= tol:
            return False
    return True


def _clean(value):
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def make_record(check, spec, residuals, tolerances, expected=None, provenance='derived', passed=None, **extra):
    """Builds one report record; ``pass`` defaults to the tolerance test."""
    record = {
        'check': check,
        'family': spec.family,
        'params': spec.params(),
        'residuals': {k: float(v) for k, v in residuals.items()},
        'tolerances': dict(tolerances),
        'expected': {'value': expected, 'provenance': provenance},
        'pass': _passes(residuals, tolerances) if passed is None else bool(passed),
    }
    record.update(extra)
    return _clean(record)


def check_table(ctx):
    """Principal curvatures and multiplicities against the table."""
    spec = ctx.spec
    worst = {'spectrum': 0.0, 'curvature-adapted': 0.0, 'principal-U': 0.0, 'jacobi': 0.0}
    same = True
    for u in ctx.points[:3]:
        frame = shape_operator(ctx.chart, u)
        gap, agree = census_defect(frame)
        same = same and agree
        worst['spectrum'] = max(worst['spectrum'], gap)
        worst['curvature-adapted'] = max(worst['curvature-adapted'], curvature_adapted_residual(frame))
        worst['principal-U'] = max(worst['principal-U'], frame.principal_residual())
        worst['jacobi'] = max(worst['jacobi'], float(np.max(np.abs(normal_jacobi(frame) - jacobi_matrix(frame)))))
    table = [[row.value, row.multiplicity] for row in spec.principal_curvatures()]
    tolerances = {key: TABLE_TOL for key in worst}
    if spec.r is not None:
        worst['core-distance'] = max(abs(ctx.chart.distance_to_core(u) - spec.r) for u in ctx.points[:3])
        tolerances['core-distance'] = IDENTITY_TOL
    return make_record('table1', spec, worst, tolerances, table, 'closed-form',
                       passed=same and _passes(worst, tolerances), multiplicities_agree=same)


def _sigma_inner_closed(x, y, v, w, c):
    g = lambda a, b: real_form_array(a, b, c)
    total = 2 * g(x, y) * g(v, w) + g(x, v) * g(y, w) + g(x, w) * g(y, v)
    for q in (1, 2, 3):
        jx, jy = STANDARD_TRIPLE.apply_array(q, x), STANDARD_TRIPLE.apply_array(q, y)
        total += g(jx, v) * g(jy, w) + g(jx, w) * g(jy, v)
    return c * total


def _orthogonal_to_line(p, x, rng):
    """A unit horizontal vector quaternionically orthogonal to ``x``."""
    w = p.random_horizontal(rng).v
    for q in range(4):
        qx = STANDARD_TRIPLE.apply_array(q, x) if q else x
        w = w - real_form_array(w, qx, p.c) / real_form_array(qx, qx, p.c) * qx
    return w / math.sqrt(real_form_array(w, w, p.c))


def embedding_identity_residuals(m, c, count=IDENTITY_SAMPLES, seed=DEFAULT_SEED, transport_count=3):
    """
    Largest violations of the identities of the projector embedding over
    random points and horizontal vectors of HQ^m.
    """
    rng = np.random.default_rng(seed)
    center = identity_array(m) / (m + 1)
    names = ('quadric', 'isometry', 'sigma-closed', 'sigma-inner', 'sigma-position', 'sigma-trace',
             'sigma-j', 'weingarten', 'triple', 'transport')
    worst = dict.fromkeys(names, 0.0)

    def note(key, value):
        worst[key] = max(worst[key], float(value))

    for i in range(count):
        p = SpaceFormPoint.random(m, c, rng)
        X, Y, V, W = (p.random_horizontal(rng) for _ in range(4))
        z, P = p.z, projector_array(p.z, c)
        d = P - center
        note('quadric', abs(trace_metric_array(d, d, c) - c * m / (2.0 * (m + 1))))
        push_x, push_y = push_tangent(p, X).value.entries, push_tangent(p, Y).value.entries
        note('isometry', abs(trace_metric_array(push_x, push_y, c) - X.inner(Y)))
        oracle = SigmaOracle(p)
        sxy, svw = oracle.raw(X.v, Y.v), oracle.raw(V.v, W.v)
        note('sigma-closed', np.max(np.abs(sxy - sigma_closed_array(z, X.v, Y.v, c))))
        note('sigma-inner', abs(trace_metric_array(sxy, svw, c) - _sigma_inner_closed(X.v, Y.v, V.v, W.v, c)))
        note('sigma-position', abs(trace_metric_array(sxy, P, c) + X.inner(Y)))
        note('sigma-trace', abs(trace_metric_array(sxy, identity_array(m), c)))
        for q in (1, 2, 3):
            turned = oracle.raw(jq_apply(p, q, X).v, jq_apply(p, q, Y).v)
            note('sigma-j', np.max(np.abs(turned - sxy)))
        numeric = weingarten_fd(p, SigmaValue(QMatrix(sxy, c)), V)
        closed = shape_operator_of_embedding(p, X, Y, V)
        note('weingarten', np.max(np.abs(numeric.v - closed.v)))
        note('triple', STANDARD_TRIPLE.defects(p, X.v))
        if i < transport_count:
            parallel = HorizontalVector(z, _orthogonal_to_line(p, X.v, rng), c)
            note('transport', sigma_transport_defect(p, X, parallel).normal)
    return worst


def check_sigma_identities(ctx):
    spec = ctx.spec
    worst = embedding_identity_residuals(spec.m, spec.c, IDENTITY_SAMPLES, ctx.seed)
    tolerances = {key: IDENTITY_TOL for key in worst}
    tolerances['weingarten'] = WEINGARTEN_TOL
    tolerances['transport'] = TRANSPORT_TOL
    return make_record('sigma-identities', spec, worst, tolerances, 0.0, 'closed-form')


def check_beltrami(ctx):
    """Oracle Laplacian of the position against the Beltrami formula."""
    spec, chart = ctx.spec, ctx.chart
    expected = laplacian_expression(spec)
    position = position_field(chart)
    residuals = {'laplacian': 0.0, 'split': 0.0, 'position-identity': 0.0}
    for u in ctx.points:
        measured = laplace_beltrami(position, chart, u, ctx.oracle_cfg)
        parts = Ingredients(chart, u)
        residuals['laplacian'] = max(residuals['laplacian'], relative_difference(measured, expected.evaluate(parts)))
        residuals['split'] = max(residuals['split'], parts.split_defect)
        gap = np.max(np.abs(parts.position - position_expression(spec).evaluate(parts)))
        residuals['position-identity'] = max(residuals['position-identity'], float(gap))
    tolerances = {'laplacian': BELTRAMI_TOL, 'split': IDENTITY_TOL, 'position-identity': IDENTITY_TOL}
    if spec.klass == 'B':
        basis = {'sigma_xi': FieldExpression.of('sigma(xi,xi)', sigma_xi=1.0),
                 'sigma_d': FieldExpression.of('sigma_D', d=1.0),
                 'xi': FieldExpression.of('xi', xi=1.0)}
        for key, target in auxiliary_expressions(spec).items():
            field = basis[key].field(chart)
            name = f"laplacian:{key}"
            residuals[name] = max(
                relative_difference(laplace_beltrami(field, chart, u, LAYERED_FD), target.field(chart)(u))
                for u in ctx.points[:3])
            tolerances[name] = LAYERED_TOL
    return make_record('beltrami', spec, residuals, tolerances, 'Delta x = -f xi - sum sigma(e_i, e_i)', 'closed-form')


def _reduced_form_gap(spec):
    """Coefficient gap between the general and the family's reduced Delta^2 x."""
    general = bilaplacian_expression(spec)
    if spec.klass == 'A1':
        reduced = sphere_bilaplacian_expression(spec)
    elif spec.klass == 'A2' and spec.c > 0:
        reduced = tube_bilaplacian_expression(spec)
    elif spec.klass == 'B':
        reduced = complex_tube_bilaplacian_expression(spec)
        # sigma_mu = sigma_nu on tubes about CQ^m, so only the D average matters
        merged = FieldExpression.of('merged', xi=general['xi'], sigma_xi=general['sigma_xi'],
                                    d=0.5 * (general['sigma_mu'] + general['sigma_nu']))
        return merged.max_coefficient_gap(reduced)
    elif spec.klass == 'A0':
        reduced = horosphere_bilaplacian_expression(spec)
    else:
        return None
    return general.max_coefficient_gap(reduced, live_keys(spec))


def check_chen2(ctx):
    spec, coeffs = ctx.spec, ctx.coeffs
    if coeffs.order != 2:
        residuals, tolerances = {}, {}
        if spec.klass == 'B':
            residuals['two-type-fit'] = best_fit_two_type(ctx.frame, ctx.points, ctx.oracle_cfg)['residual']
            tolerances['two-type-fit:min'] = MISFIT_MIN
        return make_record('chen2', spec, residuals, tolerances, {'verdict': coeffs.verdict}, 'closed-form',
                           verdict=coeffs.verdict)
    report = condition_residuals(ctx.frame, coeffs)
    decomposition = ctx.decomposition
    residuals = {
        'pde': type_pde_residual(ctx.frame, coeffs, decomposition.x0, ctx.points, ctx.oracle_cfg),
        'conditions': report.worst,
        'reconstruction': decomposition.reconstruction_residual(ctx.points[:3]),
        'eigen': max(decomposition.eigen_residuals(ctx.points[0])),
    }
    tolerances = {'pde': PDE2_TOL, 'conditions': CLOSED_FORM_TOL, 'reconstruction': RECONSTRUCTION_TOL,
                  'eigen': LAYERED_TOL}
    gap = _reduced_form_gap(spec)
    if gap is not None:
        residuals['reduced-form'] = gap
        tolerances['reduced-form'] = CLOSED_FORM_TOL
    expected = {'a': coeffs.a, 'b': coeffs.b, 'lambda_u': coeffs.lambda_u, 'lambda_v': coeffs.lambda_v}
    extra = {'verdict': coeffs.verdict, 'condition_drift': report.drift}
    if spec.klass == 'A1':
        extra['eigenvalue_bounds'] = eigenvalue_bounds(coeffs)
    return make_record('chen2', spec, residuals, tolerances, expected, 'closed-form',
                       passed=_passes(residuals, tolerances) and not report.hypothesis_violated, **extra)


def check_chen3(ctx):
    spec, coeffs = ctx.spec, ctx.coeffs
    if coeffs.order != 3:
        return None
    decomposition = ctx.decomposition
    residuals = {
        'pde': type_pde_residual(ctx.frame, coeffs, decomposition.x0, ctx.points, ctx.oracle_cfg),
        'reconstruction': decomposition.reconstruction_residual(ctx.points[:3]),
        'reduced-form': _reduced_form_gap(spec),
        'two-type-fit': best_fit_two_type(ctx.frame, ctx.points, ctx.oracle_cfg)['residual'],
    }
    tolerances = {'pde': PDE3_TOL, 'reconstruction': RECONSTRUCTION_TOL, 'reduced-form': CLOSED_FORM_TOL,
                  'two-type-fit:min': MISFIT_MIN}
    expected = {'p': coeffs.p, 'q': coeffs.q, 'r': coeffs.r, 'eigenvalues': coeffs.eigenvalues}
    return make_record('chen3', spec, residuals, tolerances, expected, 'closed-form', verdict=coeffs.verdict)


def check_horosphere(ctx):
    """``Delta^2 x`` of a horosphere is constant along it but not zero."""
    spec, chart = ctx.spec, ctx.chart
    if spec.klass != 'A0':
        return None
    spread, size = horosphere_spread(ctx.frame, ctx.points)
    expected = horosphere_bilaplacian_expression(spec).field(chart)
    lap_field = closed_form_fields(ctx.frame).field('laplacian')
    match = 0.0
    for u in ctx.points[:3]:
        measured = laplace_beltrami(lap_field, chart, u, LAYERED_FD)
        match = max(match, relative_difference(measured, expected(u)))
    levels = [chart.level(u) for u in ctx.points]
    residuals = {
        'spread': spread,
        'size': size,
        'closed-form': match,
        'level': max(levels) - min(levels),
        'one-type-fit': best_fit_one_type(chart, ctx.points, ctx.oracle_cfg)['residual'],
    }
    tolerances = {'spread': HOROSPHERE_SPREAD_TOL, 'size:min': 1.0, 'closed-form': LAYERED_TOL,
                  'level': IDENTITY_TOL, 'one-type-fit:min': MISFIT_MIN}
    k = spec.n * spec.n + 2 * spec.n - 15
    return make_record('horosphere', spec, residuals, tolerances,
                       f"Delta^2 x = {k} (2 xi + sigma(xi, xi))", 'derived', verdict=ctx.coeffs.verdict)


def _expects_mass_symmetry(spec):
    for item in special_radii(spec.family, spec.m, spec.k):
        if 'mass-symmetric' in item.tags and abs(item.radius - spec.r) <= RADIUS_MATCH_TOL:
            return True
    # tubes about CH^m carry no special radii but share the symmetry
    return spec.klass == 'B'


def check_mass_symmetry(ctx):
    """Constant part ``x0`` of a 2-type decomposition against ``I/(m+1)``."""
    spec, coeffs = ctx.spec, ctx.coeffs
    if coeffs.order != 2:
        return None
    expected = _expects_mass_symmetry(spec)
    residuals = {'x0-gap': ctx.decomposition.mass_center_gap()}
    if expected:
        tolerances = {'x0-gap': MASS_A2_TOL if spec.klass == 'A2' else MASS_TOL}
    else:
        tolerances = {'x0-gap:min': MASS_GAP_MIN}
    return make_record('mass-symmetry', spec, residuals, tolerances, {'mass_symmetric': expected},
                       'closed-form', x0=ctx.decomposition.x0.tolist())


def check_minimality(ctx):
    """Bracketed root of the mean curvature against the closed-form minimal radius."""
    spec = ctx.spec
    if spec.r is None:
        return None
    numeric = minimal_radius_numeric(spec.family, spec.m, spec.k)
    closed = closed_form_minimal_radius(spec.family, spec.m, spec.k)
    if numeric is None and closed is None:
        return None
    residuals, tolerances = {}, {}
    if numeric is not None:
        residuals['root-residual'] = abs(mean_curvature(spec.family, spec.m, spec.k, numeric))
        tolerances['root-residual'] = CLOSED_FORM_TOL
    if numeric is not None and closed is not None:
        residuals['root-gap'] = abs(numeric - closed)
        tolerances['root-gap'] = MINIMAL_ROOT_TOL
    elif closed is not None:
        return make_record('minimality', spec, {}, {}, closed, 'closed-form', passed=False,
                           error='no sign change of the mean curvature around the closed-form radius')
    if numeric is not None and abs(numeric - spec.r) <= RADIUS_MATCH_TOL:
        residuals['mean-curvature'] = abs(mean_curvature(spec.family, spec.m, spec.k, spec.r))
        tolerances['mean-curvature'] = CLOSED_FORM_TOL
    provenance = 'closed-form' if closed is not None else 'derived'
    return make_record('minimality', spec, residuals, tolerances, closed, provenance, minimal_radius=numeric)


def _clifford_gap(item):
    z = build_chart(item.spec()).lift(np.zeros(item.spec().n))
    k = item.k
    norms = (math.sqrt(float(np.sum(z[:k + 1] ** 2))), math.sqrt(float(np.sum(z[k + 1:] ** 2))))
    return max(abs(a - b) for a, b in zip(norms, item.clifford))


def _tag_residuals(item, coeffs):
    out = {}
    if 'mass-symmetric' in item.tags and coeffs.order == 2:
        decomposition = decompose(ClosedForms(build_chart(item.spec())), coeffs)
        out['x0-gap'] = decomposition.mass_center_gap()
    if 'minimal' in item.tags:
        out['mean-curvature'] = abs(mean_curvature(item.family, item.m, item.k, item.radius))
    return out


def check_special_radii(ctx):
    """Every closed-form special radius of the family has the advertised behaviour."""
    spec = ctx.spec
    radii = special_radii(spec.family, spec.m, spec.k)
    residuals = {'label-mismatches': 0.0}
    tolerances = {'label-mismatches': 0.0}
    listed = []
    if spec.c < 0:
        residuals['admissible-roots'] = float(len(admissible_roots(spec.family, spec.m, spec.k)))
        residuals['special-radii'] = float(len(radii))
        tolerances.update({'admissible-roots': 0.0, 'special-radii': 0.0})
    for item in radii:
        coeffs = solve_type_coefficients(item.spec())
        wanted = 'one-type' if item.label == 'one-type' else 'two-type'
        if coeffs.verdict != wanted:
            residuals['label-mismatches'] += 1
        for key, value in _tag_residuals(item, coeffs).items():
            residuals[key] = max(residuals.get(key, 0.0), value)
        if item.clifford is not None:
            residuals['clifford'] = max(residuals.get('clifford', 0.0), _clifford_gap(item))
        if item.equivalent is not None and coeffs.order == 2:
            k2, r2 = item.equivalent
            twin = solve_type_coefficients(FamilySpec(item.family, item.m, k2, r2))
            gap = max(abs(a - b) for a, b in zip(coeffs.eigenvalues, twin.eigenvalues)) if twin.order == 2 else math.inf
            residuals['equivalent'] = max(residuals.get('equivalent', 0.0), gap)
        listed.append({'label': item.label, 'radius': item.radius, 'tags': list(item.tags),
                       'duplicate_of': item.duplicate_of, 'verdict': coeffs.verdict})
    for key, tol in (('x0-gap', MASS_A2_TOL), ('mean-curvature', CLOSED_FORM_TOL),
                     ('clifford', CLIFFORD_TOL), ('equivalent', CLOSED_FORM_TOL)):
        if key in residuals:
            tolerances[key] = tol
    return make_record('special-radii', spec, residuals, tolerances, listed, 'closed-form')


def check_one_type(ctx):
    """1-type hypersurfaces satisfy ``Delta x = l (x - x0)``; the others admit no such fit."""
    spec, coeffs = ctx.spec, ctx.coeffs
    if coeffs.order == 1:
        residuals = {'pde': type_pde_residual(ctx.frame, coeffs, None, ctx.points, ctx.oracle_cfg)}
        return make_record('one-type', spec, residuals, {'pde': PDE2_TOL}, {'lambda': coeffs.lambda_u},
                           'closed-form', verdict=coeffs.verdict)
    fit = best_fit_one_type(ctx.chart, ctx.points, ctx.oracle_cfg)
    return make_record('one-type', spec, {'fit': fit['residual']}, {'fit:min': MISFIT_MIN}, None, 'derived',
                       verdict=coeffs.verdict, fitted_lambda=fit['lambda'])


def check_covariant_derivative(ctx):
    """Covariant derivative of the shape operator of a tube about HQ^k."""
    spec = ctx.spec
    if spec.klass not in ('A1', 'A2'):
        return None
    residuals = {'covariant': covariant_derivative_residual(ctx.frame)}
    return make_record('covariant-derivative', spec, residuals, {'covariant': COVARIANT_TOL}, 0.0, 'closed-form')


CHECKS = {
    'table1': check_table,
    'sigma-identities': check_sigma_identities,
    'beltrami': check_beltrami,
    'chen2': check_chen2,
    'chen3': check_chen3,
    'horosphere': check_horosphere,
    'mass-symmetry': check_mass_symmetry,
    'minimality': check_minimality,
    'special-radii': check_special_radii,
    'one-type': check_one_type,
    'covariant-derivative': check_covariant_derivative,
}


def run_check(name, ctx):
    """
    Runs one named check on a context.

    A check that raises a PyChenError yields a failed record carrying the
    message; a check that does not apply to the family yields None.
    """
    if name not in CHECKS:
        raise ConfigError(f"unknown check '{name}'")
    try:
        return CHECKS[name](ctx)
    except PyChenError as err:
        say('CHECK FAILED', f"{name} on {ctx.spec!r}: {err}")
        return make_record(name, ctx.spec, {}, {}, None, 'derived', passed=False,
                           error=f"{type(err).__name__}: {err}")
