"""Closed-form Laplacians of the position field.

Every closed form is a linear combination over a fixed basis of fields
along the chart:

  * ``identity``   the identity matrix,
  * ``position``   the embedded position ``x = Phi(z)``,
  * ``xi``         the pushed unit normal ``dPhi(xi)``,
  * ``sigma_xi``   ``sigma(xi, xi)``,
  * ``sigma_mu``   ``sum sigma(e, e)`` over an orthonormal basis of V_mu,
  * ``sigma_nu``   the same over V_nu.

``sigma_mu + sigma_nu`` is the trace of sigma over D and
``sigma_mu + sigma_nu + 3 sigma_xi`` the trace over the whole tangent space.
Scalar coefficients are exact values from the principal-curvature table.
"""

import numpy as np

from .errors import ContractError, SpecError
from .finite_difference import FRAME_FD
from .laplace import MatrixField
from .quaternion import identity_array, projector_array, real_form_array
from .shape import CurvatureScalars, curvature_adapted_residual, unit_normal_array
from .spaceform import d_phi_array, sigma_closed_array

BASIS = ('identity', 'position', 'xi', 'sigma_xi', 'sigma_mu', 'sigma_nu')
ADAPTED_TOL = 1e-6


class FieldExpression:
    """
    A linear combination of basis fields.

    :param coefficients: mapping from basis names to reals; missing names are 0.
    """

    def __init__(self, coefficients=None, name='expression'):
        coefficients = dict(coefficients or {})
        unknown = set(coefficients) - set(BASIS)
        if unknown:
            raise ContractError(f"unknown basis fields: {sorted(unknown)}")
        self.coefficients = {key: float(coefficients.get(key, 0.0)) for key in BASIS}
        self.name = name

    @classmethod
    def of(cls, name='expression', d=None, **coefficients):
        """Builds an expression; ``d`` sets the same coefficient on sigma_mu and sigma_nu."""
        if d is not None:
            coefficients['sigma_mu'] = coefficients.get('sigma_mu', 0.0) + d
            coefficients['sigma_nu'] = coefficients.get('sigma_nu', 0.0) + d
        return cls(coefficients, name)

    def __getitem__(self, key):
        return self.coefficients[key]

    def __add__(self, other):
        return FieldExpression({k: self[k] + other[k] for k in BASIS}, f"({self.name} + {other.name})")

    def __sub__(self, other):
        return FieldExpression({k: self[k] - other[k] for k in BASIS}, f"({self.name} - {other.name})")

    def __mul__(self, scalar):
        return FieldExpression({k: scalar * self[k] for k in BASIS}, self.name)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def max_coefficient_gap(self, other, keys=BASIS):
        return max(abs(self[k] - other[k]) for k in keys)

    def evaluate(self, ingredients):
        out = np.zeros_like(ingredients.position)
        for key in BASIS:
            if self[key] != 0.0:
                out = out + self[key] * getattr(ingredients, key)
        return out

    def field(self, chart, cfg=FRAME_FD):
        """The expression as a MatrixField along ``chart``."""
        return MatrixField(lambda u: self.evaluate(Ingredients(chart, u, cfg)), self.name)

    def __repr__(self):
        terms = ', '.join(f"{k}={v:.6g}" for k, v in self.coefficients.items() if v != 0.0)
        return f"FieldExpression({self.name}: {terms})"


def _trace_over(z, vectors, c):
    if len(vectors) == 0:
        return np.zeros((z.shape[0], z.shape[0], 4))
    gram = real_form_array(vectors[:, None], vectors[None, :], c)
    values = sigma_closed_array(z, vectors[:, None], vectors[None, :], c)
    return np.einsum('ab,ab...->...', np.linalg.inv(gram), values)


class Ingredients:
    """
    The basis fields evaluated at one chart point.
    """

    def __init__(self, chart, u, cfg=FRAME_FD):
        c = chart.c
        z = chart.lift(u)
        tangents = chart.tangents(u, cfg)
        g_inv = chart.metric(u, cfg).g_inv
        xi = unit_normal_array(chart, u, tangents, cfg)
        self.identity = identity_array(chart.m)
        self.position = projector_array(z, c)
        self.xi = d_phi_array(z, xi, c)
        self.sigma_xi = sigma_closed_array(z, xi, xi, c)
        self.sigma_tangent = np.einsum(
            'ij,ij...->...', g_inv, sigma_closed_array(z, tangents[:, None], tangents[None, :], c))
        sigma_d = self.sigma_tangent - 3.0 * self.sigma_xi
        parts = chart.split(u)
        if parts is not None:
            self.sigma_mu = _trace_over(z, parts[0], c)
            self.sigma_nu = _trace_over(z, parts[1], c)
        elif chart.spec.klass == 'B':
            # J_2 maps V_mu onto V_nu and sigma is J-invariant
            self.sigma_mu = 0.5 * sigma_d
            self.sigma_nu = 0.5 * sigma_d
        else:
            self.sigma_mu = sigma_d
            self.sigma_nu = np.zeros_like(sigma_d)
        self.split_defect = float(np.max(np.abs(self.sigma_mu + self.sigma_nu - sigma_d)))


def live_keys(spec):
    """Basis fields that do not vanish identically on the family's hypersurfaces."""
    keys = ('identity', 'position', 'xi', 'sigma_xi')
    if spec.family == 'H3':
        return keys + ('sigma_mu',)
    if spec.is_sphere:
        # one D-block is empty
        return keys + (('sigma_mu',) if spec.k == 0 else ('sigma_nu',))
    return BASIS


def block_curvatures(spec):
    """The D-eigenvalues attached to sigma_mu and sigma_nu."""
    if spec.family == 'H3':
        return 1.0, 0.0
    return spec.mu_nu()


def position_expression(spec):
    """``x = I/(m+1) - c/(8(m+1)) [4 sigma(xi,xi) + sum_D sigma(e,e)]``."""
    m, c = spec.m, spec.c
    k = -c / (8.0 * (m + 1))
    return FieldExpression.of('position identity', identity=1.0 / (m + 1), sigma_xi=4 * k, d=k)


def laplacian_expression(spec, scalars=None):
    """``Delta x = -f xi - sum_i sigma(e_i, e_i)``."""
    scalars = scalars or CurvatureScalars.from_table(spec)
    return FieldExpression.of('Delta x', xi=-scalars.f, sigma_xi=-3.0, d=-1.0)


def bilaplacian_expression(spec, scalars=None):
    """
    ``Delta^2 x`` of a curvature-adapted hypersurface with constant
    principal curvatures and principal ``U_q``.
    """
    s = scalars or CurvatureScalars.from_table(spec)
    c, n, f, f2 = s.c, s.n, s.f, s.f2
    mu, nu = block_curvatures(spec)
    xi = 4 * c * s.sum_alpha - f * (f2 + c * (3 * n + 7))
    trace = -2 * c * (n + 4)
    return FieldExpression.of(
        'Delta^2 x',
        xi=xi,
        sigma_xi=(6 * c + 2 * f2 + f * f) + 3 * trace - 2 * f * s.sum_alpha - 2 * s.sum_alpha2,
        sigma_mu=trace - 2 * f * mu - 2 * mu * mu,
        sigma_nu=trace - 2 * f * nu - 2 * nu * nu,
    )


def sphere_bilaplacian_expression(spec):
    """Reduced ``Delta^2 x`` of a geodesic sphere or tube about a hyperplane."""
    c, n = spec.c, spec.n
    mu = spec.sphere_mu
    return FieldExpression.of(
        'Delta^2 x (sphere)',
        xi=-(n * n * mu ** 3 + c * (3 * n * n - 2 * n - 12) * mu - 3 * (2 * n - 3) / mu - 9 * c / mu ** 3),
        sigma_xi=(n * n - 4 * n - 6) * mu ** 2 - 9 / mu ** 2 - 6 * c * n,
        d=-2 * (n + 1) * (mu ** 2 + c),
    )


def tube_bilaplacian_expression(spec):
    """Reduced ``Delta^2 x`` of a tube about HP^k in HP^m."""
    if spec.klass != 'A2' or spec.c < 0:
        raise SpecError(f"{spec} is not a projective tube about HP^k with 1 <= k <= m-2")
    m, K, L = spec.m, spec.K, spec.L
    mu, nu = spec.mu_nu()
    return FieldExpression.of(
        'Delta^2 x (tube)',
        xi=-(L * L * mu ** 3 + K * K * nu ** 3 + (L * L + 4 * (2 * m - 1) * L - 12) * mu
             + (K * K + 4 * (2 * m - 1) * K - 12) * nu),
        sigma_xi=(L * L - 4 * L - 6) * mu ** 2 + (K * K - 4 * K - 6) * nu ** 2 - 2 * L * K,
        sigma_mu=-2 * (L + 1) * (mu ** 2 + 1),
        sigma_nu=-2 * (K + 1) * (nu ** 2 + 1),
    )


def horosphere_bilaplacian_expression(spec):
    """``Delta^2 x = (n^2 + 2n - 15)(2 xi + sigma(xi, xi))``, a constant field."""
    n = spec.n
    k = n * n + 2 * n - 15
    return FieldExpression.of('Delta^2 x (horosphere)', xi=2 * k, sigma_xi=k)


def _complex_alpha(spec):
    if spec.klass != 'B':
        raise SpecError(f"{spec} is not a tube about CQ^m")
    return spec.alphas()[0]


def complex_tube_laplacian_expression(spec):
    m, c = spec.m, spec.c
    a = _complex_alpha(spec)
    return FieldExpression.of('Delta x (complex tube)', xi=-((2 * m - 1) * a - 8 * c / a), sigma_xi=-3.0, d=-1.0)


def complex_tube_bilaplacian_expression(spec):
    m, c = spec.m, spec.c
    a = _complex_alpha(spec)
    return FieldExpression.of(
        'Delta^2 x (complex tube)',
        xi=-((2 * m - 1) ** 2 * a ** 3 + 4 * c * (8 * m * m - 8 * m + 1) * a - 64 * m / a - 256 * c / a ** 3),
        sigma_xi=(4 * m * m - 4 * m - 1) * a ** 2 - 64 / a ** 2 - 4 * c * (4 * m + 1),
        d=-2 * m * (a ** 2 + 4 * c),
    )


def complex_tube_trilaplacian_expression(spec):
    m, c = spec.m, spec.c
    a = _complex_alpha(spec)
    xi = ((2 * m - 1) ** 3 * a ** 5 + 8 * c * (16 * m ** 3 - 20 * m * m + 6 * m - 1) * a ** 3
          + 16 * (24 * m ** 3 - 28 * m * m + 6 * m - 1) * a - 512 * c * (2 * m - 1) / a
          - 4096 * m / a ** 3 - 8192 * c / a ** 5)
    sigma_xi = ((24 * m ** 3 - 20 * m * m - 6 * m + 1) * a ** 4 + 8 * c * (12 * m ** 3 - 8 * m * m - 6 * m + 1) * a ** 2
                - 512 * c * (3 * m - 1) / a ** 2 - 2048 / a ** 4 + 16 * (4 * m * m - 30 * m + 17))
    d = 8 * m * m * a ** 4 + 48 * c * m * m * a ** 2 - 256 * c / a ** 2 + 64 * (m * m - 1)
    return FieldExpression.of('Delta^3 x (complex tube)', xi=-xi, sigma_xi=sigma_xi, d=-d)


def complex_tube_sigma_xi_laplacian(spec):
    """``Delta sigma(xi, xi)`` on a tube about CQ^m."""
    m, c = spec.m, spec.c
    a = _complex_alpha(spec)
    return FieldExpression.of(
        'Delta sigma(xi,xi)',
        xi=4 * c * (a - 8 * c / a),
        sigma_xi=4 * ((2 * m + 1) * c + (m - 1) * a * a),
        d=-a * a,
    )


def complex_tube_sigma_d_laplacian(spec):
    """``sum_D Delta sigma(e, e)`` on a tube about CQ^m."""
    m, c = spec.m, spec.c
    a = _complex_alpha(spec)
    return FieldExpression.of(
        'Delta sigma_D',
        xi=8 * c * (m - 1) * ((2 * m + 3) * a - 8 * c / a),
        sigma_xi=-8 * (m - 1) * (c + 2 * a * a),
        d=4 * (2 * c * (m + 1) + a * a),
    )


def complex_tube_normal_laplacian(spec):
    """``Delta xi`` on a tube about CQ^m."""
    m, c = spec.m, spec.c
    a = _complex_alpha(spec)
    return FieldExpression.of(
        'Delta xi',
        xi=(2 * m - 1) * a * a + 32 / a ** 2 + 8 * c * (m - 1),
        sigma_xi=-((2 * m - 3) * a + 8 * c / a),
        d=a,
    )


def auxiliary_expressions(spec):
    """
    Closed-form Laplacians of the basis fields of a tube about CQ^m, keyed
    by the basis field they differentiate.
    """
    return {
        'sigma_xi': complex_tube_sigma_xi_laplacian(spec),
        'sigma_d': complex_tube_sigma_d_laplacian(spec),
        'xi': complex_tube_normal_laplacian(spec),
    }


class ClosedForms:
    """
    The closed-form Laplacian iterates of the position field of one
    model hypersurface.
    """

    def __init__(self, chart, scalars=None):
        spec = chart.spec
        self.chart = chart
        self.spec = spec
        self.scalars = scalars or CurvatureScalars.from_table(spec)
        self.expressions = {
            'position': FieldExpression.of('position', position=1.0),
            'laplacian': laplacian_expression(spec, self.scalars),
            'bilaplacian': bilaplacian_expression(spec, self.scalars),
        }
        if spec.klass == 'B':
            self.expressions['trilaplacian'] = complex_tube_trilaplacian_expression(spec)

    def __getitem__(self, key):
        return self.expressions[key]

    def __contains__(self, key):
        return key in self.expressions

    def field(self, key, cfg=FRAME_FD):
        return self.expressions[key].field(self.chart, cfg)


def closed_form_fields(frame, tol=ADAPTED_TOL):
    """
    Closed-form ``Delta x``, ``Delta^2 x`` (and ``Delta^3 x`` for tubes about
    CQ^m) along the frame's chart.

    :type frame: ShapeFrame
    :raises ContractError: if the frame is not curvature-adapted.
    :rtype: ClosedForms
    """
    residual = curvature_adapted_residual(frame)
    if residual > tol:
        raise ContractError(f"closed forms need a curvature-adapted frame (residual {residual:.3e})")
    return ClosedForms(frame.chart)
