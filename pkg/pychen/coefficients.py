"""Chen-type coefficients, condition residuals and special radii.

For a hypersurface of 2-type the position satisfies

    Delta^2 x - a Delta x + b (x - x0) = 0,   a = l_u + l_v,  b = l_u l_v,

and for the 3-type tubes about CQ^m

    Delta^3 x + p Delta^2 x + q Delta x + r (x - I/(m+1)) = 0.

Verdicts are decided by closed-form matching of the radius against the
admissible values, never by residual thresholds.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import ConfigError, ContractError, DegenerateSpectrumError, SpecError
from .family import FamilySpec, canonical_family, has_core_index, radius_interval
from .shape import CurvatureScalars, scalar_invariants

MATCH_TOL = 1e-9
CONDITION_TOL = 1e-9
RADIUS_TOL = 1e-12

VERDICTS = ('one-type', 'two-type', 'three-type', 'not-2', 'infinite')
RADIUS_TOKENS = ('auto:two-type', 'auto:minimal', 'auto:mass-symmetric', 'auto:one-type')


@dataclass
class TypeCoefficients:
    """
    Coefficients of the Chen-type equation of one model hypersurface.

    ``order`` is None for verdicts without an equation (``not-2``, ``infinite``).
    """
    verdict: str
    order: int = None
    a: float = None
    b: float = None
    p: float = None
    q: float = None
    r: float = None
    eigenvalues: list = field(default_factory=list)
    lambda_u: float = None
    lambda_v: float = None

    @property
    def discriminant(self):
        if self.order != 2:
            return None
        return self.a * self.a - 4.0 * self.b

    @classmethod
    def two_type(cls, a, b, lambda_u=None):
        """
        Order-2 coefficients; the eigenvalues are the roots of ``t^2 - a t + b``
        and ``lambda_u`` (if given) picks the root called ``l_u``, otherwise
        ``l_u`` is the smaller one.
        """
        disc = a * a - 4.0 * b
        if disc <= 0.0:
            raise DegenerateSpectrumError(f"t^2 - {a:.6g} t + {b:.6g} has no distinct real roots")
        root = math.sqrt(disc)
        low, high = 0.5 * (a - root), 0.5 * (a + root)
        if lambda_u is None or abs(lambda_u - low) <= abs(lambda_u - high):
            lu, lv = low, high
        else:
            lu, lv = high, low
        return cls('two-type', 2, a=a, b=b, eigenvalues=[low, high], lambda_u=lu, lambda_v=lv)

    @classmethod
    def three_type(cls, p, q, r):
        roots = np.roots([1.0, p, q, r])
        scale = max(1.0, float(np.max(np.abs(roots))))
        if np.max(np.abs(roots.imag)) > 1e-8 * scale:
            raise DegenerateSpectrumError(f"cubic with p={p:.6g}, q={q:.6g}, r={r:.6g} has complex roots")
        values = sorted(float(v) for v in roots.real)
        if min(b - a for a, b in zip(values, values[1:])) <= 1e-9 * scale:
            raise DegenerateSpectrumError(f"cubic eigenvalues {values} are not distinct")
        return cls('three-type', 3, p=p, q=q, r=r, eigenvalues=values)

    def as_dict(self):
        return {
            'verdict': self.verdict, 'order': self.order, 'a': self.a, 'b': self.b,
            'p': self.p, 'q': self.q, 'r': self.r, 'eigenvalues': list(self.eigenvalues),
            'lambda_u': self.lambda_u, 'lambda_v': self.lambda_v,
        }


def _matches(x, target):
    return abs(x - target) <= MATCH_TOL * max(1.0, abs(target))


def one_type_mu2(n):
    """The sphere curvature ``mu^2`` at which a geodesic sphere of HP^m is of 1-type."""
    return 3.0 / (n + 2)


def a2_admissible_mu2(m, k, c):
    """The three solutions ``mu^2`` of the A2 admissibility equation, keyed by case."""
    K, L = 4 * k + 3, 4 * (m - k - 1) + 3
    return {'a': (K + 1) * c / (L + 1), 'b': K * c / (L + 2), 'c': (K + 2) * c / L}


def class_b_admissible_alpha2(m, c):
    """The three roots ``alpha^2`` of the class-B admissibility equation."""
    root = 2.0 * math.sqrt(96.0 * m * m - 15.0)
    return {'a': 4.0 * c / m, 'b': (6.0 * c + root) / (4.0 * m * m - 1.0),
            'b-': (6.0 * c - root) / (4.0 * m * m - 1.0)}


def admissible_roots(family, m, k=None):
    """
    Roots of the admissibility equation of a tube family that lie in the
    range its curvature can take (``cot^2 r > 0`` and ``2 cot 2r`` real in
    HP^m, ``coth^2 r > 1`` and ``4 coth^2 2r > 4`` in HH^m).

    Geodesic spheres and horospheres have no admissibility equation.

    :returns: dict from case label to ``mu^2`` (tubes about HQ^k) or ``alpha^2``.
    """
    family = canonical_family(family)
    c = 1 if family.startswith('P') else -1
    if family in ('P1k', 'H1k'):
        if k in (0, m - 1):
            return {}
        floor = 0.0 if c > 0 else 1.0
        roots = a2_admissible_mu2(m, k, c)
    elif family in ('P2', 'H2'):
        floor = 0.0 if c > 0 else 4.0
        roots = class_b_admissible_alpha2(m, c)
    else:
        return {}
    return {case: value for case, value in roots.items() if value > floor}


def _sphere_coefficients(spec):
    c, n = spec.c, spec.n
    mu2 = spec.sphere_mu ** 2
    lambda_u = 2 * (n + 1) * (mu2 + c)
    if c > 0 and _matches(mu2, one_type_mu2(n)):
        return TypeCoefficients('one-type', 1, a=lambda_u, eigenvalues=[lambda_u], lambda_u=lambda_u)
    a = (mu2 + c) * (3 * n + 2 + 3 * c / mu2)
    b = 2 * (n + 1) * (n * mu2 * mu2 + c * (2 * n + 3) * mu2 + 3 * c / mu2 + (n + 6))
    return TypeCoefficients.two_type(a, b, lambda_u)


def _tube_coefficients(spec):
    mu, nu = spec.mu_nu()
    mu2, nu2 = mu * mu, nu * nu
    roots = admissible_roots(spec.family, spec.m, spec.k)
    if spec.c < 0 or not any(_matches(mu2, target) for target in roots.values()):
        return TypeCoefficients('not-2')
    K, L = spec.K, spec.L
    a = (L * L + 4 * L + 2) * mu2 + (K * K + 4 * K + 2) * nu2 - 2 * L * K
    b = (L * (L + 1) * (L + 2) * mu2 * mu2 + (L ** 3 - L * L * K + 2 * L * L + 2 * L * K + 2 * L + 2 * K) * mu2
         + K * (K + 1) * (K + 2) * nu2 * nu2 + (K ** 3 - L * K * K + 2 * K * K + 2 * L * K + 2 * L + 2 * K) * nu2
         - L * L * K - L * K * K - L * L - K * K + 4 * L * K + 2 * L + 2 * K)
    lambda_u = (L + 1) * (L + 2) * mu2 + (K + 1) * (K + 2) * nu2 - (L + K + 2 * L * K)
    return TypeCoefficients.two_type(a, b, lambda_u)


def class_b_cubic(spec):
    """``(p, q, r)`` of the 3-type equation of a tube about CQ^m."""
    m, c = spec.m, spec.c
    a2 = spec.alphas()[0] ** 2
    s = a2 + 4 * c
    p = -s * ((6 * m - 1) * a2 + 8 * c) / a2
    q = s * (4 * m * (2 * m - 1) * a2 * a2 + 8 * c * (6 * m * m + 2 * m - 1) * a2 + 32 * (4 * m + 1)) / a2
    r = -16 * c * (2 * m * m + m - 1) * s * s * (m * a2 + 4 * c) / a2
    return p, q, r


def _complex_tube_coefficients(spec):
    m, c = spec.m, spec.c
    a2 = spec.alphas()[0] ** 2
    if any(_matches(a2, t) for t in admissible_roots(spec.family, m).values()):
        a = (4 * m * m + 4 * m - 1) * a2 - 64 / a2 + 4 * c * (4 * m - 1)
        b = 8 * c * (m + 1) * ((4 * m * m + 2 * m - 1) * a2 - 64 / a2 + 4 * c * (2 * m - 1))
        return TypeCoefficients.two_type(a, b)
    return TypeCoefficients.three_type(*class_b_cubic(spec))


def solve_type_coefficients(spec):
    """
    Coefficients of the Chen-type equation of a model hypersurface.

    :type spec: FamilySpec
    :rtype: TypeCoefficients
    """
    klass = spec.klass
    if klass == 'A0':
        return TypeCoefficients('infinite')
    if klass == 'A1':
        return _sphere_coefficients(spec)
    if klass == 'A2':
        return _tube_coefficients(spec)
    return _complex_tube_coefficients(spec)


def eigenvalue_bounds(coeffs):
    """Upper estimates ``l_1 <= min``, ``l_2 <= max`` of the two type eigenvalues."""
    if coeffs.order != 2:
        return None
    return {'lambda_1_upper': min(coeffs.eigenvalues), 'lambda_2_upper': max(coeffs.eigenvalues)}


@dataclass
class ConditionReport:
    """
    Residuals of the algebraic 2-type conditions at one frame.

    ``residuals`` are absolute values of each relation written with unit
    coefficient on ``b`` (or on the leading ``a``-free term); ``drift`` is
    the distance between measured and table scalars ``f, f_2``.
    """
    spec: FamilySpec
    residuals: dict = field(default_factory=dict)
    tolerance: float = CONDITION_TOL
    drift: float = 0.0
    hypothesis_violated: bool = False

    @property
    def verdict(self):
        if self.hypothesis_violated:
            return False
        return all(value <= self.tolerance for value in self.residuals.values())

    @property
    def worst(self):
        return max(self.residuals.values(), default=0.0)


def _distinct(values):
    out = []
    for v in values:
        if all(abs(v - w) > MATCH_TOL * max(1.0, abs(w)) for w in out):
            out.append(v)
    return out


def condition_residuals(frame, coeffs, tol=CONDITION_TOL):
    """
    Residuals of the algebraic conditions a 2-type hypersurface with
    constant principal curvatures has to satisfy, evaluated with the
    table scalars of the frame's family and the supplied ``(a, b)``.

    :type frame: ShapeFrame
    :type coeffs: TypeCoefficients
    :rtype: ConditionReport
    :raises ContractError: if ``coeffs`` are not of order 2.
    """
    spec = frame.spec
    if spec.klass == 'A0':
        return ConditionReport(spec, tolerance=tol, hypothesis_violated=True)
    if coeffs.order != 2:
        raise ContractError(f"conditions need order-2 coefficients, got verdict '{coeffs.verdict}'")
    s = CurvatureScalars.from_table(spec)
    measured = scalar_invariants(frame)
    report = ConditionReport(spec, tolerance=tol, drift=max(abs(s.f - measured.f), abs(s.f2 - measured.f2)))
    if s.flagged or any(abs(alpha * alpha + 4 * s.c) < 1e-12 for alpha in s.alphas):
        report.hypothesis_violated = True
        return report

    c, n, f, f2 = s.c, s.n, s.f, s.f2
    a, b = coeffs.a, coeffs.b
    sa, sa2 = s.sum_alpha, s.sum_alpha2
    E = f * (f2 + c * (3 * n + 7)) - 4 * c * sa
    res = report.residuals

    alphas = _distinct(s.alphas)
    for k, alpha in enumerate(alphas, start=1):
        value = ((2 * c * (n + 3) + alpha * f) * a - b - 4 * (n + 1) * (n + 6) - alpha * E
                 + 4 * c * f2 - 4 * c * (f * sa + sa2))
        res[f"alpha{k}"] = abs(value)

    for i, tau in enumerate(s.tau_values()):
        s1, s2 = s.partner_sums(i)
        tangential = ((2 * c * (n + 4) + tau * f) * a - b - 4 * (n * n + 8 * n + 13)
                      - 4 * c * (f * s1 + s2) - 2 * c * f * f - E * tau)
        normal = (f + 2 * tau) * a - (E + 4 * tau * (f * s1 + s2)
                                      + 2 * tau * (2 * f2 + f * f + 2 * c * (n + 7) - 2 * f * sa - 2 * sa2))
        res[f"tau{i + 1}:tangential"] = abs(tangential)
        res[f"tau{i + 1}:normal"] = abs(normal)
        for k, alpha in enumerate(alphas, start=1):
            eliminated = (2 * c + (tau - alpha) * f) * a - (
                4 * (n + 7) + 2 * c * f * f + 4 * c * f2 + 4 * c * (f * s1 + s2)
                + E * (tau - alpha) - 4 * c * (f * sa + sa2))
            res[f"tau{i + 1}:alpha{k}"] = abs(eliminated)

    if spec.klass == 'A2':
        alpha = s.alphas[0]
        res['a2:consistency'] = abs(f * (f2 + f * f - c * (n + 1)) + 2 * alpha * f * (f + alpha) - 4 * c * alpha)
        res['a2:trace'] = abs(a * f - f * (f2 + c * (3 * n + 23)) - 4 * c * alpha)
        res['a2:normal'] = abs(a - (2 * f2 + f * f + 2 * alpha * (f + alpha) + 2 * c * (n + 11)))
    return report


def a2_consistency(spec):
    """The A2 consistency polynomial in ``(f, f_2, alpha)`` at the table scalars."""
    s = CurvatureScalars.from_table(spec)
    alpha = s.alphas[0]
    return s.f * (s.f2 + s.f * s.f - s.c * (s.n + 1)) + 2 * alpha * s.f * (s.f + alpha) - 4 * s.c * alpha


@dataclass
class SpecialRadius:
    """
    A radius with a distinguished Chen-type behaviour.

    :param label: ``one-type``, ``two-type`` or ``two-type-a/b/c``.
    :param tags: extra properties, ``mass-symmetric`` and/or ``minimal``.
    :param duplicate_of: label of the case describing the same hypersurface.
    :param clifford: ``(cos r, sin r)`` written in closed form, the sphere
        radii of the product of spheres over the tube.
    :param equivalent: ``(k', r')`` of the congruent tube about the
        complementary core.
    """
    family: str
    m: int
    k: int
    radius: float
    label: str
    tags: tuple = ()
    duplicate_of: str = None
    clifford: tuple = None
    equivalent: tuple = None

    def spec(self):
        return FamilySpec(self.family, self.m, self.k, self.radius)

    @property
    def two_type(self):
        return self.label.startswith('two-type')


def _sphere_radii(m, k):
    flip = k == m - 1
    out = [
        ('one-type', (), math.atan(math.sqrt((4 * m + 1) / 3.0))),
        ('two-type', ('mass-symmetric',), math.atan(math.sqrt(m))),
        ('two-type', ('minimal',), math.atan(math.sqrt((4 * m - 1) / 3.0))),
    ]
    return [SpecialRadius('P1k', m, k, math.pi / 2 - r if flip else r, label, tags) for label, tags, r in out]


def _tube_radii(m, k):
    K, L = 4 * k + 3, 4 * (m - k - 1) + 3
    norm = K + L + 2
    clifford = {
        'a': (math.sqrt((K + 1) / norm), math.sqrt((L + 1) / norm)),
        'b': (math.sqrt(K / norm), math.sqrt((L + 2) / norm)),
        'c': (math.sqrt((K + 2) / norm), math.sqrt(L / norm)),
    }
    out = []
    for case, mu2 in admissible_roots('P1k', m, k).items():
        r = math.atan(1.0 / math.sqrt(mu2))
        tags = ()
        if case == 'a':
            tags = ('mass-symmetric', 'minimal') if K == L else ('mass-symmetric',)
        out.append(SpecialRadius(
            'P1k', m, k, r, f"two-type-{case}", tags,
            duplicate_of='two-type-b' if case == 'c' else None,
            clifford=clifford[case], equivalent=(m - k - 1, math.pi / 2 - r)))
    return out


def _complex_tube_radii(m):
    out = []
    for case, a2 in admissible_roots('P2', m).items():
        r = 0.5 * math.atan(2.0 / math.sqrt(a2))
        out.append(SpecialRadius('P2', m, None, r, f"two-type-{case}", ('mass-symmetric',)))
    return out


def _dedupe(radii):
    out = []
    for item in sorted(radii, key=lambda s: (s.radius, s.label)):
        if out and abs(out[-1].radius - item.radius) <= RADIUS_TOL and out[-1].label == item.label:
            out[-1].tags = tuple(sorted(set(out[-1].tags) | set(item.tags)))
            continue
        out.append(item)
    return out


def _check_family(family, m, k):
    if isinstance(m, bool) or int(m) != m or m < 2:
        raise SpecError(f"m must be an integer >= 2, got {m}")
    if has_core_index(family) and (k is None or int(k) != k or not 0 <= k <= m - 1):
        raise SpecError(f"{family} needs 0 <= k <= m-1 = {m - 1}, got k = {k}")


def special_radii(family, m, k=None):
    """
    Radii with a distinguished Chen-type behaviour, in closed form.

    Hyperbolic families have none: their spheres are 2-type at every
    radius and the admissibility equations have no legal roots.

    :returns: list of SpecialRadius sorted by radius.
    :raises SpecError: on illegal ``m`` or ``k``.
    """
    family = canonical_family(family)
    _check_family(family, m, k)
    if family == 'P1k':
        if k in (0, m - 1):
            return _dedupe(_sphere_radii(m, k))
        return _dedupe(_tube_radii(m, k))
    if family == 'P2':
        return _dedupe(_complex_tube_radii(m))
    return []


def radii_for_token(token, family, m, k=None):
    """
    Resolves an ``auto:`` radius token.

    :raises ConfigError: for an unknown token.
    """
    if token not in RADIUS_TOKENS:
        raise ConfigError(f"unknown radius token '{token}' (expected one of {', '.join(RADIUS_TOKENS)})")
    radii = special_radii(family, m, k)
    wanted = token.split(':', 1)[1]
    if wanted == 'two-type':
        return [s.radius for s in radii if s.two_type and s.duplicate_of is None]
    if wanted == 'one-type':
        return [s.radius for s in radii if s.label == 'one-type']
    return [s.radius for s in radii if wanted in s.tags]


def mean_curvature(family, m, k, r):
    """Trace ``f`` of the shape operator from the principal-curvature table."""
    spec = FamilySpec(family, m, k, r)
    return sum(row.value * row.multiplicity for row in spec.principal_curvatures())


def closed_form_minimal_radius(family, m, k=None):
    """The minimal 2-type radius in closed form, or None."""
    for item in special_radii(family, m, k):
        if 'minimal' in item.tags:
            return item.radius
    return None


def minimal_radius_numeric(family, m, k=None, margin=1e-9):
    """
    Root of ``f(r) = 0`` inside the legal radius interval, by bracketing.

    :returns: the root, or None when ``f`` keeps its sign.
    """
    family = canonical_family(family)
    interval = radius_interval(family)
    if interval is None or math.isinf(interval[1]):
        return None
    lo, hi = interval[0] + margin, interval[1] - margin
    f = lambda r: mean_curvature(family, m, k, r)
    if f(lo) * f(hi) > 0:
        return None
    return brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
