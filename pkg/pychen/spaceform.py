"""The quaternionic space form as a manifold of Hermitian projectors.

A point is stored with a lift ``z`` on the quadric ``Psi_c(z, z) = c`` and
its projector ``Phi(z)``.  Tangent vectors are horizontal lifts ``v`` with
``Psi_c(v, z) = 0``; the quaternionic structure acts by left multiplication
with ``i, j, k``.  The second fundamental form of the embedding is computed
from second differences of ``Phi`` along lifted geodesics.
"""

from collections import namedtuple

import numpy as np
from scipy.linalg import null_space, eigh, solve

from .errors import DimensionError, HorizontalityError
from .finite_difference import ORACLE_FD, FRAME_FD, SIGMA_FD, derivative, second_derivative
from .quaternion import (
    UNITS, QMatrix, QVector, bracket_array, check_on_quadric, form_array,
    left_mul_array, projector_array, qmul_array, real_form_array, real_gram,
    trace_metric_array,
)

HORIZONTAL_TOL = 1e-10


def cos_c(t, c):
    return np.cos(t) if c > 0 else np.cosh(t)


def sin_c(t, c):
    return np.sin(t) if c > 0 else np.sinh(t)


def geodesic_lift_array(z, v, t, c):
    """Lift of the unit-speed geodesic with initial horizontal unit velocity ``v``."""
    return cos_c(t, c) * z + sin_c(t, c) * v


def horizontal_project_array(w, z, c):
    """``w - c Psi_c(w, z) z``, the part of ``w`` orthogonal to the fiber and to ``z``."""
    coefficient = form_array(w, z, c)
    return w - c * qmul_array(coefficient[..., None, :], z)


def d_phi_array(z, v, c):
    """Differential of the embedding at ``z`` applied to ``v``."""
    return bracket_array(v, z, c) + bracket_array(z, v, c)


def sigma_closed_array(z, v, w, c):
    """Closed-form second fundamental form of the embedding on horizontal ``v, w``."""
    g = real_form_array(v, w, c)
    return (bracket_array(v, w, c) + bracket_array(w, v, c)
            - 2.0 * c * np.asarray(g)[..., None, None, None] * bracket_array(z, z, c))


def horizontal_basis_array(z, c):
    """
    An orthonormal basis of the horizontal space at ``z``.

    :returns: array of shape ``(4m, m+1, 4)``.
    """
    m = z.shape[0] - 1
    gram = real_gram(m, c)
    rows = np.stack([gram * left_mul_array(q, z).ravel() for q in UNITS])
    kernel = null_space(rows)
    metric = kernel.T @ (gram[:, None] * kernel)
    values, vectors = eigh(metric)
    inverse_root = vectors @ np.diag(values ** -0.5) @ vectors.T
    return (kernel @ inverse_root).T.reshape(-1, m + 1, 4)


def normal_part_array(s, tangents, c):
    """Removes from ``s`` its component along the span of ``tangents``."""
    gram = trace_metric_array(tangents[:, None], tangents[None, :], c)
    inner = trace_metric_array(tangents, s[None], c)
    coefficients = solve(gram, inner, assume_a='sym')
    return s - np.tensordot(coefficients, tangents, axes=1)


def tangential_coordinates_array(s, tangents, c):
    """Coordinates of the tangential part of ``s`` along the orthonormal ``tangents``."""
    return trace_metric_array(tangents, s[None], c)


class SpaceFormPoint:
    """
    A point of the quaternionic space form, with its projector and a lift.

    :param lift: quadric representative.
    :type lift: QVector
    """

    def __init__(self, lift):
        check_on_quadric(lift.entries, lift.c)
        self.lift = lift
        self.P = QMatrix(projector_array(lift.entries, lift.c), lift.c)

    @classmethod
    def from_array(cls, z, c):
        return cls(QVector(z, c))

    @classmethod
    def random(cls, m, c, rng):
        """A random point; for ``c = -1`` the lift stays within moderate size."""
        if c > 0:
            z = rng.normal(size=(m + 1, 4))
            return cls.from_array(z / np.linalg.norm(z), c)
        space = 0.6 * rng.normal(size=(m, 4)) / np.sqrt(m)
        head = rng.normal(size=4)
        head *= np.sqrt(1.0 + np.sum(space ** 2)) / np.linalg.norm(head)
        return cls.from_array(np.vstack([head, space]), c)

    @property
    def z(self):
        return self.lift.entries

    @property
    def c(self):
        return self.lift.c

    @property
    def m(self):
        return self.lift.m

    def horizontal_basis(self):
        return horizontal_basis_array(self.z, self.c)

    def random_horizontal(self, rng, unit=True):
        basis = self.horizontal_basis()
        v = np.tensordot(rng.normal(size=len(basis)), basis, axes=1)
        vector = HorizontalVector(self.z, v, self.c)
        return vector * (1.0 / vector.norm()) if unit else vector

    def __repr__(self):
        return f"SpaceFormPoint(m={self.m}, c={self.c})"


class HorizontalVector:
    """
    A horizontal lift ``v`` at the lift ``base`` (``Psi_c(v, base) = 0``).
    """

    def __init__(self, base, v, c, tol=HORIZONTAL_TOL):
        base = np.asarray(getattr(base, 'entries', base), dtype=float)
        v = np.asarray(getattr(v, 'entries', v), dtype=float)
        if base.shape != v.shape:
            raise DimensionError(f"vector of shape {v.shape} at a base of shape {base.shape}")
        defect = np.max(np.abs(form_array(v, base, c)))
        scale = max(1.0, np.linalg.norm(v) * np.linalg.norm(base))
        if defect > tol * scale:
            raise HorizontalityError(f"Psi(v, z) has size {defect:.3e}")
        self.base = base
        self.v = v
        self.c = int(c)

    @classmethod
    def project(cls, base, w, c):
        """Horizontal part of an arbitrary vector ``w`` at ``base``."""
        base = np.asarray(getattr(base, 'entries', base), dtype=float)
        w = np.asarray(getattr(w, 'entries', w), dtype=float)
        return cls(base, horizontal_project_array(w, base, c), c)

    def inner(self, other):
        return float(real_form_array(self.v, other.v, self.c))

    def norm(self):
        return float(np.sqrt(max(self.inner(self), 0.0)))

    def as_qvector(self):
        return QVector(self.v, self.c)

    def _like(self, v):
        return HorizontalVector(self.base, v, self.c, tol=np.inf)

    def __add__(self, other):
        return self._like(self.v + other.v)

    def __sub__(self, other):
        return self._like(self.v - other.v)

    def __mul__(self, scalar):
        return self._like(self.v * float(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return self._like(-self.v)

    def __repr__(self):
        return f"HorizontalVector(m={self.v.shape[0] - 1}, c={self.c}, |v|={self.norm():.3g})"


class AmbientTangent:
    """A matrix tangent to the embedded space form at a point."""

    def __init__(self, value):
        self.value = value


class SigmaValue:
    """A value of the second fundamental form of the embedding."""

    def __init__(self, value):
        self.value = value


class CanonicalTriple:
    """
    A canonical basis ``J_1, J_2, J_3`` of the quaternionic structure,
    acting on horizontal lifts by left multiplication with three unit
    imaginary quaternions.
    """

    def __init__(self, units=None):
        self.units = np.array(UNITS[1:] if units is None else units, dtype=float)

    def apply_array(self, q, v):
        return left_mul_array(self.units[q - 1], v)

    def rotated(self, rotation):
        """The triple ``J'_q = sum_r R_rq J_r`` for ``R`` in SO(3)."""
        return CanonicalTriple(np.asarray(rotation).T @ self.units)

    def defects(self, point, v):
        """Largest violation of ``J_q^2 = -1``, skew symmetry and ``J_q J_{q+1} = J_{q+2}`` on ``v``."""
        worst = 0.0
        for q in (1, 2, 3):
            jv = self.apply_array(q, v)
            worst = max(worst, np.max(np.abs(self.apply_array(q, jv) + v)))
            worst = max(worst, abs(real_form_array(jv, v, point.c)))
            nxt, last = q % 3 + 1, (q + 1) % 3 + 1
            product = self.apply_array(q, self.apply_array(nxt, v))
            worst = max(worst, np.max(np.abs(product - self.apply_array(last, v))))
        return float(worst)


STANDARD_TRIPLE = CanonicalTriple()


def _check_base(p, vector):
    if vector.base.shape != p.z.shape or np.max(np.abs(vector.base - p.z)) > 1e-12:
        raise HorizontalityError("horizontal vector is attached to a different lift")


def geodesic(p, X, t):
    """
    Point at arc length ``t`` along the geodesic through ``p`` with initial unit velocity ``X``.

    :type p: SpaceFormPoint
    :type X: HorizontalVector
    :rtype: SpaceFormPoint
    """
    _check_base(p, X)
    length = X.norm()
    if abs(length - 1.0) > 1e-10:
        raise HorizontalityError(f"geodesic needs a unit velocity, got |X| = {length:.6g}")
    return SpaceFormPoint.from_array(geodesic_lift_array(p.z, X.v, t, p.c), p.c)


def push_tangent(p, v, cfg=ORACLE_FD):
    """
    The differential of the embedding, realized as the first derivative of
    ``Phi`` along the lifted geodesic in direction ``v``.  Vertical parts of
    ``v`` are dropped, so fiber directions push to zero.

    :param p: base point.
    :type p: SpaceFormPoint
    :param v: horizontal vector, or any QVector tangent to the quadric at the lift.
    :rtype: AmbientTangent
    """
    if isinstance(v, HorizontalVector):
        _check_base(p, v)
        w = v.v
    else:
        w = horizontal_project_array(np.asarray(getattr(v, 'entries', v), dtype=float), p.z, p.c)
    return AmbientTangent(QMatrix(_push_array(p.z, w, p.c, cfg), p.c))


def _push_array(z, w, c, cfg):
    length = np.sqrt(max(real_form_array(w, w, c), 0.0))
    if length < 1e-14:
        return np.zeros(z.shape[:1] * 2 + (4,))
    unit = w / length
    return length * derivative(lambda t: projector_array(geodesic_lift_array(z, unit, t, c), c), cfg)


def _second_variation_array(z, w, c, cfg):
    length2 = real_form_array(w, w, c)
    if length2 < 1e-28:
        return np.zeros(z.shape[:1] * 2 + (4,))
    unit = w / np.sqrt(length2)
    curve = lambda t: projector_array(geodesic_lift_array(z, unit, t, c), c)
    return length2 * second_derivative(curve, cfg, center=projector_array(z, c))


class SigmaOracle:
    """
    Finite-difference second fundamental form of the embedding at one point.

    The tangent space of the embedded space form is spanned numerically by
    pushing an orthonormal horizontal basis; values are projected onto its
    orthogonal complement.
    """

    def __init__(self, point, cfg=SIGMA_FD):
        self.point = point
        self.cfg = cfg
        basis = point.horizontal_basis()
        self.tangents = np.stack([_push_array(point.z, e, point.c, cfg) for e in basis])

    def normal_part(self, s):
        return normal_part_array(np.asarray(s, dtype=float), self.tangents, self.point.c)

    def raw(self, x, y):
        """Second fundamental form on raw horizontal arrays, by polarization."""
        z, c = self.point.z, self.point.c
        plus = _second_variation_array(z, x + y, c, self.cfg)
        minus = _second_variation_array(z, x - y, c, self.cfg)
        return self.normal_part(0.25 * (plus - minus))

    def __call__(self, X, Y):
        return SigmaValue(QMatrix(self.raw(X.v, Y.v), self.point.c))


def sigma(p, X, Y, cfg=SIGMA_FD):
    """
    Second fundamental form of the embedding at ``p``.

    :type p: SpaceFormPoint
    :type X: HorizontalVector
    :type Y: HorizontalVector
    :rtype: SigmaValue
    """
    _check_base(p, X)
    _check_base(p, Y)
    return SigmaOracle(p, cfg)(X, Y)


def jq_apply(p, q, v, triple=STANDARD_TRIPLE):
    """
    Applies ``J_q`` (q in 1, 2, 3) to a horizontal vector.

    :rtype: HorizontalVector
    """
    if q not in (1, 2, 3):
        raise DimensionError(f"J_q is defined for q in 1, 2, 3, got {q}")
    _check_base(p, v)
    w = horizontal_project_array(triple.apply_array(q, v.v), p.z, p.c)
    return HorizontalVector(p.z, w, p.c)


def shape_operator_of_embedding(p, X, Y, V, triple=STANDARD_TRIPLE):
    """
    Closed-form shape operator of the embedding in the normal direction
    ``sigma(X, Y)``, applied to ``V``.

    :rtype: HorizontalVector
    """
    c = p.c
    g = real_form_array
    x, y, v = X.v, Y.v, V.v
    out = 2.0 * g(x, y, c) * v + g(x, v, c) * y + g(y, v, c) * x
    for q in (1, 2, 3):
        jx, jy = triple.apply_array(q, x), triple.apply_array(q, y)
        out = out + g(jx, v, c) * jy + g(jy, v, c) * jx
    return HorizontalVector(p.z, c * out, c)


def weingarten_fd(p, S, V, cfg=ORACLE_FD):
    """
    Numerical shape operator of the embedding for the normal vector ``S``:
    ``S`` is extended as the normal projection of the constant matrix along
    the geodesic in direction ``V`` and differentiated.

    :param S: normal value at ``p``.
    :type S: SigmaValue
    :type V: HorizontalVector
    :rtype: HorizontalVector
    """
    _check_base(p, V)
    s = np.asarray(S.value.entries, dtype=float)
    z, c = p.z, p.c
    length = V.norm()
    if length < 1e-14:
        return HorizontalVector(z, np.zeros_like(z), c)
    unit = V.v / length

    def normal_along(t):
        lift = geodesic_lift_array(z, unit, t, c)
        tangents = d_phi_array(lift[None], horizontal_basis_array(lift, c), c)
        return normal_part_array(s, tangents, c)

    change = derivative(normal_along, cfg)
    basis = horizontal_basis_array(z, c)
    tangents = d_phi_array(z[None], basis, c)
    coords = tangential_coordinates_array(-change, tangents, c)
    return HorizontalVector(z, length * np.tensordot(coords, basis, axes=1), c)


TransportDefect = namedtuple('TransportDefect', ['normal', 'tangential'])


def sigma_transport_defect(p, X, W, cfg=FRAME_FD, sigma_cfg=SIGMA_FD):
    """
    Parallelism proxy for the second fundamental form of the embedding.

    Along the geodesic with unit velocity ``X`` the constant lift ``W``
    (quaternionically orthogonal to the lift and to ``X``) is a parallel
    field.  The derivative of ``sigma(gamma', W)`` must then be tangent;
    its normal part is the defect.

    :returns: the largest entry of the normal part and the tangential part
        (which equals ``-c dPhi(W)``).
    :rtype: TransportDefect
    """
    _check_base(p, X)
    _check_base(p, W)
    z, x, w, c = p.z, X.v, W.v, p.c
    if np.max(np.abs(form_array(w, x, c))) > 1e-10:
        raise HorizontalityError("transported vector must be quaternionically orthogonal to the direction")

    def sigma_along(t):
        lift = geodesic_lift_array(z, x, t, c)
        velocity = -c * sin_c(t, c) * z + cos_c(t, c) * x
        oracle = SigmaOracle(SpaceFormPoint.from_array(lift, c), sigma_cfg)
        return oracle.raw(velocity, w)

    change = derivative(sigma_along, cfg)
    normal = normal_part_array(change, d_phi_array(z[None], horizontal_basis_array(z, c), c), c)
    return TransportDefect(float(np.max(np.abs(normal))), QMatrix(change - normal, c))


def curvature_tensor(p, X, Y, Z, triple=STANDARD_TRIPLE):
    """
    Riemannian curvature ``R(X, Y)Z`` of the space form of constant
    quaternionic sectional curvature ``4c``.

    :rtype: HorizontalVector
    """
    return HorizontalVector(p.z, curvature_array(X.v, Y.v, Z.v, p.c, triple), p.c)


def curvature_array(x, y, z, c, triple=STANDARD_TRIPLE):
    g = real_form_array
    out = g(y, z, c) * x - g(x, z, c) * y
    for q in (1, 2, 3):
        jx, jy, jz = (triple.apply_array(q, a) for a in (x, y, z))
        out = out + g(jy, z, c) * jx - g(jx, z, c) * jy - 2.0 * g(jx, y, c) * jz
    return c * out
