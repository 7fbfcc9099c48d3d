"""Coordinate charts of the model hypersurfaces.

A chart maps coordinates ``u`` in a box around 0 to a lift ``z(u)`` on the
quadric whose projection sweeps the hypersurface.  Tangent vectors are the
horizontal parts of the coordinate derivatives; the induced metric is their
real Gram matrix.  Every chart also gives an ``inward`` direction (towards
the core of a tube, towards the ideal point of a horosphere) that fixes the
orientation of the unit normal.
"""

import numpy as np
from scipy.linalg import eig, eigh, null_space

from .errors import ChartError, DomainError
from .family import FamilySpec
from .finite_difference import FRAME_FD, partials
from .quaternion import UNITS, QVector, eta, form_array, left_mul_array, projector_array, qmul_array, real_form_array
from .spaceform import SpaceFormPoint, cos_c, sin_c, horizontal_project_array

DOMAIN_HALF_WIDTH = 0.25
SAMPLE_HALF_WIDTH = 0.15
RANK_TOL = 1e-10
SPECTRUM_IMAG_TOL = 1e-9


class MetricPatch:
    """
    Induced metric at one chart point.

    :param g: symmetric positive definite ``n x n`` matrix.
    """

    def __init__(self, g):
        g = 0.5 * (np.asarray(g, dtype=float) + np.asarray(g, dtype=float).T)
        values = np.linalg.eigvalsh(g)
        if values[0] <= RANK_TOL * max(1.0, values[-1]):
            raise ChartError(f"induced metric is degenerate (smallest eigenvalue {values[0]:.3e})")
        self.g = g
        self.g_inv = np.linalg.inv(g)
        self.sqrt_det = float(np.sqrt(np.prod(values)))
        self.eigenvalues = values

    @property
    def n(self):
        return self.g.shape[0]


class Patch:
    """
    Common behaviour of coordinate patches: domain box, seeded samples and
    the metric from tangent vectors.
    """
    half_width = DOMAIN_HALF_WIDTH

    def __init__(self, n):
        self.n = n

    def contains(self, u):
        u = np.asarray(u, dtype=float)
        return u.shape == (self.n,) and bool(np.all(np.abs(u) <= self.half_width))

    def _check_domain(self, u):
        u = np.asarray(u, dtype=float)
        if u.shape != (self.n,):
            raise DomainError(f"expected {self.n} coordinates, got shape {u.shape}")
        if np.any(np.abs(u) > self.half_width):
            raise DomainError(f"point leaves the chart box |u_i| <= {self.half_width}: max |u_i| = {np.max(np.abs(u)):.4g}")
        return u

    def sample_points(self, count, seed):
        """
        ``count`` seeded sample points; the first is the chart origin.
        """
        rng = np.random.default_rng(seed)
        points = rng.uniform(-SAMPLE_HALF_WIDTH, SAMPLE_HALF_WIDTH, size=(count, self.n))
        if count:
            points[0] = 0.0
        return points

    def tangents(self, u, cfg=FRAME_FD):
        raise NotImplementedError

    def inner(self, a, b):
        raise NotImplementedError

    def metric(self, u, cfg=FRAME_FD):
        t = self.tangents(u, cfg)
        return MetricPatch(self.inner(t[:, None], t[None, :]))


class Chart(Patch):
    """
    Chart of a model hypersurface given by its FamilySpec.
    """

    def __init__(self, spec):
        super().__init__(spec.n)
        self.spec = spec
        self.c = spec.c
        self.m = spec.m

    def _lift(self, u):
        raise NotImplementedError

    def _inward(self, u):
        raise NotImplementedError

    def lift(self, u):
        """The quadric representative ``z(u)`` as an array of shape ``(m+1, 4)``."""
        return self._lift(self._check_domain(u))

    def lift_vector(self, u):
        return QVector(self.lift(u), self.c)

    def point(self, u):
        return SpaceFormPoint(self.lift_vector(u))

    def position(self, u):
        """The embedded position ``Phi(z(u))``."""
        return projector_array(self.lift(u), self.c)

    def inward(self, u):
        """A direction at ``z(u)`` pointing towards the core (not necessarily horizontal)."""
        return self._inward(self._check_domain(u))

    def tangents(self, u, cfg=FRAME_FD):
        """
        Horizontal parts of the coordinate derivatives of the lift.

        :returns: array of shape ``(n, m+1, 4)``.
        """
        u = self._check_domain(u)
        z = self.lift(u)
        return horizontal_project_array(partials(self.lift, u, cfg), z[None], self.c)

    def inner(self, a, b):
        return real_form_array(a, b, self.c)

    def split(self, u):
        """
        Spanning sets of the two D-eigenspaces of a tube about HQ^k, or None
        when the chart has no such product structure.
        """
        return None

    def distance_to_core(self, u):
        """
        Geodesic distance from the point at ``u`` to the core of the tube.

        :raises ChartError: for hypersurfaces without a core.
        """
        raise ChartError(f"{self.spec} has no core submanifold")

    def __repr__(self):
        return f"{type(self).__name__}({self.spec!r})"


def _arc_c(value, c):
    """Inverse of ``cos_c`` on [0, inf), tolerant of rounding at the endpoint."""
    if c > 0:
        return float(np.arccos(min(value, 1.0)))
    return float(np.arccosh(max(value, 1.0)))


def _block_normalize(x, weights):
    norm2 = float(np.sum(weights[:, None] * x ** 2))
    if norm2 <= 0.0:
        raise DomainError("chart point leaves the sphere block (non-positive norm)")
    return x / np.sqrt(norm2)


def _block_orthogonal(x, weights):
    """Real vectors of a block quaternionically orthogonal to ``x`` (as a spanning set)."""
    gram = np.repeat(weights, 4)
    rows = np.stack([gram * left_mul_array(q, x).ravel() for q in UNITS])
    kernel = null_space(rows)
    return kernel.T.reshape(-1, x.shape[0], 4)


class TubeChart(Chart):
    """
    Tube of radius r about a totally geodesic HQ^k: the lift is
    ``(cos_c(r) U, sin_c(r) V)`` with U on the unit (pseudo)sphere of the
    first ``k+1`` coordinates and V on the unit sphere of the rest.  Geodesic
    spheres are the cases ``k = 0`` and ``k = m-1``.
    """

    def __init__(self, spec):
        super().__init__(spec)
        m, k = spec.m, spec.k
        self.k = k
        self.weights = eta(m, self.c)
        self.u_base = np.zeros((k + 1, 4))
        self.u_base[0, 0] = 1.0
        self.v_base = np.zeros((m - k, 4))
        self.v_base[0, 0] = 1.0
        rows = [np.concatenate([self.u_base, np.zeros_like(self.v_base)]).ravel(),
                np.concatenate([np.zeros_like(self.u_base), self.v_base]).ravel()]
        for q in UNITS[1:]:
            rows.append(np.concatenate([left_mul_array(q, self.u_base), left_mul_array(q, self.v_base)]).ravel())
        self.coordinates = null_space(np.stack(rows))
        if self.coordinates.shape[1] != self.n:
            raise ChartError(f"coordinate complement has dimension {self.coordinates.shape[1]}, expected {self.n}")

    def blocks(self, u):
        """The unit block vectors (U, V) at ``u``."""
        delta = (self.coordinates @ np.asarray(u, dtype=float)).reshape(self.m + 1, 4)
        k = self.k
        U = _block_normalize(self.u_base + delta[:k + 1], self.c * self.weights[:k + 1])
        V = _block_normalize(self.v_base + delta[k + 1:], self.weights[k + 1:])
        return U, V

    def _lift(self, u):
        U, V = self.blocks(u)
        r, c = self.spec.r, self.c
        return np.concatenate([cos_c(r, c) * U, sin_c(r, c) * V])

    def _inward(self, u):
        U, V = self.blocks(u)
        r, c = self.spec.r, self.c
        return np.concatenate([c * sin_c(r, c) * U, -cos_c(r, c) * V])

    def split(self, u):
        """
        ``(V_mu, V_nu)``: horizontal vectors spanning the eigenspace of the
        V-block curvature (vectors ``(0, y)`` with ``y`` orthogonal to V) and
        of the U-block curvature (vectors ``(x, 0)`` with ``x`` orthogonal to U).
        """
        u = self._check_domain(u)
        U, V = self.blocks(u)
        k = self.k
        along_v = _block_orthogonal(V, self.weights[k + 1:])
        along_u = _block_orthogonal(U, self.weights[:k + 1])
        v_mu = np.concatenate([np.zeros((len(along_v), k + 1, 4)), along_v], axis=1)
        v_nu = np.concatenate([along_u, np.zeros((len(along_u), self.m - k, 4))], axis=1)
        return v_mu, v_nu

    def distance_to_core(self, u):
        """
        ``cos_c d`` is the largest (smallest for ``c = -1``) value of
        ``|Psi(z, w)|`` over unit core lifts ``w``, which is the norm of the
        first ``k+1`` entries of the lift.
        """
        z = self.lift(u)
        head = z[:self.k + 1]
        norm2 = self.c * float(np.sum(self.weights[:self.k + 1, None] * head ** 2))
        return _arc_c(np.sqrt(max(norm2, 0.0)), self.c)


def _complex_rows(coefficients):
    """Real rows (real part, imaginary part) of the functional ``delta -> sum a delta``."""
    a = np.asarray(coefficients)
    re_row = np.concatenate([a.real, -a.imag])
    im_row = np.concatenate([a.imag, a.real])
    return re_row, im_row


class ComplexTubeChart(Chart):
    """
    Tube of radius r about the totally geodesic CQ^m.  A core point is a
    complex vector u with ``Psi_c(u, u) = c``; tube directions are ``v j``
    for complex v with ``sum eta_a v_a u_a = 0`` and ``sum eta_a |v_a|^2 = 1``.
    The lift is ``cos_c(r) u + sin_c(r) v j``; coordinates run over the
    constraint manifold of (u, v) modulo the phase ``(u, v) -> e^{i t}(u, v)``.
    """

    def __init__(self, spec):
        super().__init__(spec)
        m = spec.m
        self.weights = eta(m, self.c)
        self.u_base = np.zeros(m + 1, dtype=complex)
        self.u_base[0] = 1.0
        self.v_base = np.zeros(m + 1, dtype=complex)
        self.v_base[1] = 1.0
        w, u0, v0 = self.weights, self.u_base, self.v_base
        zeros = np.zeros(m + 1)

        def full(u_part, v_part):
            # real coordinates ordered (Re du, Re dv, Im du, Im dv)
            return np.concatenate([u_part[:m + 1], v_part[:m + 1], u_part[m + 1:], v_part[m + 1:]])

        norm_u, _ = _complex_rows(2 * w * np.conj(u0))
        bil_u_re, bil_u_im = _complex_rows(w * v0)
        bil_v_re, bil_v_im = _complex_rows(w * u0)
        norm_v, _ = _complex_rows(2 * w * np.conj(v0))
        blank = np.concatenate([zeros, zeros])
        gauge_u = 1j * u0
        gauge_v = 1j * v0
        rows = [
            full(norm_u, blank),
            full(bil_u_re, bil_v_re),
            full(bil_u_im, bil_v_im),
            full(blank, norm_v),
            np.concatenate([gauge_u.real, gauge_v.real, gauge_u.imag, gauge_v.imag]),
        ]
        self.coordinates = null_space(np.stack(rows))
        if self.coordinates.shape[1] != self.n:
            raise ChartError(f"coordinate complement has dimension {self.coordinates.shape[1]}, expected {self.n}")

    def core_and_direction(self, u):
        """The complex core point and tube direction ``(u, v)`` at chart coordinates ``u``."""
        m, w, c = self.m, self.weights, self.c
        delta = self.coordinates @ np.asarray(u, dtype=float)
        du = delta[:m + 1] + 1j * delta[2 * (m + 1):3 * (m + 1)]
        dv = delta[m + 1:2 * (m + 1)] + 1j * delta[3 * (m + 1):]
        core = self.u_base + du
        scale = c * float(np.sum(w * np.abs(core) ** 2))
        if scale <= 0.0:
            raise DomainError("chart point leaves the core quadric")
        core = core / np.sqrt(scale)
        direction = self.v_base + dv
        dual = w * np.conj(core)
        direction = direction - (np.sum(direction * np.conj(dual)) / np.sum(np.abs(dual) ** 2)) * dual
        length = float(np.sum(w * np.abs(direction) ** 2))
        if length <= 0.0:
            raise DomainError("tube direction degenerates")
        return core, direction / np.sqrt(length)

    @staticmethod
    def complex_to_quaternion(x):
        out = np.zeros((len(x), 4))
        out[:, 0] = x.real
        out[:, 1] = x.imag
        return out

    @staticmethod
    def times_j(x):
        """``x j`` for a complex vector x, as quaternions."""
        out = np.zeros((len(x), 4))
        out[:, 2] = x.real
        out[:, 3] = x.imag
        return out

    def _lift(self, u):
        core, direction = self.core_and_direction(u)
        r, c = self.spec.r, self.c
        return cos_c(r, c) * self.complex_to_quaternion(core) + sin_c(r, c) * self.times_j(direction)

    def _inward(self, u):
        core, direction = self.core_and_direction(u)
        r, c = self.spec.r, self.c
        return c * sin_c(r, c) * self.complex_to_quaternion(core) - cos_c(r, c) * self.times_j(direction)

    def distance_to_core(self, u):
        """
        Distance to CQ^m by extremizing ``|Psi(z, w)|`` over complex unit
        lifts ``w``.

        Writing ``z = a + b j`` with complex ``a, b`` gives
        ``|Psi(z, w)|^2 = w^H M w`` with ``M = al al^H + conj(be) be^T``,
        ``al = eta a`` and ``be = eta b``.  The extremum under
        ``c sum eta |w|^2 = 1`` is an eigenvalue of the pencil ``(M, c eta)``:
        the largest for c = +1, the smallest with a timelike eigenvector
        for c = -1.

        :raises ChartError: if no admissible eigenvalue is found.
        """
        z = self.lift(u)
        c, w = self.c, self.weights
        alpha = w * (z[:, 0] + 1j * z[:, 1])
        beta = w * (z[:, 2] + 1j * z[:, 3])
        M = np.outer(alpha, np.conj(alpha)) + np.outer(np.conj(beta), beta)
        if c > 0:
            extremum = float(eigh(M, eigvals_only=True)[-1])
        else:
            B = np.diag(c * w).astype(complex)
            values, vectors = eig(M, B)
            admissible = []
            for value, vector in zip(values, vectors.T):
                if not np.isfinite(value) or abs(value.imag) > SPECTRUM_IMAG_TOL * (1.0 + abs(value)):
                    continue
                if np.real(np.vdot(vector, B @ vector)) > SPECTRUM_IMAG_TOL * np.real(np.vdot(vector, vector)):
                    admissible.append(float(value.real))
            if not admissible:
                raise ChartError(f"no timelike extremum of |Psi| over the core of {self.spec}")
            extremum = min(admissible)
        return _arc_c(np.sqrt(max(extremum, 0.0)), c)


class HorosphereChart(Chart):
    """
    Horosphere ``|Psi(z, l)| = rho`` for the null vector ``l = e_0 + e_1``.
    Coordinates are ``w`` in H^{m-1} (the entries ``z_2..z_m``) and the
    imaginary part of ``z_0``; the level ``rho = 1`` fixes the fiber.
    """

    def __init__(self, spec, rho=1.0):
        super().__init__(spec)
        self.rho = float(rho)
        self.null_vector = np.zeros((self.m + 1, 4))
        self.null_vector[0, 0] = 1.0
        self.null_vector[1, 0] = 1.0

    def _lift_at(self, u, rho):
        m = self.m
        w = np.asarray(u[:4 * (m - 1)], dtype=float).reshape(m - 1, 4)
        head = np.zeros(4)
        head[0] = -(1.0 + rho ** 2 + np.sum(w ** 2)) / (2.0 * rho)
        head[1:] = u[4 * (m - 1):]
        second = head.copy()
        second[0] += rho
        return np.vstack([head, second, w])

    def _lift(self, u):
        return self._lift_at(u, self.rho)

    def _inward(self, u):
        m = self.m
        w2 = float(np.sum(np.asarray(u[:4 * (m - 1)]) ** 2))
        rho = self.rho
        out = np.zeros((m + 1, 4))
        out[0, 0] = out[1, 0] = -(1.0 + w2 - rho ** 2) / (2.0 * rho ** 2)
        out[1, 0] -= 1.0
        return out

    def level(self, u):
        """``|Psi(z(u), l)|``, constant on the horosphere."""
        return float(np.linalg.norm(form_array(self.lift(u), self.null_vector, self.c)))

    def split(self, u):
        return None


class GaugeTwistedChart(Chart):
    """
    The same hypersurface patch as ``base`` with linearly changed
    coordinates ``u = M u'`` and a lift rotated along the fiber by a unit
    quaternion depending on the point.
    """

    def __init__(self, base, matrix, twist):
        super().__init__(base.spec)
        self.base = base
        self.matrix = np.asarray(matrix, dtype=float)
        self.twist = np.asarray(twist, dtype=float)
        # keep the image of the box inside the base box
        self.half_width = base.half_width / max(1.0, float(np.max(np.sum(np.abs(self.matrix), axis=1))))

    def _rotation(self, u):
        angle = self.twist @ np.concatenate([[1.0], u])
        size = np.linalg.norm(angle)
        q = np.zeros(4)
        q[0] = np.cos(size)
        if size > 0:
            q[1:] = np.sin(size) * angle / size
        return q

    def to_base(self, u):
        return self.matrix @ np.asarray(u, dtype=float)

    def _lift(self, u):
        return left_mul_array(self._rotation(u), self.base.lift(self.to_base(u)))

    def _inward(self, u):
        return left_mul_array(self._rotation(u), self.base.inward(self.to_base(u)))

    def split(self, u):
        parts = self.base.split(self.to_base(self._check_domain(u)))
        if parts is None:
            return None
        q = self._rotation(u)
        return tuple(qmul_array(np.broadcast_to(q, part.shape), part) for part in parts)


class RoundSphereChart(Patch):
    """
    Graph chart ``u -> (u, sqrt(1 - |u|^2))`` of the unit round sphere
    S^n in R^{n+1}; used to test the Laplace-Beltrami kernel.
    """

    def __init__(self, n):
        super().__init__(n)

    def embedding(self, u):
        u = self._check_domain(u)
        return np.concatenate([u, [np.sqrt(1.0 - np.sum(u ** 2))]])

    def tangents(self, u, cfg=FRAME_FD):
        return partials(self.embedding, self._check_domain(u), cfg)

    def inner(self, a, b):
        return np.sum(a * b, axis=-1)


def chart(spec):
    """
    Builds the chart of a model hypersurface.

    :param spec: legal family parameters.
    :type spec: FamilySpec
    :rtype: Chart
    """
    if not isinstance(spec, FamilySpec):
        raise ChartError(f"expected a FamilySpec, got {type(spec).__name__}")
    if spec.family in ('P1k', 'H1k'):
        return TubeChart(spec)
    if spec.family in ('P2', 'H2'):
        return ComplexTubeChart(spec)
    return HorosphereChart(spec)
