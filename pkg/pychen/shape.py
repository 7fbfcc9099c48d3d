"""Unit normals, shape operators and curvature scalars of chart hypersurfaces.

The unit normal at ``u`` is the horizontal vector at ``z(u)`` orthogonal to
every tangent vector, oriented towards the core of the tube.  The shape
operator comes from finite differences of the pushed normal along the
coordinate lines:

    <A d_i, d_j> = -<d_i dPhi(xi), dPhi(t_j)>

and is expressed in the orthonormal frame ``E = t g^{-1/2}``.
"""

from collections import namedtuple
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh, null_space

from .errors import ChartError, ContractError, DegenerateSpectrumError
from .finite_difference import FRAME_FD, LAYERED_FD, partials
from .quaternion import UNITS, left_mul_array, real_form_array, real_gram, trace_metric_array
from .spaceform import (
    STANDARD_TRIPLE, SpaceFormPoint, curvature_array, d_phi_array, horizontal_project_array,
)

CLUSTER_GAP = 1e-4
PARTNER_TOL = 1e-8
FLAG_TOL = 1e-8

Cluster = namedtuple('Cluster', ['value', 'multiplicity'])


def cluster_eigenvalues(values, gap=CLUSTER_GAP):
    """
    Groups sorted eigenvalues whose neighbours differ by less than ``gap``.

    :returns: list of Cluster(value, multiplicity), ascending.
    """
    values = np.sort(np.asarray(values, dtype=float))
    clusters = []
    group = []
    for value in values:
        if group and value - group[-1] >= gap:
            clusters.append(Cluster(float(np.mean(group)), len(group)))
            group = []
        group.append(value)
    if group:
        clusters.append(Cluster(float(np.mean(group)), len(group)))
    return clusters


def _inverse_root(g):
    values, vectors = eigh(g)
    return vectors @ np.diag(values ** -0.5) @ vectors.T


def unit_normal_array(chart, u, tangents=None, cfg=FRAME_FD):
    """
    The oriented unit normal at ``z(u)`` as a horizontal lift.

    :raises ChartError: if the tangent vectors do not leave a one-dimensional normal.
    """
    z = chart.lift(u)
    c = chart.c
    if tangents is None:
        tangents = chart.tangents(u, cfg)
    gram = real_gram(chart.m, c)
    rows = [gram * t.ravel() for t in tangents]
    rows += [gram * left_mul_array(q, z).ravel() for q in UNITS]
    kernel = null_space(np.stack(rows), rcond=1e-10)
    if kernel.shape[1] != 1:
        raise ChartError(f"normal space at u has dimension {kernel.shape[1]}, expected 1")
    xi = kernel[:, 0].reshape(z.shape)
    xi = xi / np.sqrt(real_form_array(xi, xi, c))
    hint = horizontal_project_array(chart.inward(u), z, c)
    if real_form_array(xi, hint, c) < 0:
        xi = -xi
    return xi


def pushed_normal(chart, u, cfg=FRAME_FD):
    """``dPhi(xi)`` at ``u``, independent of the lift."""
    return d_phi_array(chart.lift(u), unit_normal_array(chart, u, cfg=cfg), chart.c)


def second_fundamental_matrix(chart, u, tangents=None, cfg=FRAME_FD, outer_cfg=FRAME_FD):
    """
    Coordinate components ``h_ij = <A d_i, d_j>`` of the shape operator.
    """
    c = chart.c
    z = chart.lift(u)
    if tangents is None:
        tangents = chart.tangents(u, cfg)
    change = partials(lambda v: pushed_normal(chart, v, cfg), u, outer_cfg)
    pushed = d_phi_array(z[None], tangents, c)
    h = -trace_metric_array(change[:, None], pushed[None, :], c)
    return 0.5 * (h + h.T)


class ShapeFrame:
    """
    Shape operator of a chart hypersurface at one point, in an orthonormal
    tangent frame, with the quaternionic triple rotated so that
    ``U_q = -J_q xi`` are principal.

    :param chart: the chart.
    :param u: chart coordinates.
    :param cfg: FD settings for lift and normal derivatives.
    """

    def __init__(self, chart, u, cfg=FRAME_FD):
        self.chart = chart
        self.u = np.asarray(u, dtype=float)
        self.cfg = cfg
        self.c = chart.c
        self.z = chart.lift(self.u)
        self.point = SpaceFormPoint.from_array(self.z, self.c)
        self.tangents = chart.tangents(self.u, cfg)
        self.metric = chart.metric(self.u, cfg)
        self.xi = unit_normal_array(chart, self.u, self.tangents, cfg)
        h = second_fundamental_matrix(chart, self.u, self.tangents, cfg)
        root = _inverse_root(self.metric.g)
        self.coordinate_frame = root
        self.frame = np.tensordot(root.T, self.tangents, axes=1)
        A = root @ h @ root
        self.A = 0.5 * (A + A.T)
        self.asymmetry = float(np.max(np.abs(A - A.T)))
        self.eigenvalues, self.eigenvectors = eigh(self.A)
        self._gauge_triple()

    @property
    def spec(self):
        return self.chart.spec

    @property
    def n(self):
        return self.A.shape[0]

    def coordinates(self, v):
        """Frame coordinates of a horizontal tangent vector."""
        return real_form_array(self.frame, v[None], self.c)

    def _gauge_triple(self):
        units = [-STANDARD_TRIPLE.apply_array(q, self.xi) for q in (1, 2, 3)]
        coords = np.stack([self.coordinates(v) for v in units])
        block = coords @ self.A @ coords.T
        values, rotation = eigh(0.5 * (block + block.T))
        order = _simple_first(values)
        values, rotation = values[order], rotation[:, order]
        if np.linalg.det(rotation) < 0:
            rotation[:, -1] = -rotation[:, -1]
        self.triple = STANDARD_TRIPLE.rotated(rotation)
        self.alphas = [float(v) for v in values]
        self.U = np.stack([-self.triple.apply_array(q, self.xi) for q in (1, 2, 3)])
        self.U_coords = np.stack([self.coordinates(v) for v in self.U])
        self.P_perp = self.U_coords.T @ self.U_coords

    def principal_residual(self):
        """Largest ``|A U_q - alpha_q U_q|``."""
        worst = 0.0
        for q in range(3):
            vec = self.U_coords[q]
            worst = max(worst, float(np.linalg.norm(self.A @ vec - self.alphas[q] * vec)))
        return worst

    def eigen_residual(self):
        """Largest ``|A v - lambda v|`` over the computed eigenvectors."""
        r = self.A @ self.eigenvectors - self.eigenvectors * self.eigenvalues
        return float(np.max(np.linalg.norm(r, axis=0)))

    def d_invariance_defect(self):
        """``|(A X)_{D-perp}|`` for X in D, as an operator norm."""
        P = self.P_perp
        return float(np.linalg.norm(P @ self.A @ (np.eye(self.n) - P), 2))

    def d_basis(self):
        """Orthonormal frame coordinates spanning D."""
        return null_space(self.U_coords)

    def j_matrices(self):
        """``S_q[a, b] = <J_q E_a, E_b>`` for the rotated triple."""
        return np.stack([
            np.stack([self.coordinates(self.triple.apply_array(q, e)) for e in self.frame])
            for q in (1, 2, 3)
        ])

    def __repr__(self):
        return f"ShapeFrame({self.spec!r}, u={np.array2string(self.u, precision=3)})"


def _simple_first(values):
    """Order of three eigenvalues with the most isolated one first."""
    spread = [min(abs(values[i] - values[j]) for j in range(3) if j != i) for i in range(3)]
    first = int(np.argmax(spread))
    return [first] + [i for i in range(3) if i != first]


def shape_operator(chart, u, cfg=FRAME_FD):
    """
    Computes the shape frame of the chart hypersurface at ``u``.

    :rtype: ShapeFrame
    """
    return ShapeFrame(chart, u, cfg)


def jacobi_matrix(frame):
    """The normal Jacobi operator ``c (I + 3 P_perp)`` in frame coordinates."""
    return frame.c * (np.eye(frame.n) + 3.0 * frame.P_perp)


def normal_jacobi(frame):
    """
    The normal Jacobi operator evaluated literally from the curvature
    tensor of the space form, ``K_ab = <R(E_a, xi) xi, E_b>``.
    """
    columns = [frame.coordinates(curvature_array(e, frame.xi, frame.xi, frame.c)) for e in frame.frame]
    return np.stack(columns)


def curvature_adapted_residual(frame, A=None):
    """
    ``|K A - A K|_F`` for the normal Jacobi operator K.

    :param A: optional replacement for the frame's shape-operator matrix.
    """
    A = frame.A if A is None else np.asarray(A, dtype=float)
    K = jacobi_matrix(frame)
    return float(np.linalg.norm(K @ A - A @ K))


@dataclass
class CurvatureScalars:
    """
    Scalar invariants of a shape operator.

    ``taus`` are the D-eigenvalues with multiplicities, ``partners`` maps
    ``(tau index, q)`` to the partner curvature ``tau_q`` or None when
    ``alpha_q^2 + 4c`` vanishes.
    """
    c: int
    n: int
    f: float
    f2: float
    alphas: list
    taus: list
    partners: dict = field(default_factory=dict)
    partner_defect: float = 0.0
    flagged: bool = False

    @property
    def sum_alpha(self):
        return float(sum(self.alphas))

    @property
    def sum_alpha2(self):
        return float(sum(a * a for a in self.alphas))

    def tau_values(self):
        return [t for t, _ in self.taus]

    def partner_sums(self, index):
        """``(tau + sum_q tau_q, tau^2 + sum_q tau_q^2)`` for the tau at ``index``."""
        tau = self.taus[index][0]
        partners = [self.partners[(index, q)] for q in (1, 2, 3)]
        if any(p is None for p in partners):
            raise ContractError("partner curvatures are undefined when alpha_q^2 + 4c = 0")
        return tau + sum(partners), tau * tau + sum(p * p for p in partners)

    @classmethod
    def from_table(cls, spec):
        """Exact scalars from the principal-curvature table."""
        rows = spec.principal_curvatures()
        f = sum(r.value * r.multiplicity for r in rows)
        f2 = sum(r.value ** 2 * r.multiplicity for r in rows)
        scalars = cls(spec.c, spec.n, f, f2, spec.alphas(), spec.taus())
        _attach_partners(scalars)
        return scalars


def _attach_partners(scalars):
    values = scalars.tau_values()
    worst = 0.0
    flagged = False
    for i, tau in enumerate(values):
        for q, alpha in enumerate(scalars.alphas, start=1):
            if abs(alpha * alpha + 4 * scalars.c) < FLAG_TOL or abs(2 * tau - alpha) < FLAG_TOL:
                scalars.partners[(i, q)] = None
                flagged = True
                continue
            partner = (2 * scalars.c + alpha * tau) / (2 * tau - alpha)
            scalars.partners[(i, q)] = partner
            worst = max(worst, min(abs(partner - v) for v in values))
    scalars.partner_defect = worst
    scalars.flagged = flagged


def scalar_invariants(frame, gap=CLUSTER_GAP):
    """
    Measured scalar invariants of a shape frame.

    :rtype: CurvatureScalars
    """
    A = frame.A
    basis = frame.d_basis()
    d_values = eigh(basis.T @ A @ basis, eigvals_only=True)
    taus = [(cl.value, cl.multiplicity) for cl in cluster_eigenvalues(d_values, gap)]
    scalars = CurvatureScalars(
        frame.c, frame.n, float(np.trace(A)), float(np.trace(A @ A)), list(frame.alphas), taus)
    _attach_partners(scalars)
    return scalars


def measured_census(frame, gap=CLUSTER_GAP):
    """Clusters of the full spectrum of A."""
    return cluster_eigenvalues(frame.eigenvalues, gap)


def table_census(spec):
    """Clusters of the table spectrum, merged the same way as measured ones."""
    values = []
    for row in spec.principal_curvatures():
        values.extend([row.value] * row.multiplicity)
    return cluster_eigenvalues(values)


def census_defect(frame, gap=CLUSTER_GAP):
    """
    Compares measured and table clusters.

    :returns: (largest value mismatch, multiplicities agree)
    :raises DegenerateSpectrumError: when the cluster counts differ.
    """
    measured = measured_census(frame, gap)
    expected = table_census(frame.spec)
    if len(measured) != len(expected):
        raise DegenerateSpectrumError(
            f"{frame.spec}: {len(measured)} eigenvalue clusters measured, {len(expected)} expected")
    worst = max(abs(a.value - b.value) for a, b in zip(measured, expected))
    same = all(a.multiplicity == b.multiplicity for a, b in zip(measured, expected))
    return worst, same


def covariant_derivative_residual(frame, cfg=LAYERED_FD):
    """
    Largest deviation of ``<(nabla_{E_a} A) E_b, E_c>`` from
    ``-c sum_q [S_q[a,b] u_q[c] + u_q[b] S_q[a,c]]``.

    The covariant derivative is built from coordinate derivatives of the
    second fundamental form and Christoffel symbols of the induced metric.
    """
    chart, u, c = frame.chart, frame.u, frame.c
    h_of = lambda v: second_fundamental_matrix(chart, v, cfg=frame.cfg)
    dh = partials(h_of, u, cfg)
    dg = partials(lambda v: chart.metric(v, frame.cfg).g, u, cfg)
    g_inv = frame.metric.g_inv
    # Gamma^l_{ki}
    lowered = 0.5 * (np.einsum('kmi->kmi', dg) + np.einsum('imk->kmi', dg) - np.einsum('mki->kmi', dg))
    gamma = np.einsum('lm,kmi->lki', g_inv, lowered)
    h = second_fundamental_matrix(chart, u, frame.tangents, frame.cfg)
    nabla_h = dh - np.einsum('lki,lj->kij', gamma, h) - np.einsum('lkj,il->kij', gamma, h)
    e = frame.coordinate_frame
    measured = np.einsum('ka,ib,jc,kij->abc', e, e, e, nabla_h)
    S = frame.j_matrices()
    U = frame.U_coords
    expected = -c * (np.einsum('qab,qc->abc', S, U) + np.einsum('qb,qac->abc', U, S))
    return float(np.max(np.abs(measured - expected)))
