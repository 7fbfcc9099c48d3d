"""Finite-difference Laplace-Beltrami operator on chart patches.

The sign is the geometer's one, non-negative on functions:

    Delta F = -(1/sqrt g) d_i (sqrt g g^{ij} d_j F)
            = -[ sum_a D^2F[e_a, e_a] + DF[b] ]

with ``e_a`` the columns of ``g^{-1/2}`` and ``b^j = (1/sqrt g) d_i(sqrt g g^{ij})``.
Second derivatives are taken along the directions ``e_a``; ``b`` comes from
finite differences of the induced metric.  Matrix-valued fields are
differentiated entrywise.
"""

import math

import numpy as np
from scipy.linalg import eigh

from .errors import ContractError, DomainError
from .finite_difference import FRAME_FD, LAYERED_FD, ORACLE_FD, FDConfig, derivative, partials, second_derivative


class MatrixField:
    """
    A smooth field along a chart, given by its evaluator.

    :param evaluator: callable mapping coordinates to an array.
    :param name: label used in reports.
    """

    def __init__(self, evaluator, name='field'):
        self.evaluator = evaluator
        self.name = name

    def __call__(self, u):
        return np.asarray(self.evaluator(np.asarray(u, dtype=float)), dtype=float)

    def __add__(self, other):
        return MatrixField(lambda u: self(u) + other(u), f"({self.name} + {other.name})")

    def __sub__(self, other):
        return MatrixField(lambda u: self(u) - other(u), f"({self.name} - {other.name})")

    def __mul__(self, scalar):
        return MatrixField(lambda u: scalar * self(u), f"{scalar:g}*{self.name}")

    __rmul__ = __mul__

    def __repr__(self):
        return f"MatrixField({self.name})"


def constant_field(value, name='constant'):
    value = np.asarray(value, dtype=float)
    return MatrixField(lambda u: value, name)


def position_field(chart):
    """The embedded position ``x(u) = Phi(z(u))``."""
    return MatrixField(chart.position, 'position')


def induced_metric(chart, u, cfg=FRAME_FD):
    """
    The induced metric ``g_ij = Re Psi(P_H d_i z, P_H d_j z)`` at ``u``.

    :rtype: MetricPatch
    """
    return chart.metric(u, cfg)


def _drift(chart, u, metric_cfg):
    """``b^j = (1/sqrt g) d_i (sqrt g g^{ij})``."""

    def density(v):
        patch = chart.metric(v, metric_cfg)
        return patch.sqrt_det * patch.g_inv

    change = partials(density, u, metric_cfg)
    return np.einsum('iij->j', change) / chart.metric(u, metric_cfg).sqrt_det


def _check_stencil(chart, u, directions, reach):
    for e in directions:
        for sign in (1.0, -1.0):
            if not chart.contains(u + sign * reach * e):
                raise DomainError(f"stencil of reach {reach:g} leaves the chart box at u = {np.array2string(u, precision=3)}")


def laplace_beltrami(field, chart, u, cfg=ORACLE_FD, metric_cfg=FRAME_FD):
    """
    Applies the Laplace-Beltrami operator to ``field`` at ``u``.

    :param field: the field to differentiate.
    :type field: MatrixField
    :param chart: any patch with ``metric`` and ``contains``.
    :param u: chart coordinates.
    :param cfg: FD settings for the field derivatives.
    :param metric_cfg: FD settings for the metric and its derivatives.
    :raises DomainError: if the stencil leaves the chart.
    """
    u = np.asarray(u, dtype=float)
    patch = chart.metric(u, metric_cfg)
    values, vectors = eigh(patch.g)
    directions = (vectors @ np.diag(values ** -0.5) @ vectors.T).T
    drift = _drift(chart, u, metric_cfg)
    speed = float(np.linalg.norm(drift))
    _check_stencil(chart, u, list(directions) + ([drift / speed] if speed > 0 else []), cfg.h)

    center = field(u)
    total = np.zeros_like(center)
    for e in directions:
        total = total + second_derivative(lambda t, e=e: field(u + t * e), cfg, center)
    if speed > 0:
        unit = drift / speed
        total = total + speed * derivative(lambda t: field(u + t * unit), cfg)
    return -total


def iterated_laplacian(field, chart, u, k, cfg=LAYERED_FD, closed_form=None):
    """
    ``Delta^k`` of a field at ``u``.

    With ``closed_form`` (a field equal to ``Delta^{k-1}`` of ``field``) one
    finite-difference Laplacian is applied to it.  Without it the
    Laplacians are nested, the innermost with the oracle settings.

    :param k: 1, 2 or 3.
    """
    if k not in (1, 2, 3):
        raise ContractError(f"iterated Laplacian supports k = 1, 2, 3, got {k}")
    if k == 1:
        return laplace_beltrami(field, chart, u, ORACLE_FD)
    if closed_form is not None:
        return laplace_beltrami(closed_form, chart, u, cfg)
    inner = MatrixField(lambda v: iterated_laplacian(field, chart, v, k - 1, cfg), f"Delta^{k - 1} {field.name}")
    return laplace_beltrami(inner, chart, u, cfg)


def convergence_order(field, chart, u, h=4e-2):
    """
    Observed order of the plain central stencil from steps ``h, h/2, h/4``.
    """
    estimates = [laplace_beltrami(field, chart, u, FDConfig(h=step, richardson_levels=0))
                 for step in (h, h / 2, h / 4)]
    coarse = np.max(np.abs(estimates[0] - estimates[1]))
    fine = np.max(np.abs(estimates[1] - estimates[2]))
    if fine == 0:
        return math.inf
    return math.log2(coarse / fine)


def relative_difference(measured, expected):
    """Largest entrywise difference, relative to the largest entry of ``expected``."""
    scale = max(float(np.max(np.abs(expected))), 1e-300)
    return float(np.max(np.abs(np.asarray(measured) - np.asarray(expected)))) / scale
