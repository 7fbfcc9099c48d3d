"""Central finite differences with Richardson extrapolation.

All derivatives in pychen go through this module: the stencil is the
second-order central one, refined by halving the step ``richardson_levels``
times and eliminating the even error terms.
"""

from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError, ContractError

MIN_STEP = 1e-5
MAX_STEP = 1e-1


@dataclass(frozen=True)
class FDConfig:
    """
    Finite-difference settings.

    :param h: largest step; successive levels use ``h/2, h/4, ...``.
    :param richardson_levels: number of extrapolation levels (0 = plain stencil).
    :param order: order of the central stencil; only 2 is supported.
    """
    h: float = 1e-3
    richardson_levels: int = 1
    order: int = 2

    def __post_init__(self):
        if not MIN_STEP <= self.h <= MAX_STEP:
            raise ConfigError(f"finite-difference step {self.h} outside [{MIN_STEP}, {MAX_STEP}]")
        if int(self.richardson_levels) != self.richardson_levels or not 0 <= self.richardson_levels <= 4:
            raise ConfigError(f"richardson_levels must be an integer in 0..4, got {self.richardson_levels}")
        if self.order != 2:
            raise ConfigError(f"only the second-order central stencil is available, got order {self.order}")

    def steps(self):
        return [self.h / 2 ** level for level in range(self.richardson_levels + 1)]

    def with_step(self, h):
        return replace(self, h=h)

    def plain(self):
        """The same step without extrapolation."""
        return replace(self, richardson_levels=0)


# Laplacian of the position field
ORACLE_FD = FDConfig(h=1e-3, richardson_levels=1)
# Laplacians of closed-form fields, which carry the frame's FD noise
LAYERED_FD = FDConfig(h=1e-2, richardson_levels=1)
# lift derivatives, normals and metric derivatives
FRAME_FD = FDConfig(h=1e-2, richardson_levels=2)
# second variations of the embedding; rounding, not truncation, limits the step
SIGMA_FD = FDConfig(h=5e-2, richardson_levels=3)


def richardson_extrapolate(base_values, p, r=2.0):
    """
    Richardson extrapolation on approximations computed with steps decreasing
    by the factor ``r``.

    :param base_values: approximations, coarsest first.
    :param p: order of the leading error term.
    :param r: step reduction factor.
    :returns: the extrapolated value (array or float).
    """
    n = len(base_values)
    if n < 2:
        raise ContractError(f"richardson_extrapolate needs at least two base values, got {n}")
    vals = [np.asarray(v, dtype=float) for v in base_values]
    for j in range(1, n):
        factor = r ** (p * j)
        for k in range(n - 1, j - 1, -1):
            vals[k] = (factor * vals[k] - vals[k - 1]) / (factor - 1.0)
    result = vals[-1]
    return float(result) if result.ndim == 0 else result


def _extrapolated(stencil, cfg):
    values = [stencil(h) for h in cfg.steps()]
    if len(values) == 1:
        return np.asarray(values[0], dtype=float)
    return np.asarray(richardson_extrapolate(values, p=cfg.order), dtype=float)


def derivative(curve, cfg):
    """
    First derivative at ``t = 0`` of a curve ``t -> array``.

    :param curve: callable of a real parameter.
    :param cfg: FD settings.
    :type cfg: FDConfig
    """
    return _extrapolated(lambda h: (np.asarray(curve(h)) - np.asarray(curve(-h))) / (2.0 * h), cfg)


def second_derivative(curve, cfg, center=None):
    """
    Second derivative at ``t = 0`` of a curve ``t -> array``.

    :param center: ``curve(0)`` if already known.
    """
    mid = np.asarray(curve(0.0) if center is None else center, dtype=float)
    return _extrapolated(
        lambda h: (np.asarray(curve(h)) - 2.0 * mid + np.asarray(curve(-h))) / (h * h), cfg)


def partials(func, u, cfg):
    """
    All coordinate partial derivatives of ``func`` at ``u``.

    :returns: array of shape ``(n,) + shape(func(u))``.
    """
    u = np.asarray(u, dtype=float)
    basis = np.eye(u.size)
    return np.stack([derivative(lambda t, e=e: func(u + t * e), cfg) for e in basis])
