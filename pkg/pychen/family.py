"""Model hypersurface families and their principal-curvature table.

Families:
  * ``P1k`` tubes of radius r about a totally geodesic HP^k in HP^m
    (k = 0 and k = m-1 are geodesic spheres),
  * ``P2`` tubes about CP^m in HP^m,
  * ``H1k`` tubes about HH^k in HH^m (k = 0, m-1 geodesic spheres),
  * ``H2`` tubes about CH^m in HH^m,
  * ``H3`` horospheres in HH^m.
"""

import math
from collections import namedtuple

from .errors import SpecError

FAMILIES = ('P1k', 'P2', 'H1k', 'H2', 'H3')
_BY_LOWER = {name.lower(): name for name in FAMILIES}

PrincipalCurvature = namedtuple('PrincipalCurvature', ['value', 'multiplicity', 'block'])


def canonical_family(name):
    key = str(name).strip().lower()
    if key not in _BY_LOWER:
        raise SpecError(f"unknown family '{name}' (expected one of {', '.join(FAMILIES)})")
    return _BY_LOWER[key]


def radius_interval(family):
    """Open interval of legal radii, or None for horospheres."""
    family = canonical_family(family)
    if family == 'P1k':
        return (0.0, math.pi / 2)
    if family == 'P2':
        return (0.0, math.pi / 4)
    if family in ('H1k', 'H2'):
        return (0.0, math.inf)
    return None


def has_core_index(family):
    return canonical_family(family) in ('P1k', 'H1k')


class FamilySpec:
    """
    Parameters of one model hypersurface.

    :param family: one of P1k, P2, H1k, H2, H3 (case-insensitive).
    :param m: quaternionic dimension, at least 2.
    :param k: core dimension for P1k/H1k, ``0 <= k <= m-1``; ignored otherwise.
    :param r: tube radius; ignored for H3.
    :raises SpecError: on illegal parameters.
    """

    def __init__(self, family, m, k=None, r=None):
        self.family = canonical_family(family)
        if isinstance(m, bool) or int(m) != m or m < 2:
            raise SpecError(f"m must be an integer >= 2, got {m}")
        self.m = int(m)
        if has_core_index(self.family):
            if k is None or int(k) != k or not 0 <= k <= self.m - 1:
                raise SpecError(f"{self.family} needs 0 <= k <= m-1 = {self.m - 1}, got k = {k}")
            self.k = int(k)
        else:
            self.k = None
        interval = radius_interval(self.family)
        if interval is None:
            self.r = None
        else:
            if r is None:
                raise SpecError(f"{self.family} needs a radius")
            r = float(r)
            lo, hi = interval
            if not (lo < r < hi) or not math.isfinite(r):
                raise SpecError(f"radius {r} outside the legal interval ({lo}, {hi}) of {self.family}")
            self.r = r

    @property
    def c(self):
        return 1 if self.family.startswith('P') else -1

    @property
    def n(self):
        return 4 * self.m - 1

    @property
    def l(self):
        return None if self.k is None else self.m - self.k - 1

    @property
    def K(self):
        return 4 * self.k + 3

    @property
    def L(self):
        return 4 * self.l + 3

    @property
    def is_sphere(self):
        return self.k is not None and self.k in (0, self.m - 1)

    @property
    def klass(self):
        """``'A1'`` geodesic spheres, ``'A2'`` other tubes about HQ^k, ``'B'`` tubes about CQ^m, ``'A0'`` horospheres."""
        if self.family == 'H3':
            return 'A0'
        if self.family in ('P2', 'H2'):
            return 'B'
        return 'A1' if self.is_sphere else 'A2'

    def mu_nu(self):
        """The two D-eigenvalues of a tube: (V-block value, U-block value)."""
        r = self.r
        if self.c > 0:
            return 1.0 / math.tan(r), -math.tan(r)
        return 1.0 / math.tanh(r), math.tanh(r)

    @property
    def sphere_mu(self):
        """The single D-eigenvalue of a geodesic sphere."""
        if not self.is_sphere:
            raise SpecError(f"{self} is not a geodesic sphere")
        mu, nu = self.mu_nu()
        return mu if self.k == 0 else nu

    def principal_curvatures(self):
        """
        The principal-curvature table row of this hypersurface.

        :returns: list of PrincipalCurvature(value, multiplicity, block) with block 'D' or 'Dperp'.
        """
        m = self.m
        if self.family == 'H3':
            rows = [(1.0, 4 * (m - 1), 'D'), (2.0, 3, 'Dperp')]
        else:
            mu, nu = self.mu_nu()
            r = self.r
            if self.family in ('P1k', 'H1k'):
                alpha = 2.0 / math.tan(2 * r) if self.c > 0 else 2.0 / math.tanh(2 * r)
                rows = [(mu, 4 * self.l, 'D'), (nu, 4 * self.k, 'D'), (alpha, 3, 'Dperp')]
            else:
                if self.c > 0:
                    alpha1, alpha2 = 2.0 / math.tan(2 * r), -2.0 * math.tan(2 * r)
                else:
                    alpha1, alpha2 = 2.0 / math.tanh(2 * r), 2.0 * math.tanh(2 * r)
                rows = [(mu, 2 * (m - 1), 'D'), (nu, 2 * (m - 1), 'D'),
                        (alpha1, 1, 'Dperp'), (alpha2, 2, 'Dperp')]
        return [PrincipalCurvature(v, mult, block) for v, mult, block in rows if mult > 0]

    def alphas(self):
        """The three D-perp eigenvalues, the simple one first."""
        out = []
        for row in self.principal_curvatures():
            if row.block == 'Dperp':
                out.extend([row.value] * row.multiplicity)
        return out

    def taus(self):
        """D-eigenvalues with multiplicities."""
        return [(row.value, row.multiplicity) for row in self.principal_curvatures() if row.block == 'D']

    def key(self):
        return (self.family, self.m, -1 if self.k is None else self.k, -1.0 if self.r is None else self.r)

    def params(self):
        return {'m': self.m, 'k': self.k, 'radius': self.r}

    def __eq__(self, other):
        return isinstance(other, FamilySpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        parts = [f"m={self.m}"]
        if self.k is not None:
            parts.append(f"k={self.k}")
        if self.r is not None:
            parts.append(f"r={self.r:.12g}")
        return f"{self.family}({', '.join(parts)})"
