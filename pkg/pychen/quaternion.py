"""Quaternion scalars, vectors and matrices over the signed Hermitian form.

Quaternions are stored as four binary64 reals ``(w, x, y, z)`` for
``w + xi + yj + zk``.  Vectors of ``H^{m+1}`` and matrices over ``H`` are
numpy arrays whose trailing axis has length 4; the classes below wrap them
together with the signature ``c`` at the public boundary, while the
``*_array`` kernels work on raw arrays and broadcast over leading axes.

Conventions: left scalar multiplication ``z -> q z`` (the fiber action),
``Psi_c(z, w) = sum_a eta_a z_a conj(w_a)`` with ``eta = (c, 1, ..., 1)`` and
the embedding matrix ``Phi(z)_ij = eps_j conj(z_i) z_j`` with
``eps = (1, c, ..., c)``.
"""

import numpy as np

from .errors import DimensionError, NotOnQuadricError

QUADRIC_TOL = 1e-10

_CONJ = np.array([1.0, -1.0, -1.0, -1.0])

# rows: 1, i, j, k
UNITS = np.eye(4)


def qmul_array(a, b):
    """
    Hamilton product of quaternion arrays, broadcasting over leading axes.

    :param a: array with trailing axis 4.
    :param b: array with trailing axis 4.
    :returns: array with trailing axis 4.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a0, a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    b0, b1, b2, b3 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack([
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ], axis=-1)


def qconj_array(a):
    return np.asarray(a, dtype=float) * _CONJ


def left_mul_array(q, z):
    """Multiplies every entry of the quaternion vector ``z`` by ``q`` from the left."""
    return qmul_array(np.broadcast_to(np.asarray(q, dtype=float), np.shape(z)), z)


def eta(m, c):
    """Weights of the Hermitian form: ``(c, 1, ..., 1)``."""
    weights = np.ones(m + 1)
    weights[0] = c
    return weights


def epsilon(m, c):
    """Column weights of the embedding matrix: ``(1, c, ..., c)``."""
    weights = np.full(m + 1, float(c))
    weights[0] = 1.0
    return weights


def form_array(z, w, c):
    """Psi_c(z, w) for raw vector arrays of shape ``(..., m+1, 4)``."""
    z = np.asarray(z, dtype=float)
    weights = eta(z.shape[-2] - 1, c)
    return np.einsum('a,...aq->...q', weights, qmul_array(z, qconj_array(w)))


def real_form_array(z, w, c):
    """Re Psi_c(z, w), the real metric ``g_c`` on ``H^{m+1}``."""
    z = np.asarray(z, dtype=float)
    weights = eta(z.shape[-2] - 1, c)
    return np.einsum('a,...aq,...aq->...', weights, z, np.asarray(w, dtype=float))


def real_gram(m, c):
    """Diagonal of the real Gram matrix of ``Re Psi_c`` on flattened vectors."""
    return np.repeat(eta(m, c), 4)


def bracket_array(a, b, c):
    """The matrix ``eps_j conj(a_i) b_j`` built from two vectors."""
    a = np.asarray(a, dtype=float)
    weights = epsilon(a.shape[-2] - 1, c)
    outer = qmul_array(qconj_array(a)[..., :, None, :], np.asarray(b, dtype=float)[..., None, :, :])
    return outer * weights[:, None]


def projector_array(z, c):
    return bracket_array(z, z, c)


def qmatmul_array(s, t):
    return qmul_array(s[..., :, :, None, :], t[..., None, :, :, :]).sum(axis=-3)


def trace_metric_array(s, t, c):
    """(c/2) Re tr(S T) for raw matrix arrays, broadcasting over leading axes."""
    s = np.asarray(s, dtype=float)
    tt = np.swapaxes(np.asarray(t, dtype=float), -2, -3)
    real = np.sum(s[..., 0] * tt[..., 0], axis=(-1, -2)) - np.sum(s[..., 1:] * tt[..., 1:], axis=(-1, -2, -3))
    return 0.5 * c * real


def identity_array(m):
    eye = np.zeros((m + 1, m + 1, 4))
    eye[np.arange(m + 1), np.arange(m + 1), 0] = 1.0
    return eye


class Quaternion:
    """
    A quaternion ``w + xi + yj + zk``.
    """
    __slots__ = ('w', 'x', 'y', 'z')

    def __init__(self, w=0.0, x=0.0, y=0.0, z=0.0):
        self.w = float(w)
        self.x = float(x)
        self.y = float(y)
        self.z = float(z)

    @classmethod
    def from_array(cls, arr):
        w, x, y, z = np.asarray(arr, dtype=float)
        return cls(w, x, y, z)

    def as_array(self):
        return np.array([self.w, self.x, self.y, self.z])

    def conj(self):
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self):
        return float(np.linalg.norm(self.as_array()))

    def is_close(self, other, tol=1e-12):
        return bool(np.max(np.abs(self.as_array() - _as_quaternion(other).as_array())) <= tol)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return qmul(self, other)
        return Quaternion.from_array(self.as_array() * float(other))

    def __rmul__(self, other):
        return Quaternion.from_array(self.as_array() * float(other))

    def __add__(self, other):
        return Quaternion.from_array(self.as_array() + _as_quaternion(other).as_array())

    __radd__ = __add__

    def __sub__(self, other):
        return Quaternion.from_array(self.as_array() - _as_quaternion(other).as_array())

    def __neg__(self):
        return Quaternion.from_array(-self.as_array())

    def __eq__(self, other):
        if not isinstance(other, (Quaternion, int, float)):
            return NotImplemented
        return bool(np.array_equal(self.as_array(), _as_quaternion(other).as_array()))

    def __hash__(self):
        return hash((self.w, self.x, self.y, self.z))

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


def _as_quaternion(value):
    if isinstance(value, Quaternion):
        return value
    return Quaternion(float(value))


def qmul(a, b):
    """
    Hamilton product with the ``ij = k`` convention.

    :param a: left factor.
    :type a: Quaternion
    :param b: right factor.
    :type b: Quaternion
    :returns: the product ``ab``.
    :rtype: Quaternion
    """
    return Quaternion.from_array(qmul_array(a.as_array(), b.as_array()))


class FormSignature:
    """
    Signature data of the space form: ``c = +1`` (projective) or ``c = -1``
    (hyperbolic) and the quaternionic dimension ``m``.
    """

    def __init__(self, c, m):
        if c not in (1, -1):
            raise DimensionError(f"signature c must be +1 or -1, got {c}")
        if int(m) != m or m < 2:
            raise DimensionError(f"quaternionic dimension m must be an integer >= 2, got {m}")
        self.c = int(c)
        self.m = int(m)

    @property
    def n(self):
        """Real dimension ``4m - 1`` of a hypersurface."""
        return 4 * self.m - 1

    @property
    def eta(self):
        return eta(self.m, self.c)

    @property
    def epsilon(self):
        return epsilon(self.m, self.c)

    def __eq__(self, other):
        return isinstance(other, FormSignature) and (self.c, self.m) == (other.c, other.m)

    def __hash__(self):
        return hash((self.c, self.m))

    def __repr__(self):
        return f"FormSignature(c={self.c}, m={self.m})"


class QVector:
    """
    A vector of ``H^{m+1}`` carrying the signature ``c`` of its form.

    :param entries: array of shape ``(m+1, 4)`` or a sequence of Quaternion.
    :param c: signature, +1 or -1.
    """

    def __init__(self, entries, c):
        if len(entries) and isinstance(entries[0], Quaternion):
            entries = [q.as_array() for q in entries]
        arr = np.array(entries, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 4:
            raise DimensionError(f"a QVector needs entries of shape (m+1, 4), got {arr.shape}")
        if c not in (1, -1):
            raise DimensionError(f"signature c must be +1 or -1, got {c}")
        arr.setflags(write=False)
        self.entries = arr
        self.c = int(c)

    @classmethod
    def basis(cls, a, m, c):
        entries = np.zeros((m + 1, 4))
        entries[a, 0] = 1.0
        return cls(entries, c)

    @property
    def m(self):
        return self.entries.shape[0] - 1

    @property
    def signature(self):
        return FormSignature(self.c, self.m)

    def __getitem__(self, a):
        return Quaternion.from_array(self.entries[a])

    def __len__(self):
        return self.entries.shape[0]

    def left_mul(self, q):
        """Fiber action ``z -> q z``."""
        return QVector(left_mul_array(_as_quaternion(q).as_array(), self.entries), self.c)

    def _check(self, other):
        if not isinstance(other, QVector):
            raise DimensionError(f"expected a QVector, got {type(other).__name__}")
        if other.entries.shape != self.entries.shape or other.c != self.c:
            raise DimensionError(
                f"QVector mismatch: length {len(self)} (c={self.c}) vs {len(other)} (c={other.c})")

    def __add__(self, other):
        self._check(other)
        return QVector(self.entries + other.entries, self.c)

    def __sub__(self, other):
        self._check(other)
        return QVector(self.entries - other.entries, self.c)

    def __mul__(self, scalar):
        return QVector(self.entries * float(scalar), self.c)

    __rmul__ = __mul__

    def __neg__(self):
        return QVector(-self.entries, self.c)

    def __repr__(self):
        return f"QVector(m={self.m}, c={self.c})"


class QMatrix:
    """
    An ``(m+1) x (m+1)`` quaternion matrix in the ambient space of the
    embedding, carrying the signature ``c``.
    """

    def __init__(self, entries, c):
        arr = np.array(entries, dtype=float)
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 4:
            raise DimensionError(f"a QMatrix needs entries of shape (m+1, m+1, 4), got {arr.shape}")
        if c not in (1, -1):
            raise DimensionError(f"signature c must be +1 or -1, got {c}")
        arr.setflags(write=False)
        self.entries = arr
        self.c = int(c)

    @classmethod
    def identity(cls, m, c):
        return cls(identity_array(m), c)

    @property
    def m(self):
        return self.entries.shape[0] - 1

    def __getitem__(self, index):
        return Quaternion.from_array(self.entries[index])

    def _check(self, other):
        if not isinstance(other, QMatrix):
            raise DimensionError(f"expected a QMatrix, got {type(other).__name__}")
        if other.entries.shape != self.entries.shape or other.c != self.c:
            raise DimensionError(
                f"QMatrix mismatch: size {self.m + 1} (c={self.c}) vs {other.m + 1} (c={other.c})")

    def __add__(self, other):
        self._check(other)
        return QMatrix(self.entries + other.entries, self.c)

    def __sub__(self, other):
        self._check(other)
        return QMatrix(self.entries - other.entries, self.c)

    def __mul__(self, scalar):
        return QMatrix(self.entries * float(scalar), self.c)

    __rmul__ = __mul__

    def __neg__(self):
        return QMatrix(-self.entries, self.c)

    def __matmul__(self, other):
        self._check(other)
        return QMatrix(qmatmul_array(self.entries, other.entries), self.c)

    def real_trace(self):
        return float(np.trace(self.entries[..., 0]))

    def max_abs(self):
        return float(np.max(np.abs(self.entries)))

    def is_hermitian(self, tol=1e-12):
        """Hermitian with respect to Psi_c: ``eps_i conj(S_ij) = eps_j S_ji``."""
        weights = epsilon(self.m, self.c)
        lhs = weights[:, None, None] * qconj_array(self.entries)
        rhs = weights[None, :, None] * np.swapaxes(self.entries, 0, 1)
        return bool(np.max(np.abs(lhs - rhs)) <= tol)

    def __repr__(self):
        return f"QMatrix(m={self.m}, c={self.c})"


def hermitian_form(z, w):
    """
    Evaluates the Hermitian form ``Psi_c(z, w) = c z_0 conj(w_0) + sum_j z_j conj(w_j)``.

    :param z: first argument.
    :type z: QVector
    :param w: second argument, same length and signature.
    :type w: QVector
    :returns: the quaternion ``Psi_c(z, w)``.
    :rtype: Quaternion
    """
    z._check(w)
    return Quaternion.from_array(form_array(z.entries, w.entries, z.c))


def trace_metric(s, t):
    """
    The ambient metric ``<S, T> = (c/2) Re tr(S T)``.

    :param s: first matrix.
    :type s: QMatrix
    :param t: second matrix, matching size and signature.
    :type t: QMatrix
    :rtype: float
    """
    s._check(t)
    return float(trace_metric_array(s.entries, t.entries, s.c))


def projector(z):
    """
    The Hermitian projector ``Phi([z])`` of a quadric point.

    :param z: lift with ``Psi_c(z, z) = c``.
    :type z: QVector
    :returns: the matrix with entries ``eps_j conj(z_i) z_j``.
    :rtype: QMatrix
    :raises NotOnQuadricError: if ``Psi_c(z, z)`` deviates from ``c``.
    """
    check_on_quadric(z.entries, z.c)
    return QMatrix(projector_array(z.entries, z.c), z.c)


def check_on_quadric(z, c, tol=QUADRIC_TOL):
    value = form_array(z, z, c)
    defect = abs(value[0] - c) + float(np.max(np.abs(value[1:])))
    if defect > tol:
        raise NotOnQuadricError(f"Psi(z, z) = {value[0]:.3e} deviates from c = {c} by {defect:.3e}")
