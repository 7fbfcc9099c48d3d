import numpy as np
import pytest

from pychen.errors import DimensionError, NotOnQuadricError
from pychen.quaternion import (
    FormSignature, QMatrix, QVector, Quaternion, hermitian_form, projector, qmul, trace_metric,
)

I, J, K = Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0), Quaternion(0, 0, 0, 1)


def unit_lift(m, c, seed=0):
    rng = np.random.default_rng(seed)
    if c > 0:
        z = rng.normal(size=(m + 1, 4))
        return QVector(z / np.linalg.norm(z), c)
    space = 0.5 * rng.normal(size=(m, 4))
    head = rng.normal(size=4)
    head *= np.sqrt(1.0 + np.sum(space ** 2)) / np.linalg.norm(head)
    return QVector(np.vstack([head, space]), c)


def test_hamilton_products():
    assert qmul(I, J) == K
    assert qmul(J, I) == -K
    assert qmul(J, K) == I
    assert qmul(I, I) == Quaternion(-1.0)


def test_norm_is_multiplicative():
    a, b = Quaternion(1, -2, 0.5, 3), Quaternion(-0.3, 0.7, 2, 1)
    assert (a * b).norm() == pytest.approx(a.norm() * b.norm(), rel=1e-14)
    assert (a * a.conj()).is_close(Quaternion(a.norm() ** 2))


@pytest.mark.parametrize('c', [1, -1])
def test_form_is_real_on_the_quadric(c):
    z = unit_lift(2, c)
    value = hermitian_form(z, z)
    assert value.w == pytest.approx(c, abs=1e-12)
    np.testing.assert_allclose([value.x, value.y, value.z], 0.0, atol=1e-12)


def test_basis_vector_of_hyperbolic_form_is_timelike():
    e0 = QVector.basis(0, 2, -1)
    assert hermitian_form(e0, e0).w == -1.0


@pytest.mark.parametrize('c', [1, -1])
def test_projector_is_an_idempotent_of_unit_trace(c):
    P = projector(unit_lift(3, c, seed=4))
    np.testing.assert_allclose((P @ P).entries, P.entries, atol=1e-12)
    assert P.real_trace() == pytest.approx(1.0, abs=1e-12)
    assert P.is_hermitian()
    assert trace_metric(P, P) == pytest.approx(c / 2.0, abs=1e-12)


def test_projector_ignores_the_fiber():
    z = unit_lift(2, 1, seed=7)
    q = Quaternion(0.5, 0.5, -0.5, 0.5)
    np.testing.assert_allclose(projector(z.left_mul(q)).entries, projector(z).entries, atol=1e-12)


def test_trace_metric_with_identity():
    m = 2
    P = projector(unit_lift(m, 1, seed=2))
    assert trace_metric(QMatrix.identity(m, 1), P) == pytest.approx(0.5)


def test_projector_off_the_quadric():
    with pytest.raises(NotOnQuadricError):
        projector(QVector(2.0 * np.eye(3, 4), 1))


def test_shape_and_signature_errors():
    with pytest.raises(DimensionError):
        QVector(np.zeros((3, 3)), 1)
    with pytest.raises(DimensionError):
        hermitian_form(QVector.basis(0, 2, 1), QVector.basis(0, 3, 1))
    with pytest.raises(DimensionError):
        FormSignature(0, 2)
    with pytest.raises(DimensionError):
        FormSignature(1, 1)
    assert FormSignature(-1, 3).n == 11
