import numpy as np
import pytest
from hypothesis import given

from qbild import Definiteness, NotHermitian, QMatrix, canonical_form, classify, complexify, hermitian_eig
from qbild.linalg import jacobi_eigh
from qbild.quat import J, ONE

from conftest import complex_matrices, seeds


@given(complex_matrices(max_n=5))
def test_jacobi_matches_numpy(A):
    M = A + A.conj().T
    vals, V = hermitian_eig(M)
    ref = np.linalg.eigvalsh(M)[::-1]
    scale = 1 + np.abs(M).max()
    assert np.allclose(vals, ref, atol=1e-11 * scale)
    assert np.all(np.diff(vals) <= 1e-12 * scale)
    assert np.allclose(V.conj().T @ V, np.eye(len(vals)), atol=1e-11)
    assert np.allclose(M @ V, V * vals, atol=1e-10 * scale)


def test_jacobi_stack_and_degenerate():
    vals, V = jacobi_eigh(np.stack([np.eye(3), np.diag([1.0, 3.0, 2.0])]))
    assert vals.shape == (2, 3)
    assert np.allclose(vals[1], [3, 2, 1])
    assert np.allclose(vals[0], 1)


def test_non_hermitian_rejected():
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))


@given(complex_matrices(max_n=5))
def test_canonical_form_reconstructs(A):
    cf = canonical_form(A)
    r = cf.residuals()
    scale = 1 + np.abs(A).max()
    assert r["unitarity"] <= 1e-11
    assert r["reconstruction"] <= 1e-10 * scale
    assert r["hermitian"] == 0.0
    assert np.all(np.diff(cf.S) <= 0)


@given(complex_matrices(max_n=4))
def test_adjoint_form(A):
    cf = canonical_form(A).adjoint()
    scale = 1 + np.abs(A).max()
    assert cf.residuals()["reconstruction"] <= 1e-10 * scale
    assert np.all(np.diff(cf.S) <= 0)


def test_classify():
    assert classify([2.0, 1.0]) is Definiteness.POSITIVE_DEFINITE
    assert classify([1.0, 0.0]) is Definiteness.POSITIVE_SEMIDEFINITE
    assert classify([0.0, -1.0]) is Definiteness.NEGATIVE_SEMIDEFINITE
    assert classify([-1.0, -1.0]) is Definiteness.NEGATIVE_DEFINITE
    assert classify([1.0, -1.0]) is Definiteness.INDEFINITE
    assert classify([1e-14, 0.0]) is Definiteness.ZERO
    assert classify([1e-3, 0.0], eps_def=1e-2) is Definiteness.ZERO
    assert Definiteness.NEGATIVE_SEMIDEFINITE.is_definite and Definiteness.NEGATIVE_SEMIDEFINITE.is_negative
    assert not Definiteness.INDEFINITE.is_definite


@given(complex_matrices(max_n=4))
def test_complexify_complex_input(A):
    C = complexify(QMatrix.from_complex(A))
    n = A.shape[0]
    assert np.array_equal(C[:n, :n], A)
    assert np.array_equal(C[n:, n:], A.conj())
    assert not C[:n, n:].any()


def test_complexify_quaternion_entry():
    C = complexify(QMatrix.from_entries([[ONE, J], [0, ONE]]))
    assert C.shape == (4, 4)
    assert C[0, 3] == 1 and C[2, 1] == -1


@given(seeds)
def test_complexify_is_homomorphism(seed):
    rng = np.random.default_rng(seed)
    a = QMatrix(rng.standard_normal((2, 2, 4)))
    b = QMatrix(rng.standard_normal((2, 2, 4)))
    from qbild.quat import qmul_arrays
    ab = QMatrix(qmul_arrays(a.data[:, :, None, :], b.data[None, :, :, :]).sum(axis=1))
    assert np.allclose(complexify(ab), complexify(a) @ complexify(b), atol=1e-10)
