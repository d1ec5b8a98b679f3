import numpy as np
import pytest
from hypothesis import given

from qbild import ConfigError, combine, conj_symmetric, cradius, hausdorff, sweep
from qbild.geometry import distance_many, hull, support

from conftest import complex_matrices, seeds


def test_normal_matrix_is_eigenvalue_hull():
    ev = np.array([1 + 1j, -1, 0.5 - 2j])
    s = sweep(np.diag(ev), 720)
    assert hausdorff(s.inner, hull(ev)) <= 1e-12
    # a support-line polygon overshoots an edge of length L by about L * dtheta / 8
    L = np.max(np.abs(ev[:, None] - ev[None, :]))
    assert hausdorff(s.outer, hull(ev)) <= L * (2 * np.pi / 720) / 4


def test_jordan_block_is_disk():
    s = sweep(np.array([[0, 1], [0, 0]], dtype=complex), 720)
    r = np.abs(s.inner.vertices)
    assert np.allclose(r, 0.5, atol=1e-12)
    lo, hi = cradius(np.array([[0, 1], [0, 0]]))
    assert lo <= 0.5 + 1e-15 and 0.5 <= hi and hi - lo <= 1e-5


@given(complex_matrices(max_n=4))
def test_inner_inside_outer(A):
    s = sweep(A, 180)
    scale = 1 + np.abs(A).max()
    assert np.all(distance_many(s.outer, s.inner.vertices) <= 1e-9 * scale)
    # attained points lie on their support lines
    proj = (np.exp(-1j * s.thetas) * s.points).real
    assert np.allclose(proj, s.lambdas, atol=1e-9 * scale)


@given(complex_matrices(max_n=4), seeds)
def test_samples_inside_outer(A, seed):
    rng = np.random.default_rng(seed)
    n = A.shape[0]
    x = rng.standard_normal((200, n)) + 1j * rng.standard_normal((200, n))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    vals = np.einsum("bi,ij,bj->b", x.conj(), A, x)
    s = sweep(A, 90)
    assert np.all(distance_many(s.outer, vals) <= 1e-9 * (1 + np.abs(A).max()))


@given(complex_matrices(max_n=4))
def test_combine_support_is_max(A):
    a, b = sweep(A, 120), sweep(A.conj().T, 120)
    c = combine(a, b)
    assert np.array_equal(c.lambdas, np.maximum(a.lambdas, b.lambdas))
    for th in c.thetas[::10]:
        assert support(c.inner, th) == pytest.approx(max(support(a.inner, th), support(b.inner, th)))


def test_conj_symmetric():
    assert conj_symmetric(np.diag([1j, -1j, 0]))
    assert not conj_symmetric(np.diag([1 + 1j, 1 + 1j, -1j]))
    A = np.array([[1j, 0, 1], [0, 1j, 0], [0, 0, -1j]])
    assert conj_symmetric(A)


@pytest.mark.parametrize("m", [0, 4, 7])
def test_grid_rejected(m):
    with pytest.raises(ConfigError):
        sweep(np.eye(2), m)
