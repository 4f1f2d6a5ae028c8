import numpy as np
import pytest

from src.engine.dense import (
    fix_signs,
    gaussian_block,
    make_stream,
    orthonormalize,
    symmetric_eig,
)
from src.errors import DimensionMismatchError, NonFiniteError, RembedError


def test_stream_is_reproducible():
    a = gaussian_block(make_stream(7), 5, 3)
    b = gaussian_block(make_stream(7), 5, 3)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, gaussian_block(make_stream(8), 5, 3))


def test_gaussian_block_fills_column_major():
    wide = gaussian_block(make_stream(3), 4, 3)
    flat = gaussian_block(make_stream(3), 12, 1)[:, 0]
    np.testing.assert_array_equal(wide[:, 1], flat[4:8])


def test_gaussian_block_moments():
    z = gaussian_block(make_stream(0), 20000, 1)
    assert abs(z.mean()) < 0.05
    assert abs(z.std() - 1.0) < 0.05


def test_orthonormalize_identity():
    np.testing.assert_allclose(orthonormalize(np.eye(4), make_stream(0)), np.eye(4), atol=1e-15)


def test_orthonormalize_single_column():
    out = orthonormalize(np.array([[3.0], [4.0], [0.0]]), make_stream(0))
    np.testing.assert_allclose(out[:, 0], [0.6, 0.8, 0.0], atol=1e-15)


def test_orthonormalize_replaces_dependent_column():
    out = orthonormalize(np.array([[1.0, 1.0], [0.0, 0.0]]), make_stream(0))
    np.testing.assert_allclose(out[:, 0], [1.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(np.abs(out[:, 1]), [0.0, 1.0], atol=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_orthonormalize_random_block(seed):
    rng = make_stream(seed)
    Q = gaussian_block(rng, 40, 8)
    Q[:, 5] = Q[:, 1] + 2.0 * Q[:, 2]  # forced dependence
    out = orthonormalize(Q, rng)
    assert np.max(np.abs(out.T @ out - np.eye(8))) <= 1e-12
    # span of the first independent columns is kept
    proj = out[:, :2] @ (out[:, :2].T @ Q[:, :2])
    np.testing.assert_allclose(proj, Q[:, :2], atol=1e-12)


def test_orthonormalize_sign_convention():
    out = orthonormalize(np.array([[-1.0], [0.5]]), make_stream(0))
    assert out[0, 0] > 0


def test_orthonormalize_errors():
    with pytest.raises(DimensionMismatchError):
        orthonormalize(np.ones((2, 3)), make_stream(0))
    with pytest.raises(NonFiniteError):
        orthonormalize(np.array([[np.nan], [1.0]]), make_stream(0))


def test_fix_signs_ties_go_to_lowest_index():
    U = np.array([[-1.0], [1.0]])
    np.testing.assert_array_equal(fix_signs(U), [[1.0], [-1.0]])


def test_symmetric_eig_identity():
    eig = symmetric_eig(np.eye(2))
    np.testing.assert_allclose(eig.eigenvalues, [1.0, 1.0])


def test_symmetric_eig_two_by_two():
    eig = symmetric_eig(np.array([[2.0, 1.0], [1.0, 2.0]]))
    np.testing.assert_allclose(eig.eigenvalues, [3.0, 1.0], atol=1e-14)
    s = 1 / np.sqrt(2)
    np.testing.assert_allclose(np.abs(eig.eigenvectors[:, 0]), [s, s], atol=1e-14)
    np.testing.assert_allclose(np.abs(eig.eigenvectors[:, 1]), [s, s], atol=1e-14)
    assert eig.eigenvectors[0, 1] * eig.eigenvectors[1, 1] < 0


def test_symmetric_eig_diagonal():
    eig = symmetric_eig(np.diag([5.0, 2.0, 7.0]))
    np.testing.assert_allclose(eig.eigenvalues, [7.0, 5.0, 2.0], atol=1e-14)
    np.testing.assert_allclose(eig.eigenvectors, np.eye(3)[:, [2, 0, 1]], atol=1e-14)


@pytest.mark.parametrize("seed", range(5))
def test_symmetric_eig_reconstructs(seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((12, 12))
    S = A + A.T
    eig = symmetric_eig(S)
    assert np.all(np.diff(eig.eigenvalues) <= 0)
    V = eig.eigenvectors
    np.testing.assert_allclose(V @ np.diag(eig.eigenvalues) @ V.T, S, atol=1e-10)
    np.testing.assert_allclose(V.T @ V, np.eye(12), atol=1e-12)


def test_symmetric_eig_rejects_asymmetric():
    with pytest.raises(RembedError):
        symmetric_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(DimensionMismatchError):
        symmetric_eig(np.ones((2, 3)))
