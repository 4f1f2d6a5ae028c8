import numpy as np
import pytest
import scipy.sparse as sp

from src.engine.oracle import (
    dense_ridge_solve,
    exact_embedding,
    largest_principal_angle,
    oracle_eigenvalues,
    principal_angles,
)
from src.errors import ConfigError, NotOrthonormalError, SingularSystemError


def test_exact_embedding_of_class_counts(one_hot_counts):
    X, Y = one_hot_counts
    V, values = exact_embedding(X, Y, 2, 0.0)
    np.testing.assert_allclose(values, [5.0, 3.0], atol=1e-12)
    np.testing.assert_allclose(V, np.eye(4)[:, :2], atol=1e-12)
    np.testing.assert_allclose(oracle_eigenvalues(X, Y, 0.0), [5.0, 3.0, 2.0, 1.0], atol=1e-12)


def test_huge_ridge_shrinks_operator(one_hot_counts):
    X, Y = one_hot_counts
    _, values = exact_embedding(X, Y, 4, 1e12)
    assert np.all(np.abs(values) <= 1e-10)


def test_singular_system_without_ridge():
    X = sp.csr_matrix(np.array([[1.0, 1.0], [2.0, 2.0], [0.0, 0.0]]))
    with pytest.raises(SingularSystemError, match="ridge"):
        dense_ridge_solve(X, np.ones(3), 0.0)
    # any positive ridge makes it solvable
    assert np.all(np.isfinite(dense_ridge_solve(X, np.ones(3), 1e-6)))


def test_exact_embedding_bounds(one_hot_counts):
    X, Y = one_hot_counts
    with pytest.raises(ConfigError):
        exact_embedding(X, Y, 5, 0.0)
    big = sp.identity(201, format="csr")
    with pytest.raises(ConfigError):
        exact_embedding(big, big, 1, 1.0)


def test_angles_between_equal_subspaces(rng):
    A, _ = np.linalg.qr(rng.standard_normal((8, 3)))
    assert largest_principal_angle(A, A) <= 1e-7


def test_angles_between_perpendicular_subspaces():
    A = np.eye(4)[:, :2]
    B = np.eye(4)[:, 2:]
    np.testing.assert_allclose(principal_angles(A, B), [np.pi / 2, np.pi / 2], atol=1e-12)


def test_angles_ignore_permutation_and_sign(rng):
    A, _ = np.linalg.qr(rng.standard_normal((10, 4)))
    B = A[:, [2, 0, 3, 1]] * np.array([1.0, -1.0, -1.0, 1.0])
    assert largest_principal_angle(A, B) <= 1e-7


def test_angles_are_symmetric_and_sorted(rng):
    A, _ = np.linalg.qr(rng.standard_normal((9, 3)))
    B, _ = np.linalg.qr(rng.standard_normal((9, 3)))
    ab, ba = principal_angles(A, B), principal_angles(B, A)
    np.testing.assert_allclose(ab, ba, atol=1e-12)
    assert np.all(np.diff(ab) >= 0)
    assert np.all((ab >= 0) & (ab <= np.pi / 2))


def test_known_angle():
    theta = 0.3
    A = np.array([[1.0], [0.0]])
    B = np.array([[np.cos(theta)], [np.sin(theta)]])
    assert largest_principal_angle(A, B) == pytest.approx(theta, abs=1e-12)


def test_non_orthonormal_input_is_rejected():
    A = np.array([[2.0], [0.0]])
    with pytest.raises(NotOrthonormalError):
        principal_angles(A, np.array([[1.0], [0.0]]))
