# src/engine/oracle.py
"""Brute-force dense references for tests and the ``verify`` command.

Everything here forms matrices explicitly and is limited to small problems.
"""
from __future__ import annotations

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp

from src.engine.dense import symmetric_eig, symmetrize
from src.errors import ConfigError, DimensionMismatchError, NotOrthonormalError, SingularSystemError

MAX_DENSE_DIM = 200
ORTHONORMAL_TOLERANCE = 1e-8


def _dense(A) -> np.ndarray:
    return A.toarray() if sp.issparse(A) else np.asarray(A, dtype=np.float64)


def _check_size(*arrays: np.ndarray) -> None:
    for arr in arrays:
        if max(arr.shape) > MAX_DENSE_DIM:
            raise ConfigError(f"oracle limited to dimensions <= {MAX_DENSE_DIM}, got {arr.shape}")


def dense_ridge_solve(X, B, ridge: float) -> np.ndarray:
    """Direct solution of ``(XᵀX + λI)W = XᵀB``."""
    X, B = _dense(X), _dense(B)
    if B.ndim == 1:
        B = B[:, None]
    if X.shape[0] != B.shape[0]:
        raise DimensionMismatchError(f"X has {X.shape[0]} rows, B has {B.shape[0]}")
    d = X.shape[1]
    if ridge == 0.0 and np.linalg.matrix_rank(X) < d:
        raise SingularSystemError(
            "XᵀX is singular because X is rank-deficient; use a ridge λ > 0"
        )
    G = X.T @ X + ridge * np.eye(d)
    return la.solve(G, X.T @ B, assume_a="sym")


def projection_operator(X, Y, ridge: float) -> np.ndarray:
    """``Yᵀ·X·(XᵀX+λI)⁻¹·Xᵀ·Y``, symmetrised."""
    X, Y = _dense(X), _dense(Y)
    return symmetrize(Y.T @ (X @ dense_ridge_solve(X, Y, ridge)))


def exact_embedding(X, Y, k: int, ridge: float) -> tuple[np.ndarray, np.ndarray]:
    """Top-``k`` eigenvectors and eigenvalues of the explicitly formed operator."""
    X, Y = _dense(X), _dense(Y)
    _check_size(X, Y)
    if not 1 <= k <= Y.shape[1]:
        raise ConfigError(f"k must lie in [1, {Y.shape[1]}], got {k}")
    top = symmetric_eig(projection_operator(X, Y, ridge)).top(k)
    return top.eigenvectors, top.eigenvalues


def oracle_eigenvalues(X, Y, ridge: float) -> np.ndarray:
    """All eigenvalues of the operator, nonincreasing."""
    X, Y = _dense(X), _dense(Y)
    _check_size(X, Y)
    return symmetric_eig(projection_operator(X, Y, ridge)).eigenvalues


def projected_targets(X, Y, V: np.ndarray, ridge: float) -> np.ndarray:
    """Fitted embedded targets ``X·(XᵀX+λI)⁻¹·Xᵀ·Y·V`` (n×k)."""
    X, Y = _dense(X), _dense(Y)
    return X @ dense_ridge_solve(X, Y @ V, ridge)


def rank_constrained_fit(X, Y, V: np.ndarray, ridge: float) -> np.ndarray:
    """Rank-k fitted label scores ``P_X·Y·V·Vᵀ`` (n×c)."""
    return projected_targets(X, Y, V, ridge) @ V.T


# ---------------------------------------------------------------------- #
def _check_orthonormal(A: np.ndarray, name: str) -> None:
    gram = A.T @ A
    err = float(np.max(np.abs(gram - np.eye(A.shape[1])))) if gram.size else 0.0
    if err > ORTHONORMAL_TOLERANCE:
        raise NotOrthonormalError(f"{name} is not orthonormal (‖AᵀA − I‖_max = {err:.3e})")


def principal_angles(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Principal angles in radians, nondecreasing, within ``[0, π/2]``."""
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.ndim != 2 or B.ndim != 2 or A.shape[0] != B.shape[0]:
        raise DimensionMismatchError(f"bases of shape {A.shape} and {B.shape} do not conform")
    _check_orthonormal(A, "A")
    _check_orthonormal(B, "B")
    angles = np.sort(la.subspace_angles(A, B))
    return np.clip(angles, 0.0, np.pi / 2)


def largest_principal_angle(A: np.ndarray, B: np.ndarray) -> float:
    angles = principal_angles(A, B)
    return float(angles[-1]) if angles.size else 0.0
