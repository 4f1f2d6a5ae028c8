# src/engine/dense.py
"""Small dense kernels: the seeded Gaussian stream, orthonormalisation and
the symmetric eigensolver used for Rayleigh–Ritz extraction.

Random stream
    ``make_stream(seed)`` is a Philox4x64-10 counter-based generator keyed by
    ``numpy.random.SeedSequence(seed)``. Gaussian blocks come from its
    uniforms through the Box–Muller transform and fill column-major, so
    column ``j`` of a random block uses stream positions
    ``[j·rows, (j+1)·rows)`` of the normal sequence.

Sign convention
    Every orthonormal column and eigenvector is flipped so that its
    largest-magnitude entry is positive (lowest index wins ties).
"""
from __future__ import annotations

import logging

import numpy as np
import scipy.linalg as la

from src.errors import DimensionMismatchError, NonFiniteError, RembedError
from src.models.SolverParams import EigResult

logger = logging.getLogger(__name__)

DEPENDENCE_RATIO = 1e-12
SYMMETRY_TOLERANCE = 1e-10
MAX_EIG_DIM = 2000
_MAX_REDRAWS = 8

RandomStream = np.random.Generator


def make_stream(seed: int) -> RandomStream:
    """Seeded counter-based stream; the only entropy source in the package."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed))))


def gaussian_block(rng: RandomStream, rows: int, cols: int) -> np.ndarray:
    """``rows × cols`` standard normals via Box–Muller, filled column-major."""
    count = rows * cols
    pairs = (count + 1) // 2
    u1 = 1.0 - rng.random(pairs)  # (0, 1], keeps log finite
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    normals = np.empty(2 * pairs, dtype=np.float64)
    normals[0::2] = radius * np.cos(angle)
    normals[1::2] = radius * np.sin(angle)
    return np.ascontiguousarray(normals[:count].reshape(cols, rows).T)


def fix_signs(U: np.ndarray) -> np.ndarray:
    """Flip columns so each column's largest-magnitude entry is positive."""
    if U.size == 0:
        return U
    lead = np.argmax(np.abs(U), axis=0)
    signs = np.sign(U[lead, np.arange(U.shape[1])])
    signs[signs == 0] = 1.0
    return U * signs


# ---------------------------------------------------------------------- #
def _project_out(basis: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Two Gram–Schmidt passes of ``v`` against the columns of ``basis``."""
    for _ in range(2):
        if basis.shape[1]:
            v = v - basis @ (basis.T @ v)
    return v


def orthonormalize(Q: np.ndarray, rng: RandomStream) -> np.ndarray:
    """Orthonormal basis with the same span as the independent columns of ``Q``.

    Columns are processed left to right. A column whose norm drops below
    ``DEPENDENCE_RATIO`` of its original norm after projection is replaced by
    a fresh random direction drawn from ``rng``.
    """
    Q = np.asarray(Q, dtype=np.float64)
    if Q.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D block, got shape {Q.shape}")
    c, m = Q.shape
    if m < 1 or c < m:
        raise DimensionMismatchError(f"cannot orthonormalize {m} columns in dimension {c}")
    if not np.all(np.isfinite(Q)):
        raise NonFiniteError("orthonormalize: block holds non-finite values")

    out = np.zeros((c, m), dtype=np.float64)
    replaced = 0
    for j in range(m):
        v = Q[:, j].copy()
        before = float(np.linalg.norm(v))
        v = _project_out(out[:, :j], v)
        after = float(np.linalg.norm(v))
        if before == 0.0 or after < DEPENDENCE_RATIO * before:
            v, after = _random_direction(out[:, :j], rng)
            replaced += 1
        out[:, j] = v / after
    if replaced:
        logger.debug("orthonormalize: replaced %d dependent column(s)", replaced)
    return fix_signs(out)


def _random_direction(basis: np.ndarray, rng: RandomStream) -> tuple[np.ndarray, float]:
    for _ in range(_MAX_REDRAWS):
        w = gaussian_block(rng, basis.shape[0], 1)[:, 0]
        before = float(np.linalg.norm(w))
        w = _project_out(basis, w)
        after = float(np.linalg.norm(w))
        if after >= DEPENDENCE_RATIO * before and after > 0.0:
            return w, after
    raise RembedError("could not draw a direction independent of the current basis")


# ---------------------------------------------------------------------- #
def symmetric_eig(S: np.ndarray) -> EigResult:
    """Eigenpairs of a symmetric matrix, eigenvalues nonincreasing.

    ``S`` is symmetrised as ``(S + Sᵀ)/2``; asymmetry larger than
    ``SYMMETRY_TOLERANCE`` (relative to ``max(1, max|S|)``) is an error.
    """
    S = np.asarray(S, dtype=np.float64)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {S.shape}")
    m = S.shape[0]
    if m > MAX_EIG_DIM:
        raise DimensionMismatchError(f"eigenproblem of size {m} exceeds {MAX_EIG_DIM}")
    if not np.all(np.isfinite(S)):
        raise NonFiniteError("symmetric_eig: matrix holds non-finite values")
    if m == 0:
        return EigResult(np.zeros(0), np.zeros((0, 0)))

    scale = max(1.0, float(np.max(np.abs(S))))
    asym = float(np.max(np.abs(S - S.T)))
    if asym > SYMMETRY_TOLERANCE * scale:
        raise RembedError(f"matrix is not symmetric (max |S - Sᵀ| = {asym:.3e})")

    sym = 0.5 * (S + S.T)
    values, vectors = la.eigh(sym)
    order = np.argsort(-values, kind="stable")
    return EigResult(values[order], fix_signs(vectors[:, order]))


def symmetrize(S: np.ndarray) -> np.ndarray:
    return 0.5 * (S + S.T)
