# src/engine/sparse_core.py
"""CSR helpers and the two sparse × dense-block products every solve is built on.

Both products split work into fixed-size row blocks. The block size never
depends on the worker count, and partial sums of ``spmm_t`` are merged in
block order, so results are bit-identical for any ``workers`` value.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional

import numpy as np
import scipy.sparse as sp

from src.errors import DimensionMismatchError, NonFiniteError, RembedError

logger = logging.getLogger(__name__)

ROW_BLOCK = 4096

_default_workers = 1


def configure_workers(workers: int) -> None:
    """Set the worker cap used when a kernel is called without ``workers``."""
    global _default_workers
    if workers < 1:
        raise RembedError(f"worker count must be >= 1, got {workers}")
    _default_workers = int(workers)
    logger.debug("sparse kernels limited to %d worker(s)", _default_workers)


def default_workers() -> int:
    """Worker cap set by ``configure_workers`` (1 until then)."""
    return _default_workers


# ---------------------------------------------------------------------- #
def as_csr(A, n_cols: Optional[int] = None) -> sp.csr_matrix:
    """Return ``A`` as a canonical float64 CSR matrix.

    Duplicates are summed and column indices sorted within rows. Dense input
    is accepted for convenience (tests, oracles).
    """
    if sp.issparse(A):
        out = sp.csr_matrix(A, dtype=np.float64, copy=True)
    else:
        arr = np.asarray(A, dtype=np.float64)
        if arr.ndim != 2:
            raise DimensionMismatchError(f"expected a 2-D matrix, got shape {arr.shape}")
        out = sp.csr_matrix(arr)
    out.sum_duplicates()
    out.sort_indices()
    if n_cols is not None and out.shape[1] != n_cols:
        raise DimensionMismatchError(f"expected {n_cols} columns, got {out.shape[1]}")
    return out


def check_csr(A: sp.csr_matrix) -> None:
    """Raise unless ``A`` satisfies the CSR invariants this package relies on."""
    if not sp.isspmatrix_csr(A):
        raise RembedError("expected a CSR matrix")
    indptr, indices = A.indptr, A.indices
    if indptr[0] != 0 or indptr[-1] != A.nnz or np.any(np.diff(indptr) < 0):
        raise RembedError("row offsets must start at 0, end at nnz and never decrease")
    if A.nnz and (indices.min() < 0 or indices.max() >= A.shape[1]):
        raise RembedError("column index out of range")
    if not A.has_sorted_indices:
        raise RembedError("column indices must be sorted within each row")
    _check_finite_sparse(A)


def _check_finite_sparse(A: sp.spmatrix) -> None:
    if not np.all(np.isfinite(A.data)):
        raise NonFiniteError("sparse matrix holds non-finite values")


def _check_finite_dense(B: np.ndarray) -> None:
    if not np.all(np.isfinite(B)):
        raise NonFiniteError("dense block holds non-finite values")


def _as_block(B) -> np.ndarray:
    B = np.asarray(B, dtype=np.float64)
    if B.ndim == 1:
        B = B[:, None]
    if B.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D dense block, got shape {B.shape}")
    return B


def _row_blocks(n_rows: int) -> List[tuple[int, int]]:
    return [(lo, min(lo + ROW_BLOCK, n_rows)) for lo in range(0, n_rows, ROW_BLOCK)]


def _run_blocks(fn: Callable[[int, int], np.ndarray],
                blocks: List[tuple[int, int]],
                workers: Optional[int]) -> List[np.ndarray]:
    """Evaluate ``fn`` on every block; results come back in block order."""
    workers = min(workers or default_workers(), len(blocks)) if blocks else 1
    if workers <= 1:
        return [fn(lo, hi) for lo, hi in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda b: fn(*b), blocks))


# ---------------------------------------------------------------------- #
def spmm(A: sp.csr_matrix, B, workers: Optional[int] = None) -> np.ndarray:
    """``A @ B`` for CSR ``A`` (n×d) and dense ``B`` (d×m) → dense n×m."""
    B = _as_block(B)
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatchError(
            f"spmm: A is {A.shape[0]}x{A.shape[1]} but B has {B.shape[0]} rows"
        )
    _check_finite_sparse(A)
    _check_finite_dense(B)

    n, m = A.shape[0], B.shape[1]
    out = np.zeros((n, m), dtype=np.float64)
    if A.nnz == 0 or m == 0:
        return out

    def block(lo: int, hi: int) -> np.ndarray:
        out[lo:hi] = np.asarray(A[lo:hi] @ B)
        return out[lo:hi]

    _run_blocks(block, _row_blocks(n), workers)
    return out


def spmm_t(A: sp.csr_matrix, B, workers: Optional[int] = None) -> np.ndarray:
    """``Aᵀ @ B`` for CSR ``A`` (n×d) and dense ``B`` (n×m) → dense d×m.

    ``Aᵀ`` is never stored; each row block scatters into its own partial
    result and the partials are added in block order.
    """
    B = _as_block(B)
    if A.shape[0] != B.shape[0]:
        raise DimensionMismatchError(
            f"spmm_t: A is {A.shape[0]}x{A.shape[1]} but B has {B.shape[0]} rows"
        )
    _check_finite_sparse(A)
    _check_finite_dense(B)

    d, m = A.shape[1], B.shape[1]
    if A.nnz == 0 or m == 0:
        return np.zeros((d, m), dtype=np.float64)

    def block(lo: int, hi: int) -> np.ndarray:
        return np.asarray(A[lo:hi].T @ B[lo:hi])

    partials = _run_blocks(block, _row_blocks(A.shape[0]), workers)
    out = np.zeros((d, m), dtype=np.float64)
    for part in partials:
        out += part
    return out


def row_l2_normalize(A: sp.csr_matrix) -> sp.csr_matrix:
    """Scale every nonzero row to unit Euclidean norm; zero rows stay zero."""
    A = as_csr(A)
    sq = np.asarray(A.multiply(A).sum(axis=1)).ravel()
    norms = np.sqrt(sq)
    divisor = norms.copy()
    divisor[norms == 0.0] = 1.0
    # rows already at unit norm are left bit-for-bit untouched
    divisor[np.abs(norms - 1.0) <= 4 * np.finfo(np.float64).eps] = 1.0
    out = A.copy()
    out.data /= np.repeat(divisor, np.diff(out.indptr))
    return out


def mean_squared_row_norm(A: sp.csr_matrix) -> float:
    """Average of ``‖x_i‖²`` over rows (0.0 for an empty matrix)."""
    if A.shape[0] == 0:
        return 0.0
    return float(A.multiply(A).sum() / A.shape[0])
