# src/engine/ridge.py
"""Block conjugate gradient on the ridge normal equations.

Solves ``(XᵀX + λI) W = XᵀB`` column by column while sharing every pass over
``X`` between the still-active columns. ``XᵀX`` is never formed: each
iteration costs one ``spmm`` and one ``spmm_t``.
"""
from __future__ import annotations

import logging
from typing import Optional

import numpy as np
import scipy.sparse as sp

from src.engine.sparse_core import check_csr, mean_squared_row_norm, spmm, spmm_t
from src.errors import DimensionMismatchError
from src.models.SolverParams import (
    DEFAULT_RIDGE_SCALE,
    ConvergenceReport,
    SolveResult,
    SolverParams,
)

logger = logging.getLogger(__name__)


def default_ridge(X: sp.csr_matrix) -> float:
    """``1e-3 ×`` mean squared row norm of ``X``."""
    return DEFAULT_RIDGE_SCALE * mean_squared_row_norm(X)


def resolve_params(X: sp.csr_matrix, params: SolverParams) -> SolverParams:
    """Fill in a data-derived ridge when ``params.ridge`` is unset."""
    params.validate()
    if params.ridge is None:
        return params.with_ridge(default_ridge(X))
    return params


def _normal_product(X: sp.csr_matrix, P: np.ndarray, ridge: float,
                    workers: Optional[int]) -> np.ndarray:
    """``(XᵀX + λI) P``."""
    out = spmm_t(X, spmm(X, P, workers), workers)
    if ridge:
        out += ridge * P
    return out


def ridge_solve_multi(X: sp.csr_matrix, B, params: SolverParams,
                      workers: Optional[int] = None) -> SolveResult:
    """Minimise ``‖XW − B‖²_F + λ‖W‖²_F`` with per-column stopping.

    A column stops once ``‖(XᵀX+λI)w − Xᵀb‖ ≤ rel_tolerance·‖Xᵀb‖`` holds for
    the true residual, or after ``max_iterations``. When the recurrence
    residual meets the target but the true one does not, the column restarts
    from its true residual.
    """
    params = resolve_params(X, params)
    B = np.asarray(B, dtype=np.float64)
    if B.ndim == 1:
        B = B[:, None]
    if B.ndim != 2 or B.shape[0] != X.shape[0]:
        raise DimensionMismatchError(
            f"ridge_solve_multi: X has {X.shape[0]} rows, B has shape {B.shape}"
        )
    check_csr(X)

    lam = float(params.ridge)
    tol = params.rel_tolerance
    d, m = X.shape[1], B.shape[1]

    rhs = spmm_t(X, B, workers)
    rhs_norm = np.linalg.norm(rhs, axis=0)
    target = tol * rhs_norm

    W = np.zeros((d, m), dtype=np.float64)
    R = rhs.copy()
    P = R.copy()
    rr = np.einsum("ij,ij->j", R, R)
    iterations = np.zeros(m, dtype=np.int64)
    converged = rhs_norm == 0.0
    active = ~converged

    while np.any(active):
        cols = np.flatnonzero(active)
        AP = _normal_product(X, P[:, cols], lam, workers)
        pap = np.einsum("ij,ij->j", P[:, cols], AP)
        iterations[cols] += 1

        broken = pap <= 0.0  # direction in the null space (λ = 0, rank-deficient X)
        alpha = np.where(broken, 0.0, rr[cols] / np.where(broken, 1.0, pap))
        W[:, cols] += alpha * P[:, cols]
        R[:, cols] -= alpha * AP
        rr_new = np.einsum("ij,ij->j", R[:, cols], R[:, cols])

        met = (np.sqrt(rr_new) <= target[cols]) | broken
        if np.any(met):
            done = cols[met]
            true_R = rhs[:, done] - _normal_product(X, W[:, done], lam, workers)
            true_norm = np.linalg.norm(true_R, axis=0)
            ok = (true_norm <= target[done]) | broken[met]
            converged[done[ok]] = True
            restart = done[~ok]
            if restart.size:
                R[:, restart] = true_R[:, ~ok]
                rr_new[np.isin(cols, restart)] = true_norm[~ok] ** 2

        beta = np.where(rr[cols] > 0.0, rr_new / np.where(rr[cols] > 0.0, rr[cols], 1.0), 0.0)
        P[:, cols] = R[:, cols] + beta * P[:, cols]
        if met.any():
            restarted = np.isin(cols, np.flatnonzero(~converged)) & met
            P[:, cols[restarted]] = R[:, cols[restarted]]
        rr[cols] = rr_new

        worst = float(np.max(np.sqrt(rr_new) / np.maximum(rhs_norm[cols], np.finfo(float).tiny)))
        logger.debug("cg iteration %d: %d active column(s), worst ratio %.3e",
                     int(iterations.max()), cols.size, worst)

        active = ~converged & (iterations < params.max_iterations)

    residual = rhs - _normal_product(X, W, lam, workers) if m else rhs
    rel = np.zeros(m, dtype=np.float64)
    nz = rhs_norm > 0.0
    rel[nz] = np.linalg.norm(residual[:, nz], axis=0) / rhs_norm[nz]

    report = ConvergenceReport(iterations=iterations, relative_residuals=rel,
                               converged=converged.copy(), ridge=lam)
    if not report.all_converged:
        logger.warning("ridge solve: %d of %d column(s) hit max_iterations=%d "
                       "(worst relative residual %.3e)",
                       m - int(np.count_nonzero(converged)), m,
                       params.max_iterations, float(rel.max()))
    return SolveResult(W=W, report=report)
