# src/engine/rembed.py
"""Randomized subspace iteration against ``M = Yᵀ·P_X·Y``.

``M`` is c×c and never formed. One application ``M·Q`` costs a product with
``Y``, a block ridge solve against ``X`` and a transposed product with ``Y``:

    Z = Y·Q;  W = argmin ‖XW − Z‖² + λ‖W‖²;  M·Q ≈ Yᵀ·(X·W)

The top eigenvectors of ``M`` give the rank-k label embedding whose span is
the label subspace best predicted by a linear model of the features.
"""
from __future__ import annotations

import logging
from dataclasses import replace
from typing import Iterable, List, Optional

import numpy as np
import scipy.sparse as sp

from src.engine.dense import (
    fix_signs,
    gaussian_block,
    make_stream,
    orthonormalize,
    symmetric_eig,
    symmetrize,
)
from src.engine.ridge import resolve_params, ridge_solve_multi
from src.engine.sparse_core import check_csr, spmm, spmm_t
from src.errors import DimensionMismatchError
from src.models.LabelEmbedding import LabelEmbedding, RembedConfig
from src.models.SolverParams import ConvergenceReport, SolverParams

logger = logging.getLogger(__name__)


def hat_product(X: sp.csr_matrix, Y: sp.csr_matrix, Q: np.ndarray,
                solver: SolverParams,
                reports: Optional[List[ConvergenceReport]] = None,
                workers: Optional[int] = None) -> np.ndarray:
    """``Yᵀ·X·(XᵀX+λI)⁻¹·Xᵀ·Y·Q`` through one block ridge solve.

    The solve's convergence report is appended to ``reports`` when given.
    """
    Q = np.asarray(Q, dtype=np.float64)
    if X.shape[0] != Y.shape[0]:
        raise DimensionMismatchError(f"X has {X.shape[0]} rows but Y has {Y.shape[0]}")
    if Q.ndim != 2 or Q.shape[0] != Y.shape[1] or Q.shape[1] < 1:
        raise DimensionMismatchError(
            f"label block has shape {Q.shape}, expected ({Y.shape[1]}, m>=1)"
        )
    Z = spmm(Y, Q, workers)
    solved = ridge_solve_multi(X, Z, solver, workers)
    if reports is not None:
        reports.append(solved.report)
    return spmm_t(Y, spmm(X, solved.W, workers), workers)


def label_gram_product(Y: sp.csr_matrix, Q: np.ndarray,
                       workers: Optional[int] = None) -> np.ndarray:
    """``YᵀY·Q``: the operator without the feature projection (label PCA)."""
    return spmm_t(Y, spmm(Y, Q, workers), workers)


def _apply(X, Y, Q, config: RembedConfig, reports, workers) -> np.ndarray:
    if config.projected:
        return hat_product(X, Y, Q, config.solver, reports, workers)
    return label_gram_product(Y, Q, workers)


def rembed(X: sp.csr_matrix, Y: sp.csr_matrix, config: RembedConfig,
           workers: Optional[int] = None) -> LabelEmbedding:
    """Rank-k label embedding by randomized subspace iteration + Rayleigh–Ritz.

    Inner-solve non-convergence is logged and kept in
    ``LabelEmbedding.convergence``; it never aborts the run.
    """
    n, c = Y.shape
    if n < 1:
        raise DimensionMismatchError("rembed needs at least one example")
    if X.shape[0] != n:
        raise DimensionMismatchError(f"X has {X.shape[0]} rows but Y has {n}")
    check_csr(X)
    check_csr(Y)
    config.validate(n_labels=c)
    if config.projected:
        config = replace(config, solver=resolve_params(X, config.solver))

    k, m = config.embedding_dim, config.block_size
    rng = make_stream(config.seed)
    reports: List[ConvergenceReport] = []

    Q = gaussian_block(rng, c, m)
    for it in range(config.power_iterations):
        Q = orthonormalize(_apply(X, Y, Q, config, reports, workers), rng)
        logger.debug("power iteration %d/%d done", it + 1, config.power_iterations)

    T = symmetrize(Q.T @ _apply(X, Y, Q, config, reports, workers))
    top = symmetric_eig(T).top(k)
    V = fix_signs(Q @ top.eigenvectors)
    spectrum = top.eigenvalues

    embedding = LabelEmbedding(V=V, spectrum=spectrum, config=config, convergence=reports)
    unconverged = sum(r.n_columns - int(np.count_nonzero(r.converged)) for r in reports)
    if unconverged:
        logger.warning("rembed: %d inner solve column(s) stopped at max_iterations", unconverged)
    logger.info("rembed: k=%d p=%d q=%d, top eigenvalue %.6g",
                k, config.oversampling, config.power_iterations,
                float(spectrum[0]) if spectrum.size else 0.0)
    return embedding


def embed_labels(labels: Iterable[int] | sp.spmatrix, embedding: LabelEmbedding) -> np.ndarray:
    """``Vᵀy`` for one label set: the sum of the selected rows of ``V``."""
    c = embedding.n_labels
    if sp.issparse(labels):
        if labels.shape != (1, c):
            raise DimensionMismatchError(f"label row has shape {labels.shape}, expected (1, {c})")
        ids = sp.csr_matrix(labels).indices
    else:
        ids = np.asarray(list(labels), dtype=np.int64)
    if ids.size and (ids.min() < 0 or ids.max() >= c):
        raise DimensionMismatchError(f"label index out of range for {c} labels")
    if ids.size == 0:
        return np.zeros(embedding.embedding_dim, dtype=np.float64)
    return embedding.V[ids].sum(axis=0)


def embed_label_matrix(Y: sp.csr_matrix, embedding: LabelEmbedding,
                       workers: Optional[int] = None) -> np.ndarray:
    """``Y·V`` for every row at once."""
    if Y.shape[1] != embedding.n_labels:
        raise DimensionMismatchError(
            f"Y has {Y.shape[1]} labels, embedding has {embedding.n_labels}"
        )
    return spmm(Y, embedding.V, workers)
