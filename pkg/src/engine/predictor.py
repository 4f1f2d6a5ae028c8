# src/engine/predictor.py
"""Second stage: regress features onto embedded labels, decode by inner product.

A label's score for an example ``x`` is ``V[l]·(W_eᵀx)``; ranking is by
score, descending, with ties broken by ascending label id.
"""
from __future__ import annotations

import logging
from typing import Iterable, Optional, Sequence

import numpy as np
import scipy.sparse as sp

from src.engine.rembed import embed_label_matrix
from src.engine.ridge import resolve_params, ridge_solve_multi
from src.engine.sparse_core import as_csr, spmm
from src.errors import ConfigError, DimensionMismatchError
from src.models.Dataset import Dataset, DatasetKind, Metrics
from src.models.LabelEmbedding import LabelEmbedding
from src.models.LinearPredictor import LinearPredictor, Prediction
from src.models.SolverParams import SolverParams

logger = logging.getLogger(__name__)

SCORE_CHUNK = 2048


def fit_regressor(X: sp.csr_matrix, Y: sp.csr_matrix, embedding: LabelEmbedding,
                  solver: SolverParams, workers: Optional[int] = None) -> LinearPredictor:
    """``W_e = ridge_solve_multi(X, Y·V)``."""
    if X.shape[0] != Y.shape[0]:
        raise DimensionMismatchError(f"X has {X.shape[0]} rows but Y has {Y.shape[0]}")
    params = resolve_params(X, solver)
    Z = embed_label_matrix(Y, embedding, workers)
    solved = ridge_solve_multi(X, Z, params, workers)
    logger.info("regressor fitted: d=%d k=%d, %d CG iteration(s) in total",
                X.shape[1], embedding.embedding_dim, solved.report.total_iterations)
    return LinearPredictor(W_e=solved.W, embedding=embedding,
                           ridge_used=float(params.ridge), convergence=solved.report)


# ---------------------------------------------------------------------- #
def score_rows(X: sp.csr_matrix, model: LinearPredictor,
               workers: Optional[int] = None) -> np.ndarray:
    """Full score matrix ``X·W_e·Vᵀ`` (n×c)."""
    if X.shape[1] != model.n_features:
        raise DimensionMismatchError(
            f"features have {X.shape[1]} columns, model expects {model.n_features}"
        )
    return spmm(X, model.W_e, workers) @ model.embedding.V.T


def _rank(scores: np.ndarray, t: int) -> tuple[np.ndarray, np.ndarray]:
    """Top-``t`` ids and scores of every row under the tie rule."""
    ids = np.broadcast_to(np.arange(scores.shape[1]), scores.shape)
    order = np.lexsort((ids, -scores), axis=-1)[:, :t]
    return order, np.take_along_axis(scores, order, axis=1)


def _check_t(t: int, n_labels: int) -> None:
    if t < 1 or t > n_labels:
        raise ConfigError(f"t must lie in [1, {n_labels}], got {t}")


def predict_topt_batch(X: sp.csr_matrix, model: LinearPredictor, t: int,
                       workers: Optional[int] = None) -> tuple[np.ndarray, np.ndarray]:
    """Top-``t`` ids and scores for every row of ``X``, chunked over rows."""
    _check_t(t, model.n_labels)
    X = as_csr(X)
    ids = np.empty((X.shape[0], t), dtype=np.int64)
    vals = np.empty((X.shape[0], t), dtype=np.float64)
    for lo in range(0, X.shape[0], SCORE_CHUNK):
        hi = min(lo + SCORE_CHUNK, X.shape[0])
        ids[lo:hi], vals[lo:hi] = _rank(score_rows(X[lo:hi], model, workers), t)
    return ids, vals


def predict_topt(x, model: LinearPredictor, t: int) -> Prediction:
    """Ranked top-``t`` labels for a single feature row."""
    row = as_csr(x if sp.issparse(x) else np.atleast_2d(np.asarray(x, dtype=np.float64)))
    if row.shape[0] != 1:
        raise DimensionMismatchError(f"expected a single row, got {row.shape[0]}")
    ids, vals = predict_topt_batch(row, model, t)
    return Prediction(label_ids=ids[0], scores=vals[0])


# ---------------------------------------------------------------------- #
def evaluate(model: LinearPredictor, test: Dataset, t_values: Sequence[int] | Iterable[int],
             workers: Optional[int] = None) -> Metrics:
    """precision@t over examples with at least one true label.

    Multiclass data also reports ``test_error = 1 − precision@1``.
    """
    t_set = sorted(set(int(t) for t in t_values))
    if test.kind is DatasetKind.MULTICLASS and 1 not in t_set:
        t_set.insert(0, 1)
    if not t_set:
        raise ConfigError("at least one t is required")
    for t in t_set:
        _check_t(t, model.n_labels)
    if test.n_labels != model.n_labels:
        raise DimensionMismatchError(
            f"test set has {test.n_labels} labels, model has {model.n_labels}"
        )

    t_max = t_set[-1]
    Y = test.Y
    has_labels = np.diff(Y.indptr) > 0
    top, _ = predict_topt_batch(test.X, model, t_max, workers)

    # hits[i, j] = 1 when the j-th ranked label of row i is a true label
    hits = np.zeros((Y.shape[0], t_max), dtype=np.int64)
    for i, true_ids in enumerate(test.label_sets()):
        if true_ids.size:
            hits[i] = np.isin(top[i], true_ids)
    hit_sums = np.cumsum(hits, axis=1).sum(axis=0)

    n_eval = int(np.count_nonzero(has_labels))
    n_skipped = int(Y.shape[0] - n_eval)
    precision = {
        t: (float(hit_sums[t - 1] / (t * n_eval)) if n_eval else 0.0) for t in t_set
    }
    if n_eval == 0:
        logger.warning("evaluate: no test example has a true label")
    if n_skipped:
        logger.info("evaluate: %d example(s) without labels excluded", n_skipped)

    metrics = Metrics(precision_at=precision, n_evaluated=n_eval, n_skipped_empty=n_skipped)
    if test.kind is DatasetKind.MULTICLASS:
        metrics.test_error = 1.0 - precision[1]
    return metrics
