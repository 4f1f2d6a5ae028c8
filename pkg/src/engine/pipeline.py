# src/engine/pipeline.py
"""embed → train → evaluate, shared by the command line and the desktop app.

Each stage takes parsed data, runs inside a ``RunReport`` stage timer and
records what it produced.
"""
from __future__ import annotations

import logging
from typing import Optional, Sequence

import scipy.sparse as sp

from src.engine.predictor import evaluate, fit_regressor
from src.engine.rembed import rembed
from src.engine.sparse_core import as_csr, row_l2_normalize
from src.errors import DimensionMismatchError
from src.models.Dataset import Dataset, Metrics
from src.models.LabelEmbedding import LabelEmbedding, RembedConfig
from src.models.LinearPredictor import LinearPredictor
from src.models.RunReport import RunReport
from src.models.SolverParams import SolverParams

logger = logging.getLogger(__name__)


def conform(matrix: sp.csr_matrix, n_cols: int, what: str) -> sp.csr_matrix:
    """Widen ``matrix`` to ``n_cols`` columns (files may omit trailing indices)."""
    if matrix.shape[1] == n_cols:
        return matrix
    if matrix.shape[1] > n_cols:
        raise DimensionMismatchError(
            f"{what} has {matrix.shape[1]} columns, the model expects {n_cols}"
        )
    return sp.csr_matrix((matrix.data, matrix.indices, matrix.indptr),
                         shape=(matrix.shape[0], n_cols))


def prepare_features(X: sp.csr_matrix, config: RembedConfig,
                     n_features: Optional[int] = None) -> sp.csr_matrix:
    """Canonical CSR, widened to the model width, optionally row-normalised."""
    X = as_csr(X)
    if n_features is not None:
        X = conform(X, n_features, "feature matrix")
    return row_l2_normalize(X) if config.normalize_features else X


def embed_stage(train: Dataset, config: RembedConfig, report: RunReport,
                workers: Optional[int] = None) -> LabelEmbedding:
    X = prepare_features(train.X, config)
    with report.stage("embed"):
        embedding = rembed(X, as_csr(train.Y), config, workers)
    report.config["rembed"] = embedding.config.to_dict()
    report.spectrum = [float(v) for v in embedding.spectrum]
    report.convergence["embed"] = embedding.convergence_summary()
    return embedding


def train_stage(train: Dataset, embedding: LabelEmbedding, n_features: int,
                solver: SolverParams, report: RunReport,
                workers: Optional[int] = None) -> LinearPredictor:
    X = prepare_features(train.X, embedding.config, n_features)
    Y = conform(as_csr(train.Y), embedding.n_labels, "label matrix")
    with report.stage("train"):
        model = fit_regressor(X, Y, embedding, solver, workers)
    report.config["train_solver"] = solver.to_dict()
    report.config["ridge_used"] = model.ridge_used
    if model.convergence is not None:
        report.convergence["train"] = model.convergence.summary()
    return model


def conform_dataset(data: Dataset, model: LinearPredictor) -> Dataset:
    """Features normalised like the training data, widened to the model."""
    X = prepare_features(data.X, model.embedding.config, model.n_features)
    Y = conform(as_csr(data.Y), model.n_labels, "label matrix")
    return Dataset(X=X, Y=Y, kind=data.kind)


def eval_stage(test: Dataset, model: LinearPredictor, t_values: Sequence[int],
               report: RunReport, workers: Optional[int] = None) -> Metrics:
    data = conform_dataset(test, model)
    with report.stage("eval"):
        metrics = evaluate(model, data, t_values, workers)
    report.metrics = metrics.to_dict()
    return metrics


def run_pipeline(train: Dataset, test: Dataset, config: RembedConfig,
                 t_values: Sequence[int], report: RunReport,
                 workers: Optional[int] = None) -> tuple[LinearPredictor, Metrics]:
    """All three stages in one go (sweeps, the desktop app, tests)."""
    embedding = embed_stage(train, config, report, workers)
    model = train_stage(train, embedding, train.n_features, config.solver, report, workers)
    metrics = eval_stage(test, model, t_values, report, workers)
    logger.info("pipeline: %s", ", ".join(
        f"P@{t}={v:.4f}" for t, v in sorted(metrics.precision_at.items())))
    return model, metrics
