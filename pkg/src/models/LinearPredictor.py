# src/models/LinearPredictor.py
"""Embedding-space regressor and its ranked output."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from src.errors import DimensionMismatchError
from src.models.LabelEmbedding import LabelEmbedding
from src.models.SolverParams import ConvergenceReport


@dataclass(eq=False)
class LinearPredictor:
    """``W_e`` (d×k) maps features into the embedding; ``V`` scores labels."""
    W_e: np.ndarray
    embedding: LabelEmbedding
    ridge_used: float
    convergence: Optional[ConvergenceReport] = None

    def __post_init__(self) -> None:
        if self.W_e.ndim != 2 or self.W_e.shape[1] != self.embedding.embedding_dim:
            raise DimensionMismatchError(
                f"regressor has shape {self.W_e.shape}, "
                f"embedding dimension is {self.embedding.embedding_dim}"
            )

    @property
    def n_features(self) -> int:
        return int(self.W_e.shape[0])

    @property
    def n_labels(self) -> int:
        return self.embedding.n_labels


@dataclass(eq=False)
class Prediction:
    """Top-t labels of one example; scores nonincreasing, ties by ascending id."""
    label_ids: np.ndarray
    scores: np.ndarray

    def pairs(self) -> List[tuple[int, float]]:
        return [(int(i), float(s)) for i, s in zip(self.label_ids, self.scores)]

    def format(self, base: int = 1) -> str:
        """``id:score`` tokens, ids ``base``-numbered like the dataset files."""
        return " ".join(f"{i + base}:{s:.17g}" for i, s in self.pairs())
