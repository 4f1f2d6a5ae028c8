# src/models/LabelEmbedding.py
"""Configuration and result of the randomized label-embedding algorithm."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from src.errors import ConfigError
from src.models.SolverParams import ConvergenceReport, SolverParams, summarize_reports


DEFAULT_OVERSAMPLING = 10
DEFAULT_POWER_ITERATIONS = 3
MAX_SEED = 2 ** 64 - 1


@dataclass(frozen=True)
class RembedConfig:
    """Everything that determines a ``LabelEmbedding`` besides the data."""
    embedding_dim: int
    oversampling: int = DEFAULT_OVERSAMPLING
    power_iterations: int = DEFAULT_POWER_ITERATIONS
    solver: SolverParams = field(default_factory=SolverParams)
    seed: int = 0
    projected: bool = True  # False → plain label PCA on YᵀY
    normalize_features: bool = False  # unit-norm feature rows before every stage

    # ---------- derived ---------- #
    @property
    def block_size(self) -> int:
        """Number of sketch columns, ``k + p``."""
        return self.embedding_dim + self.oversampling

    # ---------- validation ---------- #
    def validate(self, n_labels: int | None = None) -> "RembedConfig":
        """Raise ``ConfigError`` on any out-of-range field.

        ``n_labels`` enables the ``k + p <= c`` check.
        """
        if self.embedding_dim < 1:
            raise ConfigError(f"embedding dimension k must be >= 1, got {self.embedding_dim}")
        if self.oversampling < 0:
            raise ConfigError(f"oversampling p must be >= 0, got {self.oversampling}")
        if self.power_iterations < 1:
            raise ConfigError(f"power iterations q must be >= 1, got {self.power_iterations}")
        if not 0 <= self.seed <= MAX_SEED:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        self.solver.validate()
        if n_labels is not None and self.block_size > n_labels:
            raise ConfigError(
                f"k + p = {self.embedding_dim} + {self.oversampling} = {self.block_size} "
                f"exceeds the number of labels c = {n_labels}"
            )
        return self

    # ---------- serialisation ---------- #
    def to_dict(self) -> Dict[str, Any]:
        return {
            "embedding_dim": self.embedding_dim,
            "oversampling": self.oversampling,
            "power_iterations": self.power_iterations,
            "solver": self.solver.to_dict(),
            "seed": self.seed,
            "projected": self.projected,
            "normalize_features": self.normalize_features,
        }

    @classmethod
    def from_dict(cls, raw: Dict[str, Any]) -> "RembedConfig":
        return cls(
            embedding_dim=int(raw["embedding_dim"]),
            oversampling=int(raw.get("oversampling", DEFAULT_OVERSAMPLING)),
            power_iterations=int(raw.get("power_iterations", DEFAULT_POWER_ITERATIONS)),
            solver=SolverParams.from_dict(raw.get("solver", {})),
            seed=int(raw.get("seed", 0)),
            projected=bool(raw.get("projected", True)),
            normalize_features=bool(raw.get("normalize_features", False)),
        )


@dataclass(eq=False)
class LabelEmbedding:
    """Orthonormal ``V`` (c×k) with eigenvalue estimates of the label operator."""
    V: np.ndarray
    spectrum: np.ndarray
    config: RembedConfig
    convergence: List[ConvergenceReport] = field(default_factory=list)

    @property
    def n_labels(self) -> int:
        return int(self.V.shape[0])

    @property
    def embedding_dim(self) -> int:
        return int(self.V.shape[1])

    def orthonormality_error(self) -> float:
        """``‖VᵀV − I‖_max``."""
        gram = self.V.T @ self.V
        return float(np.max(np.abs(gram - np.eye(self.embedding_dim)))) if gram.size else 0.0

    def convergence_summary(self) -> Dict[str, Any]:
        return summarize_reports(self.convergence)
