# src/models/SolverParams.py
"""Inner-solver settings and the small result records produced by the dense kernels.

* ``SolverParams``      – ridge and stopping rule for the block CG solve
* ``ConvergenceReport`` – per-column outcome of one block solve
* ``EigResult``         – sorted eigenpairs of a small symmetric matrix
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional

import numpy as np

from src.errors import ConfigError


DEFAULT_REL_TOLERANCE = 1e-6
DEFAULT_MAX_ITERATIONS = 1000
DEFAULT_RIDGE_SCALE = 1e-3


@dataclass(frozen=True)
class SolverParams:
    """Ridge ``λ`` and the stopping rule of ``ridge_solve_multi``.

    ``ridge=None`` means "derive from the data" (see ``default_ridge``).
    """
    ridge: Optional[float] = None
    rel_tolerance: float = DEFAULT_REL_TOLERANCE
    max_iterations: int = DEFAULT_MAX_ITERATIONS

    def validate(self) -> "SolverParams":
        """Raise ``ConfigError`` unless every field is in range."""
        if self.ridge is not None and not (np.isfinite(self.ridge) and self.ridge >= 0.0):
            raise ConfigError(f"ridge must be a nonnegative finite number, got {self.ridge}")
        if not 0.0 < self.rel_tolerance < 1.0:
            raise ConfigError(f"rel_tolerance must lie in (0, 1), got {self.rel_tolerance}")
        if self.max_iterations < 1:
            raise ConfigError(f"max_iterations must be >= 1, got {self.max_iterations}")
        return self

    def with_ridge(self, ridge: float) -> "SolverParams":
        """Return a copy with a concrete ridge value."""
        return SolverParams(ridge=float(ridge),
                            rel_tolerance=self.rel_tolerance,
                            max_iterations=self.max_iterations)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ridge": self.ridge,
            "rel_tolerance": self.rel_tolerance,
            "max_iterations": self.max_iterations,
        }

    @classmethod
    def from_dict(cls, raw: Dict[str, Any]) -> "SolverParams":
        ridge = raw.get("ridge")
        return cls(
            ridge=None if ridge is None else float(ridge),
            rel_tolerance=float(raw.get("rel_tolerance", DEFAULT_REL_TOLERANCE)),
            max_iterations=int(raw.get("max_iterations", DEFAULT_MAX_ITERATIONS)),
        )


@dataclass(eq=False)
class ConvergenceReport:
    """Outcome of one block solve, one entry per right-hand side."""
    iterations: np.ndarray           # int, per column
    relative_residuals: np.ndarray   # ‖(XᵀX+λI)w − Xᵀb‖ / ‖Xᵀb‖, per column
    converged: np.ndarray            # bool, per column
    ridge: float = 0.0

    @property
    def n_columns(self) -> int:
        return int(self.iterations.shape[0])

    @property
    def all_converged(self) -> bool:
        return bool(np.all(self.converged))

    @property
    def max_iterations_used(self) -> int:
        return int(self.iterations.max()) if self.n_columns else 0

    @property
    def total_iterations(self) -> int:
        return int(self.iterations.sum())

    def summary(self) -> Dict[str, Any]:
        """Compact, JSON-friendly digest used in run reports."""
        worst = float(self.relative_residuals.max()) if self.n_columns else 0.0
        return {
            "columns": self.n_columns,
            "converged": int(np.count_nonzero(self.converged)),
            "max_iterations_used": self.max_iterations_used,
            "total_iterations": self.total_iterations,
            "worst_relative_residual": worst,
            "ridge": self.ridge,
        }


def summarize_reports(reports: Iterable[ConvergenceReport]) -> Dict[str, Any]:
    """Aggregate several block solves (one per operator application)."""
    reports = list(reports)
    if not reports:
        return {"solves": 0, "columns": 0, "converged": 0, "total_iterations": 0,
                "max_iterations_used": 0, "worst_relative_residual": 0.0}
    return {
        "solves": len(reports),
        "columns": sum(r.n_columns for r in reports),
        "converged": sum(int(np.count_nonzero(r.converged)) for r in reports),
        "total_iterations": sum(r.total_iterations for r in reports),
        "max_iterations_used": max(r.max_iterations_used for r in reports),
        "worst_relative_residual": max(
            float(r.relative_residuals.max()) if r.n_columns else 0.0 for r in reports
        ),
    }


@dataclass(eq=False)
class EigResult:
    """Eigenpairs of a symmetric matrix, eigenvalues nonincreasing."""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # column j pairs with eigenvalues[j]

    def top(self, k: int) -> "EigResult":
        """The ``k`` leading pairs, copied."""
        return EigResult(self.eigenvalues[:k].copy(), self.eigenvectors[:, :k].copy())


@dataclass(eq=False)
class SolveResult:
    """Solution block of ``ridge_solve_multi`` with its convergence report."""
    W: np.ndarray
    report: ConvergenceReport
