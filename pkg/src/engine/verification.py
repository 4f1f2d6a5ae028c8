# src/engine/verification.py
"""Oracle checks behind the ``verify`` command.

A seeded random sparse instance is run through the matrix-free kernels, the
block solver and ``rembed``; every result is compared with its dense
counterpart from ``oracle``. Each comparison yields one ``CheckResult``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional

import numpy as np
import scipy.sparse as sp

from src.engine import oracle
from src.engine.dense import make_stream
from src.engine.rembed import rembed
from src.engine.ridge import ridge_solve_multi
from src.engine.sparse_core import spmm, spmm_t
from src.errors import ConfigError
from src.formats.synthetic import random_instance
from src.models.LabelEmbedding import LabelEmbedding, RembedConfig
from src.models.SolverParams import SolverParams
from src.utils.ResourceManager import verify_settings

logger = logging.getLogger(__name__)

KERNEL_TRIALS = 100


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    threshold: float
    passed: bool
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "value": self.value, "threshold": self.threshold,
                "passed": self.passed, "detail": self.detail}


@dataclass
class VerificationSettings:
    """Instance shape, rembed flags and pass thresholds for one verify run."""
    n: int
    d: int
    c: int
    density: float
    labels_per_row: float
    config: RembedConfig
    thresholds: Dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_presets(cls, size: Optional[int] = None, seed: int = 0,
                     rel_tolerance: Optional[float] = None,
                     power_iterations: Optional[int] = None) -> "VerificationSettings":
        """Defaults from the ``verify`` preset, overridden by command-line flags.

        ``size`` sets ``n``; ``d`` and ``c`` keep the preset's ratios to ``n``.
        """
        raw = verify_settings()
        inst, flags = raw["instance"], raw["rembed"]
        n, d, c = int(inst["n"]), int(inst["d"]), int(inst["c"])
        if size is not None:
            if size < 2:
                raise ConfigError(f"--size must be >= 2, got {size}")
            d = max(1, min(oracle.MAX_DENSE_DIM, round(size * d / n)))
            c = max(1, min(oracle.MAX_DENSE_DIM, round(size * c / n)))
            n = min(oracle.MAX_DENSE_DIM, size)
        solver = SolverParams(
            ridge=float(flags["ridge"]),
            rel_tolerance=float(rel_tolerance if rel_tolerance is not None else flags["rel_tolerance"]),
            max_iterations=int(flags["max_iterations"]),
        )
        config = RembedConfig(
            embedding_dim=int(flags["embedding_dim"]),
            oversampling=int(flags["oversampling"]),
            power_iterations=int(power_iterations if power_iterations is not None
                                 else flags["power_iterations"]),
            solver=solver,
            seed=seed,
        )
        config.validate(n_labels=c)
        return cls(n=n, d=d, c=c, density=float(inst["density"]),
                   labels_per_row=float(inst["labels_per_row"]), config=config,
                   thresholds={k: float(v) for k, v in raw["thresholds"].items()})

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "d": self.d, "c": self.c, "density": self.density,
                "labels_per_row": self.labels_per_row, "rembed": self.config.to_dict(),
                "thresholds": dict(self.thresholds)}


def _rel_error(got: np.ndarray, want: np.ndarray) -> float:
    scale = float(np.linalg.norm(want))
    diff = float(np.linalg.norm(got - want))
    return diff / scale if scale > 0.0 else diff


def check_kernels(seed: int, threshold: float, workers: Optional[int] = None,
                  trials: int = KERNEL_TRIALS) -> CheckResult:
    """Worst relative error of ``spmm``/``spmm_t`` against dense products."""
    rng = make_stream(seed)
    worst = 0.0
    for _ in range(trials):
        n, d, m = (int(v) for v in rng.integers(1, 60, size=3))
        density = float(rng.uniform(0.0, 0.5))
        A = sp.random(n, d, density=density, format="csr", random_state=rng, dtype=np.float64)
        dense = A.toarray()
        B = rng.standard_normal((d, m))
        C = rng.standard_normal((n, m))
        worst = max(worst,
                    _rel_error(spmm(A, B, workers), dense @ B),
                    _rel_error(spmm_t(A, C, workers), dense.T @ C))
    return CheckResult("kernels vs dense products", worst, threshold, worst <= threshold,
                       f"{trials} random instances")


def check_solver(X: sp.csr_matrix, Y: sp.csr_matrix, solver: SolverParams, threshold: float,
                 workers: Optional[int] = None) -> CheckResult:
    """Block CG against the direct dense ridge solve, right-hand sides ``Y``."""
    B = Y.toarray()
    solved = ridge_solve_multi(X, B, solver, workers)
    want = oracle.dense_ridge_solve(X, B, float(solver.ridge))
    err = _rel_error(solved.W, want)
    return CheckResult("ridge solve vs dense solve", err, threshold, err <= threshold,
                       f"{solved.report.summary()['converged']}/{B.shape[1]} columns converged")


def check_embedding(embedding: LabelEmbedding, V_exact: np.ndarray, exact_values: np.ndarray,
                    thresholds: Dict[str, float]) -> List[CheckResult]:
    """Subspace angle, Ritz bound, orthonormality and ordering of one embedding."""
    results: List[CheckResult] = []
    ortho = embedding.orthonormality_error()
    results.append(CheckResult("orthonormality ‖VᵀV − I‖_max", ortho,
                               thresholds["orthonormality"], ortho <= thresholds["orthonormality"]))
    if ortho <= oracle.ORTHONORMAL_TOLERANCE:
        angle = oracle.largest_principal_angle(embedding.V, V_exact)
        results.append(CheckResult("largest principal angle (rad)", angle,
                                   thresholds["max_angle"], angle <= thresholds["max_angle"]))
    else:
        results.append(CheckResult("largest principal angle (rad)", float("nan"),
                                   thresholds["max_angle"], False, "V is not orthonormal"))
    excess = float(np.max(embedding.spectrum - exact_values))
    results.append(CheckResult("Ritz values above exact eigenvalues", excess,
                               thresholds["ritz_slack"], excess <= thresholds["ritz_slack"]))
    rises = float(np.max(np.diff(embedding.spectrum), initial=0.0))
    results.append(CheckResult("spectrum nonincreasing (max rise)", rises, 0.0, rises <= 0.0))
    return results


def run_verification(settings: VerificationSettings,
                     workers: Optional[int] = None) -> List[CheckResult]:
    """Run every check; failing checks are reported, never raised."""
    cfg, thr = settings.config, settings.thresholds
    X, Y = random_instance(settings.n, settings.d, settings.c, settings.density,
                           settings.labels_per_row, cfg.seed)
    logger.info("verify: instance n=%d d=%d c=%d nnz(X)=%d, k=%d p=%d q=%d tol=%g",
                settings.n, settings.d, settings.c, X.nnz, cfg.embedding_dim,
                cfg.oversampling, cfg.power_iterations, cfg.solver.rel_tolerance)

    results = [check_kernels(cfg.seed, thr["kernel_rel_error"], workers)]
    # --tol loosens rembed only; the solver check keeps its own tight tolerance
    tight = replace(cfg.solver, rel_tolerance=min(cfg.solver.rel_tolerance, 1e-12))
    results.append(check_solver(X, Y, tight, thr["solve_rel_error"], workers))

    V_exact, exact_values = oracle.exact_embedding(X, Y, cfg.embedding_dim, float(cfg.solver.ridge))
    embedding = rembed(X, Y, cfg, workers)
    results.extend(check_embedding(embedding, V_exact, exact_values, thr))

    failed = [r.name for r in results if not r.passed]
    if failed:
        logger.warning("verify: %d check(s) failed: %s", len(failed), ", ".join(failed))
    return results


def format_table(results: List[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'check':<{width}}  {'value':>11}  {'threshold':>11}  result"]
    for r in results:
        lines.append(f"{r.name:<{width}}  {r.value:>11.3e}  {r.threshold:>11.3e}  "
                     f"{'PASS' if r.passed else 'FAIL'}" + (f"  ({r.detail})" if r.detail else ""))
    return "\n".join(lines)
