# 'src/views/RunPageAdd/logic/FormProcessor.py'
"""Builds RembedConfig instances from the PySide6 config form.

Only reads widget values (``value()``, ``text()``, ``isChecked()``), so any
object exposing the same attributes can stand in for the form.
"""
from typing import List

from src.errors import ConfigError
from src.models.LabelEmbedding import RembedConfig
from src.models.SolverParams import SolverParams


def _bool(form, attr):
    """Return *form.<attr>.isChecked()* safely."""
    return getattr(form, attr).isChecked() if hasattr(form, attr) else False


def _float(text: str, what: str) -> float:
    try:
        return float(text.strip())
    except ValueError:
        raise ConfigError(f"{what} must be a number, got {text!r}") from None


def _int(text: str, what: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ConfigError(f"{what} must be an integer, got {text!r}") from None


def build_solver_params(form) -> SolverParams:
    ridge = None
    if not _bool(form, "auto_ridge_checkbox"):
        ridge = _float(form.ridge_input.text(), "Ridge")
    return SolverParams(
        ridge=ridge,
        rel_tolerance=_float(form.tol_input.text(), "Relative tolerance"),
        max_iterations=form.max_iter_input.value(),
    ).validate()


def build_config(form, n_labels: int | None = None) -> RembedConfig:
    """Return a validated config; ``ConfigError`` on any bad field."""
    if form is None:
        raise ConfigError("no configuration form is shown")
    config = RembedConfig(
        embedding_dim=form.k_input.value(),
        oversampling=form.p_input.value(),
        power_iterations=form.q_input.value(),
        solver=build_solver_params(form),
        seed=_int(form.seed_input.text(), "Seed"),
        projected=not _bool(form, "label_pca_checkbox"),
        normalize_features=_bool(form, "normalize_checkbox"),
    )
    return config.validate(n_labels=n_labels)


def parse_t_values(form) -> List[int]:
    """``"1, 3,5"`` → ``[1, 3, 5]``; duplicates dropped, order ascending."""
    text = form.t_values_input.text() if hasattr(form, "t_values_input") else "1"
    values = sorted({_int(tok, "t") for tok in text.split(",") if tok.strip()})
    if not values:
        raise ConfigError("at least one t is required")
    if values[0] < 1:
        raise ConfigError(f"t must be >= 1, got {values[0]}")
    return values
