"""Utility helper – resolves paths to data/assets inside the project."""
from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict

from src.errors import ConfigError

PRESETS_FILE = "synthetic_presets.json"


def _project_root() -> Path:
    """Return the project root folder (parent of 'src')."""
    return Path(__file__).resolve().parent.parent.parent


def get_data_path(filename: str) -> str:
    """
    Return an absolute path to *src/data/<filename>*.

    Args:
        filename: File name located in *src/data/*.

    Returns:
        Absolute path as string.
    """
    return str(_project_root() / "src" / "data" / filename)


@lru_cache(maxsize=1)
def load_presets() -> Dict[str, Any]:
    """Parse *synthetic_presets.json* once per process."""
    path = Path(get_data_path(PRESETS_FILE))
    try:
        with path.open("r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"preset file '{path}' not found") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in '{path}': {exc}") from None


def synthetic_preset(name: str) -> Dict[str, Any]:
    """Return the named entry of the ``synthetic`` section."""
    presets = load_presets().get("synthetic", {})
    if name not in presets:
        known = ", ".join(sorted(presets)) or "none"
        raise ConfigError(f"unknown preset '{name}' (known: {known})")
    return presets[name]


def verify_settings() -> Dict[str, Any]:
    """Return the ``verify`` section (instance, rembed flags, thresholds)."""
    return load_presets()["verify"]
