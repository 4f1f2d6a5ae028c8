# 'src/views/RunPageAdd/logic/DataSource.py'
"""Turns the StartPage selection into train/test datasets."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from src.errors import ConfigError
from src.formats.libsvm_text import parse_multilabel_text
from src.formats.synthetic import SyntheticSpec, generate_synthetic
from src.models.Dataset import Dataset
from src.models.LabelEmbedding import RembedConfig
from src.utils.ResourceManager import synthetic_preset


@dataclass(frozen=True)
class DataSource:
    """Either a named synthetic preset or a pair of dataset files."""
    preset: Optional[str] = None
    train_path: Optional[str] = None
    test_path: Optional[str] = None

    def describe(self) -> str:
        if self.preset:
            return f"preset '{self.preset}'"
        return f"{self.train_path} / {self.test_path}"

    @property
    def key(self) -> str:
        """Identity used to decide whether the run page must be rebuilt."""
        return self.preset or f"{self.train_path}|{self.test_path}"


def load_datasets(source: DataSource) -> Tuple[Dataset, Dataset]:
    if source.preset:
        spec = SyntheticSpec.from_dict(synthetic_preset(source.preset)["spec"])
        train, test, _ = generate_synthetic(spec)
        return train, test
    if not source.train_path or not source.test_path:
        raise ConfigError("choose both a training file and a test file")
    return parse_multilabel_text(source.train_path), parse_multilabel_text(source.test_path)


def initial_config(source: DataSource) -> Optional[RembedConfig]:
    """The preset's suggested embedding settings, if it has any."""
    if not source.preset:
        return None
    raw = synthetic_preset(source.preset).get("rembed")
    return RembedConfig.from_dict(raw) if raw else None
