# src/formats/synthetic.py
"""Desk-scale synthetic data with a planted rank-``k_true`` label structure.

Labels are split into ``k_true`` contiguous topics, and so are the features.
Every example draws a topic, takes most of its features from that topic's
feature block, and carries all labels of its topic (multilabel) or one of
them (multiclass). ``Y`` therefore factors through a k_true-dimensional
latent space whose label-side basis is returned as ``planted_V``. Label-flip
noise replaces each true label by a uniformly random one with probability
``noise``.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
import scipy.sparse as sp

from src.engine.dense import make_stream
from src.errors import ConfigError
from src.models.Dataset import Dataset, DatasetKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SyntheticSpec:
    """Size, planted rank, noise level and seed of a generated problem."""
    n: int
    d: int
    c: int
    k_true: int
    noise: float = 0.0
    seed: int = 0
    n_test: Optional[int] = None       # default max(1, n // 4)
    density: float = 0.1               # fraction of features set per row
    feature_noise: float = 0.2         # share of features drawn off-topic
    kind: DatasetKind = DatasetKind.MULTILABEL

    def validate(self) -> "SyntheticSpec":
        if self.n < 1 or self.d < 1 or self.c < 1:
            raise ConfigError(f"n, d and c must be >= 1, got {self.n}, {self.d}, {self.c}")
        if not 1 <= self.k_true <= min(self.d, self.c):
            raise ConfigError(
                f"k_true must lie in [1, min(d, c) = {min(self.d, self.c)}], got {self.k_true}"
            )
        if not 0.0 <= self.noise <= 1.0:
            raise ConfigError(f"noise must lie in [0, 1], got {self.noise}")
        if not 0.0 < self.density <= 1.0:
            raise ConfigError(f"density must lie in (0, 1], got {self.density}")
        if not 0.0 <= self.feature_noise <= 1.0:
            raise ConfigError(f"feature_noise must lie in [0, 1], got {self.feature_noise}")
        if self.n_test is not None and self.n_test < 0:
            raise ConfigError(f"n_test must be >= 0, got {self.n_test}")
        return self

    @property
    def test_rows(self) -> int:
        return self.n_test if self.n_test is not None else max(1, self.n // 4)

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out["kind"] = self.kind.value
        return out

    @classmethod
    def from_dict(cls, raw: Dict[str, Any]) -> "SyntheticSpec":
        raw = dict(raw)
        if "kind" in raw:
            raw["kind"] = DatasetKind(raw["kind"])
        return cls(**raw)


def random_instance(n: int, d: int, c: int, density: float, labels_per_row: float,
                    seed: int) -> Tuple[sp.csr_matrix, sp.csr_matrix]:
    """Unstructured sparse ``X`` (Gaussian values) and multilabel ``Y``.

    Every row of ``Y`` has at least one label; on average ``labels_per_row``.
    """
    if min(n, d, c) < 1 or not 0.0 < density <= 1.0 or labels_per_row <= 0.0:
        raise ConfigError("random instance needs n, d, c >= 1, density in (0, 1], labels > 0")
    rng = make_stream(seed)
    mask = rng.random((n, d)) < density
    X = np.where(mask, rng.standard_normal((n, d)), 0.0)
    extra = max(labels_per_row - 1.0, 0.0) / c
    Y = (rng.random((n, c)) < extra).astype(np.float64)
    Y[np.arange(n), rng.integers(c, size=n)] = 1.0
    return sp.csr_matrix(X), sp.csr_matrix(Y)


def _blocks(size: int, parts: int) -> np.ndarray:
    """Contiguous block id of every index, block sizes differ by at most one."""
    return (np.arange(size) * parts) // size


def planted_basis(c: int, k_true: int) -> np.ndarray:
    """Normalised topic indicators, an orthonormal c×k_true matrix."""
    topic = _blocks(c, k_true)
    V = np.zeros((c, k_true), dtype=np.float64)
    V[np.arange(c), topic] = 1.0
    return V / np.sqrt(V.sum(axis=0))


def generate_synthetic(spec: SyntheticSpec) -> Tuple[Dataset, Dataset, np.ndarray]:
    """Return ``(train, test, planted_V)``; identical for identical ``spec``."""
    spec.validate()
    rng = make_stream(spec.seed)
    n_total = spec.n + spec.test_rows
    label_topic = _blocks(spec.c, spec.k_true)
    feature_topic = _blocks(spec.d, spec.k_true)
    labels_of = [np.flatnonzero(label_topic == t) for t in range(spec.k_true)]
    features_of = [np.flatnonzero(feature_topic == t) for t in range(spec.k_true)]
    per_row = max(1, int(round(spec.density * spec.d)))

    topics = rng.integers(spec.k_true, size=n_total)

    x_ptr, x_idx, x_val = [0], [], []
    y_ptr, y_idx = [0], []
    for i in range(n_total):
        own = features_of[topics[i]]
        n_off = int(rng.binomial(per_row, spec.feature_noise))
        n_own = min(per_row - n_off, own.size)
        chosen = set(rng.choice(own, size=n_own, replace=False).tolist())
        if n_off:
            chosen.update(rng.choice(spec.d, size=min(n_off, spec.d), replace=False).tolist())
        ids = np.array(sorted(chosen), dtype=np.int64)
        x_idx.extend(ids.tolist())
        x_val.extend((0.5 + rng.random(ids.size)).tolist())
        x_ptr.append(len(x_idx))

        true = labels_of[topics[i]]
        if spec.kind is DatasetKind.MULTICLASS:
            true = true[rng.integers(true.size, size=1)]
        flips = rng.random(true.size) < spec.noise
        replacement = rng.integers(spec.c, size=true.size)
        labels = np.where(flips, replacement, true)
        labels = np.unique(labels)
        y_idx.extend(labels.tolist())
        y_ptr.append(len(y_idx))

    X = sp.csr_matrix((np.asarray(x_val, dtype=np.float64),
                       np.asarray(x_idx, dtype=np.int32),
                       np.asarray(x_ptr, dtype=np.int64)), shape=(n_total, spec.d))
    Y = sp.csr_matrix((np.ones(len(y_idx), dtype=np.float64),
                       np.asarray(y_idx, dtype=np.int32),
                       np.asarray(y_ptr, dtype=np.int64)), shape=(n_total, spec.c))

    train = Dataset(X=X[:spec.n], Y=Y[:spec.n], kind=spec.kind).validate()
    test = Dataset(X=X[spec.n:], Y=Y[spec.n:], kind=spec.kind).validate()
    logger.info("synthetic data: %d train / %d test rows, d=%d c=%d k_true=%d noise=%g",
                spec.n, spec.test_rows, spec.d, spec.c, spec.k_true, spec.noise)
    return train, test, planted_basis(spec.c, spec.k_true)
