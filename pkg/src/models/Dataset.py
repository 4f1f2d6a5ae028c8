# src/models/Dataset.py
"""Feature/label pairs, the parser's bookkeeping and evaluation metrics."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
import scipy.sparse as sp

from src.errors import DimensionMismatchError, RembedError


class DatasetKind(str, Enum):
    """Exactly one label per row, or any subset of labels."""
    MULTICLASS = "multiclass"
    MULTILABEL = "multilabel"


@dataclass(eq=False)
class Dataset:
    """``X`` (n×d features) and ``Y`` (n×c label indicators), both CSR."""
    X: sp.csr_matrix
    Y: sp.csr_matrix
    kind: DatasetKind = DatasetKind.MULTILABEL

    def validate(self) -> "Dataset":
        if self.X.shape[0] != self.Y.shape[0]:
            raise DimensionMismatchError(
                f"X has {self.X.shape[0]} rows but Y has {self.Y.shape[0]}"
            )
        if self.kind is DatasetKind.MULTICLASS:
            per_row = np.diff(self.Y.indptr)
            if np.any(per_row != 1) or np.any(self.Y.data != 1.0):
                raise RembedError("multiclass dataset needs exactly one label (=1.0) per row")
        return self

    @property
    def n_examples(self) -> int:
        return int(self.X.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.X.shape[1])

    @property
    def n_labels(self) -> int:
        return int(self.Y.shape[1])

    def label_sets(self) -> List[np.ndarray]:
        """Sorted label ids of every row."""
        Y = self.Y
        return [Y.indices[Y.indptr[i]:Y.indptr[i + 1]] for i in range(Y.shape[0])]

    def infer_kind(self) -> DatasetKind:
        """Multiclass when every row holds a single 1.0 label."""
        per_row = np.diff(self.Y.indptr)
        if per_row.size and np.all(per_row == 1) and np.all(self.Y.data == 1.0):
            return DatasetKind.MULTICLASS
        return DatasetKind.MULTILABEL


@dataclass
class ParseReport:
    """What the text parser saw besides the matrices."""
    path: str = ""
    n_lines: int = 0
    n_examples: int = 0
    header_present: bool = False
    empty_label_lines: List[int] = field(default_factory=list)
    skipped_blank_lines: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "path": self.path,
            "lines": self.n_lines,
            "examples": self.n_examples,
            "header_present": self.header_present,
            "empty_label_rows": len(self.empty_label_lines),
            "empty_label_lines": list(self.empty_label_lines),
            "skipped_blank_lines": self.skipped_blank_lines,
        }


@dataclass
class Metrics:
    """precision@t per requested t, plus multiclass test error."""
    precision_at: Dict[int, float] = field(default_factory=dict)
    test_error: Optional[float] = None
    n_evaluated: int = 0
    n_skipped_empty: int = 0

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "precision_at": {str(t): v for t, v in sorted(self.precision_at.items())},
            "n_evaluated": self.n_evaluated,
            "n_skipped_empty": self.n_skipped_empty,
        }
        if self.test_error is not None:
            out["test_error"] = self.test_error
        return out
