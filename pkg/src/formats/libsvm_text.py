# src/formats/libsvm_text.py
"""LibSVM-style multilabel text format.

One example per line::

    l1,l2,...  f1:v1 f2:v2 ...

Labels and feature indices are 1-based in files and 0-based in memory. A line
whose first token already holds ``:`` has no labels. An optional first line
``n d c`` (three bare integers) fixes the dimensions; without it they are
inferred as max index + 1. Blank lines are examples with neither labels nor
features, except trailing blank lines beyond the declared (or any) rows.
"""
from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
import scipy.sparse as sp

from src.errors import ParseError
from src.models.Dataset import Dataset, DatasetKind, ParseReport

logger = logging.getLogger(__name__)

MAX_INDEX = 2 ** 31 - 2

ParsedLine = Tuple[List[int], List[int], List[float]]


def _parse_index(token: str, what: str, line_number: int) -> int:
    if not token or not (token.isascii() and token.isdigit()):
        raise ParseError(f"malformed {what} index {token!r}", line_number)
    value = int(token)
    if value < 1:
        raise ParseError(f"{what} index {value} is not 1-based", line_number)
    if value - 1 > MAX_INDEX:
        raise ParseError(f"{what} index {value} overflows", line_number)
    return value - 1


def _parse_value(token: str, line_number: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"non-numeric feature value {token!r}", line_number) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite feature value {token!r}", line_number)
    return value


def parse_line(text: str, line_number: int = 0) -> ParsedLine:
    """Return 0-based ``(labels, feature_ids, values)``, features sorted by id."""
    tokens = text.split()
    labels: List[int] = []
    if tokens and ":" not in tokens[0]:
        labels = [_parse_index(tok, "label", line_number) for tok in tokens[0].split(",")]
        if len(set(labels)) != len(labels):
            raise ParseError("duplicate label", line_number)
        labels.sort()
        tokens = tokens[1:]

    pairs: List[Tuple[int, float]] = []
    for tok in tokens:
        idx, sep, val = tok.partition(":")
        if not sep or not val or ":" in val:
            raise ParseError(f"malformed feature token {tok!r}", line_number)
        pairs.append((_parse_index(idx, "feature", line_number), _parse_value(val, line_number)))
    pairs.sort(key=lambda p: p[0])
    ids = [p[0] for p in pairs]
    if any(a == b for a, b in zip(ids, ids[1:])):
        raise ParseError("duplicate feature index", line_number)
    return labels, ids, [p[1] for p in pairs]


def _parse_header(text: str) -> Optional[Tuple[int, int, int]]:
    tokens = text.split()
    if len(tokens) == 3 and all(tok.isascii() and tok.isdigit() for tok in tokens):
        n, d, c = (int(tok) for tok in tokens)
        for name, value in (("example count", n), ("dimension", d), ("label count", c)):
            if value > MAX_INDEX + 1:
                raise ParseError(f"header {name} {value} overflows", 1)
        return n, d, c
    return None


# ---------------------------------------------------------------------- #
def read_multilabel_text(path: str | Path,
                         kind: Optional[DatasetKind] = None) -> Tuple[Dataset, ParseReport]:
    """Parse a dataset file; returns the dataset and what the parser noticed."""
    path = Path(path)
    try:
        raw = path.read_bytes().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not UTF-8 text ({exc.reason})") from None
    return parse_multilabel_string(raw, kind=kind, source=str(path))


def parse_multilabel_string(raw: str, kind: Optional[DatasetKind] = None,
                            source: str = "<string>") -> Tuple[Dataset, ParseReport]:
    lines = raw.split("\n")
    if lines[-1] == "":
        lines.pop()
    lines = [line[:-1] if line.endswith("\r") else line for line in lines]
    report = ParseReport(path=source, n_lines=len(lines))

    start = 0
    header = _parse_header(lines[0]) if lines else None
    if header is not None:
        report.header_present = True
        start = 1

    body = lines[start:]
    declared_n = header[0] if header else None
    if declared_n is None:
        while body and not body[-1].strip():
            body.pop()
            report.skipped_blank_lines += 1
    else:
        while len(body) > declared_n and not body[-1].strip():
            body.pop()
            report.skipped_blank_lines += 1
        if len(body) != declared_n:
            raise ParseError(f"header declares {declared_n} examples, found {len(body)}")

    y_ptr, y_idx = [0], []
    x_ptr, x_idx, x_val = [0], [], []
    for offset, text in enumerate(body):
        line_number = start + offset + 1
        labels, ids, vals = parse_line(text, line_number)
        if not labels:
            report.empty_label_lines.append(line_number)
        y_idx.extend(labels)
        y_ptr.append(len(y_idx))
        x_idx.extend(ids)
        x_val.extend(vals)
        x_ptr.append(len(x_idx))

    n = len(body)
    d = max(x_idx) + 1 if x_idx else 0
    c = max(y_idx) + 1 if y_idx else 0
    if header is not None:
        _, hd, hc = header
        if d > hd:
            raise ParseError(f"feature index {d} exceeds declared dimension {hd}")
        if c > hc:
            raise ParseError(f"label index {c} exceeds declared label count {hc}")
        d, c = hd, hc

    X = sp.csr_matrix((np.asarray(x_val, dtype=np.float64),
                       np.asarray(x_idx, dtype=np.int32),
                       np.asarray(x_ptr, dtype=np.int64)), shape=(n, d))
    Y = sp.csr_matrix((np.ones(len(y_idx), dtype=np.float64),
                       np.asarray(y_idx, dtype=np.int32),
                       np.asarray(y_ptr, dtype=np.int64)), shape=(n, c))
    dataset = Dataset(X=X, Y=Y)
    dataset.kind = kind if kind is not None else dataset.infer_kind()
    dataset.validate()

    report.n_examples = n
    if report.empty_label_lines:
        logger.warning("%s: %d example(s) without labels", source, len(report.empty_label_lines))
    logger.info("%s: %d examples, %d features, %d labels (%s)",
                source, n, d, c, dataset.kind.value)
    return dataset, report


def parse_multilabel_text(path: str | Path, kind: Optional[DatasetKind] = None) -> Dataset:
    """``read_multilabel_text`` without the report."""
    return read_multilabel_text(path, kind)[0]


# ---------------------------------------------------------------------- #
def format_row(labels: np.ndarray, ids: np.ndarray, values: np.ndarray) -> str:
    label_field = ",".join(str(int(l) + 1) for l in labels)
    features = " ".join(f"{int(i) + 1}:{float(v)!r}" for i, v in zip(ids, values))
    if label_field and features:
        return f"{label_field} {features}"
    if features:
        return f" {features}"
    return label_field


def write_multilabel_text(dataset: Dataset, path: str | Path, header: bool = True) -> None:
    """Write ``dataset`` so that ``parse_multilabel_text`` reproduces it exactly."""
    X, Y = dataset.X, dataset.Y
    out: List[str] = []
    if header:
        out.append(f"{X.shape[0]} {X.shape[1]} {Y.shape[1]}")
    for i in range(X.shape[0]):
        xs, xe = X.indptr[i], X.indptr[i + 1]
        ys, ye = Y.indptr[i], Y.indptr[i + 1]
        out.append(format_row(Y.indices[ys:ye], X.indices[xs:xe], X.data[xs:xe]))
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")
    logger.info("wrote %d examples to %s", X.shape[0], path)
