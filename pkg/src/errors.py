# src/errors.py
"""Exception hierarchy shared by the engine, the file formats and the front ends.

Every error derives from ``ValueError`` so callers that only care about
"bad input" can keep catching that.
"""
from __future__ import annotations

from typing import Optional


class RembedError(ValueError):
    """Base class for every explicit error raised by this package."""


class DimensionMismatchError(RembedError):
    """Operands do not conform."""


class NonFiniteError(RembedError):
    """An input contains NaN or infinity."""


class ConfigError(RembedError):
    """A configuration value violates its documented range."""


class SingularSystemError(RembedError):
    """A dense system cannot be solved without regularisation."""


class NotOrthonormalError(RembedError):
    """A basis expected to be orthonormal is not."""


class ModelFormatError(RembedError):
    """A model file is truncated, corrupted or of an unknown version."""


class ParseError(RembedError):
    """Malformed dataset text; carries the 1-based line number."""

    def __init__(self, message: str, line_number: Optional[int] = None) -> None:
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
