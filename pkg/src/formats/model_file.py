# src/formats/model_file.py
"""Binary model file, written by ``embed`` and completed by ``train``.

Layout (all little-endian)::

    magic      4s   b"RMBD"
    version    u32  1
    flags      u32  bit 0: embedding section, bit 1: regressor section
    c, d, k    u64  labels, features, embedding dimension
    ridge      f64  ridge used by the regressor (0.0 before training)
    cfg_len    u32  length of the embedding config JSON
    cfg        cfg_len bytes, UTF-8 JSON with sorted keys
    spectrum   k    f64
    V          c·k  f64, column-major
    W_e        d·k  f64, column-major (only with bit 1)
    crc        u32  CRC32 of every preceding byte

Version 1 extends the plain ``magic, version, c, d, k`` header with the
``flags`` word, ``ridge`` and the config block; readers reject other versions.
"""
from __future__ import annotations

import json
import logging
import struct
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from src.errors import ModelFormatError
from src.models.LabelEmbedding import LabelEmbedding, RembedConfig
from src.models.LinearPredictor import LinearPredictor

logger = logging.getLogger(__name__)

MAGIC = b"RMBD"
FORMAT_VERSION = 1
FLAG_EMBEDDING = 1
FLAG_REGRESSOR = 2

_HEADER = struct.Struct("<4sIIQQQdI")
_CRC = struct.Struct("<I")
_F8 = np.dtype("<f8")


@dataclass(eq=False)
class ModelContents:
    """Decoded file: always an embedding, a regressor once trained."""
    embedding: LabelEmbedding
    n_features: int
    predictor: Optional[LinearPredictor] = None

    @property
    def trained(self) -> bool:
        return self.predictor is not None


def _config_bytes(config: RembedConfig) -> bytes:
    return json.dumps(config.to_dict(), sort_keys=True, separators=(",", ":")).encode("utf-8")


def encode_model(embedding: LabelEmbedding, n_features: int,
                 predictor: Optional[LinearPredictor] = None) -> bytes:
    c, k = embedding.V.shape
    flags = FLAG_EMBEDDING | (FLAG_REGRESSOR if predictor is not None else 0)
    ridge = predictor.ridge_used if predictor is not None else 0.0
    if predictor is not None and predictor.W_e.shape != (n_features, k):
        raise ModelFormatError(
            f"regressor shape {predictor.W_e.shape} does not match d={n_features}, k={k}"
        )
    cfg = _config_bytes(embedding.config)
    parts = [
        _HEADER.pack(MAGIC, FORMAT_VERSION, flags, c, n_features, k, float(ridge), len(cfg)),
        cfg,
        np.asarray(embedding.spectrum, dtype=_F8).tobytes(),
        np.asarray(embedding.V, dtype=_F8).tobytes(order="F"),
    ]
    if predictor is not None:
        parts.append(np.asarray(predictor.W_e, dtype=_F8).tobytes(order="F"))
    payload = b"".join(parts)
    return payload + _CRC.pack(zlib.crc32(payload) & 0xFFFFFFFF)


def decode_model(blob: bytes) -> ModelContents:
    if len(blob) < len(MAGIC) or blob[:len(MAGIC)] != MAGIC:
        raise ModelFormatError("not a model file (bad magic bytes)")
    if len(blob) < _HEADER.size + _CRC.size:
        raise ModelFormatError("model file is truncated (incomplete header)")
    _, version, flags, c, d, k, ridge, cfg_len = _HEADER.unpack_from(blob, 0)
    if version != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model format version {version}")
    if flags & ~(FLAG_EMBEDDING | FLAG_REGRESSOR):
        raise ModelFormatError(f"invalid section flags {flags:#x}")
    if not flags & FLAG_EMBEDDING:
        raise ModelFormatError("model file has no embedding section; run 'embed' first")

    n_doubles = k + c * k + (d * k if flags & FLAG_REGRESSOR else 0)
    expected = _HEADER.size + cfg_len + 8 * n_doubles + _CRC.size
    if len(blob) < expected:
        raise ModelFormatError(f"model file is truncated ({len(blob)} of {expected} bytes)")
    if len(blob) > expected:
        raise ModelFormatError(f"model file has {len(blob) - expected} trailing byte(s)")
    (stored_crc,) = _CRC.unpack_from(blob, expected - _CRC.size)
    if zlib.crc32(blob[:expected - _CRC.size]) & 0xFFFFFFFF != stored_crc:
        raise ModelFormatError("model file checksum mismatch")

    pos = _HEADER.size
    try:
        raw = json.loads(blob[pos:pos + cfg_len].decode("utf-8"))
        if not isinstance(raw, dict):
            raise ModelFormatError(f"model config section holds {type(raw).__name__}, not an object")
        config = RembedConfig.from_dict(raw)
    except (UnicodeDecodeError, ValueError, KeyError, TypeError, AttributeError) as exc:
        raise ModelFormatError(f"model config section is unreadable: {exc}") from None
    pos += cfg_len

    def take(rows: int, cols: int) -> np.ndarray:
        nonlocal pos
        count = rows * cols
        arr = np.frombuffer(blob, dtype=_F8, count=count, offset=pos)
        pos += 8 * count
        return arr.reshape((rows, cols), order="F").astype(np.float64)

    spectrum = take(k, 1)[:, 0]
    V = take(c, k)
    embedding = LabelEmbedding(V=V, spectrum=spectrum, config=config)
    predictor = None
    if flags & FLAG_REGRESSOR:
        predictor = LinearPredictor(W_e=take(d, k), embedding=embedding, ridge_used=float(ridge))
    return ModelContents(embedding=embedding, n_features=int(d), predictor=predictor)


# ---------------------------------------------------------------------- #
def write_model_file(path: str | Path, embedding: LabelEmbedding, n_features: int,
                     predictor: Optional[LinearPredictor] = None) -> None:
    Path(path).write_bytes(encode_model(embedding, n_features, predictor))
    logger.info("model written to %s (%s)", path,
                "embedding + regressor" if predictor is not None else "embedding only")


def read_model_file(path: str | Path) -> ModelContents:
    return decode_model(Path(path).read_bytes())


def save_model(model: LinearPredictor, path: str | Path) -> None:
    """Write a trained model (both sections)."""
    write_model_file(path, model.embedding, model.n_features, model)


def load_model(path: str | Path) -> LinearPredictor:
    """Read a trained model; an embedding-only file is an error."""
    contents = read_model_file(path)
    if contents.predictor is None:
        raise ModelFormatError(f"{path} holds an embedding only; run 'train' first")
    return contents.predictor
