import struct
import zlib

import numpy as np
import pytest

from src.errors import ModelFormatError
from src.formats.model_file import (
    decode_model,
    encode_model,
    load_model,
    read_model_file,
    save_model,
    write_model_file,
)
from src.models.LabelEmbedding import LabelEmbedding, RembedConfig
from src.models.LinearPredictor import LinearPredictor
from src.models.SolverParams import SolverParams


@pytest.fixture
def trained(rng):
    V, _ = np.linalg.qr(rng.standard_normal((6, 2)))
    config = RembedConfig(embedding_dim=2, oversampling=3, seed=17,
                          solver=SolverParams(ridge=0.5, rel_tolerance=1e-9))
    embedding = LabelEmbedding(V=V, spectrum=np.array([2.5, 1.25]), config=config)
    return LinearPredictor(W_e=rng.standard_normal((4, 2)), embedding=embedding, ridge_used=0.5)


def test_round_trip_is_bit_identical(trained):
    blob = encode_model(trained.embedding, 4, trained)
    contents = decode_model(blob)
    assert contents.trained
    assert contents.n_features == 4
    assert np.array_equal(contents.embedding.V, trained.embedding.V)
    assert np.array_equal(contents.predictor.W_e, trained.W_e)
    assert np.array_equal(contents.embedding.spectrum, trained.embedding.spectrum)
    assert contents.embedding.config == trained.embedding.config
    assert contents.predictor.ridge_used == 0.5
    assert encode_model(contents.embedding, 4, contents.predictor) == blob


def test_embedding_only_file(tmp_path, trained):
    path = tmp_path / "emb.rmbd"
    write_model_file(path, trained.embedding, 4)
    contents = read_model_file(path)
    assert not contents.trained
    with pytest.raises(ModelFormatError, match="train"):
        load_model(path)


def test_save_and_load(tmp_path, trained):
    path = tmp_path / "model.rmbd"
    save_model(trained, path)
    model = load_model(path)
    assert np.array_equal(model.W_e, trained.W_e)


def test_every_truncation_is_rejected(trained):
    blob = encode_model(trained.embedding, 4, trained)
    for length in range(len(blob)):
        with pytest.raises(ModelFormatError):
            decode_model(blob[:length])


def test_every_single_bit_flip_is_rejected(trained):
    blob = encode_model(trained.embedding, 4, trained)
    for pos in range(len(blob)):
        for bit in range(8):
            corrupt = bytearray(blob)
            corrupt[pos] ^= 1 << bit
            with pytest.raises(ModelFormatError):
                decode_model(bytes(corrupt))


def test_trailing_bytes_are_rejected(trained):
    blob = encode_model(trained.embedding, 4, trained)
    with pytest.raises(ModelFormatError, match="trailing"):
        decode_model(blob + b"\0")


def test_bad_magic():
    with pytest.raises(ModelFormatError, match="not a model file"):
        decode_model(b"PK\x03\x04" + bytes(64))


def test_missing_embedding_section_says_embed_first(trained):
    blob = bytearray(encode_model(trained.embedding, 4))
    struct.pack_into("<I", blob, 8, 0)  # flags
    with pytest.raises(ModelFormatError, match="embed"):
        decode_model(bytes(blob))


def test_unknown_version(trained):
    blob = bytearray(encode_model(trained.embedding, 4))
    struct.pack_into("<I", blob, 4, 99)
    with pytest.raises(ModelFormatError, match="version 99"):
        decode_model(bytes(blob))


def test_regressor_shape_must_match(trained):
    with pytest.raises(ModelFormatError):
        encode_model(trained.embedding, 5, trained)


def _blob_with_config(cfg: bytes, embedding) -> bytes:
    c, k = embedding.V.shape
    payload = (struct.pack("<4sIIQQQdI", b"RMBD", 1, 1, c, 4, k, 0.0, len(cfg)) + cfg
               + np.asarray(embedding.spectrum, dtype="<f8").tobytes()
               + np.asarray(embedding.V, dtype="<f8").tobytes(order="F"))
    return payload + struct.pack("<I", zlib.crc32(payload) & 0xFFFFFFFF)


@pytest.mark.parametrize("cfg", [b"[]", b"3", b'"text"', b"null",
                                 b'{"embedding_dim": 2, "solver": []}'])
def test_config_section_must_be_an_object(trained, cfg):
    with pytest.raises(ModelFormatError, match="config section"):
        decode_model(_blob_with_config(cfg, trained.embedding))


def test_hand_built_blob_matches_encoder(trained):
    good = encode_model(trained.embedding, 4)
    cfg_len = struct.unpack_from("<I", good, 44)[0]
    rebuilt = _blob_with_config(good[48:48 + cfg_len], trained.embedding)
    assert rebuilt == good
