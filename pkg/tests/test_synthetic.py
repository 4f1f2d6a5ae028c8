import numpy as np
import pytest

from src.errors import ConfigError
from src.formats.synthetic import SyntheticSpec, generate_synthetic, planted_basis, random_instance
from src.models.Dataset import DatasetKind


def test_same_spec_same_data():
    spec = SyntheticSpec(n=50, d=20, c=10, k_true=2, noise=0.1, seed=3)
    a_train, a_test, a_V = generate_synthetic(spec)
    b_train, b_test, b_V = generate_synthetic(spec)
    assert (a_train.X != b_train.X).nnz == 0
    assert (a_train.Y != b_train.Y).nnz == 0
    assert (a_test.X != b_test.X).nnz == 0
    np.testing.assert_array_equal(a_V, b_V)


def test_seed_changes_data():
    a, _, _ = generate_synthetic(SyntheticSpec(n=50, d=20, c=10, k_true=2, seed=1))
    b, _, _ = generate_synthetic(SyntheticSpec(n=50, d=20, c=10, k_true=2, seed=2))
    assert (a.X != b.X).nnz > 0


def test_single_row():
    train, test, _ = generate_synthetic(SyntheticSpec(n=1, d=3, c=2, k_true=1))
    assert train.n_examples == 1
    assert test.n_examples == 1
    assert train.Y.nnz >= 1


def test_shapes_and_test_split():
    spec = SyntheticSpec(n=40, d=15, c=9, k_true=3, n_test=7)
    train, test, V = generate_synthetic(spec)
    assert train.X.shape == (40, 15) and train.Y.shape == (40, 9)
    assert test.X.shape == (7, 15)
    assert V.shape == (9, 3)


def test_noise_free_labels_follow_topics():
    spec = SyntheticSpec(n=30, d=12, c=6, k_true=3, noise=0.0, seed=5)
    train, _, V = generate_synthetic(spec)
    for labels in train.label_sets():
        topics = {int(np.argmax(V[l])) for l in labels}
        assert len(topics) == 1
        assert len(labels) == 2


def test_multiclass_kind_has_one_label_per_row():
    spec = SyntheticSpec(n=30, d=12, c=6, k_true=3, seed=5, kind=DatasetKind.MULTICLASS)
    train, test, _ = generate_synthetic(spec)
    assert np.all(train.Y.getnnz(axis=1) == 1)
    assert train.kind is DatasetKind.MULTICLASS


@pytest.mark.parametrize("c,k", [(6, 2), (7, 3), (50, 5), (4, 4)])
def test_planted_basis_is_orthonormal(c, k):
    V = planted_basis(c, k)
    np.testing.assert_allclose(V.T @ V, np.eye(k), atol=1e-14)


@pytest.mark.parametrize("kwargs", [
    dict(n=0, d=5, c=5, k_true=1),
    dict(n=5, d=5, c=3, k_true=4),
    dict(n=5, d=5, c=5, k_true=1, noise=1.5),
    dict(n=5, d=5, c=5, k_true=1, density=0.0),
    dict(n=5, d=5, c=5, k_true=1, n_test=-1),
])
def test_invalid_specs(kwargs):
    with pytest.raises(ConfigError):
        generate_synthetic(SyntheticSpec(**kwargs))


def test_spec_dict_round_trip():
    spec = SyntheticSpec(n=10, d=4, c=3, k_true=1, kind=DatasetKind.MULTICLASS)
    assert SyntheticSpec.from_dict(spec.to_dict()) == spec


def test_random_instance_rows_have_labels():
    X, Y = random_instance(40, 25, 30, density=0.3, labels_per_row=2, seed=0)
    assert X.shape == (40, 25) and Y.shape == (40, 30)
    assert np.all(Y.getnnz(axis=1) >= 1)
    with pytest.raises(ConfigError):
        random_instance(0, 25, 30, density=0.3, labels_per_row=2, seed=0)
