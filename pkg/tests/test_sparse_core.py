import numpy as np
import pytest
import scipy.sparse as sp

from src.engine import sparse_core
from src.engine.sparse_core import (
    as_csr,
    check_csr,
    mean_squared_row_norm,
    row_l2_normalize,
    spmm,
    spmm_t,
)
from src.errors import DimensionMismatchError, NonFiniteError, RembedError


def naive_product(A, B):
    """Triple loop over the dense form of ``A``."""
    A = A.toarray() if sp.issparse(A) else A
    out = np.zeros((A.shape[0], B.shape[1]))
    for i in range(A.shape[0]):
        for j in range(B.shape[1]):
            total = 0.0
            for l in range(A.shape[1]):
                total += A[i, l] * B[l, j]
            out[i, j] = total
    return out


def rel_error(got, want):
    return np.linalg.norm(got - want) / np.linalg.norm(want)


def test_spmm_identity(rng):
    B = rng.standard_normal((3, 2))
    np.testing.assert_array_equal(spmm(sp.identity(3, format="csr"), B), B)


def test_spmm_zero_matrix(rng):
    A = sp.csr_matrix((3, 3))
    out = spmm(A, rng.standard_normal((3, 2)))
    assert out.shape == (3, 2)
    assert not out.any()


def test_spmm_matches_naive(random_sparse, rng):
    A = random_sparse(20, 15, 0.2)
    B = rng.standard_normal((15, 4))
    assert rel_error(spmm(A, B), naive_product(A, B)) <= 1e-12


def test_spmm_t_identity(rng):
    B = rng.standard_normal((3, 2))
    np.testing.assert_array_equal(spmm_t(sp.identity(3, format="csr"), B), B)


def test_spmm_t_single_entry():
    A = sp.csr_matrix(([5.0], ([0], [2])), shape=(2, 4))
    out = spmm_t(A, np.array([[1.0], [0.0]]))
    np.testing.assert_array_equal(out, np.array([[0.0], [0.0], [5.0], [0.0]]))


def test_spmm_t_matches_naive(random_sparse, rng):
    A = random_sparse(20, 15, 0.2)
    B = rng.standard_normal((20, 3))
    assert rel_error(spmm_t(A, B), naive_product(A.T.toarray(), B)) <= 1e-12


@pytest.mark.parametrize("seed", range(5))
def test_normal_product_matches_dense(seed):
    rng = np.random.default_rng(seed)
    n, d, m = rng.integers(2, 50, size=3)
    mask = rng.random((n, d)) < 0.3
    dense = np.where(mask, rng.standard_normal((n, d)), 0.0)
    A = sp.csr_matrix(dense)
    B = rng.standard_normal((d, m))
    want = dense.T @ (dense @ B)
    if np.linalg.norm(want) == 0.0:
        pytest.skip("empty instance")
    assert rel_error(spmm_t(A, spmm(A, B)), want) <= 1e-10


def test_stored_zeros_do_not_change_products(rng):
    A = sp.csr_matrix((np.array([1.0, 0.0, 2.0]), np.array([0, 1, 2]), np.array([0, 2, 3])),
                      shape=(2, 3))
    B = rng.standard_normal((3, 2))
    np.testing.assert_allclose(spmm(A, B), A.toarray() @ B, rtol=1e-15)


def test_blocks_are_bit_identical_across_worker_counts(monkeypatch, random_sparse, rng):
    monkeypatch.setattr(sparse_core, "ROW_BLOCK", 7)
    A = random_sparse(100, 30, 0.2)
    B = rng.standard_normal((30, 5))
    C = rng.standard_normal((100, 5))
    ref, ref_t = spmm(A, B, workers=1), spmm_t(A, C, workers=1)
    for workers in (2, 3, 8):
        assert np.array_equal(spmm(A, B, workers=workers), ref)
        assert np.array_equal(spmm_t(A, C, workers=workers), ref_t)


def test_dimension_mismatch_is_explicit(rng):
    A = sp.identity(3, format="csr")
    with pytest.raises(DimensionMismatchError):
        spmm(A, rng.standard_normal((4, 2)))
    with pytest.raises(DimensionMismatchError):
        spmm_t(A, rng.standard_normal((2, 2)))


def test_non_finite_input_is_rejected():
    A = sp.identity(2, format="csr")
    with pytest.raises(NonFiniteError):
        spmm(A, np.array([[np.nan], [1.0]]))
    bad = sp.csr_matrix(np.array([[np.inf, 0.0], [0.0, 1.0]]))
    with pytest.raises(NonFiniteError):
        spmm_t(bad, np.ones((2, 1)))


def test_row_l2_normalize_examples():
    A = sp.csr_matrix(np.array([[3.0, 4.0], [0.0, 0.0], [1.0, 0.0]]))
    out = row_l2_normalize(A).toarray()
    np.testing.assert_allclose(out[0], [0.6, 0.8], rtol=1e-15)
    np.testing.assert_array_equal(out[1], [0.0, 0.0])
    np.testing.assert_array_equal(out[2], [1.0, 0.0])


def test_row_l2_normalize_is_idempotent(random_sparse):
    once = row_l2_normalize(random_sparse(30, 10, 0.4))
    twice = row_l2_normalize(once)
    assert np.max(np.abs((twice - once).toarray()), initial=0.0) <= 1e-15


def test_as_csr_canonicalises_duplicates():
    A = sp.coo_matrix((np.array([1.0, 2.0]), (np.array([0, 0]), np.array([1, 1]))), shape=(1, 2))
    out = as_csr(A)
    check_csr(out)
    assert out.nnz == 1
    assert out[0, 1] == 3.0


def test_check_csr_rejects_out_of_order_indices():
    A = sp.csr_matrix((np.array([1.0, 2.0]), np.array([1, 0]), np.array([0, 2])), shape=(1, 2))
    A.has_sorted_indices = False
    with pytest.raises(RembedError):
        check_csr(A)


def test_mean_squared_row_norm():
    A = sp.csr_matrix(np.array([[3.0, 4.0], [0.0, 0.0]]))
    assert mean_squared_row_norm(A) == pytest.approx(12.5)
    assert mean_squared_row_norm(sp.csr_matrix((0, 3))) == 0.0


def test_configure_workers_rejects_zero():
    with pytest.raises(RembedError):
        sparse_core.configure_workers(0)


def test_configure_workers_sets_default(monkeypatch):
    monkeypatch.setattr(sparse_core, "_default_workers", 1)
    sparse_core.configure_workers(3)
    assert sparse_core.default_workers() == 3
