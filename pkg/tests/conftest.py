"""Shared instances for the test-suite."""
import logging

import numpy as np
import pytest
import scipy.sparse as sp

from src.formats.synthetic import random_instance
from src.utils.log_utils import PACKAGE_LOGGER


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def verify_instance():
    """Seeded random problem with n=40, d=25, c=30, density 0.3, ~2 labels per row."""
    return random_instance(40, 25, 30, density=0.3, labels_per_row=2, seed=0)


@pytest.fixture
def one_hot_counts():
    """X = I₁₁ and one-hot Y whose classes occur 5, 3, 2 and 1 times."""
    classes = np.repeat(np.arange(4), [5, 3, 2, 1])
    n = classes.size
    X = sp.identity(n, format="csr", dtype=np.float64)
    Y = sp.csr_matrix((np.ones(n), (np.arange(n), classes)), shape=(n, 4))
    return X, Y


@pytest.fixture
def random_sparse(rng):
    """Factory for random CSR matrices with Gaussian values."""
    def make(n, d, density):
        mask = rng.random((n, d)) < density
        return sp.csr_matrix(np.where(mask, rng.standard_normal((n, d)), 0.0))
    return make


@pytest.fixture(autouse=True)
def reset_package_logger():
    """Drop the stderr handler ``main`` installs; it points at this test's captured stream."""
    yield
    package = logging.getLogger(PACKAGE_LOGGER)
    for handler in [h for h in package.handlers if getattr(h, "_rembed_handler", False)]:
        package.removeHandler(handler)
    package.setLevel(logging.NOTSET)
