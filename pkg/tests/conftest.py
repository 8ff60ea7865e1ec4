import numpy as np
import pytest

from szegofock import QuadConfig


@pytest.fixture
def cfg():
    return QuadConfig()


@pytest.fixture
def tight():
    return QuadConfig(abs_tol=1e-13, rel_tol=1e-11, max_subdivisions=4000)


@pytest.fixture
def loose():
    return QuadConfig(abs_tol=1e-9, rel_tol=1e-6)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
