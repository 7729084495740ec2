import numpy as np
import pytest

import synclab as sl


@pytest.fixture(scope="session")
def t1_09():
    return sl.QuadraticMap(0.9)


@pytest.fixture(scope="session")
def h1024(t1_09):
    return sl.invariant_density(t1_09, "ulam", 1024, 100_000)


@pytest.fixture(scope="session")
def h128(t1_09):
    return sl.invariant_density(t1_09, "ulam", 128, 100_000)


@pytest.fixture()
def rng():
    # function-scoped so each test sees the same stream regardless of
    # which other tests ran
    return np.random.Generator(np.random.PCG64(20260810))
