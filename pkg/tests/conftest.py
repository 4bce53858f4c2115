import numpy as np
import pytest

import nevlab


@pytest.fixture(scope="session", autouse=True)
def _jit_warmup():
    # compile every accelerated kernel before any timed test runs
    nevlab.warmup()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
