import numpy as np
import pytest

from pvilab import _kernels


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    """Compile the JIT kernels once so timed tests measure compute only."""
    _kernels.warmup()


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
