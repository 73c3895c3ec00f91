import numpy as np
import pytest

from qnls import FourierField, GridSpec


def random_field(grid: GridSpec, seed: int, amp: float = 1.0, decay: float = 0.0) -> FourierField:
    """Random band-limited field; decay > 0 tapers coefficients like e^{-|n|*decay}."""
    rng = np.random.default_rng(seed)
    n = grid.n
    c = amp * (rng.standard_normal(n.size) + 1j * rng.standard_normal(n.size))
    if decay:
        c = c * np.exp(-np.abs(n) * decay)
    return FourierField(grid, c)


@pytest.fixture
def grid8():
    return GridSpec(modes=8)


@pytest.fixture
def grid16():
    return GridSpec(modes=16)
