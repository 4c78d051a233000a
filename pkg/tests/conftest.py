import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


@pytest.fixture
def random_color(rng):
    def make(w=24, h=16):
        return rng.integers(0, 256, (h, w, 3), dtype=np.uint8)
    return make


@pytest.fixture
def random_gray(rng):
    def make(w=24, h=16):
        return rng.integers(0, 256, (h, w), dtype=np.uint8)
    return make
