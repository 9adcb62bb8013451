# tests/conftest.py
import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture
def out(tmp_path):
    return tmp_path / "out"
