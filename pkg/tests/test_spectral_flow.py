# tests/test_spectral_flow.py
import numpy as np
import pytest
from pydantic import ValidationError

from lsl.errors import BranchMatchingError, InputValidationError, LoopSamplingError
from lsl.matrices import random_unitary
from lsl.spectral_flow import (
    UnitaryLoop,
    crossings_through,
    det_winding,
    diagonal_loop,
    maslov_index,
    product_loop,
    random_loop,
)


@pytest.mark.parametrize(
    "windings, offsets, expected",
    [
        ([0], [0.25], 0),
        ([1], [0.25], 1),
        ([-1], [0.25], -1),
        ([1, 0], [0.25, 0.9], 1),
        ([2, -1], [0.25, 0.9], 1),
        ([1, 1, 1], [0.25, 0.9, 1.3], 3),
    ],
)
def test_diagonal_windings(windings, offsets, expected):
    loop = diagonal_loop(windings, offsets=offsets)
    assert det_winding(loop) == expected
    assert maslov_index(loop) == expected


def test_constant_unit_eigenvalue():
    loop = UnitaryLoop.from_function(lambda t: np.diag([np.exp(2j * t), 1.0]))
    assert maslov_index(loop) == 2
    assert det_winding(loop) == 2


def test_constant_loop():
    loop = UnitaryLoop.from_function(lambda t: np.eye(2), samples=9)
    assert maslov_index(loop) == 0
    assert det_winding(loop) == 0


def test_crossings_through_other_points():
    loop = diagonal_loop([1])
    assert crossings_through(loop, rho=1j) == 1
    assert crossings_through(loop, rho=-1) == 1
    assert crossings_through(diagonal_loop([-2], offsets=[0.3]), rho=np.exp(0.7j)) == -2
    with pytest.raises(InputValidationError, match="unit circle"):
        crossings_through(loop, rho=2.0)


def test_open_paths():
    half = UnitaryLoop.from_function(lambda t: np.array([[np.exp(1j * t / 2)]]), closed=False)
    assert crossings_through(half) == 1
    assert crossings_through(half, rho=-1) == 0
    with pytest.raises(InputValidationError):
        maslov_index(half)
    with pytest.raises(InputValidationError):
        det_winding(half)


def test_open_path_ending_on_rho():
    path = UnitaryLoop.from_function(
        lambda t: np.array([[np.exp(1j * (t + np.pi) / 2)]]), closed=False
    )
    with pytest.raises(BranchMatchingError):
        crossings_through(path)


def test_undersampled_loop():
    loop = diagonal_loop([1], samples=5)
    with pytest.raises(LoopSamplingError):
        maslov_index(loop)
    with pytest.raises(LoopSamplingError):
        det_winding(loop)


def test_loop_validation():
    with pytest.raises(ValidationError, match="not closed"):
        UnitaryLoop.from_function(lambda t: np.array([[np.exp(1j * t / 2)]]))
    with pytest.raises(ValidationError, match="-π to π"):
        UnitaryLoop(theta=[0.0, np.pi], samples=[np.eye(1), np.eye(1)])
    with pytest.raises(ValidationError, match="at least two"):
        UnitaryLoop(theta=[np.pi], samples=[np.eye(1)])
    with pytest.raises(ValidationError, match="different sizes"):
        UnitaryLoop(theta=[-np.pi, np.pi], samples=[np.eye(1), np.eye(2)])
    with pytest.raises(InputValidationError, match="offsets"):
        diagonal_loop([1, 2], offsets=[0.1])


def test_concatenate_and_conjugate(rng):
    loop = diagonal_loop([1, -2], offsets=[0.25, 0.9], samples=513)
    twice = loop.concatenate(2)
    assert twice.theta[0] == -np.pi and twice.theta[-1] == np.pi
    assert len(twice.samples) == 2 * len(loop.samples) - 1
    assert maslov_index(twice) == 2 * maslov_index(loop) == -2
    U = random_unitary(2, rng)
    assert maslov_index(loop.conjugate(U)) == maslov_index(loop)
    with pytest.raises(InputValidationError):
        loop.concatenate(0)


def test_product_loop(rng):
    L, R = random_unitary(3, rng), random_unitary(3, rng)
    loop = product_loop([1, 0, 2], L, R, samples=1025, offsets=[0.1, 0.2, 0.3])
    assert det_winding(loop) == 3
    assert maslov_index(loop) == 3


def test_random_loops(rng):
    for n in (1, 2, 3):
        for _ in range(3):
            loop = random_loop(n, rng)
            assert maslov_index(loop) == det_winding(loop)
