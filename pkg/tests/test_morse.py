# tests/test_morse.py
import numpy as np
import pytest
import scipy.linalg
from numpy.testing import assert_allclose

from lsl.combinatorics import SubsetIndex, all_subsets, dual_subset, weight
from lsl.errors import FlowHorizonError, InputValidationError
from lsl.lagrangian import critical_lagrangian, frame_from_unitary, j_map, unitary_arnold_coords
from lsl.matrices import random_hermitian, random_unitary
from lsl.morse import (
    FlowSpec,
    critical_points_by_index,
    critical_unitary,
    distance_column,
    flow,
    flow_arnold,
    flow_vector_field,
    hessian_form,
    hessian_inertia,
    integrate_flow,
    is_critical,
    morse_index,
    morse_value,
    phi_value,
    trajectory,
)
from lsl.ring import betti_ranks


def S(n, *members):
    return SubsetIndex.of(n, members)


def test_flow_spec():
    assert FlowSpec.default(3).alpha == (0.5, 1.5, 2.5)
    assert FlowSpec.parse("default", 2) == FlowSpec.default(2)
    assert FlowSpec.parse("1, 2.5", 2).alpha == (1.0, 2.5)
    with pytest.raises(ValueError):
        FlowSpec.parse("2,1", 2)
    with pytest.raises(ValueError):
        FlowSpec.parse("0,1", 2)
    with pytest.raises(ValueError):
        FlowSpec.parse("1,2,3", 2)


def test_morse_value_examples(rng):
    n = 3
    spec = FlowSpec.default(n)
    assert morse_value(spec, np.eye(n)) == pytest.approx(n * n / 2)
    assert morse_value(spec, -np.eye(n)) == pytest.approx(-n * n / 2)
    for _ in range(5):
        U = random_unitary(n, rng)
        F = frame_from_unitary(U)
        assert morse_value(spec, U) == pytest.approx(phi_value(spec, F), abs=1e-10)
        assert phi_value(spec, j_map(F)) == pytest.approx(-phi_value(spec, F), abs=1e-10)


@pytest.mark.parametrize("n", range(1, 6))
def test_self_indexing(n):
    spec = FlowSpec.default(n)
    for I in all_subsets(n):
        value = phi_value(spec, critical_lagrangian(I))
        assert value + n * n / 2 == pytest.approx(weight(I), abs=1e-12)


def test_critical_points(rng):
    spec = FlowSpec.default(2)
    assert_allclose(critical_unitary(S(2, 1, 2)), np.eye(2))
    assert_allclose(critical_unitary(S(2)), -np.eye(2))
    assert_allclose(critical_unitary(S(2, 1)), np.diag([1, -1]))
    assert all(is_critical(critical_unitary(I), spec) for I in all_subsets(2))
    assert not is_critical(np.diag([1j, 1]), spec)
    assert not is_critical(random_unitary(2, rng), spec)


def test_hessian_examples():
    n = 3
    spec = FlowSpec.default(n)
    full = S(n, 1, 2, 3)
    assert hessian_form(full, spec, np.zeros((n, n))) == 0
    assert hessian_form(full, spec, np.eye(n)) == pytest.approx(-sum(spec.alpha))


@pytest.mark.parametrize("n", range(1, 5))
def test_index_and_coindex(n):
    spec = FlowSpec.default(n)
    for I in all_subsets(n):
        negative, positive = hessian_inertia(I, spec)
        assert negative == morse_index(I, spec) == weight(I)
        assert positive == weight(dual_subset(I))
    assert morse_index(S(3, 2), FlowSpec.default(3)) == 3
    assert hessian_inertia(S(3, 2), FlowSpec.default(3)) == (3, 6)


def test_hessian_matches_second_difference(rng):
    n = 3
    spec = FlowSpec.default(n)
    h = 1e-3
    for I in all_subsets(n):
        S_I = critical_unitary(I)
        for _ in range(5):
            Z = random_hermitian(n, rng)

            def f(t):
                return morse_value(spec, S_I @ scipy.linalg.expm(1j * t * Z))

            fd = (f(h) - 2 * f(0.0) + f(-h)) / h**2
            exact = hessian_form(I, spec, Z)
            assert abs(fd - exact) <= 1e-5 * max(1.0, abs(exact))


def test_perfect_morse_function():
    for n in range(1, 6):
        assert critical_points_by_index(n) == betti_ranks(n)


def test_flow_examples(rng):
    n = 3
    spec = FlowSpec.default(n)
    U = random_unitary(n, rng)
    assert_allclose(flow(U, 0.0, spec), U, atol=1e-14)
    for I in all_subsets(n):
        assert_allclose(flow(critical_unitary(I), 1.7, spec), critical_unitary(I), atol=1e-12)
    scalar = FlowSpec(alpha=(1.0,))
    assert_allclose(flow([[1j]], 20.0, scalar), [[1.0]], atol=1e-12)
    assert_allclose(flow([[1j]], -20.0, scalar), [[-1.0]], atol=1e-12)


def test_flow_group_law_and_unitarity(rng):
    spec = FlowSpec.default(4)
    U = random_unitary(4, rng)
    for s, t in [(0.3, 1.1), (-2.0, 1.5), (1.9, -0.4)]:
        moved = flow(U, s + t, spec)
        assert_allclose(flow(flow(U, s, spec), t, spec), moved, atol=1e-8)
        assert_allclose(moved.conj().T @ moved, np.eye(4), atol=1e-10)


def test_flow_matches_ode(rng):
    spec = FlowSpec.default(3)
    U = random_unitary(3, rng)
    assert_allclose(integrate_flow(U, 2.0, spec), flow(U, 2.0, spec), atol=1e-6)


def test_vector_field(rng):
    n = 3
    spec = FlowSpec.default(n)
    for I in all_subsets(n):
        assert_allclose(flow_vector_field(critical_unitary(I), spec), 0, atol=1e-15)
    U = random_unitary(n, rng)
    h = 1e-6
    fd = (flow(U, h, spec) - U) / h
    V = flow_vector_field(U, spec)
    assert_allclose(fd, V, atol=1e-4)
    slope = np.real(np.trace(spec.A @ V))
    assert slope > 0
    assert morse_value(spec, flow(U, 0.1, spec)) > morse_value(spec, U)


def test_flow_horizon():
    spec = FlowSpec.default(2)
    with pytest.raises(FlowHorizonError, match="flow horizon exceeded"):
        flow(np.eye(2), 1e4, spec)


def test_flow_size_mismatch():
    with pytest.raises(InputValidationError, match="size mismatch"):
        flow(np.eye(3), 1.0, FlowSpec.default(2))


def test_flow_arnold(rng):
    n = 3
    spec = FlowSpec.default(n)
    full = S(n, 1, 2, 3)
    assert_allclose(flow_arnold(np.zeros((n, n)), 2.0, full, spec), 0)
    T = random_hermitian(n, rng)
    t = 0.4
    alpha = spec.vector
    expected = T * np.exp(-t * (alpha[:, None] + alpha[None, :]))
    assert_allclose(flow_arnold(T, t, full, spec), expected)
    for _ in range(5):
        I = S(n, *[k for k in range(1, n + 1) if rng.random() < 0.5])
        U = random_unitary(n, rng)
        t = rng.uniform(-1, 1)
        before = unitary_arnold_coords(U, I)
        after = unitary_arnold_coords(flow(U, t, spec), I)
        scale = max(1.0, np.max(np.abs(after)))
        assert_allclose(flow_arnold(before, t, I, spec) / scale, after / scale, atol=1e-7)


def test_scalar_chart_flow():
    spec = FlowSpec(alpha=(1.0,))
    I = S(1, 1)
    T = np.array([[0.8]])
    t = 0.5
    assert_allclose(flow_arnold(T, t, I, spec), [[0.8 * np.exp(-2 * t)]])


def test_trajectory_rows(rng):
    spec = FlowSpec.default(2)
    U = random_unitary(2, rng)
    targets = [S(2), S(2, 1, 2)]
    rows = trajectory(U, spec, [-3.0, 0.0, 3.0], targets)
    assert [row["t"] for row in rows] == [-3.0, 0.0, 3.0]
    assert rows[0]["morse_value"] < rows[1]["morse_value"] < rows[2]["morse_value"]
    assert rows[0]["dist_empty"] < rows[1]["dist_empty"]
    assert rows[2]["dist_1_2"] < rows[1]["dist_1_2"]


def test_distance_column_names_are_csv_safe():
    assert distance_column(S(3, 1, 3)) == "dist_1_3"
    assert distance_column(S(3)) == "dist_empty"
    assert all("," not in distance_column(K) for K in all_subsets(3))
