"""Property-based tests for the tensor kernels and both solvers."""

from __future__ import annotations

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from perronpath.core.linalg import residual
from perronpath.core.models import EigenPair
from perronpath.core.tensor import (
    DenseTensor,
    apply_m1,
    identity_tensor,
    partial_symmetrize,
    rank_one_start_tensor,
    spectral_bounds,
)
from perronpath.harness.examples import random_tensor
from perronpath.solvers.homotopy import (
    HomotopyProblem,
    eval_homotopy,
    jacobian_lambda_x,
    solve_perron,
    start_pair,
)

orders = st.sampled_from([3, 4])
dims = st.integers(min_value=2, max_value=8)
seeds = st.integers(min_value=0, max_value=2**32 - 1)

PROPERTY_SETTINGS = settings(max_examples=50, deadline=None)


def _tensor(m: int, n: int, seed: int) -> DenseTensor:
    return random_tensor(m, n, seed=seed)


def _vector(n: int, seed: int, low: float = 0.1) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return low + rng.random(n)


@PROPERTY_SETTINGS
@given(m=orders, n=dims, seed=seeds, t=st.floats(min_value=0.0, max_value=1.0))
def test_jacobian_matches_central_differences(m: int, n: int, seed: int, t: float) -> None:
    problem = HomotopyProblem.build(_tensor(m, n, seed))
    u = np.concatenate(([1.0 + seed % 7], _vector(n, seed + 1)))
    h = 1e-6
    fd = np.empty((n + 1, n + 1))
    for j in range(n + 1):
        step = np.zeros(n + 1)
        step[j] = h
        plus = eval_homotopy(problem, EigenPair(u[0] + step[0], u[1:] + step[1:]), t)
        minus = eval_homotopy(problem, EigenPair(u[0] - step[0], u[1:] - step[1:]), t)
        fd[:, j] = (plus - minus) / (2 * h)
    jac = jacobian_lambda_x(problem, EigenPair(u[0], u[1:]), t)

    assert np.linalg.norm(jac - fd) <= 1e-6 * np.linalg.norm(jac)


@PROPERTY_SETTINGS
@given(m=orders, n=dims, seed=seeds)
def test_symmetrization_preserves_contraction(m: int, n: int, seed: int) -> None:
    tensor = _tensor(m, n, seed)
    x = _vector(n, seed, low=-0.5)

    expected = apply_m1(tensor, x)
    actual = apply_m1(partial_symmetrize(tensor), x)

    assert np.max(np.abs(actual - expected)) <= 1e-12 * max(1.0, np.max(np.abs(expected)))


@PROPERTY_SETTINGS
@given(m=orders, n=dims, seed=seeds)
def test_start_pair_residual(m: int, n: int, seed: int) -> None:
    a, b = _vector(n, seed), _vector(n, seed + 1)
    pair = start_pair(a, b, m)
    start = rank_one_start_tensor(a, b, m)

    assert residual(start, pair) <= 1e-13 * pair.value


@PROPERTY_SETTINGS
@given(n=st.sampled_from([5, 10]), seed=seeds, gamma=st.sampled_from([10.0, 1e3]))
def test_shift_equivariance(n: int, seed: int, gamma: float) -> None:
    tensor = _tensor(3, n, seed)

    base = solve_perron(tensor)
    shifted = solve_perron(tensor + identity_tensor(3, n).scaled(gamma))

    assert base.converged and shifted.converged
    expected = base.pair.value + gamma
    assert abs(shifted.pair.value - expected) <= 1e-9 * expected
    np.testing.assert_allclose(shifted.pair.vector, base.pair.vector, atol=1e-7)


@PROPERTY_SETTINGS
@given(m=orders, n=dims, seed=seeds, scale=st.sampled_from([0.5, 7.0]))
def test_scale_equivariance(m: int, n: int, seed: int, scale: float) -> None:
    tensor = _tensor(m, n, seed)

    base = solve_perron(tensor)
    scaled = solve_perron(tensor.scaled(scale))

    assert base.converged and scaled.converged
    assert abs(scaled.pair.value - scale * base.pair.value) <= 1e-9 * scale * base.pair.value
    np.testing.assert_allclose(scaled.pair.vector, base.pair.vector, atol=1e-9)


@PROPERTY_SETTINGS
@given(m=orders, n=dims, seed=seeds)
def test_perron_value_within_row_sum_bounds(m: int, n: int, seed: int) -> None:
    tensor = _tensor(m, n, seed)

    report = solve_perron(tensor)

    assert report.converged
    assert spectral_bounds(tensor).contains(report.pair.value, rel_tol=1e-10)


@PROPERTY_SETTINGS
@given(m=orders, n=dims, seed=seeds)
def test_accepted_path_states_are_positive(m: int, n: int, seed: int) -> None:
    report = solve_perron(_tensor(m, n, seed), a=_vector(n, seed), b=_vector(n, seed + 1))

    assert report.converged
    assert report.residual <= 1e-12
    assert all(state.pair.is_positive() for state in report.trace)
    assert [state.t for state in report.trace] == sorted(state.t for state in report.trace)
