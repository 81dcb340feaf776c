"""Tests for perronpath.core.linalg and perronpath.core.models."""

from __future__ import annotations

import numpy as np
import pytest

from perronpath.core.linalg import (
    SingularMatrixError,
    eigen_residual_vector,
    lu_solve,
    norm2,
    normalize,
    residual,
)
from perronpath.core.models import EigenPair
from perronpath.core.tensor import DimensionMismatchError
from perronpath.harness.examples import cpz_tensor


def cpz_perron_pair() -> EigenPair:
    """Closed-form Perron pair of the cpz tensor: lambda = sqrt(11)."""
    lam = np.sqrt(11.0)
    x = np.sqrt(np.array([lam, 3.0, 4.0]) / (lam + 7.0))
    return EigenPair(lam, x)


# ---------------------------------------------------------------------------
# LU solves
# ---------------------------------------------------------------------------


def test_lu_solve_matches_numpy() -> None:
    rng = np.random.default_rng(7)
    matrix = rng.random((6, 6)) + 6 * np.eye(6)
    rhs = rng.random(6)

    np.testing.assert_allclose(lu_solve(matrix, rhs), np.linalg.solve(matrix, rhs), rtol=1e-12)


def test_lu_solve_accepts_multiple_right_hand_sides() -> None:
    matrix = np.array([[2.0, 1.0], [1.0, 3.0]])
    rhs = np.eye(2)

    np.testing.assert_allclose(matrix @ lu_solve(matrix, rhs), np.eye(2), atol=1e-14)


def test_lu_solve_reports_singular_pivot() -> None:
    with pytest.raises(SingularMatrixError) as excinfo:
        lu_solve(np.array([[1.0, 2.0], [2.0, 4.0]]), np.ones(2))

    assert excinfo.value.pivot_index == 1


def test_lu_solve_zero_matrix_is_singular() -> None:
    with pytest.raises(SingularMatrixError) as excinfo:
        lu_solve(np.zeros((3, 3)), np.ones(3))

    assert excinfo.value.pivot_index == 0


def test_lu_solve_rejects_non_conforming_input() -> None:
    with pytest.raises(DimensionMismatchError):
        lu_solve(np.ones((2, 3)), np.ones(2))
    with pytest.raises(DimensionMismatchError):
        lu_solve(np.eye(3), np.ones(2))


# ---------------------------------------------------------------------------
# Norms and residuals
# ---------------------------------------------------------------------------


def test_normalize() -> None:
    assert norm2([3.0, 4.0]) == 5.0
    np.testing.assert_allclose(normalize([3.0, 4.0]), [0.6, 0.8])
    with pytest.raises(ValueError):
        normalize(np.zeros(2))


def test_residual_of_closed_form_pair() -> None:
    assert residual(cpz_tensor(), cpz_perron_pair()) <= 1e-14


def test_residual_vector_layout() -> None:
    vector = eigen_residual_vector(cpz_tensor(), 3.0, np.ones(3))

    assert vector.shape == (4,)
    np.testing.assert_allclose(vector, [0.0, 0.0, 1.0, 2.0])


def test_residual_rejects_wrong_dimension() -> None:
    with pytest.raises(DimensionMismatchError):
        residual(cpz_tensor(), EigenPair(1.0, np.ones(2)))


# ---------------------------------------------------------------------------
# EigenPair
# ---------------------------------------------------------------------------


def test_eigen_pair_is_immutable_copy() -> None:
    source = np.array([1.0, 2.0])
    pair = EigenPair(2, source)
    source[0] = 5.0

    assert pair.vector[0] == 1.0
    assert isinstance(pair.value, float)
    with pytest.raises(ValueError):
        pair.vector[0] = 3.0


def test_eigen_pair_positivity_and_scaling() -> None:
    pair = EigenPair(2.0, [0.6, 0.8])

    assert pair.is_positive()
    assert not EigenPair(2.0, [1.0, 0.0]).is_positive()
    assert not EigenPair(-1.0, [1.0, 1.0]).is_positive()
    assert pair.scaled(3.0).value == 6.0
    assert pair.dim == 2
