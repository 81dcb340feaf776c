"""Dense linear algebra kernels for the Newton corrector and tangent solves.

Linear systems are solved by LU factorisation with partial pivoting
(:func:`scipy.linalg.lu_factor`). A pivot smaller than
``SINGULAR_PIVOT_RATIO * max|A|`` is reported as
:class:`SingularMatrixError`, which the path follower treats as a
step-rejection signal rather than a fatal error.
"""

from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from perronpath.core.constants import SINGULAR_PIVOT_RATIO
from perronpath.core.models import EigenPair
from perronpath.core.tensor import (
    DenseTensor,
    DimensionMismatchError,
    Vector,
    apply_m1,
    hadamard_power,
)


class LinalgError(Exception):
    """Base exception for linear algebra errors."""


class SingularMatrixError(LinalgError):
    """Raised when LU factorisation meets a numerically zero pivot.

    Attributes:
        pivot_index: 0-based index of the offending pivot.
    """

    def __init__(self, pivot_index: int, pivot: float) -> None:
        super().__init__(f"Matrix is numerically singular at pivot {pivot_index} ({pivot:.3e}).")
        self.pivot_index = pivot_index
        self.pivot = pivot


def lu_solve(A: ArrayLike, rhs: ArrayLike) -> Vector:
    """Solve ``A y = rhs`` by LU factorisation with partial pivoting.

    Args:
        A: Square matrix.
        rhs: Right-hand side, a vector or a matrix of column right-hand sides.

    Returns:
        The solution ``y`` with the shape of ``rhs``.

    Raises:
        DimensionMismatchError: If ``A`` is not square or ``rhs`` does not conform.
        SingularMatrixError: If a pivot is below the singularity threshold.
    """
    matrix = np.asarray(A, dtype=np.float64)
    rhs_arr = np.asarray(rhs, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatchError(f"Expected a square matrix, got shape {matrix.shape}.")
    if rhs_arr.shape[0] != matrix.shape[0]:
        raise DimensionMismatchError(
            f"Right-hand side of length {rhs_arr.shape[0]} does not match {matrix.shape[0]}."
        )

    scale = float(np.abs(matrix).max()) if matrix.size else 0.0
    if scale == 0.0 or not np.isfinite(scale):
        raise SingularMatrixError(0, 0.0)

    with warnings.catch_warnings():
        # exact zero pivots are reported below, not as LinAlgWarning
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(matrix, check_finite=False)

    pivots = np.abs(np.diag(lu))
    small = np.flatnonzero(pivots < SINGULAR_PIVOT_RATIO * scale)
    if small.size:
        index = int(small[0])
        raise SingularMatrixError(index, float(np.diag(lu)[index]))

    return np.asarray(scipy.linalg.lu_solve((lu, piv), rhs_arr, check_finite=False))


def norm2(v: ArrayLike) -> float:
    """Euclidean norm."""
    return float(np.linalg.norm(np.asarray(v, dtype=np.float64)))


def normalize(v: ArrayLike) -> Vector:
    """Return ``v / norm2(v)``.

    Raises:
        ValueError: If ``v`` is the zero vector.
    """
    vec = np.asarray(v, dtype=np.float64)
    length = norm2(vec)
    if length == 0.0:
        raise ValueError("Cannot normalise the zero vector.")
    return vec / length


def eigen_residual_vector(A: DenseTensor, value: float, x: ArrayLike) -> Vector:
    """Return the stacked vector ``(A x^{m-1} - value * x^{[m-1]}, x.x - 1)``."""
    vec = np.asarray(x, dtype=np.float64)
    top = apply_m1(A, vec) - value * hadamard_power(vec, A.order - 1)
    return np.append(top, vec @ vec - 1.0)


def residual(A: DenseTensor, pair: EigenPair) -> float:
    """Return the norm of :func:`eigen_residual_vector` for ``pair``.

    Raises:
        DimensionMismatchError: If the pair dimension differs from ``A.dim``.
    """
    return norm2(eigen_residual_vector(A, pair.value, pair.vector))
