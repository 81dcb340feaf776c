"""Dense tensor storage and multilinear algebra.

This module implements :class:`DenseTensor`, an immutable order-``m``,
dimension-``n`` real tensor stored as a C-ordered numpy array of shape
``(n,) * m``. The flattened entries are therefore in lexicographic index
order, which is the layout used by the tensor file format.

The operations needed by the solvers are module-level functions:

* :func:`apply_m1` and :func:`apply_m2` contract the trailing indices with
  a vector (``A x^{m-1}`` and ``A x^{m-2}``).
* :func:`multilinear_form` evaluates ``A x^m``.
* :func:`partial_symmetrize` averages over permutations of the trailing
  ``m - 1`` indices so that :func:`jacobian_map` is the true derivative of
  ``A x^{m-1}``.
* :func:`rank_one_start_tensor` and :func:`identity_tensor` build the
  structured tensors used as homotopy start systems and shifts.
* :func:`spectral_bounds` and :func:`weak_irreducibility_check` are cheap
  diagnostics for nonnegative tensors.

Indices are 0-based internally; the harness converts to and from the
1-based convention of files and reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.sparse.csgraph import connected_components

Vector = NDArray[np.float64]
Matrix = NDArray[np.float64]


class TensorError(Exception):
    """Base exception for tensor related errors."""


class DimensionMismatchError(TensorError):
    """Raised when a vector or tensor does not conform to the expected dimension."""


class NegativeEntryError(TensorError):
    """Raised when a nonnegative tensor or positive vector is required."""


class PowerDomainError(TensorError):
    """Raised when a fractional componentwise power meets a negative entry."""


class ZeroTensorError(TensorError):
    """Raised when a nonzero tensor is required."""


@dataclass(frozen=True)
class SpectralBounds:
    """Gershgorin-type bounds for the Perron value of a nonnegative tensor.

    Attributes:
        total_sum: Sum of all entries.
        row_min: Smallest row sum ``R_i = sum A_{i i2 ... im}``.
        row_max: Largest row sum.

    Notes:
        For a nonnegative tensor ``row_min <= lambda* <= row_max <= total_sum``.
    """

    total_sum: float
    row_min: float
    row_max: float

    @property
    def row_sum_bounds(self) -> Tuple[float, float]:
        """Return ``(row_min, row_max)``."""
        return (self.row_min, self.row_max)

    def contains(self, value: float, rel_tol: float = 1e-12) -> bool:
        """Return whether ``value`` lies in ``[row_min, row_max]`` up to ``rel_tol``."""
        slack = rel_tol * max(1.0, abs(self.row_max))
        return self.row_min - slack <= value <= self.row_max + slack


class DenseTensor:
    """Immutable dense real tensor of order ``m`` and dimension ``n``.

    Example:
        >>> A = DenseTensor.from_entries(3, 3, [((1, 2, 2), 1.0), ((2, 1, 1), 3.0)])
        >>> A.order, A.dim, A.nnz()
        (3, 3, 2)
    """

    __slots__ = ("_data",)

    def __init__(self, data: ArrayLike) -> None:
        """Wrap an array of shape ``(n,) * m``.

        Args:
            data: Array-like with ``m >= 2`` equal axes of length ``n >= 1``.

        Raises:
            TensorError: If the shape is not a valid cubical tensor or an entry
                is not finite.
        """
        array = np.array(data, dtype=np.float64, order="C", copy=True)
        if array.ndim < 2:
            raise TensorError(f"Tensor order must be at least 2, got {array.ndim}.")
        n = array.shape[0]
        if n < 1 or any(size != n for size in array.shape):
            raise TensorError(f"Tensor must have equal dimensions, got shape {array.shape}.")
        if not np.isfinite(array).all():
            raise TensorError("Tensor entries must be finite.")
        array.flags.writeable = False
        self._data: NDArray[np.float64] = array

    @classmethod
    def zeros(cls, m: int, n: int) -> DenseTensor:
        """Return the zero tensor of order ``m`` and dimension ``n``."""
        if m < 2 or n < 1:
            raise TensorError(f"Invalid tensor size m={m}, n={n}.")
        return cls(np.zeros((n,) * m))

    @classmethod
    def from_flat(cls, m: int, n: int, entries: ArrayLike) -> DenseTensor:
        """Build a tensor from ``n**m`` entries in lexicographic order."""
        flat = np.asarray(entries, dtype=np.float64).ravel()
        if flat.size != n**m:
            raise DimensionMismatchError(
                f"Expected {n ** m} entries for m={m}, n={n}, got {flat.size}."
            )
        return cls(flat.reshape((n,) * m))

    @classmethod
    def from_entries(
        cls, m: int, n: int, records: Iterable[Tuple[Tuple[int, ...], float]]
    ) -> DenseTensor:
        """Build a tensor from sparse ``(1-based index tuple, value)`` records.

        Unlisted entries are zero; repeated tuples are summed.

        Raises:
            DimensionMismatchError: If a tuple has the wrong length or an index
                is outside ``1..n``.
        """
        data = np.zeros((n,) * m)
        for index, value in records:
            if len(index) != m:
                raise DimensionMismatchError(f"Index {index} does not have {m} components.")
            if any(i < 1 or i > n for i in index):
                raise DimensionMismatchError(f"Index {index} is outside 1..{n}.")
            data[tuple(i - 1 for i in index)] += value
        return cls(data)

    @property
    def data(self) -> NDArray[np.float64]:
        """Read-only array of shape ``(n,) * m``."""
        return self._data

    @property
    def order(self) -> int:
        """Tensor order ``m``."""
        return int(self._data.ndim)

    @property
    def dim(self) -> int:
        """Tensor dimension ``n``."""
        return int(self._data.shape[0])

    @property
    def entries(self) -> NDArray[np.float64]:
        """Flat read-only view of the ``n**m`` entries in lexicographic order."""
        return self._data.reshape(-1)

    def nnz(self) -> int:
        """Number of nonzero entries."""
        return int(np.count_nonzero(self._data))

    def max_entry(self) -> float:
        """Largest entry."""
        return float(self._data.max())

    def is_nonnegative(self) -> bool:
        return bool((self._data >= 0).all())

    def require_nonnegative(self) -> None:
        """Raise :class:`NegativeEntryError` if any entry is negative."""
        if not self.is_nonnegative():
            index = np.unravel_index(int(np.argmin(self._data)), self._data.shape)
            one_based = tuple(int(i) + 1 for i in index)
            raise NegativeEntryError(
                f"Tensor has a negative entry {self._data[index]:.6g} at {one_based}."
            )

    def scaled(self, factor: float) -> DenseTensor:
        """Return ``factor * self``."""
        return DenseTensor(self._data * factor)

    def __add__(self, other: object) -> DenseTensor:
        if not isinstance(other, DenseTensor):
            return NotImplemented
        if other.order != self.order or other.dim != self.dim:
            raise DimensionMismatchError(
                f"Cannot add tensors of sizes ({self.order},{self.dim}) and "
                f"({other.order},{other.dim})."
            )
        return DenseTensor(self._data + other._data)

    def __sub__(self, other: object) -> DenseTensor:
        if not isinstance(other, DenseTensor):
            return NotImplemented
        return self + other.scaled(-1.0)

    def __mul__(self, factor: object) -> DenseTensor:
        if not isinstance(factor, (int, float, np.floating)):
            return NotImplemented
        return self.scaled(float(factor))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DenseTensor):
            return NotImplemented
        return self._data.shape == other._data.shape and bool(
            np.array_equal(self._data, other._data)
        )

    def __hash__(self) -> int:
        return hash((self._data.shape, self._data.tobytes()))

    def __repr__(self) -> str:
        return f"DenseTensor(order={self.order}, dim={self.dim}, nnz={self.nnz()})"


# ---------------------------------------------------------------------------
# Vector helpers
# ---------------------------------------------------------------------------


def _as_vector(x: ArrayLike, n: int) -> Vector:
    vec = np.asarray(x, dtype=np.float64)
    if vec.ndim != 1 or vec.shape[0] != n:
        raise DimensionMismatchError(f"Expected a vector of length {n}, got shape {vec.shape}.")
    return vec


def hadamard_power(x: ArrayLike, alpha: float) -> Vector:
    """Return the componentwise power ``x^{[alpha]}``.

    Args:
        x: Input vector.
        alpha: Exponent. Integer exponents accept any sign; fractional
            exponents require a nonnegative vector.

    Raises:
        PowerDomainError: If ``alpha`` is fractional and ``x`` has a negative entry.
    """
    vec = np.asarray(x, dtype=np.float64)
    if float(alpha).is_integer():
        return np.power(vec, int(alpha))
    if (vec < 0).any():
        raise PowerDomainError(f"x^[{alpha}] is undefined for vectors with negative entries.")
    return np.power(vec, alpha)


# ---------------------------------------------------------------------------
# Contractions
# ---------------------------------------------------------------------------


def _contract_trailing(A: DenseTensor, x: Vector, count: int) -> NDArray[np.float64]:
    result = A.data
    for _ in range(count):
        result = result @ x
    return result


def apply_m1(A: DenseTensor, x: ArrayLike) -> Vector:
    """Return ``A x^{m-1}``, i.e. ``y_i = sum A_{i i2..im} x_{i2} ... x_{im}``.

    Raises:
        DimensionMismatchError: If ``x`` does not have length ``A.dim``.
    """
    vec = _as_vector(x, A.dim)
    return np.asarray(_contract_trailing(A, vec, A.order - 1), dtype=np.float64)


def apply_m2(A: DenseTensor, x: ArrayLike) -> Matrix:
    """Return the matrix ``A x^{m-2}``; for ``m = 2`` this is ``A`` itself.

    Raises:
        DimensionMismatchError: If ``x`` does not have length ``A.dim``.
    """
    vec = _as_vector(x, A.dim)
    return np.array(_contract_trailing(A, vec, A.order - 2), dtype=np.float64)


def multilinear_form(A: DenseTensor, x: ArrayLike) -> float:
    """Return ``A x^m``, which equals ``x . (A x^{m-1})``."""
    vec = _as_vector(x, A.dim)
    return float(vec @ apply_m1(A, vec))


def partial_symmetrize(A: DenseTensor) -> DenseTensor:
    """Average ``A`` over all permutations of its trailing ``m - 1`` indices.

    The result satisfies ``apply_m1(result, x) == apply_m1(A, x)`` for every
    ``x`` and is a fixed point of this function.
    """
    m = A.order
    total = np.zeros_like(A.data)
    for perm in permutations(range(1, m)):
        total += np.transpose(A.data, (0,) + perm)
    return DenseTensor(total / math.factorial(m - 1))


def jacobian_map(A_bar: DenseTensor, x: ArrayLike) -> Matrix:
    """Return ``(m - 1) * A_bar x^{m-2}``, the Jacobian of ``x -> A_bar x^{m-1}``.

    ``A_bar`` must be partially symmetric (see :func:`partial_symmetrize`).
    """
    return (A_bar.order - 1) * apply_m2(A_bar, x)


# ---------------------------------------------------------------------------
# Structured tensors
# ---------------------------------------------------------------------------


def require_positive(vec: Vector, name: str) -> None:
    """Raise :class:`NegativeEntryError` unless every entry of ``vec`` is positive."""
    if not (vec > 0).all():
        raise NegativeEntryError(f"Vector '{name}' must be strictly positive.")


def rank_one_start_tensor(a: ArrayLike, b: ArrayLike, m: int) -> DenseTensor:
    """Return ``E = a^{[m-1]} o b o ... o b`` with ``E_{i1..im} = a_{i1}^{m-1} b_{i2}...b_{im}``.

    Raises:
        NegativeEntryError: If ``a`` or ``b`` has a nonpositive entry.
        DimensionMismatchError: If ``a`` and ``b`` differ in length.
    """
    if m < 2:
        raise TensorError(f"Tensor order must be at least 2, got {m}.")
    a_vec = np.asarray(a, dtype=np.float64)
    b_vec = _as_vector(b, a_vec.shape[0])
    require_positive(a_vec, "a")
    require_positive(b_vec, "b")
    result = np.power(a_vec, m - 1)
    for _ in range(m - 1):
        result = np.multiply.outer(result, b_vec)
    return DenseTensor(result)


def identity_tensor(m: int, n: int) -> DenseTensor:
    """Return the identity tensor (ones on the superdiagonal ``i1 = ... = im``)."""
    if m < 2 or n < 1:
        raise TensorError(f"Invalid tensor size m={m}, n={n}.")
    data = np.zeros((n,) * m)
    diagonal = np.arange(n)
    data[(diagonal,) * m] = 1.0
    return DenseTensor(data)


# ---------------------------------------------------------------------------
# Diagnostics
# ---------------------------------------------------------------------------


def spectral_bounds(A: DenseTensor) -> SpectralBounds:
    """Return the total-sum and row-sum bounds on the Perron value.

    Raises:
        NegativeEntryError: If ``A`` has a negative entry.
    """
    A.require_nonnegative()
    rows = A.data.reshape(A.dim, -1).sum(axis=1)
    return SpectralBounds(
        total_sum=float(A.data.sum()),
        row_min=float(rows.min()),
        row_max=float(rows.max()),
    )


def influence_graph(A: DenseTensor) -> NDArray[np.bool_]:
    """Return the adjacency matrix with ``i -> j`` when some positive entry
    ``A_{i i2..im}`` has ``j`` among its trailing indices."""
    positive = A.data > 0
    m = A.order
    adjacency = np.zeros((A.dim, A.dim), dtype=bool)
    for axis in range(1, m):
        others = tuple(k for k in range(1, m) if k != axis)
        adjacency |= positive.any(axis=others) if others else positive
    return adjacency


def weak_irreducibility_check(A: DenseTensor) -> bool:
    """Return whether the influence graph of ``A`` is strongly connected.

    ``False`` proves ``A`` reducible; ``True`` is necessary but not sufficient
    for irreducibility.
    """
    A.require_nonnegative()
    if A.dim == 1:
        return True
    n_components, _ = connected_components(
        influence_graph(A).astype(np.int8), directed=True, connection="strong"
    )
    return bool(n_components == 1)


def preprocess(A: DenseTensor) -> Tuple[DenseTensor, float]:
    """Divide a nonnegative tensor by its largest entry.

    Returns:
        ``(A / tau, tau)`` where ``tau = max(A)``; Perron values of the scaled
        tensor are multiplied by ``tau`` to recover those of ``A``.

    Raises:
        NegativeEntryError: If ``A`` has a negative entry.
        ZeroTensorError: If ``A`` is identically zero.
    """
    A.require_nonnegative()
    tau = A.max_entry()
    if tau <= 0.0:
        raise ZeroTensorError("The zero tensor has no Perron pair.")
    return A.scaled(1.0 / tau), tau
