"""Tensor storage, linear algebra kernels and shared result types."""

from perronpath.core.models import ConfigError, EigenPair, Termination
from perronpath.core.tensor import (
    DenseTensor,
    DimensionMismatchError,
    NegativeEntryError,
    TensorError,
    ZeroTensorError,
)

__all__ = [
    "ConfigError",
    "DenseTensor",
    "DimensionMismatchError",
    "EigenPair",
    "NegativeEntryError",
    "TensorError",
    "Termination",
    "ZeroTensorError",
]
