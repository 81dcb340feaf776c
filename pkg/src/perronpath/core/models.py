"""Result types and configuration errors shared by the homotopy solver and the NQZ baseline."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from perronpath.core.tensor import Vector


class ConfigError(ValueError):
    """Raised when a solver or harness configuration violates its invariants."""


class Termination(str, Enum):
    """Why a solver stopped."""

    CONVERGED = "converged"
    STEP_LIMIT = "step_limit"
    PATH_FAILURE = "path_failure"


@dataclass(frozen=True, eq=False)
class EigenPair:
    """An eigenvalue with its eigenvector.

    Attributes:
        value: The eigenvalue ``lambda``.
        vector: The eigenvector ``x``; unit Euclidean norm for solver outputs.
    """

    value: float
    vector: Vector

    def __post_init__(self) -> None:
        vector = np.array(self.vector, dtype=np.float64)
        vector.flags.writeable = False
        object.__setattr__(self, "vector", vector)
        object.__setattr__(self, "value", float(self.value))

    @property
    def dim(self) -> int:
        return int(self.vector.shape[0])

    def is_positive(self) -> bool:
        """Return whether ``value > 0`` and every component of ``vector`` is positive."""
        return self.value > 0 and bool((self.vector > 0).all())

    def scaled(self, factor: float) -> EigenPair:
        """Return the pair with the eigenvalue multiplied by ``factor``."""
        return EigenPair(self.value * factor, self.vector)
