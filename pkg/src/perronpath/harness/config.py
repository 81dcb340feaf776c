"""Experiment configuration for the benchmark harness.

An :class:`ExperimentSpec` names one generated tensor (a fixed example or a
seeded random tensor plus ``gamma * I``) together with the methods to run on
it and their solver settings.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from typing import Optional, Tuple

from perronpath.core.constants import (
    DEFAULT_NQZ_SHIFT,
    DEFAULT_THREADS,
    EXAMPLE_IDS,
    METHODS,
    THREADS_ENV_VAR,
)
from perronpath.core.models import ConfigError
from perronpath.solvers.homotopy import SolverConfig
from perronpath.solvers.nqz import NqzConfig

logger = logging.getLogger(__name__)

FIXED_EXAMPLE_SIZE = 3
MAX_SEED = 2**64


class HarnessError(Exception):
    """Base exception for harness errors."""


class ExperimentConfigError(HarnessError, ConfigError):
    """Raised when an experiment specification is inconsistent."""


@dataclass(frozen=True)
class ExperimentSpec:
    """One experiment: a generated tensor and the methods to run on it.

    Attributes:
        example: ``cpz``, ``lgl`` or ``random``.
        m: Tensor order; fixed to 3 for ``cpz`` and ``lgl``.
        n: Tensor dimension; fixed to 3 for ``cpz`` and ``lgl``.
        gamma: Multiple of the identity tensor added to ``lgl`` and ``random``.
        seed: Seed of the random generator (``random`` only).
        methods: Methods to run, in report order.
        solver: Homotopy settings.
        nqz: NQZ settings; its ``shift`` is ignored.
        nqz_shift: Shift used by the ``nqz-shift`` method, in preprocessed units.
    """

    example: str
    m: Optional[int] = None
    n: Optional[int] = None
    gamma: float = 0.0
    seed: Optional[int] = None
    methods: Tuple[str, ...] = ("homotopy", "nqz")
    solver: SolverConfig = field(default_factory=SolverConfig)
    nqz: NqzConfig = field(default_factory=NqzConfig)
    nqz_shift: float = DEFAULT_NQZ_SHIFT

    def __post_init__(self) -> None:
        if self.example not in EXAMPLE_IDS:
            raise ExperimentConfigError(
                f"Unknown example '{self.example}'. Expected one of: {', '.join(EXAMPLE_IDS)}"
            )
        object.__setattr__(self, "methods", tuple(self.methods))
        self._validate_methods()

        if self.example == "random":
            if self.m is None or self.n is None or self.seed is None:
                raise ExperimentConfigError("The random example requires m, n and seed.")
            if self.m < 2 or self.n < 1:
                raise ExperimentConfigError(
                    f"Random tensors need m >= 2 and n >= 1, got m={self.m}, n={self.n}."
                )
            if not 0 <= self.seed < MAX_SEED:
                raise ExperimentConfigError(f"Seed must be a 64-bit unsigned integer, got {self.seed}.")
        else:
            for name in ("m", "n"):
                value = getattr(self, name)
                if value is not None and value != FIXED_EXAMPLE_SIZE:
                    raise ExperimentConfigError(
                        f"The {self.example} example has {name}={FIXED_EXAMPLE_SIZE}, got {value}."
                    )
                object.__setattr__(self, name, FIXED_EXAMPLE_SIZE)
            if self.example == "cpz" and self.gamma != 0.0:
                raise ExperimentConfigError("The cpz example takes no gamma shift.")

        if self.gamma < 0:
            raise ExperimentConfigError(f"gamma must be nonnegative, got {self.gamma}.")
        if self.nqz_shift < 0:
            raise ExperimentConfigError(f"nqz_shift must be nonnegative, got {self.nqz_shift}.")

    def _validate_methods(self) -> None:
        if not self.methods:
            raise ExperimentConfigError("At least one method is required.")
        unknown = [method for method in self.methods if method not in METHODS]
        if unknown:
            raise ExperimentConfigError(
                f"Unknown methods: {', '.join(unknown)}. Expected a subset of: {', '.join(METHODS)}"
            )
        if len(set(self.methods)) != len(self.methods):
            raise ExperimentConfigError("Methods must not repeat.")

    @property
    def label(self) -> str:
        """Short human-readable name, e.g. ``random m=3 n=20 gamma=100``."""
        if self.example == "cpz":
            return "cpz"
        if self.example == "lgl":
            return f"lgl gamma={self.gamma:g}"
        return f"random m={self.m} n={self.n} gamma={self.gamma:g}"


def harness_threads() -> int:
    """Return the worker cap from ``PERRON_THREADS`` (default 1).

    Raises:
        ExperimentConfigError: If the variable is set to anything but a
            positive integer.
    """
    raw = os.environ.get(THREADS_ENV_VAR, "").strip()
    if not raw:
        return DEFAULT_THREADS
    try:
        threads = int(raw)
    except ValueError as exc:
        raise ExperimentConfigError(
            f"{THREADS_ENV_VAR} must be a positive integer, got '{raw}'."
        ) from exc
    if threads < 1:
        raise ExperimentConfigError(f"{THREADS_ENV_VAR} must be a positive integer, got {threads}.")
    logger.debug("Harness parallelism capped at %d threads", threads)
    return threads
