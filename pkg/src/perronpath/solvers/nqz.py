"""NQZ power-type method for the Perron value of a nonnegative tensor.

Each iteration maps a positive unit vector ``x`` to

    y = A x^{m-1},   x+ = y^{[1/(m-1)]} / |y^{[1/(m-1)]}|

and brackets the Perron value between ``min_i y_i / x_i^{m-1}`` and
``max_i y_i / x_i^{m-1}``. The method converges linearly for primitive
tensors, at a rate that degrades as the second largest eigenvalue modulus
approaches the Perron value. An identity shift ``A + gamma I`` moves the
spectrum and restores convergence for irreducible tensors that are not
primitive.

The tensor is divided by its largest entry before iterating; the shift is
applied afterwards, in those scaled units. The iteration stops when the
stacked eigen-residual of ``(lambda_hi, x_k)`` drops below ``tol`` or when
``max_iters`` is exceeded.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from perronpath.core.constants import DEFAULT_NQZ_MAX_ITERS, DEFAULT_NQZ_TOL
from perronpath.core.linalg import norm2, normalize, residual
from perronpath.core.models import ConfigError, EigenPair, Termination
from perronpath.core.tensor import (
    DenseTensor,
    DimensionMismatchError,
    Vector,
    apply_m1,
    hadamard_power,
    identity_tensor,
    preprocess,
    require_positive,
)

logger = logging.getLogger(__name__)


class NqzError(Exception):
    """Base exception for NQZ baseline errors."""


class DegenerateIterateError(NqzError):
    """Raised when ``A x^{m-1}`` has a zero component for a positive ``x``.

    Attributes:
        index: 0-based index of the first zero component.
    """

    def __init__(self, index: int) -> None:
        super().__init__(
            f"Component {index + 1} of A x^(m-1) vanished; the tensor is reducible "
            "or has a zero slice."
        )
        self.index = index


@dataclass(frozen=True)
class NqzConfig:
    """Parameters of the NQZ iteration.

    Attributes:
        tol: Residual tolerance of the convergence test.
        max_iters: Iteration cap.
        shift: Identity shift ``gamma >= 0`` in preprocessed units; ``0`` is
            the plain method.
    """

    tol: float = DEFAULT_NQZ_TOL
    max_iters: int = DEFAULT_NQZ_MAX_ITERS
    shift: float = 0.0

    def __post_init__(self) -> None:
        if self.tol <= 0:
            raise ConfigError(f"tol must be positive, got {self.tol}.")
        if self.max_iters < 1:
            raise ConfigError(f"max_iters must be at least 1, got {self.max_iters}.")
        if self.shift < 0:
            raise ConfigError(f"shift must be nonnegative, got {self.shift}.")


@dataclass(frozen=True)
class NqzStep:
    """One NQZ update with its eigenvalue bracket."""

    x_next: Vector
    lambda_lo: float
    lambda_hi: float


@dataclass(frozen=True)
class NqzReport:
    """Result of an NQZ solve.

    ``pair``, ``lambda_lo`` and ``lambda_hi`` refer to the original tensor
    (shift removed, rescaled by ``scale``); ``residual`` is measured on the
    preprocessed, shifted tensor.
    """

    pair: EigenPair
    iters: int
    converged: bool
    lambda_lo: float
    lambda_hi: float
    residual: float
    wall_time: float
    scale: float = 1.0
    shift: float = 0.0
    diagnostic: Optional[str] = None

    @property
    def termination(self) -> Termination:
        if self.converged:
            return Termination.CONVERGED
        if self.diagnostic is not None:
            return Termination.PATH_FAILURE
        return Termination.STEP_LIMIT


def nqz_iterate(A: DenseTensor, x: ArrayLike) -> NqzStep:
    """Apply one NQZ update to a positive unit vector ``x``.

    Raises:
        DegenerateIterateError: If a component of ``A x^{m-1}`` is zero.
    """
    vec = np.asarray(x, dtype=np.float64)
    y = apply_m1(A, vec)
    zero = np.flatnonzero(y <= 0.0)
    if zero.size:
        raise DegenerateIterateError(int(zero[0]))
    ratios = y / hadamard_power(vec, A.order - 1)
    root = hadamard_power(y, 1.0 / (A.order - 1))
    return NqzStep(
        x_next=root / norm2(root),
        lambda_lo=float(ratios.min()),
        lambda_hi=float(ratios.max()),
    )


def nqz_solve(
    A: DenseTensor,
    x0: Optional[ArrayLike] = None,
    cfg: Optional[NqzConfig] = None,
) -> NqzReport:
    """Run the NQZ method on ``A``.

    Args:
        A: Nonnegative, nonzero tensor.
        x0: Positive start vector (default ``ones / sqrt(n)``); normalised.
        cfg: Iteration parameters.

    Returns:
        The :class:`NqzReport`. A degenerate iterate ends the run with
        ``converged=False`` and a diagnostic instead of raising.

    Raises:
        NegativeEntryError: If ``A`` has a negative entry or ``x0`` a
            nonpositive one.
        ZeroTensorError: If ``A`` is zero.
    """
    cfg = cfg or NqzConfig()
    started = time.perf_counter()
    scaled, tau = preprocess(A)
    B = scaled + identity_tensor(A.order, A.dim).scaled(cfg.shift) if cfg.shift else scaled

    x = np.ones(A.dim) if x0 is None else np.asarray(x0, dtype=np.float64)
    if x.shape != (A.dim,):
        raise DimensionMismatchError(f"Start vector must have length {A.dim}.")
    require_positive(x, "x0")
    x = normalize(x)

    lo = hi = float("nan")
    res = float("inf")
    converged = False
    diagnostic: Optional[str] = None
    iters = 0
    for iters in range(cfg.max_iters + 1):
        try:
            step = nqz_iterate(B, x)
        except DegenerateIterateError as exc:
            diagnostic = str(exc)
            logger.warning("NQZ stopped at iteration %d: %s", iters, exc)
            break
        lo, hi = step.lambda_lo, step.lambda_hi
        res = residual(B, EigenPair(hi, x))
        if res <= cfg.tol:
            converged = True
            break
        if iters == cfg.max_iters:
            break
        x = step.x_next

    if not converged and diagnostic is None:
        logger.info("NQZ did not converge in %d iterations (residual %.3e).", cfg.max_iters, res)

    def unshift(value: float) -> float:
        return tau * (value - cfg.shift)

    report = NqzReport(
        pair=EigenPair(unshift(hi), x),
        iters=iters,
        converged=converged,
        lambda_lo=unshift(lo),
        lambda_hi=unshift(hi),
        residual=res,
        wall_time=time.perf_counter() - started,
        scale=tau,
        shift=cfg.shift,
        diagnostic=diagnostic,
    )
    logger.info(
        "NQZ %s: lambda=%.12g residual=%.3e iters=%d",
        report.termination.value,
        report.pair.value,
        report.residual,
        report.iters,
    )
    return report
