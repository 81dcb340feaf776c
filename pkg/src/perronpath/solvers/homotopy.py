"""Homotopy continuation for the Perron pair of a nonnegative tensor.

The target eigenproblem ``A x^{m-1} = lambda x^{[m-1]}, x.x = 1`` is
deformed from a start problem with the same structure whose tensor

    E = a^{[m-1]} o b o ... o b        (a, b > 0)

has the known Perron pair ``((a.b)^{m-1}, a / |a|)``. The homotopy

    H(lambda, x, t) = ((t A + (1 - t) E) x^{m-1} - lambda x^{[m-1]}, x.x - 1)

has a unique positive solution curve for irreducible ``A``; it is traced
from ``t = 0`` to ``t = 1`` by Euler prediction along the tangent and
Newton correction back onto the curve, with the step size adapted from the
number of Newton iterations each correction needed.

Before solving, ``A`` is divided by its largest entry ``tau`` and the
computed eigenvalue is multiplied back by ``tau``. The Jacobian uses the
partially symmetrized target, computed once per problem.

Example:
    >>> from perronpath.harness.examples import cpz_tensor
    >>> report = solve_perron(cpz_tensor())
    >>> round(report.pair.value, 10)
    3.3166247904
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike

from perronpath.core.constants import (
    DEFAULT_CUT_THRESHOLD,
    DEFAULT_DT0,
    DEFAULT_DT_MAX,
    DEFAULT_DT_MIN,
    DEFAULT_EPS1,
    DEFAULT_EPS2,
    DEFAULT_MAX_STEPS,
    DEFAULT_NEWTON_BUDGET,
    STEP_GROW,
    STEP_SHRINK,
)
from perronpath.core.linalg import SingularMatrixError, lu_solve, norm2, residual
from perronpath.core.models import ConfigError, EigenPair, Termination
from perronpath.core.tensor import (
    DenseTensor,
    DimensionMismatchError,
    Matrix,
    Vector,
    apply_m1,
    hadamard_power,
    jacobian_map,
    partial_symmetrize,
    preprocess,
    rank_one_start_tensor,
    require_positive,
    weak_irreducibility_check,
)

logger = logging.getLogger(__name__)


class HomotopyError(Exception):
    """Base exception for homotopy solver errors."""


class CorrectionFailedError(HomotopyError):
    """Raised when a Newton correction does not return to the positive path.

    Attributes:
        reason: Short description of the failure.
        iterations: Newton corrections applied before failing.
    """

    def __init__(self, reason: str, iterations: int) -> None:
        super().__init__(f"Newton correction failed after {iterations} iterations: {reason}.")
        self.reason = reason
        self.iterations = iterations


@dataclass(frozen=True)
class SolverConfig:
    """Path-following parameters.

    Attributes:
        dt0: Initial step size.
        eps1: Corrector tolerance on interior steps.
        eps2: Corrector tolerance at ``t = 1``.
        dt_min: Step size floor.
        dt_max: Step size cap.
        newton_budget_per_step: Newton corrections allowed per step.
        max_steps: Cap on prediction-correction attempts.
        cut_threshold_newton_iters: A correction evaluating more Newton
            iterates than this halves the next step.
    """

    dt0: float = DEFAULT_DT0
    eps1: float = DEFAULT_EPS1
    eps2: float = DEFAULT_EPS2
    dt_min: float = DEFAULT_DT_MIN
    dt_max: float = DEFAULT_DT_MAX
    newton_budget_per_step: int = DEFAULT_NEWTON_BUDGET
    max_steps: int = DEFAULT_MAX_STEPS
    cut_threshold_newton_iters: int = DEFAULT_CUT_THRESHOLD

    def __post_init__(self) -> None:
        if not 0 < self.dt_min <= self.dt0 <= self.dt_max <= 1:
            raise ConfigError(
                "Step sizes must satisfy 0 < dt_min <= dt0 <= dt_max <= 1, got "
                f"dt_min={self.dt_min}, dt0={self.dt0}, dt_max={self.dt_max}."
            )
        if not 0 < self.eps2 <= self.eps1:
            raise ConfigError(
                f"Tolerances must satisfy 0 < eps2 <= eps1, got eps2={self.eps2}, eps1={self.eps1}."
            )
        if self.newton_budget_per_step < 1:
            raise ConfigError("newton_budget_per_step must be at least 1.")
        if self.max_steps < 1:
            raise ConfigError("max_steps must be at least 1.")
        if self.cut_threshold_newton_iters < 0:
            raise ConfigError("cut_threshold_newton_iters must be nonnegative.")


@dataclass(frozen=True, eq=False)
class HomotopyProblem:
    """A preprocessed target tensor together with its start system.

    Attributes:
        target: ``A / tau``, entries in ``[0, 1]``.
        target_sym: Partial symmetrization of ``target``.
        start_a: Positive vector ``a`` of the start tensor.
        start_b: Positive vector ``b`` of the start tensor.
        start_tensor: ``E = a^{[m-1]} o b o ... o b``.
        scale: ``tau``, the largest entry of the original tensor.
    """

    target: DenseTensor
    target_sym: DenseTensor
    start_a: Vector
    start_b: Vector
    start_tensor: DenseTensor
    scale: float = 1.0

    @classmethod
    def build(
        cls,
        A: DenseTensor,
        a: Optional[ArrayLike] = None,
        b: Optional[ArrayLike] = None,
    ) -> HomotopyProblem:
        """Preprocess ``A`` and assemble the start system.

        Args:
            A: Nonnegative, nonzero target tensor.
            a: Start vector ``a`` (default all ones).
            b: Start vector ``b`` (default all ones).

        Raises:
            NegativeEntryError: If ``A`` has a negative entry or ``a``/``b`` a
                nonpositive one.
            ZeroTensorError: If ``A`` is zero.
        """
        target, tau = preprocess(A)
        n, m = A.dim, A.order
        a_vec = np.ones(n) if a is None else np.asarray(a, dtype=np.float64)
        b_vec = np.ones(n) if b is None else np.asarray(b, dtype=np.float64)
        if a_vec.shape != (n,) or b_vec.shape != (n,):
            raise DimensionMismatchError(f"Start vectors must have length {n}.")
        return cls(
            target=target,
            target_sym=partial_symmetrize(target),
            start_a=a_vec,
            start_b=b_vec,
            start_tensor=rank_one_start_tensor(a_vec, b_vec, m),
            scale=tau,
        )

    @property
    def order(self) -> int:
        return self.target.order

    @property
    def dim(self) -> int:
        return self.target.dim


@dataclass(frozen=True)
class PathState:
    """One accepted point ``(t, lambda(t), x(t))`` of the traced curve."""

    t: float
    pair: EigenPair
    dt: float
    step_index: int = 0
    newton_total: int = 0
    consecutive_uncut: int = 0


@dataclass(frozen=True)
class NewtonResult:
    """Outcome of a successful Newton correction.

    ``iterations`` counts the corrections applied; ``evaluations`` also
    counts the start iterate and is what step control and the reported
    Newton totals use.
    """

    pair: EigenPair
    iterations: int
    residual: float
    residuals: Tuple[float, ...] = ()

    @property
    def evaluations(self) -> int:
        return self.iterations + 1


@dataclass(frozen=True)
class SolveReport:
    """Result of a homotopy solve.

    Attributes:
        pair: Perron pair of the original tensor (eigenvalue rescaled by ``scale``).
        internal_pair: Pair of the preprocessed tensor.
        residual: Eigen-residual of ``internal_pair`` on the preprocessed tensor.
        steps: Accepted prediction-correction steps.
        newton_total: Newton iterates evaluated over all corrections, the start
            iterate of each correction and rejected corrections included.
        wall_time: Elapsed seconds.
        termination: Why the solve stopped.
        scale: ``tau`` used in preprocessing.
        rejections: Steps rejected and retried with a halved step.
        trace: Accepted path states, starting at ``t = 0``.
    """

    pair: EigenPair
    internal_pair: EigenPair
    residual: float
    steps: int
    newton_total: int
    wall_time: float
    termination: Termination
    scale: float = 1.0
    rejections: int = 0
    trace: Tuple[PathState, ...] = field(default_factory=tuple)

    @property
    def converged(self) -> bool:
        return self.termination is Termination.CONVERGED

    def trace_frame(self) -> pd.DataFrame:
        """Return the traced curve as a DataFrame, one row per accepted state.

        Columns are ``step``, ``t``, ``dt``, ``lambda`` (preprocessed units),
        ``newton_total`` and ``x1 .. xn``.
        """
        rows = []
        for state in self.trace:
            row = {
                "step": state.step_index,
                "t": state.t,
                "dt": state.dt,
                "lambda": state.pair.value,
                "newton_total": state.newton_total,
            }
            row.update({f"x{i + 1}": float(v) for i, v in enumerate(state.pair.vector)})
            rows.append(row)
        return pd.DataFrame(rows)


# ---------------------------------------------------------------------------
# Start system
# ---------------------------------------------------------------------------


def start_pair(a: ArrayLike, b: ArrayLike, m: int) -> EigenPair:
    """Return the Perron pair ``((a.b)^{m-1}, a / |a|)`` of the start tensor.

    Raises:
        NegativeEntryError: If ``a`` or ``b`` has a nonpositive entry.
    """
    a_vec = np.asarray(a, dtype=np.float64)
    b_vec = np.asarray(b, dtype=np.float64)
    if a_vec.ndim != 1 or a_vec.shape != b_vec.shape:
        raise DimensionMismatchError("Start vectors a and b must be vectors of equal length.")
    require_positive(a_vec, "a")
    require_positive(b_vec, "b")
    return EigenPair(float(a_vec @ b_vec) ** (m - 1), a_vec / norm2(a_vec))


# ---------------------------------------------------------------------------
# Homotopy and its derivatives
# ---------------------------------------------------------------------------


def _check_t(t: float) -> None:
    if not 0.0 <= t <= 1.0:
        raise HomotopyError(f"Homotopy parameter t={t} is outside [0, 1].")


def _check_pair(p: HomotopyProblem, pair: EigenPair) -> None:
    if pair.dim != p.dim:
        raise DimensionMismatchError(f"Pair of dimension {pair.dim} does not match n={p.dim}.")


def eval_homotopy(p: HomotopyProblem, pair: EigenPair, t: float) -> Vector:
    """Return ``H(lambda, x, t)`` as a vector of length ``n + 1``.

    ``pair.vector`` need not have unit norm.
    """
    _check_t(t)
    _check_pair(p, pair)
    x = pair.vector
    mixed = t * apply_m1(p.target, x) + (1.0 - t) * apply_m1(p.start_tensor, x)
    top = mixed - pair.value * hadamard_power(x, p.order - 1)
    return np.append(top, x @ x - 1.0)


def jacobian_lambda_x(p: HomotopyProblem, pair: EigenPair, t: float) -> Matrix:
    """Return the ``(n+1) x (n+1)`` Jacobian of ``H`` with respect to ``(lambda, x)``.

    The first column is ``(-x^{[m-1]}; 0)``, the top-right block is
    ``(m-1) [B_t x^{m-2} - lambda diag(x^{[m-2]})]`` with
    ``B_t = t A_sym + (1 - t) E``, and the bottom-right row is ``2 x``.
    """
    _check_t(t)
    _check_pair(p, pair)
    n, m = p.dim, p.order
    x = pair.vector
    jac = np.zeros((n + 1, n + 1))
    jac[:n, 0] = -hadamard_power(x, m - 1)
    jac[:n, 1:] = (
        t * jacobian_map(p.target_sym, x)
        + (1.0 - t) * jacobian_map(p.start_tensor, x)
        - (m - 1) * pair.value * np.diag(hadamard_power(x, m - 2))
    )
    jac[n, 1:] = 2.0 * x
    return jac


def dt_derivative(p: HomotopyProblem, pair: EigenPair, t: float) -> Vector:
    """Return ``D_t H = ((A - E) x^{m-1}; 0)``; independent of ``t``."""
    _check_pair(p, pair)
    x = pair.vector
    return np.append(apply_m1(p.target, x) - apply_m1(p.start_tensor, x), 0.0)


def tangent(p: HomotopyProblem, pair: EigenPair, t: float) -> Vector:
    """Return ``du/dt`` from ``D_u H du/dt = -D_t H`` at ``(pair, t)``.

    Raises:
        SingularMatrixError: If the Jacobian is numerically singular.
    """
    return lu_solve(jacobian_lambda_x(p, pair, t), -dt_derivative(p, pair, t))


def _stack(pair: EigenPair) -> Vector:
    return np.concatenate(([pair.value], pair.vector))


def _unstack(u: Vector) -> EigenPair:
    return EigenPair(float(u[0]), u[1:])


# ---------------------------------------------------------------------------
# Prediction, correction and step control
# ---------------------------------------------------------------------------


def euler_predict(p: HomotopyProblem, state: PathState) -> EigenPair:
    """Return ``u_k + dt * du/dt`` from ``state``.

    Raises:
        SingularMatrixError: If the Jacobian at ``state`` is singular.
    """
    if state.dt == 0.0:
        return state.pair
    du = tangent(p, state.pair, state.t)
    return _unstack(_stack(state.pair) + state.dt * du)


def newton_correct(
    p: HomotopyProblem,
    v0: EigenPair,
    t_next: float,
    tol: float,
    budget: int,
) -> NewtonResult:
    """Run Newton's method on ``H(., t_next) = 0`` from ``v0``.

    Args:
        p: The homotopy problem.
        v0: Initial iterate, typically the Euler prediction.
        t_next: Homotopy parameter of the correction.
        tol: Residual tolerance on ``|H|``.
        budget: Maximum number of Newton corrections.

    Returns:
        The converged pair, the corrections applied and the residual of
        every iterate.

    Raises:
        CorrectionFailedError: If the budget is exhausted, the Jacobian is
            singular, an iterate is not finite, or the converged pair is not
            strictly positive.
    """
    if budget < 1:
        raise ConfigError("Newton budget must be at least 1.")
    u = _stack(v0)
    history: List[float] = []
    for iterations in range(budget + 1):
        pair = _unstack(u)
        h = eval_homotopy(p, pair, t_next)
        res = norm2(h)
        history.append(res)
        if not np.isfinite(res):
            raise CorrectionFailedError("non-finite iterate", iterations)
        if res <= tol:
            if not pair.is_positive():
                raise CorrectionFailedError("iterate left the positive orthant", iterations)
            return NewtonResult(
                pair=pair, iterations=iterations, residual=res, residuals=tuple(history)
            )
        if iterations == budget:
            break
        try:
            delta = lu_solve(jacobian_lambda_x(p, pair, t_next), h)
        except SingularMatrixError as exc:
            raise CorrectionFailedError("singular Jacobian", iterations) from exc
        u = u - delta
    raise CorrectionFailedError("Newton budget exhausted", budget)


def adapt_step(
    state: PathState, newton_iters_used: int, cfg: Optional[SolverConfig] = None
) -> Tuple[float, int]:
    """Return the next step size and the updated count of consecutive uncut steps.

    ``newton_iters_used`` counts evaluated Newton iterates, the start iterate
    included. A correction that evaluated more than
    ``cut_threshold_newton_iters`` of them halves the step (floored at
    ``dt_min``). Otherwise, when this step and the one before it were both
    uncut, the step doubles (capped at ``dt_max``); else it is kept.
    """
    cfg = cfg or SolverConfig()
    if newton_iters_used > cfg.cut_threshold_newton_iters:
        return max(STEP_SHRINK * state.dt, cfg.dt_min), 0
    uncut = state.consecutive_uncut + 1
    if uncut >= 2:
        return min(STEP_GROW * state.dt, cfg.dt_max), uncut
    return state.dt, uncut


# ---------------------------------------------------------------------------
# Drivers
# ---------------------------------------------------------------------------


def follow_path(p: HomotopyProblem, cfg: Optional[SolverConfig] = None) -> SolveReport:
    """Trace the homotopy curve from the start pair at ``t = 0`` to ``t = 1``.

    A correction that fails is rejected: the step is halved and retried from
    the last accepted state. A failure with the step already at ``dt_min``
    ends the solve with :attr:`Termination.PATH_FAILURE`; exceeding
    ``max_steps`` attempts ends it with :attr:`Termination.STEP_LIMIT`.
    """
    cfg = cfg or SolverConfig()
    started = time.perf_counter()

    state = PathState(t=0.0, pair=start_pair(p.start_a, p.start_b, p.order), dt=cfg.dt0)
    trace: List[PathState] = [state]
    newton_total = 0
    attempts = 0
    rejections = 0
    termination = Termination.CONVERGED

    while state.t < 1.0:
        if attempts >= cfg.max_steps:
            termination = Termination.STEP_LIMIT
            break
        attempts += 1

        dt = state.dt
        t_next = state.t + dt
        final = t_next >= 1.0
        if final:
            t_next, dt = 1.0, 1.0 - state.t
        tol = cfg.eps2 if final else cfg.eps1

        try:
            predicted = euler_predict(p, replace(state, dt=dt))
            result = newton_correct(p, predicted, t_next, tol, cfg.newton_budget_per_step)
        except (SingularMatrixError, CorrectionFailedError) as exc:
            if isinstance(exc, CorrectionFailedError):
                newton_total += exc.iterations + 1
            rejections += 1
            logger.debug("Rejected step at t=%.6g with dt=%.3g: %s", state.t, dt, exc)
            if dt <= cfg.dt_min:
                termination = Termination.PATH_FAILURE
                break
            state = replace(state, dt=max(STEP_SHRINK * dt, cfg.dt_min), consecutive_uncut=0)
            continue

        newton_total += result.evaluations
        next_dt, uncut = adapt_step(replace(state, dt=dt), result.evaluations, cfg)
        state = PathState(
            t=t_next,
            pair=result.pair,
            dt=next_dt,
            step_index=state.step_index + 1,
            newton_total=newton_total,
            consecutive_uncut=uncut,
        )
        trace.append(state)
        logger.debug(
            "Step %d accepted: t=%.6g lambda=%.12g newton=%d next dt=%.3g",
            state.step_index,
            state.t,
            state.pair.value,
            result.evaluations,
            next_dt,
        )

    internal = state.pair
    return SolveReport(
        pair=internal.scaled(p.scale),
        internal_pair=internal,
        residual=residual(p.target, internal),
        steps=state.step_index,
        newton_total=newton_total,
        wall_time=time.perf_counter() - started,
        termination=termination,
        scale=p.scale,
        rejections=rejections,
        trace=tuple(trace),
    )


def solve_perron(
    A: DenseTensor,
    cfg: Optional[SolverConfig] = None,
    a: Optional[ArrayLike] = None,
    b: Optional[ArrayLike] = None,
) -> SolveReport:
    """Compute the Perron pair of a nonnegative tensor by homotopy continuation.

    Args:
        A: Nonnegative, nonzero tensor.
        cfg: Path-following parameters (defaults from :class:`SolverConfig`).
        a: Start vector ``a`` (default all ones).
        b: Start vector ``b`` (default all ones).

    Returns:
        The :class:`SolveReport`; ``report.pair`` is the pair of ``A``.

    Raises:
        NegativeEntryError: If ``A`` has a negative entry.
        ZeroTensorError: If ``A`` is zero.
    """
    problem = HomotopyProblem.build(A, a, b)
    if not weak_irreducibility_check(A):
        logger.warning(
            "Tensor (m=%d, n=%d) is reducible; the limit pair may not be the Perron pair.",
            A.order,
            A.dim,
        )
    report = follow_path(problem, cfg)
    logger.info(
        "Homotopy %s: lambda=%.12g residual=%.3e steps=%d newton=%d",
        report.termination.value,
        report.pair.value,
        report.residual,
        report.steps,
        report.newton_total,
    )
    return report
