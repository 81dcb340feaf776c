"""Experiment runner: solve one tensor with several methods and tabulate the results.

Each method produces a :class:`ReportRow` mirroring the columns of the
benchmark tables (steps or iterations, Newton iterations, time,
termination). A method that raises is recorded as an ``error`` row so one
failure does not abort a batch.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from typing import Callable, Dict, Iterable, List, Optional, Sequence, TypeVar

from perronpath.core.constants import (
    AGREEMENT_REL_TOL,
    DEFAULT_BENCH_SEED,
    DEFAULT_NQZ_SHIFT,
    REPORT_COLUMNS,
    TABLE1_GAMMAS,
    TABLE2_FULL_GRID,
    TABLE2_SMALL_GRID,
)
from perronpath.core.models import Termination
from perronpath.core.tensor import DenseTensor
from perronpath.harness.config import ExperimentConfigError, ExperimentSpec, harness_threads
from perronpath.harness.examples import gen_example
from perronpath.solvers.homotopy import SolveReport, SolverConfig, solve_perron
from perronpath.solvers.nqz import NqzConfig, NqzReport, nqz_solve

logger = logging.getLogger(__name__)

ERROR_TERMINATION = "error"
BENCH_SUITES = ("table1", "table2-small", "table2")

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class ReportRow:
    """One method's result on one tensor.

    Attributes:
        method: ``homotopy``, ``nqz`` or ``nqz-shift``.
        lam: Computed eigenvalue of the original tensor (NaN on error).
        residual: Eigen-residual on the preprocessed (and shifted) tensor.
        iters: Accepted homotopy steps, or NQZ iterations.
        newton_iters: Total Newton iterates evaluated (homotopy only).
        time_ms: Wall time in milliseconds.
        termination: ``converged``, ``step_limit``, ``path_failure`` or ``error``.
        case: Label of the experiment the row belongs to.
    """

    method: str
    lam: float
    residual: float
    iters: int
    newton_iters: Optional[int]
    time_ms: float
    termination: str
    case: str = ""

    @property
    def converged(self) -> bool:
        return self.termination == Termination.CONVERGED.value

    def to_dict(self) -> Dict[str, object]:
        """Return the row keyed by the report column names."""
        values = asdict(self)
        values["lambda"] = values.pop("lam")
        return {column: values[column] for column in REPORT_COLUMNS}


def homotopy_row(report: SolveReport, case: str = "") -> ReportRow:
    return ReportRow(
        method="homotopy",
        lam=report.pair.value,
        residual=report.residual,
        iters=report.steps,
        newton_iters=report.newton_total,
        time_ms=report.wall_time * 1000.0,
        termination=report.termination.value,
        case=case,
    )


def nqz_row(method: str, report: NqzReport, case: str = "") -> ReportRow:
    return ReportRow(
        method=method,
        lam=report.pair.value,
        residual=report.residual,
        iters=report.iters,
        newton_iters=None,
        time_ms=report.wall_time * 1000.0,
        termination=report.termination.value,
        case=case,
    )


def error_row(method: str, case: str = "") -> ReportRow:
    return ReportRow(
        method=method,
        lam=math.nan,
        residual=math.nan,
        iters=0,
        newton_iters=None,
        time_ms=0.0,
        termination=ERROR_TERMINATION,
        case=case,
    )


def run_method(
    A: DenseTensor,
    method: str,
    solver: Optional[SolverConfig] = None,
    nqz: Optional[NqzConfig] = None,
    nqz_shift: float = DEFAULT_NQZ_SHIFT,
    case: str = "",
) -> ReportRow:
    """Run one method on ``A``; solver errors become an ``error`` row.

    Raises:
        ExperimentConfigError: If ``method`` is unknown.
    """
    nqz = nqz or NqzConfig()
    try:
        if method == "homotopy":
            return homotopy_row(solve_perron(A, solver), case)
        if method == "nqz":
            return nqz_row(method, nqz_solve(A, cfg=replace(nqz, shift=0.0)), case)
        if method == "nqz-shift":
            return nqz_row(method, nqz_solve(A, cfg=replace(nqz, shift=nqz_shift)), case)
    except Exception as exc:
        logger.error("%s failed on %s: %s", method, case or "tensor", exc)
        return error_row(method, case)
    raise ExperimentConfigError(f"Unknown method '{method}'.")


def _map_ordered(fn: Callable[[T], R], items: Sequence[T], threads: int) -> List[R]:
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(fn, items))


def check_agreement(rows: Iterable[ReportRow], rel_tol: float = AGREEMENT_REL_TOL) -> bool:
    """Return whether the eigenvalues of all converged rows agree within ``rel_tol``.

    Fewer than two converged rows agree trivially.
    """
    values = [row.lam for row in rows if row.converged]
    if len(values) < 2:
        return True
    spread = max(values) - min(values)
    return spread <= rel_tol * max(abs(v) for v in values)


def _run_spec(spec: ExperimentSpec, threads: int) -> List[ReportRow]:
    tensor = gen_example(spec)

    def run(method: str) -> ReportRow:
        return run_method(tensor, method, spec.solver, spec.nqz, spec.nqz_shift, spec.label)

    rows = _map_ordered(run, list(spec.methods), threads)
    if not check_agreement(rows):
        logger.warning(
            "Methods disagree on %s: %s",
            spec.label,
            ", ".join(f"{row.method}={row.lam:.15g}" for row in rows if row.converged),
        )
    return rows


def run_experiment(spec: ExperimentSpec) -> List[ReportRow]:
    """Run every method of ``spec`` on its generated tensor.

    Methods may run in parallel up to ``PERRON_THREADS`` workers; rows are
    returned in the order of ``spec.methods``.
    """
    return _run_spec(spec, harness_threads())


def run_batch(specs: Sequence[ExperimentSpec]) -> List[ReportRow]:
    """Run several experiments, parallel across experiments, rows in input order."""
    threads = harness_threads()
    per_spec = _map_ordered(lambda spec: _run_spec(spec, 1), list(specs), threads)
    return [row for rows in per_spec for row in rows]


def bench_suite(
    name: str, allow_large: bool = False, seed: int = DEFAULT_BENCH_SEED
) -> List[ExperimentSpec]:
    """Return the experiments of a benchmark suite.

    Args:
        name: ``table1`` (the fixed positive tensor over five shifts),
            ``table2-small`` (random tensors up to m=3 n=20 and m=4 n=10) or
            ``table2`` (the full random grid).
        allow_large: Required for ``table2``, whose largest cases take minutes.
        seed: Seed shared by all random tensors of one ``(m, n)``.

    Raises:
        ExperimentConfigError: For an unknown suite, or ``table2`` without
            ``allow_large``.
    """
    if name == "table1":
        return [ExperimentSpec("lgl", gamma=gamma) for gamma in TABLE1_GAMMAS]
    if name == "table2-small":
        grid = TABLE2_SMALL_GRID
    elif name == "table2":
        if not allow_large:
            raise ExperimentConfigError(
                "The table2 suite includes m=4, n=100 tensors; pass allow_large to run it."
            )
        grid = TABLE2_FULL_GRID
    else:
        raise ExperimentConfigError(
            f"Unknown suite '{name}'. Expected one of: {', '.join(BENCH_SUITES)}"
        )
    return [
        ExperimentSpec("random", m=m, n=n, gamma=gamma, seed=seed)
        for m, n, gammas in grid
        for gamma in gammas
    ]
