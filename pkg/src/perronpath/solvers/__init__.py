"""Perron pair solvers: homotopy continuation and the NQZ baseline."""

from perronpath.solvers.homotopy import (
    CorrectionFailedError,
    HomotopyError,
    HomotopyProblem,
    PathState,
    SolverConfig,
    SolveReport,
    follow_path,
    solve_perron,
)
from perronpath.solvers.nqz import (
    DegenerateIterateError,
    NqzConfig,
    NqzError,
    NqzReport,
    nqz_solve,
)

__all__ = [
    "CorrectionFailedError",
    "DegenerateIterateError",
    "HomotopyError",
    "HomotopyProblem",
    "NqzConfig",
    "NqzError",
    "NqzReport",
    "PathState",
    "SolveReport",
    "SolverConfig",
    "follow_path",
    "nqz_solve",
    "solve_perron",
]
