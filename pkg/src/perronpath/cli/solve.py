"""``solve`` command: compute the Perron pair of a tensor file."""

from enum import Enum
from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

from perronpath.core.constants import (
    DEFAULT_DT0,
    DEFAULT_EPS1,
    DEFAULT_EPS2,
    DEFAULT_MAX_STEPS,
    DEFAULT_NQZ_MAX_ITERS,
    DEFAULT_NQZ_SHIFT,
    DEFAULT_NQZ_TOL,
)
from perronpath.core.models import ConfigError
from perronpath.core.tensor import TensorError
from perronpath.harness.experiment import ReportRow, homotopy_row, nqz_row
from perronpath.harness.report import ReportError, emit_report
from perronpath.harness.tensor_io import TensorFileError, parse_tensor_file
from perronpath.solvers.homotopy import SolverConfig, solve_perron
from perronpath.solvers.nqz import NqzConfig, nqz_solve

from .common import EXIT_NOT_CONVERGED, EXIT_USAGE, parse_vector, results_table

console = Console()


class Method(str, Enum):
    HOMOTOPY = "homotopy"
    NQZ = "nqz"
    NQZ_SHIFT = "nqz-shift"


def solve(
    input_file: Path = typer.Option(
        ...,
        "--input",
        "-i",
        exists=True,
        file_okay=True,
        dir_okay=False,
        readable=True,
        help="Tensor file to solve",
    ),
    method: Method = typer.Option(Method.HOMOTOPY, "--method", "-m", help="Solver to use"),
    dt0: float = typer.Option(DEFAULT_DT0, "--dt0", help="Initial homotopy step size"),
    eps1: float = typer.Option(DEFAULT_EPS1, "--eps1", help="Corrector tolerance for t < 1"),
    eps2: float = typer.Option(DEFAULT_EPS2, "--eps2", help="Corrector tolerance at t = 1"),
    max_steps: int = typer.Option(
        DEFAULT_MAX_STEPS, "--max-steps", help="Cap on homotopy prediction-correction attempts"
    ),
    tol: float = typer.Option(DEFAULT_NQZ_TOL, "--tol", help="NQZ residual tolerance"),
    max_iters: int = typer.Option(DEFAULT_NQZ_MAX_ITERS, "--max-iters", help="NQZ iteration cap"),
    shift: float = typer.Option(
        DEFAULT_NQZ_SHIFT, "--shift", help="Identity shift for nqz-shift, in scaled units"
    ),
    start_a: Optional[str] = typer.Option(
        None, "--start-a", help="Homotopy start vector a, comma-separated positive numbers"
    ),
    start_b: Optional[str] = typer.Option(
        None, "--start-b", help="Homotopy start vector b, comma-separated positive numbers"
    ),
    trace: Optional[Path] = typer.Option(
        None, "--trace", help="Write the traced homotopy path to this CSV file"
    ),
    report: Optional[Path] = typer.Option(
        None, "--report", help="Write a one-row report (.csv, .json or .xlsx)"
    ),
) -> None:
    """
    Compute the Perron pair of the tensor in a file.

    Exits with code 1 when the solver does not converge and with code 2
    when the input cannot be read or an option is invalid.

    Example:
        perronpath solve --input a.tns --method homotopy
        perronpath solve --input a.tns --method nqz-shift --shift 1
    """
    a = parse_vector(start_a, "--start-a")
    b = parse_vector(start_b, "--start-b")
    if method is not Method.HOMOTOPY and (a is not None or b is not None or trace is not None):
        raise typer.BadParameter(
            "--start-a, --start-b and --trace apply to the homotopy method only",
            param_hint="--method",
        )

    try:
        tensor = parse_tensor_file(input_file)
        case = input_file.name

        row: ReportRow
        if method is Method.HOMOTOPY:
            cfg = SolverConfig(dt0=dt0, eps1=eps1, eps2=eps2, max_steps=max_steps)
            result = solve_perron(tensor, cfg, a, b)
            row, vector = homotopy_row(result, case), result.pair.vector
            if trace is not None:
                result.trace_frame().to_csv(trace, index=False, float_format="%.17g")
                console.print(f"Trace:  {trace}")
        else:
            nqz_cfg = NqzConfig(
                tol=tol, max_iters=max_iters, shift=shift if method is Method.NQZ_SHIFT else 0.0
            )
            nqz_result = nqz_solve(tensor, cfg=nqz_cfg)
            row, vector = nqz_row(method.value, nqz_result, case), nqz_result.pair.vector
            if nqz_result.diagnostic:
                console.print(f"[yellow]Warning:[/] {nqz_result.diagnostic}")

        console.print(results_table([row], title=f"Perron pair of {case}"))
        console.print(f"Perron value: {row.lam:.10f}")
        console.print("Perron vector: " + " ".join(f"{v:.10f}" for v in vector))

        if report is not None:
            console.print(f"Report: {emit_report([row], None, report)}")

        if not row.converged:
            console.print(f"\n[bold red]✗ {method.value} did not converge ({row.termination})[/]")
            raise typer.Exit(code=EXIT_NOT_CONVERGED)

    except typer.Exit:
        raise  # Re-raise typer.Exit without handling
    except (TensorFileError, OSError) as e:
        console.print(f"[bold red]Error:[/] {e}")
        raise typer.Exit(code=EXIT_USAGE)
    except (ConfigError, TensorError, ReportError) as e:
        console.print(f"[bold red]Validation Error:[/] {e}")
        raise typer.Exit(code=EXIT_USAGE)
