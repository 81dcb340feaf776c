"""``bench`` command: run a benchmark suite and write its report."""

from enum import Enum
from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

from perronpath.core.constants import DEFAULT_BENCH_SEED
from perronpath.harness.config import HarnessError
from perronpath.harness.experiment import bench_suite, check_agreement, run_batch
from perronpath.harness.report import emit_report

from .common import EXIT_USAGE, results_table

console = Console()


class Suite(str, Enum):
    TABLE1 = "table1"
    TABLE2_SMALL = "table2-small"
    TABLE2 = "table2"


class ReportFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    XLSX = "xlsx"


def bench(
    suite: Suite = typer.Option(..., "--suite", "-s", help="Benchmark suite to run"),
    output: Path = typer.Option(..., "--output", "-o", help="Report file (.csv, .json or .xlsx)"),
    fmt: Optional[ReportFormat] = typer.Option(
        None, "--format", "-f", help="Report format (default: from the output suffix)"
    ),
    allow_large: bool = typer.Option(
        False, "--allow-large", help="Allow the full table2 grid (minutes per case)"
    ),
    seed: int = typer.Option(DEFAULT_BENCH_SEED, "--seed", help="Seed for random tensors"),
) -> None:
    """
    Run the homotopy solver and the NQZ baseline over a benchmark grid.

    Rows are written in grid order, one homotopy and one NQZ row per case.
    Set PERRON_THREADS to run cases in parallel.

    Example:
        perronpath bench --suite table1 --output table1.csv
        perronpath bench --suite table2-small --output table2.xlsx
    """
    try:
        specs = bench_suite(suite.value, allow_large=allow_large, seed=seed)
        console.print(f"\n[bold blue]Running {suite.value}[/] ({len(specs)} cases)")

        rows = run_batch(specs)
        console.print(results_table(rows, title=f"Benchmark {suite.value}", show_case=True))

        path = emit_report(rows, fmt.value if fmt else None, output)
        console.print(f"\n[bold green]✓ Report written:[/] {path}")

        mismatched = [
            spec.label
            for spec in specs
            if not check_agreement(row for row in rows if row.case == spec.label)
        ]
        if mismatched:
            console.print(f"[yellow]Warning:[/] methods disagree on {', '.join(mismatched)}")

    except typer.Exit:
        raise  # Re-raise typer.Exit without handling
    except HarnessError as e:
        console.print(f"[bold red]Error:[/] {e}")
        raise typer.Exit(code=EXIT_USAGE)
