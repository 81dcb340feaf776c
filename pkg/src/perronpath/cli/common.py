"""Shared helpers for CLI commands."""

from typing import Optional, Sequence

import numpy as np
import typer
from rich.table import Table

from perronpath.core.tensor import Vector
from perronpath.harness.experiment import ReportRow

EXIT_NOT_CONVERGED = 1
EXIT_USAGE = 2


def parse_vector(text: Optional[str], option: str) -> Optional[Vector]:
    """Parse a comma-separated list of numbers, e.g. ``1,2,0.5``."""
    if text is None:
        return None
    try:
        return np.array([float(part) for part in text.split(",")], dtype=np.float64)
    except ValueError:
        raise typer.BadParameter(f"expected comma-separated numbers, got '{text}'", param_hint=option)


def _cell(value: float, fmt: str) -> str:
    return "-" if np.isnan(value) else f"{value:{fmt}}"


def results_table(rows: Sequence[ReportRow], title: str, show_case: bool = False) -> Table:
    """Render report rows as a Rich table."""
    table = Table(title=title)
    if show_case:
        table.add_column("Case", style="cyan")
    table.add_column("Method", style="cyan")
    table.add_column("Lambda", justify="right")
    table.add_column("Residual", justify="right")
    table.add_column("Iters", justify="right")
    table.add_column("Newton", justify="right")
    table.add_column("Time (ms)", justify="right")
    table.add_column("Termination", style="bold")

    for row in rows:
        status = "[green]converged[/]" if row.converged else f"[red]{row.termination}[/]"
        cells = [
            row.method,
            _cell(row.lam, ".10f"),
            _cell(row.residual, ".2e"),
            str(row.iters),
            "-" if row.newton_iters is None else str(row.newton_iters),
            f"{row.time_ms:.1f}",
            status,
        ]
        table.add_row(*([row.case] if show_case else []), *cells)
    return table
