"""``inspect`` command: summarize a tensor file."""

from pathlib import Path

import typer
from rich.console import Console
from rich.table import Table

from perronpath.core.tensor import TensorError, spectral_bounds, weak_irreducibility_check
from perronpath.harness.tensor_io import TensorFileError, read_tensor_file

from .common import EXIT_USAGE

console = Console()


def inspect_tensor(
    input_file: Path = typer.Option(
        ...,
        "--input",
        "-i",
        exists=True,
        file_okay=True,
        dir_okay=False,
        readable=True,
        help="Tensor file to inspect",
    ),
) -> None:
    """
    Show size, bounds on the Perron value and an irreducibility diagnostic.

    Example:
        perronpath inspect --input a.tns
    """
    try:
        parsed = read_tensor_file(input_file)
        tensor = parsed.to_tensor()
        bounds = spectral_bounds(tensor)
        lo, hi = bounds.row_sum_bounds
        irreducible = weak_irreducibility_check(tensor)

        table = Table(title=f"Tensor {input_file.name}")
        table.add_column("Property", style="cyan")
        table.add_column("Value", justify="right")
        table.add_row("Order m", str(tensor.order))
        table.add_row("Dimension n", str(tensor.dim))
        table.add_row("Nonzeros", str(tensor.nnz()))
        table.add_row("Largest entry", f"{tensor.max_entry():.6g}")
        table.add_row("Total sum", f"{bounds.total_sum:.6g}")
        table.add_row("Row sum min", f"{lo:.6g}")
        table.add_row("Row sum max", f"{hi:.6g}")
        table.add_row(
            "Weakly irreducible",
            "[green]yes[/]" if irreducible else "[red]no (reducible)[/]",
        )
        console.print(table)

        if irreducible:
            console.print(f"Perron value bounds: [{lo:.10g}, {hi:.10g}]")
        else:
            console.print("[yellow]Warning:[/] tensor is reducible; a positive Perron vector may not exist")

    except typer.Exit:
        raise  # Re-raise typer.Exit without handling
    except (TensorFileError, TensorError, OSError) as e:
        console.print(f"[bold red]Error:[/] {e}")
        raise typer.Exit(code=EXIT_USAGE)
