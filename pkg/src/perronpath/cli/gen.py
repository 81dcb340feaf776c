"""``gen`` command: write a benchmark tensor to a file."""

from enum import Enum
from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

from perronpath.harness.config import ExperimentConfigError, ExperimentSpec
from perronpath.harness.examples import example_comment, gen_example
from perronpath.harness.tensor_io import write_tensor_file

from .common import EXIT_USAGE

console = Console()


class Example(str, Enum):
    CPZ = "cpz"
    LGL = "lgl"
    RANDOM = "random"


def gen(
    example: Example = typer.Option(..., "--example", "-e", help="Tensor to generate"),
    output: Path = typer.Option(..., "--output", "-o", help="Destination tensor file"),
    m: Optional[int] = typer.Option(None, "--m", help="Order (random only)"),
    n: Optional[int] = typer.Option(None, "--n", help="Dimension (random only)"),
    gamma: float = typer.Option(0.0, "--gamma", help="Multiple of the identity to add"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Generator seed (random only)"),
) -> None:
    """
    Generate an example tensor.

    Example:
        perronpath gen --example cpz --output a.tns
        perronpath gen --example lgl --gamma 100 --output lgl.tns
        perronpath gen --example random --m 3 --n 20 --gamma 1e4 --seed 7 --output r.tns
    """
    try:
        spec = ExperimentSpec(example.value, m=m, n=n, gamma=gamma, seed=seed)
        tensor = gen_example(spec)
        path = write_tensor_file(tensor, output, comment=example_comment(spec))
        console.print(
            f"[bold green]✓[/] Wrote {spec.label} (m={tensor.order}, n={tensor.dim}, "
            f"nnz={tensor.nnz()}) to {path}"
        )

    except typer.Exit:
        raise  # Re-raise typer.Exit without handling
    except ExperimentConfigError as e:
        console.print(f"[bold red]Validation Error:[/] {e}")
        raise typer.Exit(code=EXIT_USAGE)
    except OSError as e:
        console.print(f"[bold red]Error:[/] {e}")
        raise typer.Exit(code=EXIT_USAGE)
