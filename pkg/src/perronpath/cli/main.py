"""Root Typer application and the ``cli_main`` entry point."""

from typing import Optional, Sequence

import click
import typer
from rich.console import Console

from perronpath.utils.log import configure_logging

from . import bench, gen, inspect, solve

app = typer.Typer(
    name="perronpath",
    help="Perron pairs of nonnegative tensors by homotopy continuation",
    invoke_without_command=True,
)

console = Console()

app.command("solve")(solve.solve)
app.command("gen")(gen.gen)
app.command("bench")(bench.bench)
app.command("inspect")(inspect.inspect_tensor)


@app.callback(invoke_without_command=True)
def main(
    ctx: typer.Context,
    version: bool = typer.Option(
        False,
        "--version",
        help="Show the perronpath version and exit",
    ),
    verbose: bool = typer.Option(
        False,
        "--verbose",
        "-v",
        help="Log solve summaries",
    ),
    debug: bool = typer.Option(
        False,
        "--debug",
        help="Log every accepted and rejected path step",
    ),
):
    """Global entry point of the perronpath CLI."""
    from perronpath import __version__

    if version:
        console.print(f"[bold green]perronpath[/] version {__version__}")
        raise typer.Exit(0)

    configure_logging(verbose=verbose, debug=debug)

    if ctx.invoked_subcommand is None:
        typer.echo(ctx.get_help())
        raise typer.Exit(0)


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI on ``argv`` and return the exit code instead of exiting.

    Returns:
        0 on success, 1 when a solver does not converge, 2 on usage, parse
        or file errors.
    """
    command = typer.main.get_command(app)
    try:
        result = command.main(
            args=list(argv) if argv is not None else None,
            prog_name="perronpath",
            standalone_mode=False,
        )
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    return result if isinstance(result, int) else 0
