"""Logging setup for the command line.

Library modules only call ``logging.getLogger(__name__)``; the CLI routes the
``perronpath`` logger to a Rich handler on stderr.
"""

import logging

from rich.console import Console
from rich.logging import RichHandler

PACKAGE_LOGGER = "perronpath"


def configure_logging(verbose: bool = False, debug: bool = False) -> logging.Logger:
    """Attach a single :class:`RichHandler` to the package logger.

    Args:
        verbose: Log INFO messages (solve summaries).
        debug: Log DEBUG messages (every accepted or rejected step).

    Returns:
        The configured package logger.
    """
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logger = logging.getLogger(PACKAGE_LOGGER)
    for handler in list(logger.handlers):
        if isinstance(handler, RichHandler):
            logger.removeHandler(handler)
    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=debug,
    )
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.setLevel(level)
    return logger
