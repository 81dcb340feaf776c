"""Utility modules for the perronpath package."""

from .files import resolve_input_path, resolve_output_path, validate_file_size
from .log import configure_logging

__all__ = [
    "configure_logging",
    "resolve_input_path",
    "resolve_output_path",
    "validate_file_size",
]
