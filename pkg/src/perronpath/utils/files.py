"""File helpers for tensor and report files.

This module provides:
- Path resolution for inputs (must exist) and outputs (parent must exist)
- File size validation before a tensor file is read into memory
"""

from pathlib import Path

from perronpath.core.constants import MAX_FILE_SIZE_BYTES


def resolve_input_path(path: Path) -> Path:
    """
    Resolves an input path, following ``~`` and symlinks.

    Args:
        path: Path to an existing file

    Returns:
        The resolved absolute path

    Raises:
        FileNotFoundError: If the file does not exist
        IsADirectoryError: If the path is a directory
    """
    resolved = Path(path).expanduser().resolve(strict=True)
    if resolved.is_dir():
        raise IsADirectoryError(f"Expected a file, got directory '{resolved}'")
    return resolved


def resolve_output_path(path: Path) -> Path:
    """
    Resolves an output path whose parent directory must already exist.

    Raises:
        FileNotFoundError: If the parent directory does not exist
    """
    output = Path(path).expanduser()
    parent = output.parent.resolve()
    if not parent.is_dir():
        raise FileNotFoundError(f"Output directory does not exist: '{parent}'")
    return parent / output.name


def validate_file_size(file_path: Path, max_bytes: int = MAX_FILE_SIZE_BYTES) -> None:
    """
    Validates file size to avoid reading oversized tensor files into memory.

    Args:
        file_path: Path to file to validate
        max_bytes: Size limit in bytes

    Raises:
        ValueError: If file exceeds maximum size

    Examples:
        >>> validate_file_size(Path("a.tns"))  # OK
    """
    file_size = file_path.stat().st_size

    if file_size > max_bytes:
        raise ValueError(
            f"File size {file_size / 1024 / 1024:.2f}MB exceeds "
            f"maximum allowed size of {max_bytes / 1024 / 1024:.0f}MB"
        )
