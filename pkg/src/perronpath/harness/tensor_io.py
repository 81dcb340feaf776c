"""Plain-text sparse tensor files.

A tensor file is a header line followed by one line per stored entry::

    # optional comment lines
    tensor 3 3 4
    1 2 2 1
    1 3 3 2
    2 1 1 3
    3 1 1 4

The header gives the order ``m``, the dimension ``n`` and the number of
entry lines. Each entry line holds ``m`` indices in ``1..n`` and a decimal
value. Unlisted entries are zero. Blank lines and lines starting with ``#``
are ignored anywhere in the file.

Files written by :func:`write_tensor_file` list the nonzero entries in
lexicographic index order with 17 significant digits, so reading a written
file gives back the same tensor bit for bit.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Dict, Iterable, Iterator, Optional, Tuple

import numpy as np

from perronpath.core.constants import (
    MAX_FILE_SIZE_BYTES,
    TENSOR_FILE_COMMENT,
    TENSOR_FILE_MAGIC,
    VALUE_FORMAT,
)
from perronpath.core.tensor import DenseTensor
from perronpath.harness.config import HarnessError
from perronpath.utils.files import resolve_input_path, resolve_output_path, validate_file_size

logger = logging.getLogger(__name__)

Index = Tuple[int, ...]

_MAX_FILE_SIZE_BYTES = MAX_FILE_SIZE_BYTES
_UNSIGNED_INT = re.compile(r"[0-9]+")


class TensorFileError(HarnessError):
    """Raised when a tensor file is malformed.

    Attributes:
        line_number: 1-based line of the offending input, or ``None`` when
            the problem concerns the file as a whole.
    """

    def __init__(self, message: str, line_number: Optional[int] = None) -> None:
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line_number = line_number


@dataclass(frozen=True)
class TensorFile:
    """A parsed tensor file.

    Attributes:
        path: Resolved path of the file.
        order: Tensor order ``m`` from the header.
        dim: Tensor dimension ``n`` from the header.
        nnz: Number of entry lines declared in the header.
        entries: ``(index, value)`` records with 1-based indices, in file order.
    """

    path: Path
    order: int
    dim: int
    nnz: int
    entries: Tuple[Tuple[Index, float], ...]

    def to_tensor(self) -> DenseTensor:
        return DenseTensor.from_entries(self.order, self.dim, self.entries)


def _content_lines(lines: Iterable[str]) -> Iterable[Tuple[int, str]]:
    for number, raw in enumerate(lines, start=1):
        text = raw.strip()
        if text and not text.startswith(TENSOR_FILE_COMMENT):
            yield number, text


def _parse_header(text: str, number: int) -> Tuple[int, int, int]:
    fields = text.split()
    if len(fields) != 4 or fields[0] != TENSOR_FILE_MAGIC:
        raise TensorFileError(f"expected header '{TENSOR_FILE_MAGIC} m n nnz', got '{text}'", number)
    if not all(_UNSIGNED_INT.fullmatch(field) for field in fields[1:]):
        raise TensorFileError(f"header sizes must be integers, got '{text}'", number)
    m, n, nnz = (int(field) for field in fields[1:])
    if m < 2 or n < 1 or nnz < 0:
        raise TensorFileError(f"invalid header sizes m={m}, n={n}, nnz={nnz}", number)
    if nnz > n**m:
        raise TensorFileError(f"nnz={nnz} exceeds the {n**m} entries of the tensor", number)
    return m, n, nnz


def _parse_entry(text: str, number: int, m: int, n: int) -> Tuple[Index, float]:
    fields = text.split()
    if len(fields) != m + 1:
        raise TensorFileError(f"expected {m} indices and a value, got '{text}'", number)
    if not all(_UNSIGNED_INT.fullmatch(field) for field in fields[:m]):
        raise TensorFileError(f"indices must be integers, got '{text}'", number)
    index = tuple(int(field) for field in fields[:m])
    for position, i in enumerate(index, start=1):
        if not 1 <= i <= n:
            raise TensorFileError(f"index {i} at position {position} is outside 1..{n}", number)
    try:
        value = float(fields[m])
    except ValueError as exc:
        raise TensorFileError(f"invalid value '{fields[m]}'", number) from exc
    if not math.isfinite(value):
        raise TensorFileError(f"value '{fields[m]}' is not finite", number)
    return index, value


def _decoded_lines(handle: BinaryIO) -> Iterator[str]:
    for number, raw in enumerate(handle, start=1):
        try:
            yield raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise TensorFileError(f"invalid UTF-8 at byte {exc.start}", number) from exc


def parse_tensor_lines(lines: Iterable[str], path: Path = Path("<memory>")) -> TensorFile:
    """Parse tensor file content given as lines.

    Raises:
        TensorFileError: On a malformed header, an out-of-range index, a
            duplicate index tuple, a non-finite value, or an entry count
            that differs from the header.
    """
    content = _content_lines(lines)
    try:
        header_line, header = next(content)
    except StopIteration:
        raise TensorFileError("file has no header") from None
    m, n, nnz = _parse_header(header, header_line)

    seen: Dict[Index, int] = {}
    records = []
    last_line = header_line
    for number, text in content:
        last_line = number
        if len(records) == nnz:
            raise TensorFileError(f"more than the {nnz} entries declared in the header", number)
        index, value = _parse_entry(text, number, m, n)
        if index in seen:
            raise TensorFileError(
                f"duplicate index {index} (first given on line {seen[index]})", number
            )
        seen[index] = number
        records.append((index, value))

    if len(records) != nnz:
        raise TensorFileError(
            f"header declares {nnz} entries but the file has {len(records)}", last_line
        )
    return TensorFile(path=path, order=m, dim=n, nnz=nnz, entries=tuple(records))


def read_tensor_file(path: Path) -> TensorFile:
    """Read and validate a tensor file.

    Raises:
        FileNotFoundError: If the file does not exist.
        TensorFileError: If the file is too large, is not valid UTF-8 or is
            malformed.
    """
    resolved = resolve_input_path(path)
    try:
        validate_file_size(resolved, _MAX_FILE_SIZE_BYTES)
    except ValueError as exc:
        raise TensorFileError(str(exc)) from exc
    with resolved.open("rb") as handle:
        parsed = parse_tensor_lines(_decoded_lines(handle), resolved)
    logger.info(
        "Read tensor m=%d n=%d nnz=%d from %s", parsed.order, parsed.dim, parsed.nnz, resolved
    )
    return parsed


def parse_tensor_file(path: Path) -> DenseTensor:
    """Read a tensor file into a dense tensor; unlisted entries are zero."""
    return read_tensor_file(path).to_tensor()


def format_tensor(tensor: DenseTensor, comment: Optional[str] = None) -> str:
    """Return the canonical file text of ``tensor``."""
    indices = np.argwhere(tensor.data != 0.0)
    lines = []
    if comment:
        lines.extend(f"{TENSOR_FILE_COMMENT} {line}".rstrip() for line in comment.splitlines())
    lines.append(f"{TENSOR_FILE_MAGIC} {tensor.order} {tensor.dim} {len(indices)}")
    for index in indices:
        value = float(tensor.data[tuple(index)])
        lines.append(" ".join(str(int(i) + 1) for i in index) + f" {value:{VALUE_FORMAT}}")
    return "\n".join(lines) + "\n"


def write_tensor_file(tensor: DenseTensor, path: Path, comment: Optional[str] = None) -> Path:
    """Write ``tensor`` as a canonical tensor file.

    Args:
        tensor: Tensor to write.
        path: Destination; its directory must exist.
        comment: Optional text written as ``#`` lines before the header.

    Returns:
        The resolved destination path.

    Raises:
        FileNotFoundError: If the destination directory does not exist.
    """
    destination = resolve_output_path(path)
    destination.write_text(format_tensor(tensor, comment), encoding="utf-8")
    logger.info("Wrote tensor m=%d n=%d to %s", tensor.order, tensor.dim, destination)
    return destination
