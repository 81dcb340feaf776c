"""Tests for perronpath.harness.tensor_io."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

import perronpath.harness.tensor_io as tensor_io_module
from perronpath.harness.examples import cpz_tensor, lgl_tensor, random_tensor
from perronpath.harness.tensor_io import (
    TensorFileError,
    format_tensor,
    parse_tensor_file,
    parse_tensor_lines,
    read_tensor_file,
    write_tensor_file,
)

CPZ_FILE = "tensor 3 3 4\n1 2 2 1\n1 3 3 2\n2 1 1 3\n3 1 1 4\n"


@pytest.fixture
def cpz_path(tmp_path: Path) -> Path:
    """Create the cpz tensor file."""
    path = tmp_path / "cpz.tns"
    path.write_text(CPZ_FILE, encoding="utf-8")
    return path


def _parse(text: str):
    return parse_tensor_lines(text.splitlines())


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def test_parse_cpz_file(cpz_path: Path) -> None:
    assert parse_tensor_file(cpz_path) == cpz_tensor()


def test_read_keeps_header_and_records(cpz_path: Path) -> None:
    parsed = read_tensor_file(cpz_path)

    assert (parsed.order, parsed.dim, parsed.nnz) == (3, 3, 4)
    assert parsed.entries[2] == ((2, 1, 1), 3.0)
    assert parsed.path == cpz_path.resolve()


def test_parse_zero_tensor_header() -> None:
    tensor = _parse("tensor 3 2 0\n").to_tensor()

    assert (tensor.order, tensor.dim) == (3, 2)
    assert tensor.nnz() == 0


def test_parse_skips_comments_and_blank_lines() -> None:
    text = "# generated\n\ntensor 2 2 1\n  # inline comment line\n2 1 0.5\n\n"

    tensor = _parse(text).to_tensor()

    assert tensor.data[1, 0] == 0.5


@pytest.mark.parametrize(
    ("text", "line", "message"),
    [
        ("tensor 3 3 1\n1 4 1 2.0\n", 2, "outside 1..3"),
        ("tensor 3 3 1\n0 1 1 2.0\n", 2, "outside 1..3"),
        ("tensor 3 3 2\n1 1 1 2.0\n1 1 1 3.0\n", 3, "duplicate"),
        ("tensor 3 3 1\n1 1 1 nan\n", 2, "not finite"),
        ("tensor 3 3 1\n1 1 1 inf\n", 2, "not finite"),
        ("tensor 3 3 1\n1 1 1 abc\n", 2, "invalid value"),
        ("tensor 3 3 1\n1 1 2.0\n", 2, "expected 3 indices"),
        ("tensor 3 3 1\n1 1.5 1 2.0\n", 2, "integers"),
        ("tensor 3 3 1\n1_0 1 1 2.0\n", 2, "integers"),
        ("tensor 3 3 1\n+1 1 1 2.0\n", 2, "integers"),
        ("tensor 3 3 1\n1 -1 1 2.0\n", 2, "integers"),
        ("tensor +3 3 0\n", 1, "integers"),
        ("tensor 3 3 2\n1 1 1 2.0\n", 2, "declares 2 entries"),
        ("tensor 3 3 1\n1 1 1 2.0\n2 2 2 1.0\n", 3, "more than"),
        ("tensr 3 3 1\n1 1 1 2.0\n", 1, "expected header"),
        ("# comment\ntensor 3 x 1\n", 2, "integers"),
        ("tensor 1 3 0\n", 1, "invalid header"),
        ("tensor 2 2 5\n", 1, "exceeds"),
    ],
)
def test_parse_errors_carry_line_numbers(text: str, line: int, message: str) -> None:
    with pytest.raises(TensorFileError, match=message) as excinfo:
        _parse(text)

    assert excinfo.value.line_number == line
    assert str(excinfo.value).startswith(f"line {line}:")


def test_parse_empty_file() -> None:
    with pytest.raises(TensorFileError, match="no header") as excinfo:
        _parse("# only a comment\n")

    assert excinfo.value.line_number is None


def test_read_missing_file(tmp_path: Path) -> None:
    with pytest.raises(FileNotFoundError):
        read_tensor_file(tmp_path / "missing.tns")


def test_read_enforces_size_limit(cpz_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(tensor_io_module, "_MAX_FILE_SIZE_BYTES", 10)

    with pytest.raises(TensorFileError, match="exceeds"):
        read_tensor_file(cpz_path)


def test_read_rejects_invalid_utf8(tmp_path: Path) -> None:
    path = tmp_path / "binary.tns"
    path.write_bytes(b"tensor 3 3 1\n1 1 1 \xff\xfe")

    with pytest.raises(TensorFileError, match="UTF-8") as excinfo:
        read_tensor_file(path)

    assert excinfo.value.line_number == 2


def test_read_accepts_crlf_line_endings(tmp_path: Path) -> None:
    path = tmp_path / "crlf.tns"
    path.write_bytes(CPZ_FILE.replace("\n", "\r\n").encode("utf-8"))

    assert parse_tensor_file(path) == cpz_tensor()


# ---------------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------------


def test_write_cpz_is_canonical(tmp_path: Path) -> None:
    path = write_tensor_file(cpz_tensor(), tmp_path / "a.tns")

    assert path.read_text(encoding="utf-8") == CPZ_FILE


def test_write_comment_lines() -> None:
    text = format_tensor(cpz_tensor(), comment="first\nsecond")

    assert text.splitlines()[:3] == ["# first", "# second", "tensor 3 3 4"]


def test_write_uses_seventeen_significant_digits() -> None:
    text = format_tensor(lgl_tensor(0.0))

    assert "1 1 1 0.90000000000000002" in text.splitlines()


@pytest.mark.parametrize(
    "tensor",
    [lgl_tensor(10.0), random_tensor(3, 5, seed=1), random_tensor(4, 3, seed=2, gamma=1e6)],
)
def test_round_trip_is_exact(tmp_path: Path, tensor) -> None:
    path = write_tensor_file(tensor, tmp_path / "t.tns", comment="round trip")

    parsed = parse_tensor_file(path)

    np.testing.assert_array_equal(parsed.data, tensor.data)
    assert format_tensor(parsed, comment="round trip") == path.read_text(encoding="utf-8")


def test_write_into_missing_directory(tmp_path: Path) -> None:
    with pytest.raises(FileNotFoundError):
        write_tensor_file(cpz_tensor(), tmp_path / "missing" / "a.tns")
