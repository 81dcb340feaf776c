"""Report emission in CSV, JSON and Excel formats.

All formats carry the columns ``method, lambda, residual, iters,
newton_iters, time_ms, termination`` in that order. ``newton_iters`` is
empty (CSV), ``null`` (JSON) or a blank cell (Excel) for NQZ rows. Floats
are written with 17 significant digits so they read back exactly.
"""

from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import openpyxl
import pandas as pd
from openpyxl.styles import Alignment, Font, PatternFill
from openpyxl.worksheet.worksheet import Worksheet

from perronpath.core.constants import HEADER_STYLE, REPORT_COLUMNS, SUPPORTED_REPORT_FORMATS
from perronpath.harness.config import HarnessError
from perronpath.harness.experiment import ReportRow
from perronpath.utils.files import resolve_output_path

logger = logging.getLogger(__name__)

SHEET_NAME = "Report"


class ReportError(HarnessError):
    """Raised when a report cannot be written."""


def report_format(dest: Path, fmt: Optional[str] = None) -> str:
    """Return the report format, from ``fmt`` or else from the suffix of ``dest``.

    Raises:
        ReportError: If the format is not supported.
    """
    chosen = (fmt or dest.suffix.lstrip(".")).lower()
    if chosen not in SUPPORTED_REPORT_FORMATS:
        raise ReportError(
            f"Unsupported report format '{chosen}'. "
            f"Expected one of: {', '.join(SUPPORTED_REPORT_FORMATS)}"
        )
    return chosen


def rows_frame(rows: Sequence[ReportRow]) -> pd.DataFrame:
    """Return the rows as a DataFrame with the report columns."""
    frame = pd.DataFrame([row.to_dict() for row in rows], columns=REPORT_COLUMNS)
    frame["newton_iters"] = frame["newton_iters"].astype("Int64")
    return frame


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _json_records(rows: Sequence[ReportRow]) -> List[Dict[str, Any]]:
    return [{key: _json_value(value) for key, value in row.to_dict().items()} for row in rows]


def create_styled_header(ws: Worksheet, headers: Sequence[str]) -> None:
    """Write a styled header row into the first row of ``ws``."""
    header_fill = PatternFill(
        start_color=HEADER_STYLE["fill_color"],
        end_color=HEADER_STYLE["fill_color"],
        fill_type="solid",
    )
    header_font = Font(
        color=HEADER_STYLE["font_color"],
        bold=HEADER_STYLE["bold"],
        size=HEADER_STYLE["font_size"],
    )

    for col_num, header in enumerate(headers, 1):
        cell = ws.cell(row=1, column=col_num)
        cell.value = header
        cell.fill = header_fill
        cell.font = header_font
        cell.alignment = Alignment(horizontal="center", vertical="center")


def _write_xlsx(rows: Sequence[ReportRow], dest: Path) -> None:
    wb = openpyxl.Workbook()
    ws = wb.active
    ws.title = SHEET_NAME

    for r_idx, record in enumerate(_json_records(rows), 2):
        for c_idx, column in enumerate(REPORT_COLUMNS, 1):
            ws.cell(row=r_idx, column=c_idx).value = record[column]

    create_styled_header(ws, REPORT_COLUMNS)

    for col in ws.columns:
        width = max(len(str(cell.value)) for cell in col if cell.value is not None)
        ws.column_dimensions[col[0].column_letter].width = min(width + 2, 30)
    ws.freeze_panes = "A2"

    wb.save(dest)


def emit_report(rows: Sequence[ReportRow], fmt: Optional[str], dest: Path) -> Path:
    """Write ``rows`` to ``dest``.

    Args:
        rows: Report rows, written in the given order.
        fmt: ``csv``, ``json`` or ``xlsx``; ``None`` infers it from the suffix.
        dest: Output file; its directory must exist.

    Returns:
        The resolved destination path.

    Raises:
        ReportError: If ``rows`` is empty (no file is created), the format
            is unsupported, or the destination cannot be written.
    """
    if not rows:
        raise ReportError("Cannot write an empty report.")
    chosen = report_format(dest, fmt)

    try:
        destination = resolve_output_path(dest)
        if chosen == "csv":
            rows_frame(rows).to_csv(destination, index=False, float_format="%.17g")
        elif chosen == "json":
            destination.write_text(
                json.dumps(_json_records(rows), indent=2) + "\n", encoding="utf-8"
            )
        else:
            _write_xlsx(rows, destination)
    except OSError as exc:
        raise ReportError(f"Cannot write report to '{dest}': {exc}") from exc

    logger.info("Wrote %d report rows to %s", len(rows), destination)
    return destination
