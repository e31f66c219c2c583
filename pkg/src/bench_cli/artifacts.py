"""
Artifact writers.

Every file is rendered fully in memory and written to a temporary sibling
that is renamed over the target, so readers never see partial output.
"""

import csv
import io
import json
import logging
import math
import os
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import Any

from src.analysis.trace import TRACE_COLUMNS, ConvergenceTrace, trace_rows

logger = logging.getLogger(__name__)

PLOT_COLUMNS = ("series", "x", "y")


def write_text_atomic(path: Path, text: str) -> None:
    """
    Write text through a temporary file and rename.

    Side effects:
        Creates parent directories; replaces path.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp_path = path.with_name(path.name + ".tmp")
    with open(tmp_path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    os.replace(tmp_path, path)
    logger.debug(f"Wrote {path}")


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """CSV text with "\\n" line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """Atomically write a CSV file."""
    write_text_atomic(path, render_csv(header, rows))


def to_jsonable(value: Any) -> Any:
    """Recursively replace non-finite floats with None and tuples with lists."""
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, Mapping):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [to_jsonable(v) for v in value]
    return value


def render_json(data: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(to_jsonable(data), sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_json(path: Path, data: Any) -> None:
    """Atomically write canonical JSON."""
    write_text_atomic(path, render_json(data))


def write_trace(
    path: Path,
    trace: ConvergenceTrace,
    gap_points: Mapping[int, tuple[float, float]] | None = None,
    thm_bounds: Sequence[float | None] | None = None,
    record_wall_time: bool = False,
) -> None:
    """Write the per-iteration trace CSV (columns TRACE_COLUMNS)."""
    rows = trace_rows(trace, gap_points, thm_bounds, record_wall_time)
    write_csv(path, TRACE_COLUMNS, rows)


def _number(value: float | int) -> str:
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def plot_rows(
    trace: ConvergenceTrace,
    gap_points: Mapping[int, tuple[float, float]] | None = None,
    thm_bounds: Sequence[float | None] | None = None,
) -> list[list[str]]:
    """
    Long-format plot data: one (series, x, y) row per point.

    Series are dist_x, dist_y and V against k, thm_bound against k, and gap and
    gap_bound against M. Missing values are omitted rather than written empty.

    Args:
        trace: Recorded run.
        gap_points: Checkpoint M -> (gap, bound).
        thm_bounds: Per-iterate theorem bound.

    Returns:
        Rows in series order.
    """
    rows: list[list[str]] = []
    for series in ("dist_x", "dist_y", "V"):
        for record in trace.records:
            value = getattr(record, series)
            if value is not None:
                rows.append([series, str(record.k), _number(value)])
    if thm_bounds is not None:
        for k, bound in enumerate(thm_bounds):
            if bound is not None:
                rows.append(["thm_bound", str(k), _number(bound)])
    points = sorted((gap_points or {}).items())
    for M, (gap, _) in points:
        rows.append(["gap", str(M), _number(gap)])
    for M, (_, bound) in points:
        rows.append(["gap_bound", str(M), _number(bound)])
    return rows


def write_plotdata(
    path: Path,
    trace: ConvergenceTrace,
    gap_points: Mapping[int, tuple[float, float]] | None = None,
    thm_bounds: Sequence[float | None] | None = None,
) -> None:
    """Write long-format plot data (columns PLOT_COLUMNS)."""
    write_csv(path, PLOT_COLUMNS, plot_rows(trace, gap_points, thm_bounds))
