"""CSV/JSON input and output.

Dialect: comma separator, '.' decimal point, optional '#'-prefixed comment
header lines, floats written with 17 significant digits so binary64 values
round-trip losslessly.  Data files carry one point (or value tuple) per
row; a column-name line is written/expected only when ``header`` is set.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from ._version import __version__
from .errors import CsvParseError
from .kernels import PointSet

__all__ = [
    "format_float",
    "read_table",
    "read_points",
    "read_values",
    "write_table",
    "write_points",
    "read_config_file",
]


def format_float(value: float) -> str:
    """17-significant-digit decimal form; round-trips binary64 exactly."""
    return format(float(value), ".17g")


def read_table(path, header: bool = False) -> tuple[np.ndarray, list[str] | None]:
    """Read a numeric CSV table, skipping '#' comments and blank lines.

    Returns the data as a 2-D float array (possibly with zero rows) plus
    the column names when ``header`` is set.  Malformed content raises
    :class:`CsvParseError` carrying the 1-based line number.
    """
    path = Path(path)
    rows: list[list[float]] = []
    columns: list[str] | None = None
    expect_header = header
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if expect_header:
                columns = [c.strip() for c in line.split(",")]
                expect_header = False
                continue
            fields = line.split(",")
            try:
                row = [float(f) for f in fields]
            except ValueError as exc:
                raise CsvParseError(path, line_no, f"not a numeric row: {exc}") from None
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise CsvParseError(path, line_no, f"expected {width} columns, found {len(row)}")
            rows.append(row)
    if not rows:
        return np.empty((0, 0)), columns
    return np.array(rows, dtype=float), columns


def read_points(path, header: bool = False) -> PointSet:
    data, _ = read_table(path, header=header)
    if data.size == 0:
        raise CsvParseError(path, 1, "no data rows found")
    return PointSet(data)


def read_values(path, header: bool = False) -> np.ndarray:
    data, _ = read_table(path, header=header)
    return data


def _header_lines(config: Mapping[str, object] | None) -> list[str]:
    lines = [f"# version = {__version__}"]
    for key in sorted(config or {}):
        lines.append(f"# {key} = {config[key]}")
    return lines


def write_table(
    path,
    rows: Sequence[Sequence[object]],
    columns: Sequence[str] | None = None,
    config: Mapping[str, object] | None = None,
    header: bool = False,
    fmt: str = "csv",
) -> None:
    """Write a table with the full run configuration embedded.

    ``fmt='csv'`` writes comment-prefixed config lines, an optional column
    line, then the data; ``fmt='json'`` writes one object with ``version``,
    ``config``, ``columns``, and ``rows`` fields.  Output is byte-stable for
    identical inputs.
    """
    path = Path(path)

    def cell(v):
        if isinstance(v, str):
            return v
        if isinstance(v, (int, np.integer)):
            return str(int(v))
        return format_float(v)

    if fmt == "json":
        payload = {
            "version": __version__,
            "config": {k: config[k] for k in sorted(config or {})},
            "columns": list(columns) if columns else None,
            "rows": [[(v if isinstance(v, (str, int)) else float(v)) for v in row] for row in rows],
        }
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=2, sort_keys=False)
            fh.write("\n")
        return
    if fmt != "csv":
        raise ValueError(f"unknown output format {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in _header_lines(config):
            fh.write(line + "\n")
        if header and columns:
            fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(cell(v) for v in row) + "\n")


def write_points(path, points: PointSet, config: Mapping[str, object] | None = None,
                 header: bool = False, fmt: str = "csv") -> None:
    columns = [f"x{i + 1}" for i in range(points.d)]
    write_table(path, points.coords.tolist(), columns=columns, config=config,
                header=header, fmt=fmt)


def read_config_file(path) -> dict:
    """Parse a ``key = value`` configuration file ('#' comments allowed)."""
    path = Path(path)
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise CsvParseError(path, line_no, "expected 'key = value'")
            key, value = line.split("=", 1)
            out[key.strip().replace("-", "_")] = value.strip()
    return out
