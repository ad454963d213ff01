"""CSV reading and writing for point clouds, distance matrices and plot data.

Points: one point per line, comma-separated decimals, optional ``#`` header
lines. Distances: n lines of n comma-separated decimals. Floats are written
with 17 significant digits so a write/read cycle is exact.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import ParseError
from .geometry import DistanceMatrix, PointCloud, validate_distance_matrix

INPUT_KINDS = ("points", "distances")
FLOAT_FORMAT = "%.17g"


def parse_csv(text: str) -> np.ndarray:
    """Parse comma-separated rows of floats; blank and ``#`` lines are skipped."""
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split(",")
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise ParseError(f"expected {width} fields, found {len(fields)}", line=lineno)
        row = []
        for col, tok in enumerate(fields, start=1):
            try:
                row.append(float(tok))
            except ValueError:
                raise ParseError(f"not a number: {tok.strip()!r}", line=lineno, column=col) from None
        rows.append(row)
    if not rows:
        raise ParseError("no data rows")
    return np.asarray(rows, dtype=np.float64)


def load_input(path, kind: str = "points"):
    """Read a points CSV into a PointCloud or a distances CSV into a DistanceMatrix."""
    if kind not in INPUT_KINDS:
        raise ValueError(f"kind must be one of {INPUT_KINDS}, got {kind!r}")
    arr = parse_csv(Path(path).read_text())
    if kind == "points":
        return PointCloud(arr)
    return validate_distance_matrix(arr)


def format_row(values) -> str:
    return ",".join(FLOAT_FORMAT % float(v) for v in values)


def write_rows(path, rows, header=None) -> None:
    lines = [f"# {h}" for h in (header or [])]
    lines += [format_row(r) for r in rows]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))


def write_points(path, cloud: PointCloud, header=None) -> None:
    write_rows(path, cloud.points, header)


def write_distances(path, dist: DistanceMatrix) -> None:
    write_rows(path, dist.values)
