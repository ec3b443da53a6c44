"""CSV/JSON reading and writing, and the Lake Mendota preprocessing."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike

from .isotonic import RegressionSample


def fmt(v: float) -> str:
    """17 significant digits: round-trips every double."""
    return format(float(v), ".17g")


def _read_xy(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"input file not found: {path}")
    xs, ys = [], []
    with path.open(newline="") as fh:
        rows = csv.reader(line for line in fh if not line.startswith("#"))
        header = next(rows, None)
        if header is None or [h.strip().lower() for h in header] != ["x", "y"]:
            raise ValueError(f"{path}: expected header 'x,y', got {header!r}")
        for lineno, row in enumerate(rows, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise ValueError(f"{path}: line {lineno}: expected 2 columns, got {len(row)}")
            try:
                x, y = float(row[0]), float(row[1])
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: non-numeric value in {row!r}") from None
            if not (np.isfinite(x) and np.isfinite(y)):
                raise ValueError(f"{path}: line {lineno}: non-finite value in {row!r}")
            xs.append(x)
            ys.append(y)
    if not xs:
        raise ValueError(f"{path}: empty input")
    return np.array(xs), np.array(ys)


def mendota_transform(years: ArrayLike, days: ArrayLike) -> RegressionSample:
    """Map years to ``(year - 1853) / 158`` and reverse the responses.

    Reversal turns the downward trend in days frozen into an upward one.
    """
    years = np.asarray(years, dtype=float)
    days = np.asarray(days, dtype=float)
    if years.size == 0 or years.shape != days.shape:
        raise ValueError("years and days must be nonempty and of equal length")
    if np.any(np.diff(years) != 1.0):
        raise ValueError("years must be consecutive and ascending")
    return RegressionSample((years - 1853.0) / 158.0, days[::-1].copy())


def load_csv(path: str | Path, mendota: bool = False) -> RegressionSample:
    """Read an ``x,y`` CSV. Rows are sorted by x and tied x values merged.

    With ``mendota=True`` the x column holds years and y the days frozen.
    """
    xs, ys = _read_xy(path)
    if mendota:
        order = np.argsort(xs, kind="stable")
        return mendota_transform(xs[order], ys[order])
    if xs.min() < 0.0 or xs.max() > 1.0:
        raise ValueError(f"{path}: x values must lie in [0, 1]")
    return RegressionSample.from_pairs(xs, ys)


def save_sample_csv(sample: RegressionSample, path: str | Path) -> None:
    with Path(path).open("w", newline="") as fh:
        fh.write("x,y\n")
        for x, y in zip(sample.xs, sample.ys):
            fh.write(f"{fmt(x)},{fmt(y)}\n")


def _meta_value(v):
    if isinstance(v, (float, np.floating)):
        return fmt(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


def write_table(path: str | Path, columns: dict[str, ArrayLike], meta: dict, fmt_kind: str) -> None:
    """Write equal-length columns as CSV (``# key=value`` header lines) or JSON.

    JSON output is ``{"meta": {...}, "columns": {...}}`` with floats as
    17-digit decimal numbers.
    """
    cols = {k: np.atleast_1d(np.asarray(v, dtype=float)) for k, v in columns.items()}
    lengths = {v.size for v in cols.values()}
    if len(lengths) > 1:
        raise ValueError("columns must have equal length")
    path = Path(path)
    if fmt_kind == "csv":
        with path.open("w", newline="") as fh:
            for k in sorted(meta):
                fh.write(f"# {k}={_meta_value(meta[k])}\n")
            fh.write(",".join(cols) + "\n")
            for row in zip(*cols.values()):
                fh.write(",".join(fmt(v) for v in row) + "\n")
    elif fmt_kind == "json":
        doc = {
            "meta": {k: _meta_value(meta[k]) for k in sorted(meta)},
            "columns": {k: [float(fmt(x)) for x in v] for k, v in cols.items()},
        }
        path.write_text(json.dumps(doc, indent=1) + "\n")
    else:
        raise ValueError(f"unknown format {fmt_kind!r}")
