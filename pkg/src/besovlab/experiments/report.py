"""CSV and JSON report writers.  Output carries no timestamps, so a fixed seed gives identical bytes."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

__all__ = ["COLUMNS", "write_csv", "write_summary", "write_reports", "jsonable"]

COLUMNS = ["experiment", "s", "p", "q", "v", "size", "characterization", "value", "grid", "seed"]


def _cell(v):
    if isinstance(v, float):
        return "inf" if math.isinf(v) else repr(v)
    return str(v)


def write_csv(rows, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(COLUMNS)
        for row in rows:
            w.writerow([_cell(row[c]) for c in COLUMNS])


def jsonable(obj):
    """Recursively map non-finite floats to strings and numpy scalars to Python values."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return "nan" if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
    return obj


def write_summary(result, path):
    Path(path).write_text(json.dumps(jsonable(result.summary()), indent=2, sort_keys=True) + "\n")


def write_reports(result, out_dir):
    """Write ``<suite>.csv`` and ``<suite>.json`` under ``out_dir``; returns both paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{result.name}.csv"
    json_path = out / f"{result.name}.json"
    write_csv(result.rows, csv_path)
    write_summary(result, json_path)
    return csv_path, json_path
