"""Deterministic rendering of reports.

Identical inputs must produce byte-identical files, so floats are always
formatted with 17 significant digits, dictionary keys keep construction
order, and rows follow the grid order.
"""
from __future__ import annotations

import json

import numpy as np

from .geometry import InvariantReport


def fmt_float(value: float) -> str:
    return f"{float(value):.17g}"


def render_json(obj) -> str:
    """Compact JSON with fixed float formatting and construction key order."""
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj)
    if isinstance(obj, complex):
        return render_json({"re": obj.real, "im": obj.imag})
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(render_json(v) for v in obj) + "]"
    if isinstance(obj, dict):
        parts = (f"{json.dumps(str(k))}:{render_json(v)}" for k, v in obj.items())
        return "{" + ",".join(parts) + "}"
    raise TypeError(f"cannot render {type(obj).__name__} deterministically")


def report_rows(report: InvariantReport) -> list[dict]:
    """Flat per-point rows; tangential entries beyond (1,1) appended
    column-major for dimensions above two."""
    rows = []
    tan_dim = report.dim - 1
    for p in range(report.count):
        w2 = report.points[p][0]
        row = {
            "w2_re": float(w2.real),
            "w2_im": float(w2.imag),
            "k_trans": float(report.k_trans[p]),
            "k_tan_re": float(report.k_tan[p, 0, 0].real),
            "k_tan_im": float(report.k_tan[p, 0, 0].imag),
            "angle_re": float(report.angle[p].real),
            "angle_im": float(report.angle[p].imag),
            "b_norm": float(report.b_norm[p]),
        }
        for j in range(tan_dim):
            for i in range(tan_dim):
                if i == 0 and j == 0:
                    continue
                row[f"k_tan_{i + 1}_{j + 1}_re"] = float(report.k_tan[p, i, j].real)
                row[f"k_tan_{i + 1}_{j + 1}_im"] = float(report.k_tan[p, i, j].imag)
        row["n_orth_12_re"] = float(report.n_orth_12[p].real)
        row["n_orth_12_im"] = float(report.n_orth_12[p].imag)
        rows.append(row)
    return rows


_CSV_BASE_COLUMNS = (
    "w2_re",
    "w2_im",
    "k_trans",
    "k_tan_re",
    "k_tan_im",
    "angle_re",
    "angle_im",
    "b_norm",
)


def csv_columns(dim: int) -> list[str]:
    columns = list(_CSV_BASE_COLUMNS)
    tan_dim = dim - 1
    for j in range(tan_dim):
        for i in range(tan_dim):
            if i == 0 and j == 0:
                continue
            columns.append(f"k_tan_{i + 1}_{j + 1}_re")
            columns.append(f"k_tan_{i + 1}_{j + 1}_im")
    return columns


def csv_from_rows(rows: list[dict], dim: int) -> str:
    """CSV rendering: one row per grid point, plot-ready flat columns."""
    columns = csv_columns(dim)
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(fmt_float(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def report_csv(report: InvariantReport) -> str:
    return csv_from_rows(report_rows(report), report.dim)


def report_document(report: InvariantReport, meta: dict | None = None) -> dict:
    doc = {
        "dim": report.dim,
        "radius": report.radius,
        "count": report.count,
    }
    if meta:
        doc.update(meta)
    doc["rows"] = report_rows(report)
    return doc
