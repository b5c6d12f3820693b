"""CSV schemas shared by the command-line workflows.

Comma separated, header row first, UTF-8, LF line endings.  Floats are
written with ``repr`` so that every value reads back bit-for-bit.
"""
from __future__ import annotations

import csv
import io

import numpy as np

from .errors import SchemaError

SIMULATE_COLUMNS = ("v_mps", "delta_t_s", "X_m_frac", "A_m")
DIURNAL_COLUMNS = ("epoch_utc_s", "local_time_h", "v_hor_mps", "A_m_clean", "A_m_noisy")
SWEEP_COLUMNS = ("label", "eps1", "eps2", "deps", "X_m_frac_reduced")
INVERT_COLUMNS = ("epoch_utc_s", "local_time_h", "A_m_observed", "A_m_fit", "residual",
                  "v_hor_fit_mps")


def _cell(value):
    if isinstance(value, str):
        return value
    return repr(float(value))


def format_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def write_csv(path, columns, rows):
    text = format_csv(columns, rows)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


def read_csv(path, columns):
    """Read a CSV whose header must equal ``columns`` exactly.

    Returns ``{column: np.ndarray}`` for numeric schemas.
    """
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected header {','.join(columns)}") from None
        if tuple(header) != tuple(columns):
            raise SchemaError(f"{path}: header {','.join(header)!r} does not match "
                              f"expected {','.join(columns)!r}")
        rows = [r for r in reader if r]
    for lineno, row in enumerate(rows, start=2):
        if len(row) != len(columns):
            raise SchemaError(f"{path}:{lineno}: expected {len(columns)} fields, got {len(row)}")
    try:
        data = np.array(rows, dtype=float).reshape(len(rows), len(columns))
    except ValueError as exc:
        raise SchemaError(f"{path}: non-numeric value ({exc})") from None
    return {name: data[:, i] for i, name in enumerate(columns)}
