"""Read and validate sweep CSV files produced by the eubsim CLI.

The wire format is the 12-column schema below, one row per (delta, gamma_t)
grid point, rows grouped by delta.  Values are carried as the exact floats
parsed from the file; rendering must never alter them.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

EXPECTED_COLUMNS = (
    "gamma_t",
    "delta_over_gamma",
    "lambda_over_gamma",
    "r",
    "theta",
    "absG",
    "Gamma",
    "concurrence",
    "discord",
    "eub",
    "berta",
    "lhs",
)


class SchemaError(ValueError):
    """Input CSV does not match the sweep schema."""


@dataclass
class SweepData:
    """Columns per detuning series, in file order."""

    deltas: list  # ordered distinct delta_over_gamma values
    series: dict  # delta -> {column: [floats]}

    def column(self, delta: float, name: str) -> list:
        return self.series[delta][name]


def read_sweep_csv(path: str) -> SweepData:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise SchemaError(f"{path}: empty file, expected a header row")
    header = tuple(rows[0])
    if header != EXPECTED_COLUMNS:
        missing = [c for c in EXPECTED_COLUMNS if c not in header]
        unexpected = [c for c in header if c not in EXPECTED_COLUMNS]
        raise SchemaError(
            f"{path}: header mismatch; missing columns {missing or 'none'}, "
            f"unexpected columns {unexpected or 'none'}, "
            f"order must be exactly {','.join(EXPECTED_COLUMNS)}"
        )
    if len(rows) == 1:
        raise SchemaError(f"{path}: no data rows")
    deltas = []
    series = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(EXPECTED_COLUMNS):
            raise SchemaError(f"{path}:{lineno}: expected {len(EXPECTED_COLUMNS)} fields, got {len(row)}")
        try:
            values = [float(x) for x in row]
        except ValueError as exc:
            raise SchemaError(f"{path}:{lineno}: {exc}")
        rec = dict(zip(EXPECTED_COLUMNS, values))
        delta = rec["delta_over_gamma"]
        if delta not in series:
            deltas.append(delta)
            series[delta] = {c: [] for c in EXPECTED_COLUMNS}
        for c in EXPECTED_COLUMNS:
            series[delta][c].append(rec[c])
    grids = [series[d]["gamma_t"] for d in deltas]
    if any(g != grids[0] for g in grids[1:]):
        raise SchemaError(f"{path}: detuning series do not share one gamma_t grid")
    return SweepData(deltas=deltas, series=series)
