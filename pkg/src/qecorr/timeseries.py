"""Ordered record container with a stable CSV serialization.

Floats are written with 17 significant digits so values round-trip
exactly; booleans as lowercase ``true``/``false``.  Column order is
part of the output contract and never reordered.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path


def format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


@dataclass
class TimeSeries:
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)

    def append(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ValueError(
                f"row has {len(values)} values for {len(self.columns)} columns"
            )
        self.rows.append(tuple(values))

    def column(self, name: str) -> list:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]

    def extend(self, other: "TimeSeries") -> None:
        if other.columns != self.columns:
            raise ValueError("column mismatch")
        self.rows.extend(other.rows)

    def select(self, columns: tuple[str, ...]) -> "TimeSeries":
        idx = [self.columns.index(c) for c in columns]
        out = TimeSeries(columns)
        for row in self.rows:
            out.append(*(row[i] for i in idx))
        return out

    def write_csv(self, path) -> None:
        with open(Path(path), "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(self.columns)
            for row in self.rows:
                writer.writerow([format_cell(v) for v in row])
