"""Tabular results and their CSV / JSON serializations."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any


@dataclass
class ResultTable:
    columns: list[tuple[str, str]]  # (name, unit)
    rows: list[list[Any]]
    metadata: dict[str, Any] = field(default_factory=dict)
    summary: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        width = len(self.columns)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(f"row {i} has {len(row)} cells, expected {width}")

    def column(self, name: str) -> list[Any]:
        idx = [c[0] for c in self.columns].index(name)
        return [row[idx] for row in self.rows]


def format_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".17g")
    return str(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return format_cell(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def to_csv(table: ResultTable) -> str:
    """Metadata and summary as ``# key: json`` comment lines, then the table."""
    lines = []
    for key in sorted(table.metadata):
        lines.append(f"# {key}: {json.dumps(_jsonable(table.metadata[key]), sort_keys=True)}")
    for key in sorted(table.summary):
        lines.append(f"# summary.{key}: {json.dumps(_jsonable(table.summary[key]), sort_keys=True)}")
    lines.append(",".join(f"{name} [{unit}]" if unit else name for name, unit in table.columns))
    for row in table.rows:
        lines.append(",".join(format_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def to_json(table: ResultTable) -> str:
    doc = {
        "metadata": _jsonable(table.metadata),
        "columns": [{"name": n, "unit": u} for n, u in table.columns],
        "rows": _jsonable(table.rows),
    }
    if table.summary:
        doc["summary"] = _jsonable(table.summary)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def read_csv(text: str) -> ResultTable:
    """Inverse of :func:`to_csv`; cells come back as floats where possible."""
    metadata, summary, body = {}, {}, []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, raw = line[2:].partition(": ")
            value = json.loads(raw)
            if key.startswith("summary."):
                summary[key[len("summary."):]] = value
            else:
                metadata[key] = value
        elif line:
            body.append(line.split(","))
    columns = []
    for head in body[0]:
        name, _, unit = head.partition(" [")
        columns.append((name, unit.rstrip("]")))
    rows = []
    for cells in body[1:]:
        row = []
        for c in cells:
            try:
                row.append(float(c))
            except ValueError:
                row.append(c)
        rows.append(row)
    return ResultTable(columns, rows, metadata, summary)
