"""Result tables with deterministic CSV and JSON round trips.

CSV files start with '#'-prefixed metadata lines, then an RFC-4180-style
header and rows; JSON mirrors the same content.  Identical inputs produce
byte-identical files, and writes are atomic (temp file plus rename).
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass, field


@dataclass
class ResultTable:
    name: str
    columns: list[str]
    rows: list[list[float]]
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.columns:
            raise ValueError("a result table needs at least one column")
        width = len(self.columns)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(f"row {i} has {len(row)} values, expected {width}")
            for value in row:
                if not isinstance(value, (int, float)) or not math.isfinite(value):
                    raise ValueError(f"row {i} holds a non-finite value: {value!r}")

    def column(self, name: str) -> list[float]:
        try:
            idx = self.columns.index(name)
        except ValueError:
            raise KeyError(f"no column {name!r}; available: {self.columns}") from None
        return [row[idx] for row in self.rows]


def atomic_write_text(path, text: str) -> None:
    """Write text to path via a temp file in the same directory, then rename."""
    path = os.fspath(path)
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    os.replace(tmp, path)


def render_csv(table: ResultTable) -> str:
    buf = io.StringIO()
    for key, value in table.metadata.items():
        buf.write(f"# {key}: {value}\n")
    writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([repr(v) if isinstance(v, float) else str(v) for v in row])
    return buf.getvalue()


def write_csv(table: ResultTable, path) -> None:
    atomic_write_text(path, render_csv(table))


def render_json(table: ResultTable) -> str:
    doc = {
        "metadata": table.metadata,
        "name": table.name,
        "columns": table.columns,
        "rows": table.rows,
    }
    return json.dumps(doc, indent=2) + "\n"


def write_json(table: ResultTable, path) -> None:
    atomic_write_text(path, render_json(table))


def _parse_cell(text: str) -> float:
    value = float(text)
    if value == int(value) and "." not in text and "e" not in text.lower():
        return int(value)
    return value


def read_csv(path) -> ResultTable:
    metadata: dict[str, str] = {}
    data_lines: list[str] = []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        for line in handle:
            if line.startswith("# "):
                key, sep, value = line[2:].rstrip("\n").partition(": ")
                if sep:
                    metadata[key] = value
            else:
                data_lines.append(line)
    reader = csv.reader(data_lines)
    rows = list(reader)
    if not rows:
        raise ValueError(f"{path} holds no table header")
    columns = rows[0]
    parsed = [[_parse_cell(cell) for cell in row] for row in rows[1:] if row]
    name = metadata.get("table", os.path.splitext(os.path.basename(os.fspath(path)))[0])
    return ResultTable(name=name, columns=columns, rows=parsed, metadata=metadata)


def read_json(path) -> ResultTable:
    with open(path, "r", encoding="utf-8") as handle:
        doc = json.load(handle)
    return ResultTable(
        name=doc.get("name", "table"),
        columns=list(doc["columns"]),
        rows=[list(row) for row in doc["rows"]],
        metadata=dict(doc.get("metadata", {})),
    )


def read_table(path) -> ResultTable:
    """Load a table written by write_csv or write_json, picked by extension."""
    text = os.fspath(path)
    if text.endswith(".json"):
        return read_json(path)
    return read_csv(path)
