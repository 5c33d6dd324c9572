"""CSV reading and schema validation for the simulator's output files.

Result files start with '#'-commented key=value header lines followed by
an RFC 4180 body.  Each subcommand has a fixed column schema; anything
else is rejected fast with an explicit column diff.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Dict, List, Tuple


class SchemaError(ValueError):
    """CSV columns do not match any documented schema."""


class NoDataError(ValueError):
    """CSV contains a header but no data rows."""


SCHEMAS: Dict[str, Tuple[str, ...]] = {
    "quench-sweep": ("mu_f", "mutual_info", "logneg_upper", "tmi", "n_soft_mode"),
    "phase-plot": ("alpha", "mu_i", "delta_i", "mu_f", "delta_f",
                   "measure", "c_eff", "r_squared", "flag"),
    "ground": ("kind", "L", "entropy", "c_eff", "r_squared", "flag"),
}


@dataclass(frozen=True)
class Table:
    """One parsed result file: config echo, schema name, columns, rows."""

    config: Dict[str, str]
    schema: str
    columns: Tuple[str, ...]
    rows: List[dict]

    def column(self, name: str) -> list:
        if name not in self.columns:
            raise SchemaError(f"no column {name!r}; file has {list(self.columns)}")
        return [row[name] for row in self.rows]

    def floats(self, name: str) -> list:
        return [float(v) if v != "" else float("nan") for v in self.column(name)]


def _match_schema(columns: Tuple[str, ...]) -> str:
    for name, cols in SCHEMAS.items():
        if columns == cols:
            return name
    # build a diff against the closest schema (most shared columns)
    best = max(SCHEMAS, key=lambda n: len(set(SCHEMAS[n]) & set(columns)))
    missing = [c for c in SCHEMAS[best] if c not in columns]
    unexpected = [c for c in columns if c not in SCHEMAS[best]]
    raise SchemaError(
        f"columns {list(columns)} match no schema; closest is {best!r} "
        f"(missing {missing}, unexpected {unexpected})"
    )


def load_table(path: str) -> Table:
    """Parse a result CSV, validate its schema, and return the table."""
    config: Dict[str, str] = {}
    body_lines = []
    with open(path, encoding="utf-8", newline="") as fh:
        for line in fh:
            stripped = line.rstrip("\r\n")
            if stripped.startswith("#"):
                entry = stripped.lstrip("#").strip()
                if "=" in entry:
                    key, value = entry.split("=", 1)
                    config[key.strip()] = value.strip()
                continue
            if stripped:
                body_lines.append(stripped)
    if not body_lines:
        raise NoDataError(f"{path}: no data (file has no CSV body)")
    reader = csv.reader(body_lines)
    columns = tuple(next(reader))
    schema = _match_schema(columns)
    rows = [dict(zip(columns, r)) for r in reader]
    if not rows:
        raise NoDataError(f"{path}: no data rows under header {list(columns)}")
    return Table(config=config, schema=schema, columns=columns, rows=rows)
