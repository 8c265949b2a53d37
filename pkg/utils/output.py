"""Table and report writers with a provenance header.

CSV dialect: comma separator, LF line endings, mandatory header row, floats
with 12 significant digits. Every file starts with ``# `` comment lines
carrying the tool version, config hash and rng seed.
"""

import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, TextIO

logger = logging.getLogger(__name__)

FLOAT_DIGITS = 12


@dataclass
class Provenance:
    tool_version: str
    config_hash: str
    rng_seed: int
    command: str = ""

    def header_lines(self) -> List[str]:
        lines = [f"# orbitlab {self.tool_version}"]
        if self.command:
            lines.append(f"# command: {self.command}")
        lines.append(f"# config_hash: {self.config_hash}")
        lines.append(f"# rng_seed: {self.rng_seed}")
        return lines

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tool_version": self.tool_version,
            "command": self.command,
            "config_hash": self.config_hash,
            "rng_seed": self.rng_seed,
        }


@dataclass
class Table:
    columns: Sequence[str]
    rows: List[Sequence[Any]] = field(default_factory=list)

    def add(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} values for {len(self.columns)} columns")
        self.rows.append(values)

    def column(self, name: str) -> List[Any]:
        index = list(self.columns).index(name)
        return [row[index] for row in self.rows]


def format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (float, Fraction)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.{FLOAT_DIGITS}g}"
    return str(value)


def render_csv(table: Table, provenance: Provenance) -> str:
    buffer = io.StringIO()
    for line in provenance.header_lines():
        buffer.write(line + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_cell(v) for v in row])
    return buffer.getvalue()


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return float(value)
    if isinstance(value, float):
        if math.isinf(value) or math.isnan(value):
            return format_cell(value)
        return float(format_cell(value))
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def render_json(report: Dict[str, Any], provenance: Provenance) -> str:
    document = {"provenance": provenance.to_dict(), "report": _jsonable(report)}
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def write_output(text: str, out_path: Optional[str], stream: Optional[TextIO] = None) -> None:
    """Write to ``out_path`` (LF line endings) or to ``stream``."""
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        logger.info(f"Wrote {out_path}")
    elif stream is not None:
        stream.write(text)
