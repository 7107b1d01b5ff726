"""Experiment result rows and their CSV / JSON serialisation.

Output is byte-stable: floats are written with ``repr`` (shortest
round-trip form), rows keep the order they were produced in, and wall
times are left at zero unless timing is explicitly requested.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, fields

from . import __version__

COLUMNS = ("experiment", "k", "n", "N", "L", "l", "seed", "trials", "observed", "analytic", "abs_err", "wall_ms")


@dataclass
class ExperimentRecord:
    experiment: str
    seed: int
    observed: float
    analytic: float | None = None
    k: int | None = None
    n: int | None = None
    N: int | None = None
    L: int | None = None
    l: int | None = None  # noqa: E741
    trials: int | None = None
    abs_err: float | None = None
    wall_ms: float = 0.0

    def __post_init__(self):
        self.observed = float(self.observed)
        if self.analytic is not None:
            self.analytic = float(self.analytic)
            if self.abs_err is None:
                self.abs_err = abs(self.observed - self.analytic)

    def row(self) -> dict:
        d = asdict(self)
        return {c: d[c] for c in COLUMNS}


assert {f.name for f in fields(ExperimentRecord)} == set(COLUMNS)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        if math.isnan(v) or math.isinf(v):
            raise ValueError("non-finite value in record")
        return repr(v)
    return str(v)


def header_line(command: str) -> str:
    return f"# conjcrypt {__version__} | {command}"


def to_csv(records, command: str = "") -> str:
    buf = io.StringIO()
    buf.write(header_line(command) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for r in records:
        row = r.row()
        writer.writerow([_cell(row[c]) for c in COLUMNS])
    return buf.getvalue()


def to_json(records, command: str = "") -> str:
    doc = {
        "version": __version__,
        "command": command,
        "columns": list(COLUMNS),
        "records": [r.row() for r in records],
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def read_csv(text: str) -> list[dict]:
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))
