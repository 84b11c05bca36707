"""Report records and their canonical JSON / CSV encodings.

Machine formats write floats with 17 significant digits so a parse and
re-emit reproduces the bytes exactly; human tables use the shortest
round-trip repr.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
ERROR = "error"  # infrastructure: non-convergence, unexpected exception


def format_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    s = "%.17g" % x
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def canonical_json(obj, indent: int = 2) -> str:
    """Deterministic JSON: sorted keys, fixed float format, trailing newline."""
    return _encode(obj, indent, 0) + "\n"


def _encode(obj, indent, level) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_encode(obj[k], indent, level + 1)}"
            for k in sorted(obj, key=str)
        ]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalars
        return _encode(obj.item(), indent, level)
    raise TypeError(f"cannot encode {type(obj).__name__} as JSON")


def human_float(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def rows_to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if row.get(c) is None else _csv_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, float):
        return format_float(v).strip('"')
    return v


def discrepancy(value: float, reference: float) -> tuple[float, float]:
    """(absolute, relative) difference; relative is inf against a zero reference."""
    d = abs(value - reference)
    if reference == 0:
        return d, (0.0 if d == 0 else math.inf)
    return d, d / abs(reference)


@dataclass
class Case:
    """One verification check.

    ``passed`` follows rel_discrepancy <= tolerance or abs_discrepancy <=
    abs_floor; ``status`` is ERROR when the check could not be computed.
    """

    case_id: str
    inputs: dict
    closed_form: float | None
    oracle_values: dict
    abs_discrepancy: float
    rel_discrepancy: float
    tolerance: float
    abs_floor: float = 0.0
    status: str = PASS
    message: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def as_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "inputs": self.inputs,
            "closed_form": self.closed_form,
            "oracle_values": self.oracle_values,
            "abs_discrepancy": self.abs_discrepancy,
            "rel_discrepancy": self.rel_discrepancy,
            "tolerance": self.tolerance,
            "abs_floor": self.abs_floor,
            "passed": self.passed,
            "status": self.status,
            "message": self.message,
        }


def make_case(case_id, inputs, closed_form, oracle_values, value, reference,
              tolerance, abs_floor=0.0, message="") -> Case:
    """Case comparing ``value`` with ``reference`` under the pass rule."""
    abs_d, rel_d = discrepancy(float(value), float(reference))
    ok = rel_d <= tolerance or abs_d <= abs_floor
    return Case(case_id, inputs, closed_form, oracle_values, abs_d, rel_d, tolerance,
                abs_floor, PASS if ok else FAIL, message)


def error_case(case_id, inputs, tolerance, message) -> Case:
    return Case(case_id, inputs, None, {}, math.nan, math.nan, tolerance, 0.0, ERROR, message)


@dataclass
class VerificationReport:
    suite: str
    cases: list[Case] = field(default_factory=list)
    wall_time: float = 0.0

    def __post_init__(self):
        self.cases = sorted(self.cases, key=lambda c: c.case_id)

    @property
    def summary(self) -> dict:
        passed = sum(c.status == PASS for c in self.cases)
        failed = sum(c.status == FAIL for c in self.cases)
        errors = sum(c.status == ERROR for c in self.cases)
        return {
            "total": len(self.cases),
            "passed": passed,
            "failed": failed,
            "errors": errors,
            "wall_time": self.wall_time,
        }

    def exit_code(self) -> int:
        s = self.summary
        if s["errors"]:
            return 2
        return 1 if s["failed"] else 0

    def as_dict(self) -> dict:
        return {"suite": self.suite, "cases": [c.as_dict() for c in self.cases], "summary": self.summary}

    def to_json(self) -> str:
        return canonical_json(self.as_dict())

    def to_text(self) -> str:
        width = max([len(c.case_id) for c in self.cases] + [7])
        lines = [f"{'case_id':<{width}}  status  rel_discrepancy          tolerance"]
        for c in self.cases:
            lines.append(
                f"{c.case_id:<{width}}  {c.status:<6}  {human_float(c.rel_discrepancy):<23}  "
                f"{human_float(c.tolerance)}" + (f"  {c.message}" if c.status != PASS and c.message else "")
            )
        s = self.summary
        lines.append(
            f"{self.suite}: {s['passed']}/{s['total']} passed, {s['failed']} failed, "
            f"{s['errors']} errors in {s['wall_time']:.1f}s"
        )
        return "\n".join(lines) + "\n"
