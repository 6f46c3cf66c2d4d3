"""Report assembly and rendering: text, json, csv.

Reports are deterministic: fixed row ordering, fixed key order, and float
formatting capped at 12 significant digits (shortest representation that
round-trips the capped value), so byte-identical reruns are a supported
contract.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

CSV_HEADER = "fixture,point,direction,theorem,interpretation,lhs,rhs,margin,equality_case"


def round12(x: float) -> float:
    """Round to 12 significant digits (report float contract)."""
    if x == 0:
        return 0.0
    return float(f"{float(x):.12g}")


def format_float(x: float) -> str:
    """Shortest round-trip string of the 12-digit-capped value."""
    return repr(round12(float(x)))


def _fmt_tuple(values) -> str:
    return ";".join(format_float(v) for v in values)


@dataclass(frozen=True)
class ReportRow:
    fixture: str
    point: tuple
    direction: tuple
    theorem: str
    interpretation: str
    lhs: float
    rhs: float
    margin: float
    equality_case: str
    residuals: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "fixture": self.fixture,
            "point": [round12(v) for v in self.point],
            "direction": [round12(v) for v in self.direction],
            "theorem": self.theorem,
            "interpretation": self.interpretation,
            "lhs": round12(self.lhs),
            "rhs": round12(self.rhs),
            "margin": round12(self.margin),
            "equality_case": self.equality_case,
            "residuals": {k: round12(v) for k, v in sorted(self.residuals.items())},
        }

    def to_csv_line(self) -> str:
        return ",".join([
            self.fixture, _fmt_tuple(self.point), _fmt_tuple(self.direction),
            self.theorem, self.interpretation, format_float(self.lhs),
            format_float(self.rhs), format_float(self.margin),
            self.equality_case,
        ])


@dataclass(frozen=True)
class RunError:
    fixture: str
    point: tuple | None
    message: str

    def to_json_obj(self) -> dict:
        return {
            "fixture": self.fixture,
            "point": None if self.point is None else [round12(v) for v in self.point],
            "message": self.message,
        }


@dataclass
class RunReport:
    rows: list[ReportRow] = field(default_factory=list)
    errors: list[RunError] = field(default_factory=list)
    gates: dict = field(default_factory=dict)

    @property
    def falsified(self) -> int:
        return sum(1 for r in self.rows if r.margin < -self._tol_for(r))

    def _tol_for(self, row: ReportRow) -> float:
        return self.gates.get("tol", 1e-6) * max(1.0, abs(row.rhs))

    def summary(self) -> dict:
        margins = [r.margin for r in self.rows]
        return {
            "rows": len(self.rows),
            "holds": sum(1 for r in self.rows
                         if r.margin >= -self._tol_for(r)),
            "falsified": self.falsified,
            "errors": len(self.errors),
            "min_margin": round12(min(margins)) if margins else None,
        }

    def exit_code(self) -> int:
        if self.falsified:
            return 2
        if self.errors:
            return 1
        return 0


def render_json(report: RunReport) -> str:
    obj = {
        "gates": {k: (round12(v) if isinstance(v, float) else v)
                  for k, v in sorted(report.gates.items())},
        "rows": [r.to_json_obj() for r in report.rows],
        "errors": [e.to_json_obj() for e in report.errors],
        "summary": report.summary(),
    }
    return json.dumps(obj, indent=2) + "\n"


def render_csv(report: RunReport) -> str:
    lines = [CSV_HEADER]
    lines.extend(r.to_csv_line() for r in report.rows)
    return "\n".join(lines) + "\n"


def render_text(report: RunReport) -> str:
    lines = []
    if report.gates:
        lines.append("ambient gates:")
        for key, val in sorted(report.gates.items()):
            sval = format_float(val) if isinstance(val, float) else str(val)
            lines.append(f"  {key}: {sval}")
        lines.append("")
    if report.rows:
        header = ["fixture", "point", "direction", "theorem", "interp",
                  "lhs", "rhs", "margin", "equality"]
        table = [header]
        for r in report.rows:
            table.append([
                r.fixture, _fmt_tuple(r.point), _fmt_tuple(r.direction),
                r.theorem, r.interpretation, format_float(r.lhs),
                format_float(r.rhs), format_float(r.margin), r.equality_case,
            ])
        widths = [max(len(row[k]) for row in table) for k in range(len(header))]
        for row in table:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        lines.append("")
    for err in report.errors:
        loc = "" if err.point is None else f" at point {_fmt_tuple(err.point)}"
        lines.append(f"ERROR [{err.fixture}{loc}]: {err.message}")
    summary = report.summary()
    lines.append("summary: " + "  ".join(
        f"{k}={v}" for k, v in summary.items()))
    return "\n".join(lines) + "\n"


RENDERERS = {"text": render_text, "json": render_json, "csv": render_csv}
