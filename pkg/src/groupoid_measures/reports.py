"""Check reports: rows of two-sided comparisons with pass/fail verdicts."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass


@dataclass(frozen=True)
class CheckRow:
    scenario: str
    check: str
    lhs: float
    rhs: float
    tolerance: float
    exact: bool = False

    @property
    def abs_err(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def rel_err(self) -> float:
        """Relative error; against unit scale when the reference side is zero."""
        if self.rhs == 0.0:
            return self.abs_err
        return self.abs_err / max(abs(self.lhs), abs(self.rhs))

    @property
    def passed(self) -> bool:
        if self.exact:
            return self.abs_err == 0.0
        return self.rel_err <= self.tolerance


@dataclass
class Report:
    rows: list[CheckRow]

    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def summary(self) -> dict:
        ok = sum(r.passed for r in self.rows)
        return {"total": len(self.rows), "passed": ok, "failed": len(self.rows) - ok}

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["scenario", "check", "lhs", "rhs", "abs_err", "rel_err",
                         "tolerance", "pass"])
        for r in self.rows:
            writer.writerow([r.scenario, r.check,
                             f"{r.lhs:.17g}", f"{r.rhs:.17g}",
                             f"{r.abs_err:.17g}", f"{r.rel_err:.17g}",
                             f"{r.tolerance:.17g}", str(r.passed).lower()])
        return out.getvalue()

    def to_json(self) -> str:
        return json.dumps({
            "rows": [{
                "scenario": r.scenario, "check": r.check, "lhs": r.lhs, "rhs": r.rhs,
                "abs_err": r.abs_err, "rel_err": r.rel_err,
                "tolerance": r.tolerance, "pass": r.passed,
            } for r in self.rows],
            "summary": self.summary(),
        }, indent=2)
