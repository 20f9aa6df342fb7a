"""Report containers shared by the verification modules and the CLI.

Per-degree tables serialize as {degree, expected_dim, computed_dim,
witness?}; suite reports as {suite, bound, checks:[{id, paper_ref, status,
details}]}. Everything is plain data so output bytes depend only on
(suite, bound, version).
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class DegreeRow:
    degree: int
    expected_dim: int
    computed_dim: int
    witness: str | None = None

    def to_dict(self) -> dict:
        d = {"degree": self.degree, "expected_dim": self.expected_dim,
             "computed_dim": self.computed_dim}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class DegreeReport:
    """A named per-degree expected/computed table; ok iff every row matches."""

    name: str
    rows: list[DegreeRow] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, degree: int, expected: int, computed: int, witness: str | None = None):
        self.rows.append(DegreeRow(degree, expected, computed, witness))

    @property
    def ok(self) -> bool:
        return all(r.expected_dim == r.computed_dim for r in self.rows)

    def failures(self) -> list[DegreeRow]:
        return [r for r in self.rows if r.expected_dim != r.computed_dim]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "rows": [r.to_dict() for r in self.rows],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class CheckResult:
    id: str
    paper_ref: str
    status: str  # "pass" | "fail"
    details: str

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {"id": self.id, "paper_ref": self.paper_ref,
                "status": self.status, "details": self.details}


def check(id: str, paper_ref: str, ok: bool, details: str) -> CheckResult:
    return CheckResult(id, paper_ref, "pass" if ok else "fail", details)


@dataclass
class SuiteReport:
    suite: str
    bound: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "bound": self.bound,
                "checks": [c.to_dict() for c in self.checks]}

    def to_text(self) -> str:
        lines = [f"suite {self.suite} (bound {self.bound})"]
        for c in self.checks:
            lines.append(f"  {c.status.upper():4s} {c.id}: {c.details}")
        failed = sum(not c.ok for c in self.checks)
        lines.append(f"{len(self.checks)} checks, {failed} failed")
        return "\n".join(lines) + "\n"
