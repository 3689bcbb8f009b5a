"""Structured pass/fail reports with violation witnesses.

Every validator in the package returns a :class:`CheckReport`.  Violations
are data, not exceptions; a report passes iff it has none.  Witness
rendering is deterministic (no set iteration, keys sorted) so identical
inputs produce byte-identical serialized reports.
"""
from __future__ import annotations

from dataclasses import dataclass, field


def render(value) -> str:
    """Deterministic, order-stable string form for witness data."""
    if isinstance(value, str):
        return value
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(render(v) for v in value) + ")"
    if isinstance(value, dict):
        items = sorted(value.items(), key=lambda kv: kv[0])
        return "{" + ", ".join(f"{k}: {render(v)}" for k, v in items) + "}"
    return repr(value)


@dataclass
class Violation:
    axiom: str
    witness: str

    def as_json(self) -> dict:
        return {"axiom": self.axiom, "witness": self.witness}


@dataclass
class AxiomCheck:
    axiom: str
    instances: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "instances": self.instances,
            "violations": [v.as_json() for v in self.violations],
        }


@dataclass
class CheckReport:
    structure: str
    checks: list[AxiomCheck] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def check(self, axiom: str) -> AxiomCheck:
        for c in self.checks:
            if c.axiom == axiom:
                return c
        c = AxiomCheck(axiom)
        self.checks.append(c)
        return c

    def count(self, axiom: str, n: int = 1) -> None:
        self.check(axiom).instances += n

    def violation(self, axiom: str, witness) -> None:
        self.check(axiom).violations.append(Violation(axiom, render(witness)))

    def expect(self, axiom: str, lhs, rhs, witness) -> bool:
        """Count an instance; record a violation when the two legs differ."""
        self.count(axiom)
        if lhs != rhs:
            self.violation(axiom, witness)
            return False
        return True

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def violations(self) -> list[Violation]:
        return [v for c in self.checks for v in c.violations]

    def violated_axioms(self) -> list[str]:
        return [c.axiom for c in self.checks if not c.passed]

    def total_instances(self) -> int:
        return sum(c.instances for c in self.checks)

    def as_json(self) -> dict:
        payload = {
            "structure": self.structure,
            "verdict": self.verdict,
            "checks": [c.as_json() for c in self.checks],
        }
        if self.metadata:
            payload["metadata"] = {k: self.metadata[k] for k in sorted(self.metadata)}
        return payload

    def merged(self, other: "CheckReport") -> "CheckReport":
        report = CheckReport(self.structure)
        report.checks = list(self.checks) + list(other.checks)
        report.metadata = {**self.metadata, **other.metadata}
        return report

    def summary(self) -> str:
        lines = [f"{self.structure}: {self.verdict}"]
        for c in self.checks:
            status = "ok" if c.passed else f"FAIL ({len(c.violations)} violations)"
            lines.append(f"  {c.axiom}: {c.instances} instances, {status}")
            for v in c.violations[:3]:
                lines.append(f"    witness: {v.witness}")
        return "\n".join(lines)
