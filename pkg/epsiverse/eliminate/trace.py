from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from ..errors import BoundViolation
from .hyperexp import Number, within


@dataclass
class BoundCheck:
    name: str
    expression: str
    bound: str
    actual: int
    passed: bool

    @classmethod
    def of(cls, name: str, expression: str, bound: Number, actual: int) -> "BoundCheck":
        return cls(name, expression, str(bound), actual, within(actual, bound))


@dataclass
class TraceStep:
    index: int
    lemma: str
    rank: int
    term: Optional[str] = None
    strategy: Optional[str] = None
    rationale: Optional[str] = None
    greatest_in_matrix: Optional[bool] = None
    cases: int = 0
    before: Dict[str, Any] = field(default_factory=dict)
    after: Dict[str, Any] = field(default_factory=dict)
    checks: List[BoundCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_record(self) -> Dict[str, Any]:
        record = asdict(self)
        record["passed"] = self.passed
        return record

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> "TraceStep":
        data = {k: v for k, v in record.items() if k != "passed"}
        data["checks"] = [BoundCheck(**c) for c in data.get("checks", [])]
        return cls(**data)


@dataclass
class EliminationTrace:
    """Evidence ledger of an elimination run, one step per lemma application."""

    steps: List[TraceStep] = field(default_factory=list)
    summary: List[BoundCheck] = field(default_factory=list)

    def add(self, step: TraceStep) -> TraceStep:
        step.index = len(self.steps)
        self.steps.append(step)
        return step

    @property
    def checks(self) -> List[BoundCheck]:
        return [c for s in self.steps for c in s.checks] + list(self.summary)

    @property
    def violations(self) -> List[BoundCheck]:
        return [c for c in self.checks if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.violations

    def raise_for_violations(self) -> "EliminationTrace":
        bad = self.violations
        if bad:
            shown = "; ".join(f"{c.name}: {c.actual} > {c.expression} = {c.bound}" for c in bad[:3])
            raise BoundViolation(f"{len(bad)} bound check(s) failed: {shown}")
        return self

    def to_records(self) -> List[Dict[str, Any]]:
        records = [s.to_record() for s in self.steps]
        if self.summary:
            records.append({"summary": [asdict(c) for c in self.summary]})
        return records

    @classmethod
    def from_records(cls, records: List[Dict[str, Any]]) -> "EliminationTrace":
        trace = cls()
        for record in records:
            if "summary" in record:
                trace.summary.extend(BoundCheck(**c) for c in record["summary"])
            else:
                trace.steps.append(TraceStep.from_record(record))
        return trace
