"""Structured records emitted by every ``check_*`` routine."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class CheckResult:
    name: str
    passed: bool
    sample_size: int = 1
    counterexample: Optional[str] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  counterexample: {self.counterexample}" if self.counterexample else ""
        return f"[{status}] {self.name} (n={self.sample_size}){tail}"


def run_check(name: str, cases, predicate, describe=str) -> CheckResult:
    """Evaluate ``predicate`` on each case, keeping the first failure."""
    n = 0
    for case in cases:
        n += 1
        if not predicate(case):
            return CheckResult(name, False, n, describe(case))
    return CheckResult(name, True, n)


def all_passed(results: List[CheckResult]) -> bool:
    return all(r.passed for r in results)
