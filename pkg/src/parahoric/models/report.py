"""Results of the identity suite."""

from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass(frozen=True, order=True)
class Violation:
    check: str
    key: str
    detail: str

    def to_dict(self) -> Dict[str, str]:
        return {"check": self.check, "key": self.key, "detail": self.detail}


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, key: str, ok: bool, detail: Any = "") -> None:
        self.cases += 1
        if not ok:
            self.violations.append(Violation(self.name, key, str(detail)))

    def summary(self) -> Dict[str, Any]:
        return {"name": self.name, "cases": self.cases, "violations": len(self.violations)}
