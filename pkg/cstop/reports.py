from dataclasses import dataclass, field
from fractions import Fraction
import logging
from typing import Any, Callable, Dict, Iterable, List, Optional

from cstop.utils import format_rational, sort_key


logger = logging.getLogger(__name__)


PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"

REPORT_VERSION = 1


@dataclass
class CheckResult:
    check_id: str
    status: str
    witness: Any = None
    reason: Optional[str] = None
    detail: Optional[str] = None
    cases: int = 0

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_json(self) -> Dict[str, Any]:
        out = {"check": self.check_id, "status": self.status, "cases": self.cases}
        if self.witness is not None:
            out["witness"] = to_jsonable(self.witness)
        if self.reason is not None:
            out["reason"] = self.reason
        if self.detail is not None:
            out["detail"] = self.detail
        return out


def passed(check_id: str, cases: int = 1, detail: Optional[str] = None) -> CheckResult:
    return CheckResult(check_id, PASS, cases=cases, detail=detail)


def failed(
    check_id: str, witness: Any = None, detail: Optional[str] = None, cases: int = 1
) -> CheckResult:
    return CheckResult(check_id, FAIL, witness=witness, detail=detail, cases=cases)


def skipped(check_id: str, reason: str) -> CheckResult:
    return CheckResult(check_id, SKIPPED, reason=reason, cases=0)


def verdict(check_id: str, ok: bool, witness: Any = None, **kwargs) -> CheckResult:
    if ok:
        return passed(check_id, **kwargs)
    return failed(check_id, witness, **kwargs)


def check_all(
    check_id: str, cases: Iterable[Any], predicate: Callable[..., bool]
) -> CheckResult:
    """Evaluate ``predicate`` on every case tuple, stopping at the first failure."""
    count = 0
    for case in cases:
        count += 1
        if not predicate(*case):
            logger.debug(f"{check_id} failed at case {count}")
            return CheckResult(check_id, FAIL, witness=case, cases=count)
    return CheckResult(check_id, PASS, cases=count)


def expect_failure(
    check_id: str, cases: Iterable[Any], predicate: Callable[..., bool], finding: str
) -> CheckResult:
    """Passes when some case refutes ``predicate``; the refuting case is kept."""
    count = 0
    for case in cases:
        count += 1
        if not predicate(*case):
            return CheckResult(
                check_id, PASS, witness=case, detail=finding, cases=count
            )
    return CheckResult(
        check_id, FAIL, detail=f"expected a counterexample: {finding}", cases=count
    )


def prefixed(prefix: str, results: Iterable[CheckResult]) -> List[CheckResult]:
    out = []
    for result in results:
        result.check_id = f"{prefix}:{result.check_id}"
        out.append(result)
    return out


@dataclass
class SuiteReport:
    suite: str
    checks: List[CheckResult] = field(default_factory=list)
    seed: int = 0
    samples: int = 0
    elapsed: float = 0.0

    def extend(self, results: Iterable[CheckResult]) -> None:
        self.checks.extend(results)

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.checks)

    @property
    def counters(self) -> Dict[str, int]:
        counts = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for check in self.checks:
            counts[check.status] += 1
        return counts

    def ordered(self) -> List[CheckResult]:
        return sorted(self.checks, key=lambda c: c.check_id)

    def to_json(self) -> Dict[str, Any]:
        return {
            "version": REPORT_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "samples": self.samples,
            "counters": self.counters,
            "checks": [check.to_json() for check in self.ordered()],
        }


def to_jsonable(value: Any) -> Any:
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (int, str)):
        return value
    if isinstance(value, (frozenset, set)):
        return [to_jsonable(v) for v in sorted(value, key=sort_key)]
    if isinstance(value, (tuple, list)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    return str(value)
