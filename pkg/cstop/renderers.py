import json
import logging
from typing import Dict, Iterable, List

from cstop.reports import FAIL, PASS, SKIPPED, CheckResult, SuiteReport, to_jsonable


logger = logging.getLogger(__name__)


STATUS_LABELS = {PASS: "PASS", FAIL: "FAIL", SKIPPED: "SKIP"}


def render_witness(witness) -> str:
    return json.dumps(to_jsonable(witness), sort_keys=True)


def render_check(check: CheckResult) -> str:
    line = f"{STATUS_LABELS[check.status]:<5}{check.check_id}"
    if check.status == SKIPPED:
        return f"{line}  ({check.reason})"
    line = f"{line}  [{check.cases} cases]"
    if check.detail:
        line = f"{line}  {check.detail}"
    if check.status == FAIL and check.witness is not None:
        line = f"{line}\n     witness: {render_witness(check.witness)}"
    elif check.status == PASS and check.witness is not None:
        # expected counterexamples
        line = f"{line}\n     found: {render_witness(check.witness)}"
    return line


def render_counters(counters: Dict[str, int]) -> str:
    return ", ".join(f"{counters[k]} {k}" for k in (PASS, FAIL, SKIPPED))


def render_report(report: SuiteReport) -> str:
    header = (
        f"== {report.suite}: {render_counters(report.counters)} "
        f"(seed {report.seed}, {report.samples} samples, {report.elapsed:.3f}s)"
    )
    return "\n".join([header] + [render_check(c) for c in report.ordered()])


def render_reports(reports: Iterable[SuiteReport]) -> str:
    return "\n\n".join(render_report(r) for r in reports)


def reports_to_json(reports: List[SuiteReport]) -> str:
    """Deterministic JSON: timings are left out, keys and checks are sorted."""
    if len(reports) == 1:
        body = reports[0].to_json()
    else:
        body = {"suites": [r.to_json() for r in reports]}
    return json.dumps(body, indent=2, sort_keys=True)
