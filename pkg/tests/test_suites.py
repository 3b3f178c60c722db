import json

import pytest

from cstop.renderers import render_check, render_report, reports_to_json
from cstop.reports import FAIL, SKIPPED, failed, passed, skipped
from cstop.schema import parse_document
from cstop.suites import SUITES, SuiteContext, _capped, run_suite, run_suites
from cstop.utils import DEFAULT_CONFIG, AxiomViolation, SizeCapExceeded


CONFIG = dict(DEFAULT_CONFIG, MAX_FORMULA_DEPTH=2)


def context(data, samples=4):
    return SuiteContext(parse_document(data), CONFIG, samples=samples, seed=0)


def two_point_document(**extra):
    doc = {
        "carrier": {"name": "X", "elements": ["0", "1"]},
        "complemented": {"S": {"one": ["0"], "zero": ["1"]}},
        "functions": {
            "id": {"domain": "X", "codomain": "X", "table": {"0": "0", "1": "1"}},
        },
    }
    doc.update(extra)
    return doc


def bad(report):
    return [c for c in report.checks if not c.ok]


def test_missing_sections_are_skipped():
    ctx = context(two_point_document())
    for name in ("topology", "metric-openness", "covering", "continuity-roundtrip"):
        report = run_suite(name, ctx)
        assert [c.status for c in report.checks] == [SKIPPED]
        assert report.ok


@pytest.mark.parametrize(
    "suite, extra",
    [
        ("swap-laws", {}),
        ("subset-calculus", {}),
        ("points", {}),
        ("topology", {"topology": {"opens": ["top", "bottom", "S"]}}),
        ("csb-laws", {"base": {"members": ["S"]}}),
        ("weak-topology", {"base": {"members": ["S"]}}),
        ("formula-negation", {"formulas": {"f": "(forall x X (eq x x))"}}),
    ],
)
def test_suites_pass_on_the_two_point_space(suite, extra):
    report = run_suite(suite, context(two_point_document(**extra)))
    assert report.checks
    assert report.ok, bad(report)


def test_metric_suites_on_a_finite_space():
    data = {
        "metric": {"elements": ["a", "b", "c"], "distances": [[0, 1, 2], [1, 0, 1], [2, 1, 0]]},
        "moduli": {"ab": {"ball": ["b", "3/2"]}, "co": {"copoint": "a"}},
    }
    ctx = context(data)
    for name in ("metric-openness", "covering", "csb-laws"):
        report = run_suite(name, ctx)
        assert report.ok, bad(report)
    ids = [c.check_id for c in run_suite("metric-openness", ctx).checks]
    assert any(i.startswith("document:") for i in ids)


def test_continuity_roundtrip_reports_a_bad_modulus():
    data = {
        "metric": {"line": True},
        "maps": {
            "double": {"affine": ["2", "0"], "uniform": {"scale": "1/2"}},
            "wrong": {"affine": ["2", "0"], "uniform": {"identity": None}},
        },
    }
    report = run_suite("continuity-roundtrip", context(data))
    failures = [c.check_id for c in report.checks if c.status == FAIL]
    assert failures
    assert "uniform-continuity:wrong" in failures
    assert "uniform-continuity:double" not in failures


def test_run_suites_orders_by_name():
    ctx = context(two_point_document(topology={"opens": ["top", "bottom", "S"]}))
    reports = run_suites(["topology", "points", "swap-laws"], ctx, workers=2)
    assert [r.suite for r in reports] == ["points", "swap-laws", "topology"]
    assert all(r.seed == 0 and r.samples == 4 for r in reports)


def test_every_suite_is_registered():
    assert sorted(SUITES) == [
        "continuity-roundtrip",
        "covering",
        "csb-laws",
        "formula-negation",
        "metric-openness",
        "points",
        "subset-calculus",
        "swap-laws",
        "topology",
        "weak-topology",
    ]


def test_render_check():
    assert render_check(passed("a-law", cases=3)) == "PASS a-law  [3 cases]"
    assert render_check(skipped("b-law", "no metric")) == "SKIP b-law  (no metric)"
    line = render_check(failed("c-law", ["0", "1"]))
    assert line.startswith("FAIL c-law  [1 cases]")
    assert 'witness: ["0", "1"]' in line


def test_report_json_is_deterministic():
    ctx = context(two_point_document())
    one = run_suites(["points"], ctx)
    body = json.loads(reports_to_json(one))
    assert body["suite"] == "points"
    assert "elapsed" not in body
    assert reports_to_json(one) == reports_to_json(run_suites(["points"], ctx))
    both = json.loads(reports_to_json(run_suites(["points", "topology"], ctx)))
    assert [s["suite"] for s in both["suites"]] == ["points", "topology"]
    assert render_report(one[0]).startswith("== points:")


def test_broken_constructions_fail_instead_of_raising():
    def broken():
        raise AxiomViolation("closed-under-intersection", ["G", "H"])

    def huge():
        raise SizeCapExceeded("carrier X has size 9, over the cap of 4")

    (result,) = _capped("csb", broken)
    assert result.status == FAIL and result.witness == ["G", "H"]
    (result,) = _capped("csb", huge)
    assert result.status == SKIPPED and "cap" in result.reason


TABLE = {"top": "top", "S": "S", "bottom": "bottom"}


def test_csb_law_selection():
    data = two_point_document(
        base={"members": ["S"]},
        maps={
            "ident": {"csb": "id", "uniform": TABLE},
            "pw": {"csb": "id", "pointwise": {"0": TABLE, "1": TABLE}},
        },
    )
    doc = parse_document(data)
    pointwise = run_suite("csb-laws", SuiteContext(doc, CONFIG, 4, 0, law="pointwise"))
    ids = [c.check_id for c in pointwise.checks]
    assert "ident:pointwise-csb-continuity:id" in ids
    assert not any(i.startswith("ident:uniform") for i in ids)
    assert not any("projection:uniform" in i or "uniform-projection" in i for i in ids)
    uniform = run_suite("csb-laws", SuiteContext(doc, CONFIG, 4, 0, law="uniform"))
    ids = [c.check_id for c in uniform.checks]
    assert "ident:uniform-csb-continuity:id" in ids
    skips = [c for c in uniform.checks if c.status == SKIPPED]
    assert [c.check_id for c in skips] == ["pw:uniform-csb-continuity"]
