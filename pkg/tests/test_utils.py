from fractions import Fraction

from hypothesis import given, strategies as st
import pytest

from cstop.reports import (
    FAIL,
    PASS,
    SKIPPED,
    SuiteReport,
    check_all,
    expect_failure,
    passed,
    skipped,
    to_jsonable,
)
from cstop.utils import (
    DEFAULT_CONFIG,
    EPSILON_GRID,
    CapabilityError,
    CarrierMismatch,
    CstopError,
    SchemaError,
    SizeCapExceeded,
    ValidationError,
    check_cap,
    epsilon_grid,
    format_rational,
    load_config,
    parse_rational,
    powerset,
    set_partitions,
    sorted_ids,
)


@pytest.mark.parametrize(
    "text, value",
    [
        ("1/2", Fraction(1, 2)),
        ("-3/4", Fraction(-3, 4)),
        ("5", Fraction(5)),
        (" 2 / 6 ", Fraction(1, 3)),
        (7, Fraction(7)),
    ],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "abc", "1.5", "", None, True, "1/-2"])
def test_parse_rational_rejects(text):
    with pytest.raises(SchemaError):
        parse_rational(text)


@given(st.fractions())
def test_format_then_parse(q):
    assert parse_rational(format_rational(q)) == q


def test_format_rational_always_has_denominator():
    assert format_rational(Fraction(3)) == "3/1"
    assert format_rational(Fraction(-2, 4)) == "-1/2"


def test_check_cap():
    check_cap("carrier", 4, 4)
    with pytest.raises(SizeCapExceeded):
        check_cap("carrier", 5, 4)


@pytest.mark.parametrize("n, bell", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15)])
def test_set_partitions_count(n, bell):
    assert len(list(set_partitions(list(range(n))))) == bell


def test_powerset():
    assert len(list(powerset([1, 2, 3]))) == 8


def test_sorted_ids_mixes_types():
    assert sorted_ids(["b", 2, ("a", 1), 1]) == [1, 2, ("a", 1), "b"]


def test_epsilon_grid_is_seeded():
    assert epsilon_grid(3, 5) == epsilon_grid(3, 5)
    assert epsilon_grid(3, 5)[: len(EPSILON_GRID)] == EPSILON_GRID
    assert len(epsilon_grid(0, 32)) == len(EPSILON_GRID) + 32
    assert all(e > 0 for e in epsilon_grid(1, 20))


def test_load_config_from_env(monkeypatch):
    monkeypatch.setenv("CSTOP_CONFIG_PATH", "ENV")
    monkeypatch.setenv("CSTOP_SEED", "7")
    config = load_config()
    assert config["SEED"] == 7
    assert config["SAMPLES"] == DEFAULT_CONFIG["SAMPLES"]


def test_load_config_from_file(monkeypatch, tmp_path):
    path = tmp_path / "config.ini"
    path.write_text("[sampling]\nsamples = 8\n[limits]\nmax_formula_depth = 2\n")
    monkeypatch.setenv("CSTOP_CONFIG_PATH", str(path))
    config = load_config()
    assert config["SAMPLES"] == 8
    assert config["MAX_FORMULA_DEPTH"] == 2
    assert config["MAX_EXHAUSTIVE_CARRIER"] == 6


def test_load_config_rejects_non_integers(monkeypatch, tmp_path):
    monkeypatch.setenv("CSTOP_CONFIG_PATH", "ENV")
    monkeypatch.setenv("CSTOP_SAMPLES", "many")
    with pytest.raises(SchemaError):
        load_config()
    path = tmp_path / "config.ini"
    path.write_text("[limits]\nmax_swap_model = lots\n")
    monkeypatch.setenv("CSTOP_CONFIG_PATH", str(path))
    with pytest.raises(SchemaError):
        load_config()


def test_check_all_stops_at_first_failure():
    result = check_all("small", [(1,), (2,), (5,), (6,)], lambda x: x < 4)
    assert result.status == FAIL
    assert result.witness == (5,)
    assert result.cases == 3


def test_expect_failure_keeps_counterexample():
    result = expect_failure("no-big", [(1,), (9,)], lambda x: x < 4, "9 is big")
    assert result.status == PASS
    assert result.witness == (9,)
    assert expect_failure("none", [(1,)], lambda x: x < 4, "x").status == FAIL


def test_suite_report_json_is_ordered_and_untimed():
    report = SuiteReport("s", [passed("b"), skipped("a", "why")], seed=1, elapsed=3.5)
    body = report.to_json()
    assert [c["check"] for c in body["checks"]] == ["a", "b"]
    assert body["counters"] == {PASS: 1, FAIL: 0, SKIPPED: 1}
    assert "elapsed" not in body


def test_to_jsonable():
    assert to_jsonable({"q": Fraction(1, 2), "s": frozenset([2, 1])}) == {
        "q": "1/2",
        "s": [1, 2],
    }


@pytest.mark.parametrize("error", [CarrierMismatch, CapabilityError, SchemaError])
def test_input_errors_are_not_validation_errors(error):
    assert issubclass(error, CstopError)
    assert not issubclass(error, ValidationError)
