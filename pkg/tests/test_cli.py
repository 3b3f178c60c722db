import json

from click.testing import CliRunner
import pytest

from cstop.scripts.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, cstop
from cstop.utils import CapabilityError, CarrierMismatch


TWO_POINTS = {
    "carrier": {"name": "X", "elements": ["0", "1"]},
    "complemented": {"S": {"one": ["0"], "zero": ["1"]}},
    "topology": {"opens": ["top", "bottom", "S"]},
}


@pytest.fixture
def runner():
    return CliRunner(
        mix_stderr=False,
        env={"CSTOP_CONFIG_PATH": "ENV", "CSTOP_SAMPLES": "4", "CSTOP_MAX_FORMULA_DEPTH": "2"},
    )


def run(runner, *args, document=None):
    text = None if document is None else json.dumps(document)
    return runner.invoke(cstop, list(args), input=text)


def test_validate_ok(runner):
    result = run(runner, "validate", "-", document=TWO_POINTS)
    assert result.exit_code == EXIT_OK, result.output
    assert "PASS valid-topology" in result.output


def test_validate_reports_axiom_failures(runner):
    doc = dict(TWO_POINTS, topology={"opens": ["top", "S"]})
    result = run(runner, "validate", "--json", "-", document=doc)
    assert result.exit_code == EXIT_FAILED
    body = json.loads(result.output)
    statuses = {c["check"]: c["status"] for c in body["checks"]}
    assert statuses["valid-topology"] == "fail"


@pytest.mark.parametrize(
    "document",
    [
        {"metric": {"elements": ["a", "b"], "distances": [[0, "1/0"], ["1/0", 0]]}},
        {"carrier": {"elements": ["0"]}, "surprise": {}},
    ],
)
def test_validate_input_errors(runner, document):
    result = run(runner, "validate", "-", document=document)
    assert result.exit_code == EXIT_INPUT
    assert result.stderr.startswith("error:")


def test_check_passes(runner):
    result = run(runner, "check", "--json", "topology", "-", document=TWO_POINTS)
    assert result.exit_code == EXIT_OK, result.stderr
    body = json.loads(result.output)
    assert body["suite"] == "topology"
    assert body["samples"] == 4
    assert body["counters"]["fail"] == 0


def test_check_fails_on_a_bad_modulus(runner):
    doc = {
        "metric": {"line": True},
        "maps": {"wrong": {"affine": ["2", "0"], "uniform": {"identity": None}}},
    }
    result = run(runner, "check", "continuity-roundtrip", "--seed", "3", "-", document=doc)
    assert result.exit_code == EXIT_FAILED
    assert "FAIL" in result.output
    assert "(seed 3, 4 samples" in result.output


def test_check_invalid_document(runner):
    doc = dict(TWO_POINTS, topology={"opens": ["bottom"]})
    result = run(runner, "check", "topology", "-", document=doc)
    assert result.exit_code == EXIT_FAILED
    assert "invalid document" in result.stderr


def test_check_unknown_suite(runner):
    result = run(runner, "check", "everything", "-", document=TWO_POINTS)
    assert result.exit_code == 2


def test_generate_enumerate_cs(runner):
    result = run(runner, "generate", "enumerate-cs", "-n", "2")
    assert result.exit_code == EXIT_OK
    assert len(json.loads(result.output)["complemented"]) == 9


def test_generate_is_seeded(runner):
    first = run(runner, "generate", "random-metric", "-n", "3", "--seed", "5")
    again = run(runner, "generate", "random-metric", "-n", "3", "--seed", "5")
    assert first.exit_code == EXIT_OK
    assert first.output == again.output
    carrier = run(runner, "generate", "random-carrier", "-n", "3", "--discrete")
    assert json.loads(carrier.output)["carrier"]["elements"] == ["0", "1", "2"]


def test_generate_over_the_cap(runner):
    result = run(runner, "generate", "random-metric", "-n", "99")
    assert result.exit_code == EXIT_INPUT
    assert "cap" in result.stderr


def test_generated_documents_validate(runner):
    doc = json.loads(run(runner, "generate", "random-metric", "-n", "3").output)
    assert run(runner, "validate", "-", document=doc).exit_code == EXIT_OK


@pytest.mark.parametrize("command", ["validate", "check"])
@pytest.mark.parametrize(
    "document",
    [
        {"carrier": "X"},
        {"carrier": {"elements": ["0"]}, "complemented": {"S": 5}},
        {
            "carrier": {"name": "X", "elements": ["0"]},
            "functions": {"f": {"domain": "X", "codomain": "X", "table": ["0"]}},
        },
    ],
)
def test_malformed_sections_are_input_errors(runner, command, document):
    args = [command, "-"] if command == "validate" else [command, "topology", "-"]
    result = run(runner, *args, document=document)
    assert result.exit_code == EXIT_INPUT
    assert result.stderr.startswith("error:")


def test_bad_config_is_an_input_error():
    runner = CliRunner(
        mix_stderr=False, env={"CSTOP_CONFIG_PATH": "ENV", "CSTOP_SAMPLES": "many"}
    )
    result = run(runner, "check", "topology", "-", document=TWO_POINTS)
    assert result.exit_code == EXIT_INPUT
    assert "SAMPLES" in result.stderr
    assert run(runner, "generate", "enumerate-cs").exit_code == EXIT_INPUT


@pytest.mark.parametrize("error", [CapabilityError, CarrierMismatch])
def test_non_validation_errors_while_parsing_are_input_errors(
    runner, monkeypatch, error
):
    def refuse(data):
        raise error("refused while parsing")

    monkeypatch.setattr("cstop.scripts.cli.parse_document", refuse)
    result = run(runner, "check", "topology", "-", document=TWO_POINTS)
    assert result.exit_code == EXIT_INPUT
    assert "refused while parsing" in result.stderr


def test_check_law_option(runner):
    table = {"top": "top", "S": "S", "bottom": "bottom"}
    doc = dict(
        TWO_POINTS,
        functions={"id": {"domain": "X", "codomain": "X", "table": {"0": "0", "1": "1"}}},
        base={"members": ["S"]},
        maps={"ident": {"csb": "id", "uniform": table}},
    )
    result = run(runner, "check", "--json", "--law", "pointwise", "csb-laws", "-", document=doc)
    assert result.exit_code == EXIT_OK, result.output
    ids = [c["check"] for c in json.loads(result.output)["checks"]]
    assert any(i.startswith("ident:pointwise") for i in ids)
    assert not any(i.startswith("ident:uniform") for i in ids)
    assert run(runner, "check", "--law", "global", "csb-laws", "-", document=doc).exit_code == 2
