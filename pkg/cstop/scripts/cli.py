#!/usr/bin/env python3
import json
import logging
import sys

import click
import click_log

from cstop.generators import enumerate_cs, random_carrier, random_metric
from cstop.renderers import render_check, render_reports, reports_to_json
from cstop.reports import SuiteReport
from cstop.schema import load_document, parse_document, validate_document
from cstop.setineq import discrete_carrier
from cstop.suites import SUITES, SuiteContext, run_suites
from cstop.utils import (
    CstopError,
    ValidationError,
    load_config,
)


logger = logging.getLogger(__name__)
click_log.basic_config()

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def _input_error(e: Exception) -> None:
    click.echo(f"error: {e}", err=True)
    sys.exit(EXIT_INPUT)


@click.group()
def cstop():
    pass


@cstop.command()
@click_log.simple_verbosity_option()
@click.argument("document", type=click.File("r"))
@click.option("--json", "as_json", is_flag=True, default=False)
def validate(document, as_json: bool) -> None:
    """Schema and axiom validation of a model document."""
    try:
        data = load_document(document)
        _, checks = validate_document(data)
    except CstopError as e:
        _input_error(e)
    report = SuiteReport("validate", checks)
    if as_json:
        click.echo(reports_to_json([report]))
    else:
        for check in report.ordered():
            click.echo(render_check(check))
    sys.exit(EXIT_OK if report.ok else EXIT_FAILED)


@cstop.command()
@click_log.simple_verbosity_option()
@click.argument("suite", type=click.Choice(sorted(SUITES) + ["all"]))
@click.argument("document", type=click.File("r"))
@click.option("--samples", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option(
    "--law",
    type=click.Choice(["pointwise", "uniform"]),
    default=None,
    help="Continuity law for the csb-laws suite; both when omitted.",
)
@click.option("--json", "as_json", is_flag=True, default=False)
def check(
    suite: str, document, samples: int, seed: int, law: str, as_json: bool
) -> None:
    """Run a law suite (or all of them) against a model document."""
    try:
        config = load_config()
        doc = parse_document(load_document(document))
    except ValidationError as e:
        click.echo(f"invalid document: {e}", err=True)
        if e.witness is not None:
            click.echo(f"witness: {json.dumps(str(e.witness))}", err=True)
        sys.exit(EXIT_FAILED)
    except CstopError as e:
        _input_error(e)
    ctx = SuiteContext(
        doc,
        config,
        samples=config["SAMPLES"] if samples is None else samples,
        seed=config["SEED"] if seed is None else seed,
        law=law,
    )
    names = sorted(SUITES) if suite == "all" else [suite]
    try:
        reports = run_suites(names, ctx)
    except CstopError as e:
        _input_error(e)
    if as_json:
        click.echo(reports_to_json(reports))
    else:
        click.echo(render_reports(reports))
    sys.exit(EXIT_OK if all(r.ok for r in reports) else EXIT_FAILED)


@cstop.command()
@click_log.simple_verbosity_option()
@click.argument(
    "kind", type=click.Choice(["random-metric", "random-carrier", "enumerate-cs"])
)
@click.option("-n", "--size", type=int, default=3)
@click.option("--seed", type=int, default=None)
@click.option("--discrete", is_flag=True, default=False)
@click.option("--out", "out_file", type=click.File("w"), default="-")
def generate(kind: str, size: int, seed: int, discrete: bool, out_file) -> None:
    """Write a seeded model document."""
    try:
        config = load_config()
        seed = config["SEED"] if seed is None else seed
        if kind == "random-metric":
            data = random_metric(size, seed, cap=config["MAX_EXHAUSTIVE_CARRIER"])
        elif kind == "random-carrier":
            data = random_carrier(
                size, seed, discrete=discrete, cap=config["MAX_EXHAUSTIVE_CARRIER"]
            )
        else:
            data = enumerate_cs(
                discrete_carrier(size), cap=config["MAX_ENUMERATION_CARRIER"]
            )
    except CstopError as e:
        _input_error(e)
    json.dump(data, out_file, indent=2, sort_keys=True)
    out_file.write("\n")


if __name__ == "__main__":
    cstop()
