"""Law suites run against a model document.

Each suite takes the parsed document and returns its checks. A suite whose
sections are missing returns a single skipped check naming them.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import itertools
import logging
import time
from typing import Callable, Dict, List, Optional, Sequence

from cstop import complemented, continuity, csb, formulas, metric, setineq, swap
from cstop.reports import (
    CheckResult,
    SuiteReport,
    check_all,
    failed,
    passed,
    prefixed,
    skipped,
    verdict,
)
from cstop.schema import ModelDocument
from cstop.topology import map_laws, topology_laws
from cstop.utils import CapabilityError, SizeCapExceeded, ValidationError


logger = logging.getLogger(__name__)


@dataclass
class SuiteContext:
    doc: ModelDocument
    config: Dict[str, int]
    samples: int
    seed: int
    law: Optional[str] = None


SuiteFn = Callable[[SuiteContext], List[CheckResult]]


def _needs(ctx: SuiteContext, suite: str, *sections: str) -> List[CheckResult]:
    missing = [s for s in sections if not ctx.doc.has(s)]
    if missing:
        return [skipped(suite, f"document has no {', '.join(missing)} section")]
    return []


def _capped(check_id: str, run: Callable[[], List[CheckResult]]) -> List[CheckResult]:
    """Run a law group; a size cap skips it and a broken construction fails it."""
    try:
        return run()
    except SizeCapExceeded as e:
        logger.warning(f"{check_id}: {e}")
        return [skipped(check_id, str(e))]
    except ValidationError as e:
        logger.warning(f"{check_id}: {e}")
        return [failed(check_id, e.witness, detail=str(e))]


def swap_laws(ctx: SuiteContext) -> List[CheckResult]:
    out = []
    for carrier in ctx.doc.carriers.values():
        out += prefixed(
            carrier.name,
            _capped(
                "swap-model",
                lambda: swap.swap_suite(carrier, ctx.config["MAX_SWAP_MODEL"]),
            ),
        )
        if carrier.is_discrete and len(carrier) <= 2:
            out += prefixed(carrier.name, swap.distributivity_laws(carrier))
    return out


def _composable(functions: Sequence[setineq.FunctionTable]):
    for f, g in itertools.product(functions, repeat=2):
        if f.codomain is g.domain:
            yield f, g


def subset_calculus(ctx: SuiteContext) -> List[CheckResult]:
    cap = ctx.config["MAX_ENUMERATION_CARRIER"]
    out = []
    for carrier in ctx.doc.carriers.values():
        if len(carrier) > cap:
            out.append(skipped(f"{carrier.name}:subset-calculus", f"carrier over {cap}"))
            continue
        for laws in (
            setineq.carrier_laws,
            setineq.neq_complement_laws,
            setineq.tightness_laws,
            complemented.algebra_laws,
        ):
            out += prefixed(carrier.name, laws(carrier))
        if len(carrier) <= 2:
            out += prefixed(carrier.name, setineq.product_laws(carrier, carrier))
            out += prefixed(carrier.name, complemented.product_laws(carrier, carrier))
    functions = list(ctx.doc.functions.values())
    for f in functions:
        if max(len(f.domain), len(f.codomain)) > cap:
            out.append(skipped(f"{f.name}:image-laws", f"carrier over {cap}"))
            continue
        for laws in (
            setineq.image_laws,
            setineq.neq_image_laws,
            complemented.image_laws,
            complemented.canonical_preimage_laws,
        ):
            out += prefixed(f.name, laws(f))
    for f, g in _composable(functions):
        out += prefixed(f"{g.name}.{f.name}", setineq.composition_laws(f, g))
        if g.codomain is not f.domain:
            continue
        for relation in ("left_inverse", "right_inverse", "inverse", "ineq_adjoint"):
            report = setineq.check_inverse_adjoint(relation, f, g)
            out += prefixed(f"{f.name}/{g.name}:{relation}", report.conclusions)
    return out


def points(ctx: SuiteContext) -> List[CheckResult]:
    out = []
    for carrier in ctx.doc.carriers.values():
        if len(carrier) > 3:
            out.append(skipped(f"{carrier.name}:points", "carrier over 3"))
            continue
        out += prefixed(
            carrier.name, complemented.point_laws(carrier, full_points=len(carrier) <= 2)
        )
    return out


def topology(ctx: SuiteContext) -> List[CheckResult]:
    out = _needs(ctx, "topology", "topology")
    if out:
        return out
    t = ctx.doc.topology
    out += prefixed(t.name, topology_laws(t))
    for f in ctx.doc.functions.values():
        if f.domain is t.carrier and f.codomain is t.carrier:
            out += prefixed(f.name, map_laws(f, t, t))
    return out


def _document_opens(ctx: SuiteContext, covering: bool) -> List[CheckResult]:
    space = ctx.doc.metric
    out = []
    for name in ctx.doc.opens:
        g, m = ctx.doc.modulus(name)
        if covering:
            out.append(metric.covering_check(space, g, m, ctx.samples, ctx.seed))
        else:
            out.append(metric.check_Td_open(space, g, m, ctx.samples, ctx.seed))
    return prefixed("document", out)


def metric_openness(ctx: SuiteContext) -> List[CheckResult]:
    out = _needs(ctx, "metric-openness", "metric")
    if out:
        return out
    space = ctx.doc.metric
    out += metric.ball_laws(space, ctx.samples, ctx.seed)
    out += metric.openness_laws(space, ctx.samples, ctx.seed)
    out += metric.order_fact_laws(ctx.samples, ctx.seed)
    if not space.is_finite:
        out += metric.line_exactness_laws(ctx.samples, ctx.seed)
    return out + _document_opens(ctx, covering=False)


def covering(ctx: SuiteContext) -> List[CheckResult]:
    out = _needs(ctx, "covering", "metric")
    if out:
        return out
    space = ctx.doc.metric
    out += metric.openness_laws(space, ctx.samples, ctx.seed, covering=True)
    out += prefixed(
        "ball-base", metric.metric_base_moduli(space, ctx.samples, ctx.seed).checks
    )
    return out + _document_opens(ctx, covering=True)


def continuity_roundtrip(ctx: SuiteContext) -> List[CheckResult]:
    out = _needs(ctx, "continuity-roundtrip", "maps")
    if out:
        return out
    maps = list(ctx.doc.maps.values())
    for m in maps:
        out += continuity.continuity_laws(m, ctx.samples, ctx.seed)
    for f, g in itertools.product(maps, repeat=2):
        if f.map.codomain != g.map.domain or f.uniform is None or g.uniform is None:
            continue
        out += continuity.composition_laws("uniform", f, g, ctx.samples, ctx.seed)
    return out


def _projection_checks(base: csb.CsBase, law: Optional[str]) -> List[CheckResult]:
    p = csb.product_space(base, base)
    out = csb.product_laws(base, base)
    if law != "uniform":
        left = csb.projection_moduli(p, "left")
        out += prefixed(
            "projection",
            csb.check_csb_continuity("pointwise", left, cap=len(p.carrier)).checks,
        )
    if law == "pointwise":
        return out
    if base.whole_is_uniform:
        uniform = csb.projection_moduli(p, "left", uniform=True)
        out += prefixed(
            "projection",
            csb.check_csb_continuity("uniform", uniform, cap=len(p.carrier)).checks,
        )
    else:
        try:
            csb.projection_moduli(p, "left", uniform=True)
            out.append(
                verdict("uniform-projection-needs-uniform-whole", False, base.name)
            )
        except CapabilityError:
            out.append(passed("uniform-projection-needs-uniform-whole"))
    return out


def csb_laws(ctx: SuiteContext) -> List[CheckResult]:
    doc = ctx.doc
    if doc.base is None and not (doc.metric is not None and doc.metric.is_finite):
        return [skipped("csb-laws", "document has no base or finite metric section")]
    cap = ctx.config["MAX_EXHAUSTIVE_CARRIER"]
    out = []
    if doc.metric is not None and doc.metric.is_finite:
        out += prefixed("metric", csb.metric_relation_laws(doc.metric))
        out += prefixed(
            "metric", _capped("generated", lambda: csb.metric_generated_laws(doc.metric, cap))
        )
    base = doc.base
    if base is None:
        return out
    out += prefixed(base.name, _capped("csb", lambda: csb.csb_laws(base, cap)))
    for name, m in doc.csb_maps.items():
        if ctx.law is None:
            kinds = ["plain"] + [k for k in ("pointwise", "uniform") if getattr(m, k)]
        elif getattr(m, ctx.law) is None:
            out.append(
                skipped(f"{name}:{ctx.law}-csb-continuity", f"no {ctx.law} modulus")
            )
            kinds = ["plain"]
        else:
            kinds = [ctx.law]
        for kind in kinds:
            out += prefixed(name, csb.check_csb_continuity(kind, m, cap=cap).checks)
        out += prefixed(name, csb.csb_map_laws(m))
    if len(base.carrier) <= 2:
        out += prefixed(base.name, _projection_checks(base, ctx.law))
    return out


def weak_topology(ctx: SuiteContext) -> List[CheckResult]:
    out = _needs(ctx, "weak-topology", "base", "functions")
    if out:
        return out
    base = ctx.doc.base
    cap = ctx.config["MAX_ENUMERATION_CARRIER"]
    maps = [f for f in ctx.doc.functions.values() if f.codomain is base.carrier]
    if not maps:
        return [skipped("weak-topology", f"no function into {base.carrier.name}")]
    for f in maps:
        if not setineq.classify_function(f).strongly_extensional:
            out.append(skipped(f"{f.name}:weak-topology", "not strongly extensional"))
            continue

        def run():
            weak = csb.weak_topology(f.domain, [(base, f)], cap=cap)
            checks = list(weak.base.checks) + weak.checks
            if len(f.domain) <= 2:
                checks.append(csb.weak_minimality(weak))
            return checks

        out += prefixed(f.name, _capped("weak-topology", run))
    return out


def formula_negation(ctx: SuiteContext) -> List[CheckResult]:
    out = formulas.negation_laws(max_depth=ctx.config["MAX_FORMULA_DEPTH"])
    doc = ctx.doc
    if not doc.formulas:
        return out
    structure = doc.structure()
    closed = [(n, f) for n, f in doc.formulas.items() if not formulas.free_variables(f)]
    if structure.is_tight:
        out.append(
            check_all(
                "document-formulas-strong-negation-is-negation",
                closed,
                lambda n, f: formulas.evaluate(formulas.strong_negate(f), structure)
                != formulas.evaluate(f, structure),
            )
        )
    else:
        out.append(
            skipped(
                "document-formulas-strong-negation-is-negation",
                "the document's carriers are not tight",
            )
        )
    return out


SUITES: Dict[str, SuiteFn] = {
    "swap-laws": swap_laws,
    "subset-calculus": subset_calculus,
    "points": points,
    "topology": topology,
    "metric-openness": metric_openness,
    "covering": covering,
    "continuity-roundtrip": continuity_roundtrip,
    "csb-laws": csb_laws,
    "weak-topology": weak_topology,
    "formula-negation": formula_negation,
}


def run_suite(name: str, ctx: SuiteContext) -> SuiteReport:
    start = time.monotonic()
    checks = SUITES[name](ctx)
    report = SuiteReport(
        name, checks, seed=ctx.seed, samples=ctx.samples, elapsed=time.monotonic() - start
    )
    logger.info(
        f"Suite {name}: {report.counters} in {report.elapsed:.3f}s "
        f"(seed {ctx.seed}, {ctx.samples} samples)"
    )
    return report


def run_suites(names: Sequence[str], ctx: SuiteContext, workers: int = 4) -> List[SuiteReport]:
    """Run suites in parallel; the result is ordered by suite id."""
    with ThreadPoolExecutor(max_workers=workers) as pool:
        reports = list(pool.map(lambda n: run_suite(n, ctx), names))
    return sorted(reports, key=lambda r: r.suite)
