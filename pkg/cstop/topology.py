"""Finite cs-topologies: families of complemented subsets containing both
poles and closed under intersections and unions."""
from dataclasses import dataclass, field
import logging
import threading
from typing import (
    Any,
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    List,
    Optional,
    Tuple,
)

from cstop.complemented import (
    ComplementedSubset,
    cs_complement,
    cs_family,
    cs_intersection,
    cs_preimage,
    cs_union,
    enumerate_complemented,
    local_zero,
    one_of,
    zero_of,
)
from cstop.reports import CheckResult, check_all, passed, skipped, verdict
from cstop.setineq import (
    Carrier,
    ExtSubset,
    FunctionTable,
    classify_function,
    compose,
    direct_image,
    discrete_carrier,
    relation_holds,
    require,
)
from cstop.swap import (
    boolean_laws,
    check_field,
    check_swap_axioms,
    model_from_family,
    total_elements,
)
from cstop.utils import (
    DEFAULT_CONFIG,
    AxiomViolation,
    CarrierMismatch,
    UnregisteredModulus,
    powerset,
)


logger = logging.getLogger(__name__)


class ModulusRegistry:
    """Moduli of openness keyed by open, so cs-equal opens share one modulus.

    Keys are the opens themselves: complemented subsets of a finite carrier
    and normalized interval sets on the line both compare by their parts.
    Registration is first-wins under a lock.
    """

    def __init__(self, name: str = "registry"):
        self.name = name
        self._moduli: Dict[Hashable, Any] = {}
        self._lock = threading.Lock()

    def register(self, g: Hashable, modulus: Any) -> Any:
        with self._lock:
            existing = self._moduli.setdefault(g, modulus)
        if existing is not modulus:
            logger.debug(f"{self.name}: {g!r} already has a modulus, reusing it")
        return existing

    def lookup(self, g: Hashable) -> Any:
        try:
            return self._moduli[g]
        except KeyError:
            raise UnregisteredModulus(f"{self.name} has no modulus for {g!r}")

    def __contains__(self, g: Hashable) -> bool:
        return g in self._moduli

    def __len__(self) -> int:
        return len(self._moduli)

    def items(self) -> List[Tuple[Hashable, Any]]:
        with self._lock:
            return list(self._moduli.items())


@dataclass(frozen=True, eq=False)
class CsTopology:
    carrier: Carrier
    opens: tuple
    name: str = "T"
    members: FrozenSet[ComplementedSubset] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.opens))

    def __contains__(self, g: ComplementedSubset) -> bool:
        return g in self.members

    def __len__(self) -> int:
        return len(self.opens)

    def __iter__(self):
        return iter(self.opens)

    def to_json(self) -> Dict:
        return {"space": self.carrier.name, "opens": [g.to_json() for g in self.opens]}


def validate_topology(
    carrier: Carrier,
    family: Iterable[ComplementedSubset],
    name: str = "T",
    subfamily_cap: int = DEFAULT_CONFIG["MAX_SUBFAMILY_EXHAUSTIVE"],
) -> CsTopology:
    """Check the three cs-topology axioms and build the topology.

    Unions are checked over every subfamily while the family is within
    ``subfamily_cap``; past that pairwise closure is checked, which already
    covers every finite subfamily.
    """
    opens = list(dict.fromkeys(family))
    for g in opens:
        if g.carrier is not carrier:
            raise CarrierMismatch(f"{g!r} does not live on {carrier.name}")
    members = set(opens)
    if one_of(carrier) not in members:
        raise AxiomViolation("contains-top", one_of(carrier))
    if zero_of(carrier) not in members:
        raise AxiomViolation("contains-bottom", zero_of(carrier))
    for g in opens:
        for h in opens:
            if cs_intersection(g, h) not in members:
                raise AxiomViolation("closed-under-intersection", (g, h))
    if len(opens) <= subfamily_cap:
        for sub in powerset(opens):
            if sub and cs_family("union", sub) not in members:
                raise AxiomViolation("closed-under-unions", list(sub))
    else:
        logger.info(
            f"{name} has {len(opens)} opens; checking pairwise union closure"
        )
        for g in opens:
            for h in opens:
                if cs_union(g, h) not in members:
                    raise AxiomViolation("closed-under-unions", [g, h])
    logger.debug(f"Validated topology {name} with {len(opens)} opens")
    return CsTopology(carrier, tuple(opens), name=name)


def trivial_topology(carrier: Carrier) -> CsTopology:
    return validate_topology(carrier, [one_of(carrier), zero_of(carrier)], "trivial")


def discrete_topology(carrier: Carrier) -> CsTopology:
    return CsTopology(carrier, tuple(enumerate_complemented(carrier)), "discrete")


def sierpinski() -> CsTopology:
    two = discrete_carrier(2, name="2")
    opens = [
        one_of(two),
        zero_of(two),
        ComplementedSubset(two.subset(["0"]), two.subset(["1"])),
    ]
    return validate_topology(two, opens, "sierpinski")


@dataclass
class ClopenReport:
    closed: List[ComplementedSubset]
    clopen: List[ComplementedSubset]
    swap_checks: List[CheckResult]


def closed_and_clopen(t: CsTopology) -> ClopenReport:
    closed = [cs_complement(g) for g in t.opens]
    clopen = [g for g in t.opens if cs_complement(g) in t]
    model = model_from_family(clopen, name=f"Clop({t.name})")
    all_total = all(g.is_total for g in clopen)
    checks = check_swap_axioms(model, expect_type_ii=all_total)
    checks += boolean_laws(total_elements(model))
    field_report = check_field(clopen)
    checks += field_report.checks
    return ClopenReport(closed, clopen, checks)


def relative_family(t: CsTopology, a: ExtSubset) -> List[ComplementedSubset]:
    """0_A u (A n G) for every open G, with A paired with the empty subset."""
    if a.carrier is not t.carrier:
        raise CarrierMismatch(f"{a!r} is not a subset of {t.carrier.name}")
    pole = ComplementedSubset(a, t.carrier.nothing)
    zero_a = local_zero(pole)
    return [cs_union(zero_a, cs_intersection(pole, g)) for g in t.opens]


def restrict_complemented(
    g: ComplementedSubset, sub: Carrier
) -> ComplementedSubset:
    return ComplementedSubset(
        sub.subset(x for x in g.one if x in sub),
        sub.subset(x for x in g.zero if x in sub),
    )


def relative_topology(
    t: CsTopology,
    a: ExtSubset,
    subfamily_cap: int = DEFAULT_CONFIG["MAX_SUBFAMILY_EXHAUSTIVE"],
) -> CsTopology:
    sub = t.carrier.restrict(a)
    family = [restrict_complemented(g, sub) for g in relative_family(t, a)]
    return validate_topology(
        sub, family, name=f"{t.name}|{a!r}", subfamily_cap=subfamily_cap
    )


def quotient_topology(
    t: CsTopology,
    f: FunctionTable,
    cap: int = DEFAULT_CONFIG["MAX_ENUMERATION_CARRIER"],
) -> CsTopology:
    if f.domain is not t.carrier:
        raise CarrierMismatch(f"{f.name} does not start at {t.carrier.name}")
    require(f, "strongly_extensional")
    family = [
        h
        for h in enumerate_complemented(f.codomain, cap=cap)
        if cs_preimage(f, h) in t
    ]
    return validate_topology(f.codomain, family, name=f"{t.name}/{f.name}")


@dataclass
class ContinuityReport:
    continuous: bool
    per_open: List[CheckResult]
    open_map: Optional[bool] = None
    closed_map: Optional[bool] = None


def is_cs_continuous(
    f: FunctionTable, t: CsTopology, s: CsTopology
) -> ContinuityReport:
    if f.domain is not t.carrier or f.codomain is not s.carrier:
        raise CarrierMismatch(f"{f.name} does not go from {t.name} to {s.name}")
    flags = require(f, "strongly_extensional")
    per_open = [
        verdict(f"preimage-is-open:{h!r}", cs_preimage(f, h) in t, h) for h in s.opens
    ]
    report = ContinuityReport(all(c.ok for c in per_open), per_open)
    if flags.strong_injection and s.carrier.is_extensional:
        image = lambda g: ComplementedSubset(
            direct_image(f, g.one), direct_image(f, g.zero)
        )
        report.open_map = all(image(g) in s for g in t.opens)
        report.closed_map = all(
            cs_complement(image(cs_complement(g))) in s for g in t.opens
        )
    return report


def is_homeomorphism(
    f: FunctionTable, g: FunctionTable, t: CsTopology, s: CsTopology
) -> bool:
    if not relation_holds("inverse", f, g):
        return False
    if not classify_function(f).strongly_extensional:
        return False
    if not classify_function(g).strongly_extensional:
        return False
    if not (is_cs_continuous(f, t, s).continuous and is_cs_continuous(g, s, t).continuous):
        return False
    pulled = {cs_preimage(f, h) for h in s.opens}
    return pulled == set(t.opens) and len(pulled) == len(s.opens)


def topology_laws(t: CsTopology) -> List[CheckResult]:
    """Clopen structure and relative topologies of one space."""
    report = closed_and_clopen(t)
    out = [passed("topology-axioms", cases=len(t))]
    out += [c for c in report.swap_checks]
    relatives = []
    for a in t.carrier.subsets():
        try:
            relative_topology(t, a, subfamily_cap=8)
            relatives.append((a, True))
        except AxiomViolation as e:
            logger.warning(f"Relative topology on {a!r} failed: {e}")
            relatives.append((a, False))
    out.append(check_all("relative-topology-is-topology", relatives, lambda a, ok: ok))
    out.append(
        verdict(
            "relative-topology-on-everything-is-unchanged",
            set(relative_family(t, t.carrier.universe)) == set(t.opens),
        )
    )
    return out


def map_laws(
    f: FunctionTable, t: CsTopology, s: CsTopology, g: Optional[FunctionTable] = None
) -> List[CheckResult]:
    """Continuity of one map, with quotient, field and composition facts."""
    if not classify_function(f).strongly_extensional:
        return [skipped(f"continuity:{f.name}", "not strongly extensional")]
    report = is_cs_continuous(f, t, s)
    out = [
        verdict(f"continuity:{f.name}", report.continuous, [c.witness for c in report.per_open if not c.ok])
    ]
    quotient = quotient_topology(t, f)
    out.append(
        check_all(
            f"continuous-into-quotient:{f.name}",
            [(h,) for h in quotient.opens],
            lambda h: cs_preimage(f, h) in t,
        )
    )
    if report.continuous:
        s_clopen = closed_and_clopen(s).clopen
        t_clopen = set(closed_and_clopen(t).clopen)
        pulled = [cs_preimage(f, h) for h in s_clopen]
        out.append(verdict(f"preimage-of-field-is-field:{f.name}", check_field(pulled).is_field))
        out.append(
            check_all(
                f"preimage-of-clopen-is-clopen:{f.name}",
                [(h,) for h in pulled],
                lambda h: h in t_clopen,
            )
        )
    if g is not None and report.continuous:
        if g.domain is s.carrier and g.codomain is s.carrier:
            if classify_function(g).strongly_extensional:
                g_cont = is_cs_continuous(g, s, s).continuous
                gf = compose(g, f)
                out.append(
                    verdict(
                        f"composite-is-continuous:{g.name}.{f.name}",
                        not g_cont or is_cs_continuous(gf, t, s).continuous,
                    )
                )
                out.append(
                    check_all(
                        f"preimage-of-composite:{g.name}.{f.name}",
                        [(h,) for h in enumerate_complemented(g.codomain)],
                        lambda h: cs_preimage(gf, h) == cs_preimage(f, cs_preimage(g, h)),
                    )
                )
    return out
