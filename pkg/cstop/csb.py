"""Bases for cs-topologies with base-moduli, the topologies they generate,
and continuity, products and weak topologies in that setting.

Moduli of openness here are tables from the 1-part of an open to members
of the base. Carriers are finite; ``validate_carrier`` forbids self-apart
elements, so the coempty subset of every carrier is empty and the base
modulus on it is the empty table.
"""
from dataclasses import dataclass, field
import itertools
import logging
from typing import (
    Any,
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from cstop.complemented import (
    ComplementedSubset,
    cs_intersection,
    cs_leq,
    cs_preimage,
    cs_product,
    enumerate_complemented,
    one_of,
    zero_of,
)
from cstop.metric import FiniteMetric, ball, ball_radii, canonical_balls
from cstop.reports import CheckResult, check_all, failed, passed, verdict
from cstop.setineq import (
    Carrier,
    Element,
    ExtSubset,
    FunctionTable,
    classify_function,
    compose,
    identity,
    make_function,
    product_carrier,
)
from cstop.topology import (
    CsTopology,
    ModulusRegistry,
    restrict_complemented,
    validate_topology,
)
from cstop.utils import (
    DEFAULT_CONFIG,
    EPSILON_GRID,
    AxiomViolation,
    CapabilityError,
    CarrierMismatch,
    UndefinedPoint,
    check_cap,
    powerset,
    sorted_ids,
)


logger = logging.getLogger(__name__)


CS = ComplementedSubset
OpenModulus = Dict[Element, CS]
PairKey = Tuple[CS, CS, Element]
BetaPoint = Union[Mapping[Element, CS], Callable[[Element], CS]]
BetaPair = Union[Mapping[PairKey, CS], Callable[[CS, CS, Element], CS]]


def coempty(carrier: Carrier) -> List[Element]:
    return [x for x in carrier.elements if carrier.apart(x, x)]


@dataclass(eq=False)
class CsBase:
    """A base with its base-moduli, tabulated.

    ``beta_pair`` is keyed by ``(B, C, x)`` for every x in the 1-parts of
    both B and C.
    """

    carrier: Carrier
    family: Tuple[CS, ...]
    beta_whole: Dict[Element, CS]
    beta_empty: Dict[Element, CS]
    beta_pair: Dict[PairKey, CS]
    name: str = "B"
    factors: Tuple["CsBase", ...] = ()
    covering: Dict[str, bool] = field(default_factory=dict)
    checks: List[CheckResult] = field(default_factory=list)

    def __post_init__(self):
        self.members: FrozenSet[CS] = frozenset(self.family)

    def __contains__(self, b: CS) -> bool:
        return b in self.members

    def __len__(self) -> int:
        return len(self.family)

    def neighbourhoods(self, x: Element) -> List[CS]:
        """The members whose 1-part holds x."""
        return [b for b in self.family if x in b.one]

    def pair(self, b: CS, c: CS, x: Element) -> CS:
        try:
            return self.beta_pair[(b, c, x)]
        except KeyError:
            raise UndefinedPoint(f"{x!r} is not in the 1-parts of {b!r} and {c!r}")

    @property
    def whole_is_uniform(self) -> bool:
        pole = one_of(self.carrier)
        return pole in self and all(v == pole for v in self.beta_whole.values())

    @property
    def empty_is_uniform(self) -> bool:
        pole = zero_of(self.carrier)
        return pole in self and all(v == pole for v in self.beta_empty.values())

    def index(self, b: CS) -> int:
        return self.family.index(b)

    def to_json(self) -> Dict:
        return {
            "carrier": self.carrier.to_json(),
            "family": [b.to_json() for b in self.family],
            "beta_whole": {
                str(x): self.index(b) for x, b in self.beta_whole.items()
            },
            "beta_empty": {
                str(x): self.index(b) for x, b in self.beta_empty.items()
            },
            "beta_pair": [
                [self.index(b), self.index(c), x, self.index(v)]
                for (b, c, x), v in self.beta_pair.items()
            ],
            "covering": dict(self.covering),
        }


def _lookup(beta: Union[Mapping, Callable], *key):
    if callable(beta):
        return beta(*key)
    return beta.get(key[0] if len(key) == 1 else key)


def _meet_zero(carrier: Carrier, parts: Iterable[CS]) -> ExtSubset:
    common = carrier.universe
    for b in parts:
        common = common & b.zero
    return common


def _covering_checks(base: CsBase) -> List[CheckResult]:
    X = base.carrier
    hole = X.subset(coempty(X))
    whole = _meet_zero(X, base.beta_whole.values())
    empty = _meet_zero(X, base.beta_empty.values())
    out = [
        verdict(
            "covering-whole", whole <= hole, sorted_ids(whole.members - hole.members)
        ),
        verdict(
            "covering-coempty",
            empty <= X.universe,
            sorted_ids(empty.members - X.universe.members),
        ),
    ]
    pairs = []
    for b, c in itertools.product(base.family, repeat=2):
        both = (b.one & c.one).members
        common = _meet_zero(X, (base.beta_pair[(b, c, z)] for z in both))
        pairs.append((b, c, common))
    out.append(
        check_all(
            "covering-intersection",
            pairs,
            lambda b, c, common: common <= (b.zero | c.zero),
        )
    )
    return out


def validate_base(
    carrier: Carrier,
    family: Iterable[CS],
    beta_whole: BetaPoint,
    beta_empty: BetaPoint,
    beta_pair: BetaPair,
    name: str = "B",
) -> CsBase:
    """Tabulate the base-moduli, check the three base conditions, and work
    out which of the moduli are covering."""
    family = tuple(dict.fromkeys(family))
    members = set(family)
    for b in family:
        if b.carrier is not carrier:
            raise CarrierMismatch(f"{b!r} does not live on {carrier.name}")

    def member(value, where):
        if value is None:
            raise AxiomViolation(where[0], where[1:])
        if value not in members:
            raise AxiomViolation("base-moduli-in-family", (where[1:], value))
        return value

    whole = {}
    for x in carrier.elements:
        b = member(_lookup(beta_whole, x), ("base-point", x))
        if x not in b.one:
            raise AxiomViolation("base-point", x)
        whole[x] = b
    empty = {}
    for x in coempty(carrier):
        b = member(_lookup(beta_empty, x), ("base-coempty", x))
        if x not in b.one or not cs_leq(b, zero_of(carrier)):
            raise AxiomViolation("base-coempty", x)
        empty[x] = b
    pairs = {}
    for b, c in itertools.product(family, repeat=2):
        both = cs_intersection(b, c)
        for x in sorted_ids(both.one.members):
            v = member(_lookup(beta_pair, b, c, x), ("base-intersection", b, c, x))
            if x not in v.one or not cs_leq(v, both):
                raise AxiomViolation("base-intersection", (b, c, x))
            pairs[(b, c, x)] = v
    base = CsBase(carrier, family, whole, empty, pairs, name=name)
    base.checks = [
        passed("base-point", cases=len(whole)),
        passed("base-coempty", cases=len(empty)),
        passed("base-intersection", cases=len(pairs)),
    ]
    covering = _covering_checks(base)
    base.checks.extend(covering)
    base.covering = {
        "whole": covering[0].ok,
        "empty": covering[1].ok,
        "pair": covering[2].ok,
    }
    logger.debug(f"Validated base {name} with {len(family)} members: {base.covering}")
    return base


def close_under_intersection(family: Iterable[CS]) -> List[CS]:
    """All finite intersections of members of ``family``, in order of discovery."""
    closed = list(dict.fromkeys(family))
    grown = True
    while grown:
        grown = False
        for b, c in itertools.product(list(closed), repeat=2):
            bc = cs_intersection(b, c)
            if bc not in closed:
                closed.append(bc)
                grown = True
    return closed


def intersection_base(
    carrier: Carrier, family: Iterable[CS], name: str = "B"
) -> CsBase:
    """A base closed under intersections, with beta_{B,C}(x) = B n C and the
    poles as uniform moduli for the whole space and the coempty subset."""
    top, bottom = one_of(carrier), zero_of(carrier)
    closed = close_under_intersection([top, bottom] + list(family))
    return validate_base(
        carrier,
        closed,
        lambda x: top,
        lambda x: bottom,
        lambda b, c, x: cs_intersection(b, c),
        name=name,
    )


@dataclass
class InducedRelations:
    """The equality and inequality a base induces, with the B witnessing
    each induced inequality."""

    eq: FrozenSet[Tuple[Element, Element]]
    neq: Dict[Tuple[Element, Element], CS]
    separates: bool
    co_separates: bool
    cotransitive: bool
    checks: List[CheckResult] = field(default_factory=list)

    def witness(self, x: Element, y: Element) -> Optional[CS]:
        return self.neq.get((x, y))


def _separating_member(base: CsBase, x: Element, y: Element) -> Optional[CS]:
    for b in base.family:
        if (x in b.one and y in b.zero) or (y in b.one and x in b.zero):
            return b
    return None


def _zero_tight(b: CS) -> bool:
    # outside the 0-part means inside the 1-part
    return all(x in b.one for x in b.carrier.elements if x not in b.zero)


def _implies(check_id: str, premise: bool, conclusion: bool, witness: Any = None):
    return verdict(check_id, not premise or conclusion, witness)


def induced_relations(base: CsBase) -> InducedRelations:
    X = base.carrier
    els = X.elements
    eq = frozenset(
        (x, y)
        for x in els
        for y in els
        if all((x in b.one) == (y in b.one) for b in base.family)
    )
    neq = {}
    for x in els:
        for y in els:
            b = _separating_member(base, x, y)
            if b is not None:
                neq[(x, y)] = b
    separates = all(X.eq(x, y) for x, y in eq)
    co_separates = all((x, y) in neq for x, y in X.neq)
    cotransitive = all(
        (x, z) in neq or (z, y) in neq for (x, y) in neq for z in els
    )
    rel = InducedRelations(eq, neq, separates, co_separates, cotransitive)

    pairs = [(x, y) for x in els for y in els]
    all_zero_tight = all(_zero_tight(b) for b in base.family)
    all_total = all(b.is_total for b in base.family)
    tight_wrt_base = all((x, y) in neq or (x, y) in eq for x, y in pairs)
    tight_wrt_carrier = all((x, y) in neq or X.eq(x, y) for x, y in pairs)
    hole_base = {x for x in els if (x, x) in neq}
    hole_carrier = set(coempty(X))
    rel.checks = [
        check_all(
            "carrier-equality-implies-base-equality",
            pairs,
            lambda x, y: not X.eq(x, y) or (x, y) in eq,
        ),
        check_all(
            "base-inequality-implies-carrier-inequality",
            pairs,
            lambda x, y: (x, y) not in neq or X.apart(x, y),
        ),
        _implies(
            "separating-base-equality-is-carrier-equality",
            separates,
            all(((x, y) in eq) == X.eq(x, y) for x, y in pairs),
        ),
        _implies("zero-tight-members-give-tight-inequality", all_zero_tight, tight_wrt_base),
        _implies("total-members-give-cotransitive-inequality", all_total, cotransitive),
        _implies("tight-inequality-separates", tight_wrt_carrier, separates),
        _implies(
            "separating-zero-tight-members-give-tight-inequality",
            separates and all_zero_tight,
            tight_wrt_carrier,
        ),
        verdict(
            "base-coempty-inside-carrier-coempty",
            hole_base <= hole_carrier,
            sorted_ids(hole_base - hole_carrier),
        ),
        _implies(
            "co-separating-base-keeps-carrier-coempty",
            co_separates,
            hole_carrier <= hole_base,
        ),
    ]
    return rel


def covering_modulus(base: CsBase, g: CS) -> Optional[OpenModulus]:
    """A modulus picking, for each x in the 1-part of g, a member holding x
    inside g, such that g is the union of the picked members; None if
    there is none."""
    points = sorted_ids(g.one.members)
    choices = []
    for x in points:
        inside = [b for b in base.neighbourhoods(x) if cs_leq(b, g)]
        # only the 0-parts matter for covering; keep the smallest ones
        minimal = [
            b
            for b in inside
            if not any(c.zero.members < b.zero.members for c in inside)
        ]
        if not minimal:
            return None
        choices.append(list({b.zero: b for b in minimal}.values()))
    for combo in itertools.product(*choices):
        if _meet_zero(g.carrier, combo) <= g.zero:
            return dict(zip(points, combo))
    return None


def base_open(base: CsBase, g: CS) -> bool:
    """g is the union of the members of the base it contains."""
    return covering_modulus(base, g) is not None


def modulus_check(
    check_id: str, base: CsBase, g: CS, modulus: Mapping[Element, CS]
) -> CheckResult:
    def holds(x):
        b = modulus.get(x)
        return b is not None and b in base and x in b.one and cs_leq(b, g)

    return check_all(check_id, [(x,) for x in sorted_ids(g.one.members)], holds)


def modulus_covers(g: CS, modulus: Mapping[Element, CS]) -> bool:
    return _meet_zero(g.carrier, (modulus[x] for x in g.one.members)) <= g.zero


@dataclass
class GeneratedTopology:
    base: CsBase
    topology: CsTopology
    moduli: ModulusRegistry
    checks: List[CheckResult] = field(default_factory=list)

    def modulus(self, g: CS) -> OpenModulus:
        return self.moduli.lookup(g)


def generate_topology(
    base: CsBase, cap: int = DEFAULT_CONFIG["MAX_ENUMERATION_CARRIER"]
) -> GeneratedTopology:
    """Every base-open complemented subset, each with a modulus of openness.

    Moduli are registered first-wins: the poles get the base-moduli, members
    of the base the constant modulus, intersections of two members the pair
    modulus, and any other open a covering modulus.
    """
    X = base.carrier
    check_cap(f"carrier {X.name}", len(X), cap)
    top, bottom = one_of(X), zero_of(X)
    covering = {}
    for g in enumerate_complemented(X):
        modulus = covering_modulus(base, g)
        if modulus is not None or g in (top, bottom):
            covering[g] = modulus
    opens = list(covering)
    registry = ModulusRegistry(f"T({base.name})")
    registry.register(top, dict(base.beta_whole))
    registry.register(bottom, dict(base.beta_empty))
    for b in base.family:
        registry.register(b, {x: b for x in b.one.members})
    for b, c in itertools.product(base.family, repeat=2):
        bc = cs_intersection(b, c)
        if bc in covering:
            registry.register(bc, {x: base.pair(b, c, x) for x in bc.one.members})
    for g, modulus in covering.items():
        if g not in registry:
            registry.register(g, modulus)
    topology = validate_topology(X, opens, name=f"T({base.name})")
    out = GeneratedTopology(base, topology, registry)
    out.checks = generated_laws(out)
    logger.info(f"{base.name} generates {len(opens)} opens on {X.name}")
    return out


def generated_laws(gen: GeneratedTopology) -> List[CheckResult]:
    base = gen.base
    X = base.carrier
    top, bottom = one_of(X), zero_of(X)
    out = [
        check_all(
            "generated-opens-have-moduli",
            [(g,) for g in gen.topology.opens],
            lambda g: modulus_check("m", base, g, gen.modulus(g)).ok,
        ),
        verdict("base-members-are-open", all(b in gen.topology for b in base.family)),
        check_all(
            "member-modulus-is-covering",
            [(b,) for b in base.family],
            lambda b: modulus_covers(b, {x: b for x in b.one.members}),
        ),
        _implies(
            "whole-modulus-covering",
            base.covering.get("whole", False),
            modulus_covers(top, gen.modulus(top)),
        ),
        _implies(
            "coempty-modulus-covering",
            base.covering.get("empty", False),
            modulus_covers(bottom, gen.modulus(bottom)),
        ),
    ]
    pair_cases = []
    for b, c in itertools.product(base.family, repeat=2):
        bc = cs_intersection(b, c)
        pair_cases.append((bc, {x: base.pair(b, c, x) for x in bc.one.members}))
    out.append(
        check_all(
            "intersection-modulus-is-modulus",
            pair_cases,
            lambda bc, m: modulus_check("m", base, bc, m).ok,
        )
    )
    if base.covering.get("pair", False):
        out.append(
            check_all(
                "intersection-modulus-is-covering",
                pair_cases,
                lambda bc, m: modulus_covers(bc, m),
            )
        )
    return out


def metric_base(space: FiniteMetric) -> CsBase:
    """The complemented balls of a finite metric space with ball base-moduli."""
    balls = canonical_balls(space, extra=EPSILON_GRID)
    rep = {}
    for b in balls:
        rep.setdefault(b.open, b)
    X = space.carrier
    d = space.d

    def pair(b: CS, c: CS, z: Element) -> CS:
        rb, rc = rep[b], rep[c]
        zeta = min(rb.radius - d(rb.center, z), rc.radius - d(rc.center, z))
        return ball(space, z, zeta).open

    return validate_base(
        X,
        list(rep),
        lambda x: ball(space, x, 1).open,
        lambda x: ball(space, x, d(x, x) / 2).open,
        pair,
        name=f"B({space.name})",
    )


def metric_relation_laws(space: FiniteMetric) -> List[CheckResult]:
    base = metric_base(space)
    rel = induced_relations(base)
    pairs = [(x, y) for x in space.elements for y in space.elements]
    return [
        check_all(
            "metric-equality-is-base-equality",
            pairs,
            lambda x, y: (space.d(x, y) == 0) == ((x, y) in rel.eq),
        ),
        check_all(
            "metric-inequality-is-base-inequality",
            pairs,
            lambda x, y: (space.d(x, y) > 0) == ((x, y) in rel.neq),
        ),
    ] + rel.checks


def metric_generated_laws(
    space: FiniteMetric, cap: int = DEFAULT_CONFIG["MAX_EXHAUSTIVE_CARRIER"]
) -> List[CheckResult]:
    """The opens the ball base generates are open for the metric."""
    gen = generate_topology(metric_base(space), cap)

    def metric_open(g: CS) -> bool:
        return all(
            any(cs_leq(ball(space, x, r).open, g) for r in ball_radii(space, x))
            for x in g.one.members
        )

    return [
        check_all(
            "generated-opens-are-metric-open",
            [(g,) for g in gen.topology.opens],
            metric_open,
        )
    ] + gen.checks


def relative_base(base: CsBase, a: ExtSubset) -> CsBase:
    """Members and base-moduli cut down to A and restricted to it."""
    X = base.carrier
    if a.carrier is not X:
        raise CarrierMismatch(f"{a!r} is not a subset of {X.name}")
    sub = X.restrict(a)

    def cut(b: CS) -> CS:
        return restrict_complemented(
            ComplementedSubset(b.one & a, b.zero & a), sub
        )

    rep = {}
    for b in base.family:
        rep.setdefault(cut(b), b)
    out = validate_base(
        sub,
        list(rep),
        lambda x: cut(base.beta_whole[x]),
        lambda x: cut(base.beta_empty[x]),
        lambda b, c, x: cut(base.pair(rep[b], rep[c], x)),
        name=f"{base.name}|{a!r}",
    )
    out.checks.append(
        check_all(
            "relative-covering-inherited",
            [(k,) for k, v in base.covering.items() if v],
            lambda k: out.covering.get(k, False),
        )
    )
    return out


@dataclass(eq=False)
class CsbMap:
    """A strongly extensional map between base spaces with the data that
    makes it continuous.

    ``pointwise(x, C)`` and ``uniform(C)`` send members of the target base
    to members of the source base. ``inversion(H, op_H)`` gives the modulus
    of the inverse image of H; by default it is read off the uniform
    modulus, else the pointwise one.
    """

    function: FunctionTable
    source: CsBase
    target: CsBase
    pointwise: Optional[Callable[[Element, CS], CS]] = None
    uniform: Optional[Callable[[CS], CS]] = None
    inversion: Optional[Callable[[CS, OpenModulus], OpenModulus]] = None

    def __post_init__(self):
        f = self.function
        if f.domain is not self.source.carrier or f.codomain is not self.target.carrier:
            raise CarrierMismatch(
                f"{f.name} does not go from {self.source.name} to {self.target.name}"
            )
        if not classify_function(f).strongly_extensional:
            raise CapabilityError(f"{f.name} is not strongly extensional")
        if self.pointwise is None and self.uniform is not None:
            uniform = self.uniform
            self.pointwise = lambda x, c: uniform(c)

    @property
    def name(self) -> str:
        return self.function.name

    def invert(self, h: CS, op_h: OpenModulus) -> Tuple[CS, OpenModulus]:
        f = self.function
        pre = cs_preimage(f, h)
        if self.inversion is not None:
            return pre, self.inversion(h, op_h)
        if self.uniform is not None:
            return pre, {x: self.uniform(op_h[f(x)]) for x in pre.one.members}
        if self.pointwise is not None:
            return pre, {x: self.pointwise(x, op_h[f(x)]) for x in pre.one.members}
        raise CapabilityError(f"{self.name} has no continuity data")


def derived_pointwise(m: CsbMap) -> Callable[[Element, CS], CS]:
    """omega_{f,x}(C) := op_{f^-1(C)}(x), with C opened by its constant modulus."""

    def omega(x: Element, c: CS) -> CS:
        _, modulus = m.invert(c, {y: c for y in c.one.members})
        return modulus[x]

    return omega


@dataclass
class CsbContinuityReport:
    kind: str
    checks: List[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def _law_cases(m: CsbMap, gen: GeneratedTopology) -> List[Tuple]:
    """(H, x, op_{f^-1 H}(x), op_H(f x)) for every x in every f^-1(H)."""
    f = m.function
    cases = []
    for h, op_h in gen.moduli.items():
        pre, modulus = m.invert(h, op_h)
        for x in sorted_ids(pre.one.members):
            cases.append((h, x, modulus[x], op_h[f(x)]))
    return cases


def _witness_pairs(check: CheckResult) -> CheckResult:
    if not check.ok:
        check.witness = tuple(check.witness[:2])
    return check


def check_csb_continuity(
    kind: str,
    m: CsbMap,
    target: Optional[GeneratedTopology] = None,
    cap: int = DEFAULT_CONFIG["MAX_ENUMERATION_CARRIER"],
) -> CsbContinuityReport:
    """Plain: every inverse image of a target open is source-open with the
    modulus the map provides. Pointwise and uniform: in addition, that
    modulus is the one the continuity data gives, at every point.
    Witnesses are ``(H, x)``."""
    if kind not in ("plain", "pointwise", "uniform"):
        raise ValueError(f"Unknown continuity kind {kind}")
    gen = target or generate_topology(m.target, cap)
    source = m.source
    cases = _law_cases(m, gen)
    pre_of = {h: m.invert(h, op_h)[0] for h, op_h in gen.moduli.items()}
    checks = [
        _witness_pairs(
            check_all(
                f"plain-csb-continuity:{m.name}",
                cases,
                lambda h, x, b, image: b in source
                and x in b.one
                and cs_leq(b, pre_of[h]),
            )
        )
    ]
    if kind in ("pointwise", "uniform"):
        if m.pointwise is None:
            raise CapabilityError(f"{m.name} has no pointwise modulus")
        checks.append(
            _witness_pairs(
                check_all(
                    f"pointwise-csb-continuity:{m.name}",
                    cases,
                    lambda h, x, b, image: b == m.pointwise(x, image),
                )
            )
        )
    if kind == "uniform":
        if m.uniform is None:
            raise CapabilityError(f"{m.name} has no uniform modulus")
        checks.append(
            _witness_pairs(
                check_all(
                    f"uniform-csb-continuity:{m.name}",
                    cases,
                    lambda h, x, b, image: b == m.uniform(image),
                )
            )
        )
    # passing a stronger kind must mean passing every weaker one
    chain = [c.ok for c in checks]
    checks.append(
        verdict(
            f"continuity-chain:{m.name}",
            all(earlier or not later for earlier, later in zip(chain, chain[1:])),
        )
    )
    return CsbContinuityReport(kind, checks)


def compose_csb(f: CsbMap, g: CsbMap) -> CsbMap:
    """g after f. omega_{g.f, x} = omega_{f, x} after omega_{g, f(x)},
    Omega_{g.f} = Omega_f after Omega_g, op_{g.f} = op_f after op_g."""
    if f.target is not g.source:
        raise CarrierMismatch(f"Cannot compose {g.name} after {f.name}")
    gf = compose(g.function, f.function)
    pointwise = uniform = None
    if f.pointwise is not None and g.pointwise is not None:
        pointwise = lambda x, c: f.pointwise(x, g.pointwise(f.function(x), c))
    if f.uniform is not None and g.uniform is not None:
        uniform = lambda c: f.uniform(g.uniform(c))

    def inversion(k: CS, op_k: OpenModulus) -> OpenModulus:
        mid, op_mid = g.invert(k, op_k)
        return f.invert(mid, op_mid)[1]

    return CsbMap(gf, f.source, g.target, pointwise, uniform, inversion)


def identity_csb(base: CsBase) -> CsbMap:
    return CsbMap(identity(base.carrier), base, base, uniform=lambda c: c)


def csb_map_laws(
    m: CsbMap, target: Optional[GeneratedTopology] = None
) -> List[CheckResult]:
    """Inverse images carry base-moduli and the pair modulus through the
    derived pointwise modulus."""
    gen = target or generate_topology(m.target)
    f = m.function
    X, Y = m.source, m.target
    omega = derived_pointwise(m)
    out = [
        check_all(
            f"derived-modulus-gives-whole-modulus:{m.name}",
            [(x,) for x in X.carrier.elements],
            lambda x: (lambda b: b in X and x in b.one)(omega(x, Y.beta_whole[f(x)])),
        ),
        check_all(
            f"derived-modulus-gives-coempty-modulus:{m.name}",
            [(x,) for x in coempty(X.carrier)],
            lambda x: (lambda b: b in X and x in b.one)(omega(x, Y.beta_empty[f(x)])),
        ),
    ]
    cases = []
    opens = gen.moduli.items()
    for (k, op_k), (l, op_l) in itertools.product(opens, repeat=2):
        _, op_fk = m.invert(k, op_k)
        _, op_fl = m.invert(l, op_l)
        both = cs_preimage(f, cs_intersection(k, l))
        for x in sorted_ids(both.one.members):
            cases.append((k, l, x, op_fk[x], op_fl[x], op_k[f(x)], op_l[f(x)]))
    out.append(
        check_all(
            f"pair-modulus-through-inverse-image:{m.name}",
            cases,
            lambda k, l, x, bk, bl, ck, cl: X.pair(bk, bl, x)
            == omega(x, Y.pair(ck, cl, f(x))),
        )
    )
    if not out[-1].ok:
        out[-1].witness = out[-1].witness[:3]
    return out


def product_space(a: CsBase, b: CsBase) -> CsBase:
    """Products of members, with componentwise base-moduli."""
    X, Y = a.carrier, b.carrier
    P = product_carrier(X, Y)
    rep = {}
    for B, C in itertools.product(a.family, b.family):
        rep.setdefault(cs_product(B, C), (B, C))

    def whole(p):
        return cs_product(a.beta_whole[p[0]], b.beta_whole[p[1]])

    def empty(p):
        u, w = p
        if u in a.beta_empty:
            return cs_product(a.beta_empty[u], b.beta_whole[w])
        return cs_product(a.beta_whole[u], b.beta_empty[w])

    def pair(bc1, bc2, p):
        (B1, C1), (B2, C2) = rep[bc1], rep[bc2]
        return cs_product(a.pair(B1, B2, p[0]), b.pair(C1, C2, p[1]))

    out = validate_base(P, list(rep), whole, empty, pair, name=f"{a.name}x{b.name}")
    out.factors = (a, b)
    return out


def product_laws(a: CsBase, b: CsBase) -> List[CheckResult]:
    p = product_space(a, b)
    X, Y = a.carrier, b.carrier
    pole = cs_product(one_of(X), one_of(Y))
    cases = [
        (B1, C1, B2, C2, x, y)
        for (B1, C1), (B2, C2) in itertools.product(
            itertools.product(a.family, b.family), repeat=2
        )
        for x in sorted_ids((B1.one & B2.one).members)
        for y in sorted_ids((C1.one & C2.one).members)
    ]
    return [
        passed("product-base-valid", cases=len(p)),
        verdict("product-pole-is-pole", pole == one_of(p.carrier)),
        check_all(
            "product-pair-modulus-is-componentwise",
            cases,
            lambda B1, C1, B2, C2, x, y: p.pair(
                cs_product(B1, C1), cs_product(B2, C2), (x, y)
            )
            == cs_product(a.pair(B1, B2, x), b.pair(C1, C2, y)),
        ),
    ] + p.checks


def projection_moduli(p: CsBase, which: str, uniform: bool = False) -> CsbMap:
    """The projection of a product onto one factor.

    Pointwise: D -> D x beta(y) with beta the other factor's whole-space
    modulus. Uniform, only when that modulus is uniform: C -> C x pole.
    """
    if len(p.factors) != 2:
        raise CapabilityError(f"{p.name} is not a product space")
    a, b = p.factors
    idx = {"left": 0, "right": 1}[which]
    kept, other = (a, b) if idx == 0 else (b, a)
    table = {xy: xy[idx] for xy in p.carrier.elements}
    pr = make_function(p.carrier, kept.carrier, table, name=f"pr_{which}")

    def times(d: CS, e: CS) -> CS:
        return cs_product(d, e) if idx == 0 else cs_product(e, d)

    def pointwise(xy, d: CS) -> CS:
        return times(d, other.beta_whole[xy[1 - idx]])

    if not uniform:
        return CsbMap(pr, p, kept, pointwise=pointwise)
    if not other.whole_is_uniform:
        raise CapabilityError(
            f"{other.name} has no uniform whole-space modulus; "
            "the projection is only pointwise continuous"
        )
    pole = one_of(other.carrier)
    return CsbMap(pr, p, kept, pointwise=pointwise, uniform=lambda c: times(c, pole))


def with_uniform_whole(base: CsBase) -> CsBase:
    """The same base with the whole-space pole added and used as beta."""
    top = one_of(base.carrier)

    def pair(b, c, x):
        if b == top and c == top:
            return top
        if b == top:
            return base.pair(c, c, x)
        if c == top:
            return base.pair(b, b, x)
        return base.pair(b, c, x)

    return validate_base(
        base.carrier,
        list(base.family) + [top],
        lambda x: top,
        base.beta_empty,
        pair,
        name=f"{base.name}+",
    )


@dataclass
class WeakTopology:
    base: CsBase
    generators: List[CS]
    maps: List[CsbMap]
    checks: List[CheckResult] = field(default_factory=list)


def weak_topology(
    carrier: Carrier,
    targets: Sequence[Tuple[CsBase, FunctionTable]],
    injective: Optional[int] = None,
    cap: int = DEFAULT_CONFIG["MAX_ENUMERATION_CARRIER"],
) -> WeakTopology:
    """The least base making every map uniformly continuous with
    Omega(C) = f^-1(C).

    The base is the finite intersections of inverse images of target opens
    plus both poles. With ``injective`` naming an injective map f, the
    poles are left out and beta_X, beta_coempty become the inverse images
    of that map's target poles.
    """
    for target, f in targets:
        if f.domain is not carrier or f.codomain is not target.carrier:
            raise CarrierMismatch(f"{f.name} does not go from {carrier.name}")
        if not classify_function(f).strongly_extensional:
            raise CapabilityError(f"{f.name} is not strongly extensional")
    generators = []
    for target, f in targets:
        for h in generate_topology(target, cap).topology.opens:
            generators.append(cs_preimage(f, h))
    generators = list(dict.fromkeys(generators))
    if injective is None:
        base = intersection_base(carrier, generators, name="weak")
    else:
        target, f = targets[injective]
        if not classify_function(f).injection:
            raise CapabilityError(f"{f.name} is not an injection")
        top = cs_preimage(f, one_of(target.carrier))
        bottom = cs_preimage(f, zero_of(target.carrier))
        base = validate_base(
            carrier,
            close_under_intersection(generators),
            lambda x: top,
            lambda x: bottom,
            lambda b, c, x: cs_intersection(b, c),
            name="weak",
        )
    maps = [
        CsbMap(f, base, target, uniform=_inverse_image_of(f)) for target, f in targets
    ]
    weak = WeakTopology(base, generators, maps)
    weak.checks = [
        c
        for m in maps
        for c in check_csb_continuity("uniform", m, cap=cap).checks
    ]
    return weak


def _inverse_image_of(f: FunctionTable) -> Callable[[CS], CS]:
    return lambda c: cs_preimage(f, c)


def _valid_families(carrier: Carrier) -> List[List[CS]]:
    """Every family of complemented subsets that covers the carrier and is
    closed under intersections, so B n C serves as its pair modulus."""
    everything = enumerate_complemented(carrier)
    out = []
    for family in powerset(everything):
        members = set(family)
        if not all(any(x in b.one for b in family) for x in carrier.elements):
            continue
        if all(
            cs_intersection(b, c) in members
            for b, c in itertools.combinations(family, 2)
        ):
            out.append(list(family))
    return out


def weak_minimality(weak: WeakTopology, max_size: int = 2) -> CheckResult:
    """Every family of members that opens the inverse image of each target
    open also opens every open of the weak topology."""
    carrier = weak.base.carrier
    check_cap(f"carrier {carrier.name}", len(carrier), max_size)
    wanted = [
        cs_preimage(m.function, h)
        for m in weak.maps
        for h in generate_topology(m.target).topology.opens
    ]
    weak_opens = generate_topology(weak.base).topology.opens
    cases = 0
    for family in _valid_families(carrier):
        shadow = CsBase(carrier, tuple(family), {}, {}, {})
        if not all(base_open(shadow, g) for g in wanted):
            continue
        cases += 1
        for g in weak_opens:
            if not base_open(shadow, g):
                return failed("weak-topology-is-least", (family, g), cases=cases)
    return passed("weak-topology-is-least", cases=cases, detail="every admissible family")


def csb_laws(
    base: CsBase, cap: int = DEFAULT_CONFIG["MAX_ENUMERATION_CARRIER"]
) -> List[CheckResult]:
    """Base conditions, induced relations, the generated topology and the
    identity map of one base space."""
    gen = generate_topology(base, cap)
    out = list(base.checks)
    out += induced_relations(base).checks
    out += gen.checks
    ident = identity_csb(base)
    out += check_csb_continuity("uniform", ident, gen).checks
    out += csb_map_laws(ident, gen)
    for a in base.carrier.subsets():
        if a:
            rel = relative_base(base, a)
            out.append(
                verdict(f"relative-base:{a!r}", all(c.ok for c in rel.checks))
            )
    return out
