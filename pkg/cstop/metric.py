"""Metric spaces with exact rational distances, their complemented balls,
and moduli of openness written as evaluable expressions.

Two kinds of space are supported: a finite table of distances, checked
exhaustively, and the rational line, where opens are finite unions and
intersections of balls kept as normalized interval sets so that openness
and covering can be decided exactly.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
import itertools
import logging
import math
import random
from typing import (
    Any,
    Callable,
    Dict,
    Iterable,
    List,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from cstop.complemented import (
    ComplementedSubset,
    cs_complement,
    cs_intersection,
    cs_leq,
    cs_union,
)
from cstop.intervals import IntervalSet, sample_points
from cstop.reports import CheckResult, check_all, failed, passed, verdict
from cstop.setineq import (
    Carrier,
    Element,
    ExtSubset,
    classify_tightness,
    neq_complement,
    validate_carrier,
)
from cstop.topology import ModulusRegistry
from cstop.utils import (
    DEFAULT_CONFIG,
    EPSILON_GRID,
    CapabilityError,
    CarrierMismatch,
    DisjointnessError,
    InvalidModulus,
    MetricError,
    UndefinedPoint,
    ValidationError,
    format_rational,
    random_rationals,
    sorted_ids,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FiniteMetric:
    """A finite set of named points with a validated rational distance table.

    Points at distance 0 are equal in the induced carrier and points at
    positive distance are apart.
    """

    elements: Tuple[Element, ...]
    table: Dict[Tuple[Element, Element], Fraction]
    name: str = "X"
    carrier: Carrier = field(init=False, repr=False)

    is_finite = True

    def __post_init__(self):
        classes: List[List[Element]] = []
        for x in self.elements:
            for block in classes:
                if self.table[(block[0], x)] == 0:
                    block.append(x)
                    break
            else:
                classes.append([x])
        neq = [
            (x, y) for x in self.elements for y in self.elements if self.d(x, y) > 0
        ]
        carrier = validate_carrier(self.elements, classes, neq, name=self.name)
        object.__setattr__(self, "carrier", carrier)

    def d(self, x: Element, y: Element) -> Fraction:
        return self.table[(x, y)]

    def points(self) -> List[Element]:
        return list(self.elements)

    def __contains__(self, x: Element) -> bool:
        return x in self.carrier

    def part(self, predicate: Callable[[Element], bool]) -> ExtSubset:
        return self.carrier.subset(y for y in self.elements if predicate(y))

    @property
    def universe(self) -> ExtSubset:
        return self.carrier.universe

    @property
    def nothing(self) -> ExtSubset:
        return self.carrier.nothing

    def to_json(self) -> Dict:
        return {
            "elements": list(self.elements),
            "distances": [
                [format_rational(self.d(x, y)) for y in self.elements]
                for x in self.elements
            ],
        }


@dataclass(frozen=True)
class RationalLine:
    name: str = "Q"

    is_finite = False

    def d(self, x, y) -> Fraction:
        return abs(Fraction(x) - Fraction(y))

    def __contains__(self, x) -> bool:
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def part(self, predicate: Callable[[Fraction], bool]) -> IntervalSet:
        raise CapabilityError("Parts of the line are built from intervals")

    @property
    def universe(self) -> IntervalSet:
        return IntervalSet.everything()

    @property
    def nothing(self) -> IntervalSet:
        return IntervalSet.empty()

    def to_json(self) -> Dict:
        return {"line": self.name}


LINE = RationalLine()

MetricSpace = Union[FiniteMetric, RationalLine]


def validate_metric(
    elements: Sequence[Element],
    matrix: Sequence[Sequence[Fraction]],
    name: str = "X",
) -> FiniteMetric:
    """Check a distance matrix exactly and build the space.

    Raises ``MetricError`` with the offending point, pair or triple.
    """
    elements = tuple(elements)
    n = len(elements)
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise MetricError(f"Distance matrix of {name} is not {n}x{n}")
    table = {
        (x, y): Fraction(matrix[i][j])
        for i, x in enumerate(elements)
        for j, y in enumerate(elements)
    }
    for x in elements:
        if table[(x, x)] != 0:
            raise MetricError(f"d({x},{x}) is not 0 in {name}", [x])
    for x, y in itertools.product(elements, repeat=2):
        if table[(x, y)] < 0:
            raise MetricError(f"d({x},{y}) is negative in {name}", [x, y])
        if table[(x, y)] != table[(y, x)]:
            raise MetricError(f"d is not symmetric on {x},{y} in {name}", [x, y])
    for x, y, z in itertools.product(elements, repeat=3):
        if table[(x, z)] > table[(x, y)] + table[(y, z)]:
            raise MetricError(
                f"Triangle inequality fails on {x},{y},{z} in {name}", [x, y, z]
            )
    space = FiniteMetric(elements, table, name=name)
    if not (space.carrier.is_apartness and space.carrier.is_tight):
        raise MetricError(f"Induced inequality of {name} is not a tight apartness")
    logger.debug(f"Validated metric {name} on {n} points")
    return space


@dataclass(frozen=True)
class BallUnionSet:
    """A complemented subset of the line with interval-set parts.

    ``generators`` records the balls it was built from and takes no part in
    equality.
    """

    one: IntervalSet
    zero: IntervalSet
    generators: Tuple[Tuple[Fraction, Fraction], ...] = field(
        default=(), compare=False
    )

    def __post_init__(self):
        overlap = self.one & self.zero
        if overlap:
            raise DisjointnessError(
                f"Parts of {self!r} overlap on {overlap!r}", overlap.to_json()
            )

    def union(self, other: "BallUnionSet") -> "BallUnionSet":
        return BallUnionSet(
            self.one | other.one,
            self.zero & other.zero,
            self.generators + other.generators,
        )

    def intersection(self, other: "BallUnionSet") -> "BallUnionSet":
        return BallUnionSet(
            self.one & other.one,
            self.zero | other.zero,
            self.generators + other.generators,
        )

    def complement(self) -> "BallUnionSet":
        return BallUnionSet(self.zero, self.one, self.generators)

    def __le__(self, other: "BallUnionSet") -> bool:
        return self.one <= other.one and other.zero <= self.zero

    @property
    def is_total(self) -> bool:
        return (self.one | self.zero) == IntervalSet.everything()

    def __repr__(self) -> str:
        return f"({self.one!r} | {self.zero!r})"

    def to_json(self) -> Dict:
        out = {"one": self.one.to_json(), "zero": self.zero.to_json()}
        if self.generators:
            out["balls"] = [
                {"center": format_rational(c), "radius": format_rational(r)}
                for c, r in self.generators
            ]
        return out


Open = Union[ComplementedSubset, BallUnionSet]


def line_ball(center: Fraction, radius: Fraction) -> BallUnionSet:
    one = IntervalSet.open(center - radius, center + radius)
    return BallUnionSet(one, one.complement(), ((center, radius),))


def ball_union_set(balls: Iterable[Tuple[Fraction, Fraction]]) -> BallUnionSet:
    out = None
    for center, radius in balls:
        b = line_ball(Fraction(center), Fraction(radius))
        out = b if out is None else out.union(b)
    if out is None:
        return pole_zero(LINE)
    return out


def join(g: Open, h: Open) -> Open:
    if isinstance(g, ComplementedSubset):
        return cs_union(g, h)
    return g.union(h)


def meet(g: Open, h: Open) -> Open:
    if isinstance(g, ComplementedSubset):
        return cs_intersection(g, h)
    return g.intersection(h)


def complement(g: Open) -> Open:
    if isinstance(g, ComplementedSubset):
        return cs_complement(g)
    return g.complement()


def leq(g: Open, h: Open) -> bool:
    if isinstance(g, ComplementedSubset):
        return cs_leq(g, h)
    return g <= h


def pole_one(space: MetricSpace) -> Open:
    if space.is_finite:
        return ComplementedSubset(space.universe, space.nothing)
    return BallUnionSet(IntervalSet.everything(), IntervalSet.empty())


def pole_zero(space: MetricSpace) -> Open:
    return complement(pole_one(space))


def copoint(space: MetricSpace, x) -> Open:
    """Everything at positive distance from x, paired with x's class."""
    if space.is_finite:
        return ComplementedSubset(
            space.part(lambda y: space.d(x, y) > 0),
            space.part(lambda y: space.d(x, y) == 0),
        )
    point = IntervalSet.point(Fraction(x))
    return BallUnionSet(point.complement(), point)


@dataclass(frozen=True)
class ComplementedBall:
    space: Any
    center: Any
    radius: Fraction

    @cached_property
    def open(self) -> Open:
        if self.space.is_finite:
            return ComplementedSubset(
                self.space.part(lambda y: self.space.d(self.center, y) < self.radius),
                self.space.part(
                    lambda y: self.space.d(self.center, y) >= self.radius
                ),
            )
        return line_ball(Fraction(self.center), self.radius)

    def __repr__(self) -> str:
        return f"B({self.center},{format_rational(self.radius)})"

    def to_json(self) -> Dict:
        return {
            "center": self.center
            if self.space.is_finite
            else format_rational(self.center),
            "radius": format_rational(self.radius),
        }


def ball(space: MetricSpace, x, radius) -> ComplementedBall:
    radius = Fraction(radius)
    if radius <= 0:
        raise MetricError(f"Ball radius must be positive, got {radius}", radius)
    if space.is_finite:
        if x not in space:
            raise MetricError(f"{x!r} is not a point of {space.name}", x)
    else:
        x = Fraction(x)
    return ComplementedBall(space, x, radius)


def ball_radii(
    space: FiniteMetric, x: Element, extra: Iterable[Fraction] = EPSILON_GRID
) -> List[Fraction]:
    """Radii reaching every distinct ball around x, plus ``extra``."""
    distances = {space.d(x, y) for y in space.elements}
    radii = {r for r in distances if r > 0}
    radii.add(max(distances) + 1)
    radii.update(Fraction(r) for r in extra)
    return sorted(radii)


def canonical_balls(
    space: FiniteMetric, extra: Iterable[Fraction] = ()
) -> List[ComplementedBall]:
    extra = list(extra)
    return [
        ball(space, x, r)
        for x in space.elements
        for r in ball_radii(space, x, extra=extra)
    ]


# Expressions for moduli. ``value`` evaluates the formula anywhere in the
# space; ``atoms`` and ``kinks`` describe it as a continuous piecewise-affine
# function on the line, between whose kinks and atom crossings it agrees
# with a single atom.


Atom = Tuple[Fraction, Fraction]


class Expr:
    exact = True

    def value(self, space: MetricSpace, y) -> Fraction:
        raise NotImplementedError

    def atoms(self) -> List[Atom]:
        raise NotImplementedError

    def kinks(self) -> List[Fraction]:
        return []

    def to_json(self) -> Dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Const(Expr):
    q: Fraction

    def value(self, space, y):
        return self.q

    def atoms(self):
        return [(Fraction(0), self.q)]

    def to_json(self):
        return {"op": "const", "q": format_rational(self.q)}


@dataclass(frozen=True)
class RadiusMinusDistance(Expr):
    center: Any
    radius: Fraction

    def value(self, space, y):
        return self.radius - space.d(self.center, y)

    def atoms(self):
        c = Fraction(self.center)
        return [(Fraction(-1), self.radius + c), (Fraction(1), self.radius - c)]

    def kinks(self):
        return [Fraction(self.center)]

    def to_json(self):
        center = self.center
        if not isinstance(center, str):
            center = format_rational(center)
        return {
            "op": "radius_minus_distance",
            "center": center,
            "radius": format_rational(self.radius),
        }


@dataclass(frozen=True)
class HalfDistance(Expr):
    anchor: Any

    def value(self, space, y):
        return space.d(self.anchor, y) / 2

    def atoms(self):
        a = Fraction(self.anchor)
        return [(Fraction(1, 2), -a / 2), (Fraction(-1, 2), a / 2)]

    def kinks(self):
        return [Fraction(self.anchor)]

    def to_json(self):
        anchor = self.anchor
        if not isinstance(anchor, str):
            anchor = format_rational(anchor)
        return {"op": "half_distance", "anchor": anchor}


@dataclass(frozen=True)
class HalfSelfDistance(Expr):
    """d(y, y)/2, a rule with nothing in its domain on a metric space."""

    def value(self, space, y):
        return space.d(y, y) / 2

    def atoms(self):
        return [(Fraction(0), Fraction(0))]

    def to_json(self):
        return {"op": "half_self_distance"}


@dataclass(frozen=True)
class MinOf(Expr):
    children: Tuple[Expr, ...]

    @property
    def exact(self):
        return all(c.exact for c in self.children)

    def value(self, space, y):
        return min(c.value(space, y) for c in self.children)

    def atoms(self):
        return [a for c in self.children for a in c.atoms()]

    def kinks(self):
        return [k for c in self.children for k in c.kinks()]

    def to_json(self):
        return {"op": "min", "args": [c.to_json() for c in self.children]}


@dataclass(frozen=True)
class UnionMax(MinOf):
    """Max of the children's extensions, evaluated everywhere."""

    def value(self, space, y):
        return max(c.value(space, y) for c in self.children)

    def to_json(self):
        return {"op": "max", "args": [c.to_json() for c in self.children]}


@dataclass(frozen=True)
class ByMembership(Expr):
    """Pick the branch whose domain holds the point; domains are disjoint."""

    branches: Tuple[Tuple[Any, Expr], ...]

    @property
    def exact(self):
        return all(e.exact for _, e in self.branches)

    def value(self, space, y):
        for domain, expr in self.branches:
            if y in domain:
                return expr.value(space, y)
        raise UndefinedPoint(f"{y!r} lies in none of the disjoint parts")

    def atoms(self):
        return [a for _, e in self.branches for a in e.atoms()]

    def kinks(self):
        out = []
        for domain, expr in self.branches:
            out.extend(expr.kinks())
            if isinstance(domain, IntervalSet):
                out.extend(domain.boundary)
        return out

    def to_json(self):
        return {
            "op": "by_membership",
            "args": [expr.to_json() for _, expr in self.branches],
        }


@dataclass(frozen=True, eq=False)
class OpennessModulus:
    """A modulus of openness for the open whose 1-part is ``domain``."""

    space: Any
    expr: Expr
    domain: Any
    label: str = "op"
    notes: Tuple[str, ...] = ()

    def defined_at(self, y) -> bool:
        return y in self.domain

    def raw(self, y) -> Fraction:
        return self.expr.value(self.space, y)

    def __call__(self, y) -> Fraction:
        if y not in self.domain:
            raise UndefinedPoint(f"{y!r} is outside the domain of {self.label}")
        v = self.raw(y)
        if v <= 0:
            raise InvalidModulus(
                f"{self.label} is not positive at {y!r}", {"point": y, "value": v}
            )
        return v

    @property
    def exact(self) -> bool:
        return self.expr.exact

    def __repr__(self) -> str:
        return self.label

    def to_json(self) -> Dict:
        out = {"label": self.label, "op": self.expr.to_json()}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def ball_modulus(b: ComplementedBall) -> OpennessModulus:
    return OpennessModulus(
        b.space,
        RadiusMinusDistance(b.center, b.radius),
        b.open.one,
        label=f"op {b!r}",
    )


def _same_space(moduli: Sequence[OpennessModulus]) -> MetricSpace:
    space = moduli[0].space
    for m in moduli[1:]:
        if m.space != space:
            raise CarrierMismatch(
                f"{m.label} lives on {m.space.name}, not {space.name}"
            )
    return space


def _intersection_min(g: OpennessModulus, h: OpennessModulus) -> OpennessModulus:
    space = _same_space([g, h])
    return OpennessModulus(
        space,
        MinOf((g.expr, h.expr)),
        g.domain & h.domain,
        label=f"min({g.label},{h.label})",
    )


def _union_max(*moduli: OpennessModulus) -> OpennessModulus:
    space = _same_space(moduli)
    domain = moduli[0].domain
    for m in moduli[1:]:
        domain = domain | m.domain
    return OpennessModulus(
        space,
        UnionMax(tuple(m.expr for m in moduli)),
        domain,
        label=f"max({','.join(m.label for m in moduli)})",
        notes=(
            "each operand is extended to the union by its own formula",
            "needs the union to be 1-tight and its thresholds inside the union",
        ),
    )


def _disjoint_union(*moduli: OpennessModulus) -> OpennessModulus:
    space = _same_space(moduli)
    for g, h in itertools.combinations(moduli, 2):
        overlap = g.domain & h.domain
        if overlap:
            raise ValidationError(
                f"{g.label} and {h.label} have overlapping domains", overlap
            )
    domain = moduli[0].domain
    for m in moduli[1:]:
        domain = domain | m.domain
    return OpennessModulus(
        space,
        ByMembership(tuple((m.domain, m.expr) for m in moduli)),
        domain,
        label=f"pick({','.join(m.label for m in moduli)})",
    )


def _pole_const_one(space: MetricSpace) -> OpennessModulus:
    return OpennessModulus(space, Const(Fraction(1)), space.universe, label="one")


def _coempty_half_self(space: MetricSpace) -> OpennessModulus:
    return OpennessModulus(
        space, HalfSelfDistance(), space.nothing, label="half-self"
    )


def _copoint_half(space: MetricSpace, x) -> OpennessModulus:
    if not space.is_finite:
        x = Fraction(x)
    return OpennessModulus(
        space, HalfDistance(x), copoint(space, x).one, label=f"half-d({x},-)"
    )


COMBINERS: Dict[str, Callable[..., OpennessModulus]] = {
    "intersection_min": _intersection_min,
    "union_max": _union_max,
    "disjoint_union": _disjoint_union,
    "pole_const_one": _pole_const_one,
    "coempty_half_self": _coempty_half_self,
    "copoint_half": _copoint_half,
}


def combine_modulus(kind: str, *args) -> OpennessModulus:
    try:
        combiner = COMBINERS[kind]
    except KeyError:
        raise ValueError(f"Unknown modulus combination {kind}")
    return combiner(*args)


def combine_registered(
    registry: ModulusRegistry, kind: str, g: Open, h: Open
) -> Tuple[Open, OpennessModulus]:
    """Combine the registered moduli of g and h and register the result."""
    op_g, op_h = registry.lookup(g), registry.lookup(h)
    if kind == "intersection_min":
        target = meet(g, h)
    elif kind in ("union_max", "disjoint_union"):
        target = join(g, h)
    else:
        raise ValueError(f"{kind} does not combine two opens")
    return target, registry.register(target, combine_modulus(kind, op_g, op_h))


def standard_registry(space: MetricSpace, name: str = "") -> ModulusRegistry:
    """A registry holding the pole moduli of ``space``."""
    registry = ModulusRegistry(name or space.name)
    registry.register(pole_one(space), combine_modulus("pole_const_one", space))
    registry.register(pole_zero(space), combine_modulus("coempty_half_self", space))
    return registry


def register_ball(registry: ModulusRegistry, b: ComplementedBall) -> OpennessModulus:
    return registry.register(b.open, ball_modulus(b))


def _check_domain(g: Open, modulus: OpennessModulus) -> None:
    if modulus.domain != g.one:
        raise InvalidModulus(
            f"Domain of {modulus.label} differs from the 1-part of {g!r}",
            {"domain": modulus.domain, "one": g.one},
        )


def check_Td_open(
    space: MetricSpace,
    g: Open,
    modulus: OpennessModulus,
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
    method: str = "auto",
) -> CheckResult:
    """Check that the ball of radius op(x) around every x in G's 1-part lies in G.

    Finite spaces are scanned exhaustively. On the line an exact modulus is
    verified piecewise, anything else on seeded sample points.
    """
    _check_domain(g, modulus)
    check_id = f"td-open:{modulus.label}"
    if space.is_finite:
        points = sorted_ids(g.one)
        for x in points:
            r = modulus(x)
            if not cs_leq(ball(space, x, r).open, g):
                return failed(check_id, {"point": x, "radius": r}, cases=len(points))
        return passed(check_id, cases=len(points), detail="exhaustive")
    if method == "exact" and not modulus.exact:
        raise CapabilityError(f"{modulus.label} has no piecewise-affine form")
    if method == "sampled" or not modulus.exact:
        return _sampled_line_open(check_id, g, modulus, samples, seed)
    return _exact_line_open(check_id, g, modulus)


def _line_samples(s: IntervalSet, samples: int, seed: int) -> List[Fraction]:
    rng = random.Random(seed)
    return sample_points(s, extra=random_rationals(rng, samples))


def _sampled_line_open(
    check_id: str, g: BallUnionSet, modulus: OpennessModulus, samples: int, seed: int
) -> CheckResult:
    points = _line_samples(g.one, samples, seed)
    detail = f"sampled {len(points)} points, seed {seed}"
    for y in points:
        r = modulus(y)
        if not line_ball(y, r) <= g:
            return failed(check_id, {"point": y, "radius": r}, detail, len(points))
    return passed(check_id, cases=len(points), detail=detail)


def _inner_points(a, b) -> Tuple[Fraction, Fraction]:
    if math.isinf(a) and math.isinf(b):
        return Fraction(0), Fraction(1)
    if math.isinf(a):
        return b - 2, b - 1
    if math.isinf(b):
        return a + 1, a + 2
    return a + (b - a) / 3, a + 2 * (b - a) / 3


def _segment_failure(
    f: Callable[[Fraction], Fraction], a, b, strict: bool
) -> Optional[Fraction]:
    """A point of (a, b) where the affine f is negative (or not positive
    when ``strict``), or None."""
    t1, t2 = _inner_points(a, b)
    v1, v2 = f(t1), f(t2)
    if v1 < 0 or (strict and v1 == 0):
        return t1
    if v2 < 0 or (strict and v2 == 0):
        return t2
    slope = (v2 - v1) / (t2 - t1)
    if math.isinf(a):
        if slope > 0:
            return t1 - (v1 / slope + 1)
    else:
        left = v1 - slope * (t1 - a)
        if left < 0:
            return (a + t1) / 2 if slope <= 0 else a - left / (2 * slope)
    if math.isinf(b):
        if slope < 0:
            return t2 + (v2 / -slope + 1)
    else:
        right = v2 + slope * (b - t2)
        if right < 0:
            return (t2 + b) / 2 if slope >= 0 else b - right / (2 * slope)
    return None


def _crossings(atoms: Sequence[Atom]) -> List[Fraction]:
    out = []
    for (a1, b1), (a2, b2) in itertools.combinations(set(atoms), 2):
        if a1 != a2:
            out.append((b2 - b1) / (a1 - a2))
    return out


def _exact_line_open(
    check_id: str, g: BallUnionSet, modulus: OpennessModulus
) -> CheckResult:
    atoms = modulus.expr.atoms()
    kinks = modulus.expr.kinks()
    cases = 0
    for (lo, lo_eps), (hi, hi_eps) in g.one.spans:
        slack_atoms = []
        if not math.isinf(lo):
            slack_atoms.append((Fraction(1), -lo))
        if not math.isinf(hi):
            slack_atoms.append((Fraction(-1), hi))

        def slack_gap(y, slack_atoms=slack_atoms):
            return min(s * y + t for s, t in slack_atoms) - modulus.raw(y)

        cuts = {
            p
            for p in kinks + _crossings(atoms + slack_atoms)
            if lo < p < hi
        }
        if lo_eps == 0:
            cuts.add(lo)
        if hi_eps == 0:
            cuts.add(hi)
        for p in sorted(cuts):
            cases += 1
            r = modulus(p)
            if slack_atoms and slack_gap(p) < 0:
                return failed(check_id, {"point": p, "radius": r}, cases=cases)
        bounds = [lo] + sorted(p for p in cuts if lo < p < hi) + [hi]
        for a, b in zip(bounds, bounds[1:]):
            if not a < b:
                continue
            cases += 1
            bad = _segment_failure(modulus.raw, a, b, strict=True)
            if bad is not None:
                raise InvalidModulus(
                    f"{modulus.label} is not positive at {bad}",
                    {"point": bad, "value": modulus.raw(bad)},
                )
            if slack_atoms:
                bad = _segment_failure(slack_gap, a, b, strict=False)
                if bad is not None:
                    return failed(
                        check_id, {"point": bad, "radius": modulus(bad)}, cases=cases
                    )
    return passed(check_id, cases=cases, detail="exact piecewise-affine scan")


def covering_check(
    space: MetricSpace,
    g: Open,
    modulus: OpennessModulus,
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
) -> CheckResult:
    """The intersection of the 0-parts of B(y, op(y)), y in G's 1-part, lies in G's 0-part."""
    _check_domain(g, modulus)
    check_id = f"covering:{modulus.label}"
    if space.is_finite:
        common = space.universe
        for y in g.one:
            common = common & ball(space, y, modulus(y)).open.zero
        outside = [x for x in sorted_ids(common) if x not in g.zero]
        return verdict(check_id, not outside, outside, cases=len(g.one) or 1)
    opened = check_Td_open(space, g, modulus, samples, seed)
    if not opened.ok:
        return failed(check_id, opened.witness, detail="not open for this modulus")
    common = g.one.complement()
    leftover = common.difference(g.zero)
    return verdict(
        check_id,
        not leftover,
        leftover.to_json(),
        detail="intersection of the 0-parts is the complement of the 1-part",
    )


@dataclass
class MetricBase:
    """The ball base-moduli of a metric space."""

    space: Any
    checks: List[CheckResult] = field(default_factory=list)

    def beta_whole(self, x) -> ComplementedBall:
        return ball(self.space, x, 1)

    def beta_empty(self, x) -> ComplementedBall:
        r = self.space.d(x, x) / 2
        if r <= 0:
            raise UndefinedPoint(f"{x!r} is not in the coempty subset")
        return ball(self.space, x, r)

    def beta_pair(
        self, b: ComplementedBall, c: ComplementedBall, z
    ) -> ComplementedBall:
        d = self.space.d
        zeta = min(b.radius - d(b.center, z), c.radius - d(c.center, z))
        if zeta <= 0:
            raise UndefinedPoint(f"{z!r} is not in the 1-parts of {b!r} and {c!r}")
        return ball(self.space, z, zeta)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def _random_line_balls(rng: random.Random, count: int) -> List[ComplementedBall]:
    centers = random_rationals(rng, count)
    radii = random_rationals(rng, count, positive=True)
    return [ball(LINE, c, r) for c, r in zip(centers, radii)]


def metric_base_moduli(
    space: MetricSpace,
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
) -> MetricBase:
    """Build the ball base-moduli and check the base conditions on them."""
    base = MetricBase(space)
    if space.is_finite:
        points = space.points()
        balls = list({b.open: b for b in canonical_balls(space)}.values())
        pairs = [
            (b, c, z)
            for b, c in itertools.product(balls, repeat=2)
            for z in points
            if z in b.open.one and z in c.open.one
        ]
    else:
        rng = random.Random(seed)
        points = random_rationals(rng, samples)
        balls = _random_line_balls(rng, max(2, samples // 4))
        pairs = [
            (b, c, z)
            for b, c in itertools.product(balls, repeat=2)
            for z in _line_samples(b.open.one & c.open.one, 0, seed)
        ]
    base.checks.append(
        check_all(
            "base-point",
            [(x,) for x in points],
            lambda x: x in base.beta_whole(x).open.one,
        )
    )
    base.checks.append(passed("base-coempty", cases=0, detail="coempty is empty"))
    base.checks.append(
        check_all(
            "base-intersection",
            pairs,
            lambda b, c, z: z in base.beta_pair(b, c, z).open.one
            and leq(base.beta_pair(b, c, z).open, meet(b.open, c.open)),
        )
    )
    if space.is_finite:
        common = space.universe
        for x in points:
            common = common & base.beta_whole(x).open.zero
        base.checks.append(
            verdict("covering-whole", not common, sorted_ids(common), cases=len(points))
        )
    else:
        base.checks.append(
            passed("covering-whole", detail="x is never in the 0-part of B(x,1)")
        )
    base.checks.append(passed("covering-coempty", cases=0, detail="vacuous"))
    base.checks.append(
        check_all(
            "covering-intersection",
            [(b, c) for b, c in itertools.product(balls, repeat=2)],
            lambda b, c: _pair_covering(base, b, c),
        )
    )
    if not base.ok:
        logger.warning(f"Ball base of {space.name} failed a base condition")
    return base


def _pair_covering(base: MetricBase, b: ComplementedBall, c: ComplementedBall) -> bool:
    space = base.space
    both = meet(b.open, c.open)
    if space.is_finite:
        common = space.universe
        for z in both.one:
            common = common & base.beta_pair(b, c, z).open.zero
        return common <= (b.open.zero | c.open.zero)
    return both.one.complement() <= (b.open.zero | c.open.zero)


def order_fact_laws(
    samples: int = DEFAULT_CONFIG["SAMPLES"], seed: int = DEFAULT_CONFIG["SEED"]
) -> List[CheckResult]:
    rng = random.Random(seed)
    values = random_rationals(rng, 4 * max(samples, 1))
    quads = [tuple(values[i : i + 4]) for i in range(0, len(values), 4)]
    return [
        check_all(
            "order-not-both-below",
            quads,
            lambda x, y, u, v: (x < y and u < v) or x >= y or u >= v,
        ),
        check_all(
            "order-not-either-below",
            quads,
            lambda x, y, u, v: (x < y or u < v) or (x >= y and u >= v),
        ),
        check_all(
            "order-not-both-negative",
            quads,
            lambda x, y, u, v: (x < 0 and y < 0) or x >= 0 or y >= 0,
        ),
        check_all(
            "order-not-either-negative",
            quads,
            lambda x, y, u, v: (x < 0 or y < 0) or (x >= 0 and y >= 0),
        ),
    ]


def ball_laws(
    space: MetricSpace,
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
) -> List[CheckResult]:
    """Basic facts about complemented balls and their moduli."""
    if space.is_finite:
        balls = canonical_balls(space)
        points = space.points()
    else:
        rng = random.Random(seed)
        balls = _random_line_balls(rng, samples)
        points = random_rationals(rng, samples)
    out = [
        check_all(
            "ball-holds-center", [(b,) for b in balls], lambda b: b.center in b.open.one
        ),
        check_all(
            "ball-one-tight",
            [(b, y) for b in balls for y in points],
            lambda b, y: space.d(b.center, y) < b.radius
            or space.d(b.center, y) >= b.radius,
        ),
        check_all(
            "ball-monotone",
            [
                (b, c)
                for b, c in itertools.product(balls, repeat=2)
                if b.center == c.center and b.radius <= c.radius
            ],
            lambda b, c: leq(b.open, c.open),
        ),
        check_all(
            "ball-modulus-inside",
            [(b, y) for b in balls for y in _points_in(space, b.open.one, points)],
            lambda b, y: leq(
                ball(space, y, ball_modulus(b)(y)).open, b.open
            ),
        ),
    ]
    if space.is_finite:
        out.append(
            check_all(
                "ball-zero-is-neq-complement",
                [(b,) for b in balls],
                lambda b: b.open.zero == neq_complement(b.open.one),
            )
        )
    else:
        out.append(
            check_all(
                "ball-zero-is-neq-complement",
                [(b,) for b in balls],
                lambda b: b.open.zero == b.open.one.complement(),
            )
        )
    return out


def _points_in(space: MetricSpace, part, points: Sequence) -> List:
    if space.is_finite:
        return sorted_ids(part)
    return [y for y in points if y in part] + sample_points(part)


def _ok(check: Callable[[], CheckResult]) -> bool:
    try:
        return check().ok
    except InvalidModulus as e:
        logger.warning(f"Invalid modulus: {e}")
        return False


def openness_laws(
    space: MetricSpace,
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
    covering: bool = False,
) -> List[CheckResult]:
    """Openness (or covering, with ``covering``) of balls, poles, copoints,
    and of pairwise intersections and unions of balls."""
    check = covering_check if covering else check_Td_open
    prefix = "covering" if covering else "open"
    if space.is_finite:
        balls = list({b.open: b for b in canonical_balls(space)}.values())
        points = space.points()
    else:
        rng = random.Random(seed)
        balls = _random_line_balls(rng, max(2, samples // 4))
        points = random_rationals(rng, 4)

    def run(g, m):
        return _ok(lambda: check(space, g, m, samples=samples, seed=seed))

    pairs = list(itertools.combinations(balls, 2))
    out = [
        check_all(
            f"{prefix}-ball", [(b,) for b in balls], lambda b: run(b.open, ball_modulus(b))
        ),
        verdict(
            f"{prefix}-whole",
            run(pole_one(space), combine_modulus("pole_const_one", space)),
        ),
        verdict(
            f"{prefix}-empty",
            run(pole_zero(space), combine_modulus("coempty_half_self", space)),
        ),
        check_all(
            f"{prefix}-copoint",
            [(x,) for x in points],
            lambda x: run(copoint(space, x), combine_modulus("copoint_half", space, x)),
        ),
        check_all(
            f"{prefix}-intersection-min",
            pairs,
            lambda b, c: run(
                meet(b.open, c.open),
                combine_modulus("intersection_min", ball_modulus(b), ball_modulus(c)),
            ),
        ),
        check_all(
            f"{prefix}-union-max",
            pairs,
            lambda b, c: run(
                join(b.open, c.open),
                combine_modulus("union_max", ball_modulus(b), ball_modulus(c)),
            ),
        ),
    ]
    return out


def _evaluates(m: OpennessModulus, y) -> bool:
    try:
        m.raw(y)
    except UndefinedPoint:
        return False
    return True


def union_side_conditions(
    space: MetricSpace,
    g: Open,
    h: Open,
    op_g: OpennessModulus,
    op_h: OpennessModulus,
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
) -> List[CheckResult]:
    """Conditions under which the max of extended moduli works for G u H."""
    union = join(g, h)
    op = combine_modulus("union_max", op_g, op_h)
    if space.is_finite:
        points = sorted_ids(union.one)
    else:
        points = _line_samples(union.one, samples, seed)
    out = [
        check_all(
            "union-extensions-defined",
            [(y,) for y in points],
            lambda y: _evaluates(op_g, y) and _evaluates(op_h, y),
        )
    ]
    try:
        inside = check_Td_open(space, union, op, samples, seed)
        inside.check_id = "union-thresholds-inside"
    except InvalidModulus as e:
        inside = failed("union-thresholds-inside", e.witness, detail=str(e))
    out.append(inside)
    if space.is_finite:
        out.append(
            verdict(
                "union-one-tight",
                classify_tightness(union.one).one_tight,
                union,
            )
        )
    else:
        out.append(
            passed("union-one-tight", detail="apartness on the line is d > 0")
        )
    return out


def line_exactness_laws(
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
    grid: int = 1000,
) -> List[CheckResult]:
    """The exact interval verdicts agree with a brute-force check on a grid
    of rational points, for unions of up to four random balls.

    Each union is also paired with a constant modulus as wide as its widest
    ball, which is never valid on a bounded open; the exact scan must reject
    it with a point whose ball really leaves the open.
    """
    rng = random.Random(seed)
    step = Fraction(1, 10)
    oracle_points = [Fraction(-grid // 2) * step + k * step for k in range(grid)]
    unit = ball(LINE, 0, 1)
    half = Fraction(1, 2)
    invalid = [
        (unit.open, OpennessModulus(LINE, Const(half), unit.open.one, "const 1/2"))
    ]
    cases = []
    for _ in range(max(1, samples // 4)):
        count = rng.randint(1, 4)
        balls = _random_line_balls(rng, count)
        g = ball_union_set((b.center, b.radius) for b in balls)
        op = combine_modulus("union_max", *[ball_modulus(b) for b in balls])
        cases.append((g, op))
        widest = max(b.radius for b in balls)
        invalid.append(
            (g, OpennessModulus(LINE, Const(widest), g.one, f"const {widest}"))
        )

    def agree(g, op):
        exact = _ok(lambda: check_Td_open(LINE, g, op, method="exact"))
        brute = all(
            line_ball(y, op(y)) <= g for y in oracle_points if y in g.one
        )
        return exact == brute

    def rejected(g, op):
        result = check_Td_open(LINE, g, op, method="exact")
        if result.ok:
            return False
        w = result.witness
        return w["point"] in g.one and not line_ball(w["point"], w["radius"]) <= g

    return [
        check_all("line-exact-agrees-with-grid", cases + invalid[:1], agree),
        check_all("line-exact-rejects-invalid", invalid, rejected),
        check_all(
            "line-union-covering",
            cases,
            lambda g, op: _ok(lambda: covering_check(LINE, g, op)),
        ),
    ]
