"""Moduli of continuity as radius transformers, and the passage between
continuity moduli and moduli of openness of inverse images."""
from dataclasses import dataclass, field
from fractions import Fraction
import itertools
import logging
import random
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from cstop.complemented import ComplementedSubset, cs_preimage
from cstop.intervals import IntervalSet, nonnegative
from cstop.metric import (
    LINE,
    BallUnionSet,
    Expr,
    FiniteMetric,
    MetricSpace,
    Open,
    OpennessModulus,
    ball,
    ball_modulus,
    canonical_balls,
    check_Td_open,
    combine_modulus,
    join,
    leq,
    meet,
    pole_one,
    standard_registry,
    _line_samples,
    _random_line_balls,
)
from cstop.reports import CheckResult, check_all, failed, passed, verdict
from cstop.setineq import FunctionTable, compose, identity, make_function
from cstop.topology import ModulusRegistry
from cstop.utils import (
    DEFAULT_CONFIG,
    EPSILON_GRID,
    CapabilityError,
    CarrierMismatch,
    InvalidModulus,
    UndefinedPoint,
    ValidationError,
    epsilon_grid,
    format_rational,
    random_rationals,
    sorted_ids,
)


logger = logging.getLogger(__name__)


Piece = Tuple[Fraction, Fraction]


class Transformer:
    """A map from positive rationals to positive rationals."""

    def __call__(self, eps) -> Fraction:
        eps = Fraction(eps)
        if eps <= 0:
            raise InvalidModulus(f"{self!r} applied to non-positive {eps}", eps)
        out = self.apply(eps)
        if out <= 0:
            raise InvalidModulus(f"{self!r} is not positive at {eps}", eps)
        return out

    def apply(self, eps: Fraction) -> Fraction:
        raise NotImplementedError

    def pieces(self) -> Optional[List[Piece]]:
        """Linear pieces ``eps -> k*eps + c`` whose pointwise min this is."""
        return None

    def to_json(self) -> Dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Identity(Transformer):
    def apply(self, eps):
        return eps

    def pieces(self):
        return [(Fraction(1), Fraction(0))]

    def to_json(self):
        return {"op": "identity"}


@dataclass(frozen=True)
class ConstRadius(Transformer):
    q: Fraction

    def apply(self, eps):
        return self.q

    def pieces(self):
        return [(Fraction(0), self.q)]

    def to_json(self):
        return {"op": "const", "q": format_rational(self.q)}


@dataclass(frozen=True)
class Scale(Transformer):
    q: Fraction

    def apply(self, eps):
        return self.q * eps

    def pieces(self):
        return [(self.q, Fraction(0))]

    def to_json(self):
        return {"op": "scale", "q": format_rational(self.q)}


@dataclass(frozen=True)
class Compose(Transformer):
    """``outer`` after ``inner``."""

    outer: Transformer
    inner: Transformer

    def apply(self, eps):
        return self.outer(self.inner(eps))

    def pieces(self):
        outer, inner = self.outer.pieces(), self.inner.pieces()
        if outer is None or inner is None:
            return None
        if len(outer) > 1 and len(inner) > 1:
            return None
        return [(k2 * k1, k2 * c1 + c2) for k2, c2 in outer for k1, c1 in inner]

    def to_json(self):
        return {
            "op": "compose",
            "outer": self.outer.to_json(),
            "inner": self.inner.to_json(),
        }


@dataclass(frozen=True)
class MinRadius(Transformer):
    children: Tuple[Transformer, ...]

    def apply(self, eps):
        return min(c(eps) for c in self.children)

    def pieces(self):
        out = []
        for c in self.children:
            p = c.pieces()
            if p is None:
                return None
            out.extend(p)
        return out

    def to_json(self):
        return {"op": "min", "args": [c.to_json() for c in self.children]}


@dataclass(frozen=True)
class Table(Transformer):
    """Step function through ``points``; linear below the first one."""

    points: Tuple[Tuple[Fraction, Fraction], ...]

    def apply(self, eps):
        first_eps, first_value = self.points[0]
        if eps < first_eps:
            return first_value * eps / first_eps
        value = first_value
        for key, v in self.points:
            if key <= eps:
                value = v
        return value

    def to_json(self):
        return {
            "op": "table",
            "points": [
                [format_rational(k), format_rational(v)] for k, v in self.points
            ],
        }


def table_transformer(points: Mapping[Fraction, Fraction]) -> Table:
    if not points:
        raise ValidationError("A radius table needs at least one point")
    return Table(tuple(sorted((Fraction(k), Fraction(v)) for k, v in points.items())))


class MetricMap:
    domain: Any
    codomain: Any
    name: str

    lipschitz: Optional[Fraction] = None

    def __call__(self, x):
        raise NotImplementedError

    def preimage(self, h: Open) -> Open:
        raise NotImplementedError

    def pieces(self) -> Optional[List[Piece]]:
        return None

    def kinks(self) -> List[Fraction]:
        return []


@dataclass(frozen=True, eq=False)
class TableMap(MetricMap):
    domain: FiniteMetric
    codomain: FiniteMetric
    table: FunctionTable
    name: str = "f"

    def __call__(self, x):
        return self.table(x)

    def preimage(self, h: ComplementedSubset) -> ComplementedSubset:
        return cs_preimage(self.table, h)

    def to_json(self) -> Dict:
        return {"kind": "table", "table": dict(self.table.table)}


def table_map(
    domain: FiniteMetric, codomain: FiniteMetric, mapping: Mapping, name: str = "f"
) -> TableMap:
    table = make_function(domain.carrier, codomain.carrier, mapping, name=name)
    return TableMap(domain, codomain, table, name=name)


def _preimage_parts(h: BallUnionSet, pull: Callable[[IntervalSet], IntervalSet]):
    return BallUnionSet(pull(h.one), pull(h.zero))


@dataclass(frozen=True, eq=False)
class AffineMap(MetricMap):
    a: Fraction
    b: Fraction
    name: str = "f"
    domain: Any = LINE
    codomain: Any = LINE

    def __call__(self, x):
        return self.a * Fraction(x) + self.b

    def preimage(self, h: BallUnionSet) -> BallUnionSet:
        return _preimage_parts(h, lambda s: s.preimage_affine(self.a, self.b))

    @property
    def lipschitz(self) -> Fraction:
        return abs(self.a)

    def pieces(self):
        return [(self.a, self.b)]

    def to_json(self) -> Dict:
        return {
            "kind": "affine",
            "a": format_rational(self.a),
            "b": format_rational(self.b),
        }


@dataclass(frozen=True, eq=False)
class DistanceMap(MetricMap):
    """x -> |x - anchor|."""

    anchor: Fraction
    name: str = "f"
    domain: Any = LINE
    codomain: Any = LINE

    def __call__(self, x):
        return abs(Fraction(x) - self.anchor)

    def preimage(self, h: BallUnionSet) -> BallUnionSet:
        c = self.anchor

        def pull(s: IntervalSet) -> IntervalSet:
            s = s & nonnegative()
            return s.preimage_affine(1, -c) | s.preimage_affine(-1, c)

        return _preimage_parts(h, pull)

    @property
    def lipschitz(self) -> Fraction:
        return Fraction(1)

    def pieces(self):
        return [(Fraction(1), -self.anchor), (Fraction(-1), self.anchor)]

    def kinks(self):
        return [self.anchor]

    def to_json(self) -> Dict:
        return {"kind": "distance", "anchor": format_rational(self.anchor)}


@dataclass(frozen=True, eq=False)
class ComposedMap(MetricMap):
    """``outer`` after ``inner``."""

    outer: MetricMap
    inner: MetricMap

    @property
    def domain(self):
        return self.inner.domain

    @property
    def codomain(self):
        return self.outer.codomain

    @property
    def name(self) -> str:
        return f"{self.outer.name}.{self.inner.name}"

    def __call__(self, x):
        return self.outer(self.inner(x))

    def preimage(self, h: Open) -> Open:
        return self.inner.preimage(self.outer.preimage(h))

    @property
    def lipschitz(self) -> Optional[Fraction]:
        if self.outer.lipschitz is None or self.inner.lipschitz is None:
            return None
        return self.outer.lipschitz * self.inner.lipschitz

    def pieces(self):
        outer, inner = self.outer.pieces(), self.inner.pieces()
        if outer is None or inner is None:
            return None
        return [(a2 * a1, a2 * b1 + b2) for a2, b2 in outer for a1, b1 in inner]

    def kinks(self):
        out = list(self.inner.kinks())
        for k in self.outer.kinks():
            out.extend((k - b) / a for a, b in self.inner.pieces() or [] if a != 0)
        return out

    def to_json(self) -> Dict:
        return {
            "kind": "compose",
            "outer": self.outer.to_json(),
            "inner": self.inner.to_json(),
        }


def compose_maps(g: MetricMap, f: MetricMap) -> MetricMap:
    """g after f."""
    if f.codomain != g.domain:
        raise CarrierMismatch(f"Cannot compose {g.name} after {f.name}")
    if isinstance(f, TableMap) and isinstance(g, TableMap):
        return TableMap(f.domain, g.codomain, compose(g.table, f.table), f"{g.name}.{f.name}")
    if isinstance(f, AffineMap) and isinstance(g, AffineMap):
        return AffineMap(g.a * f.a, g.a * f.b + g.b, name=f"{g.name}.{f.name}")
    return ComposedMap(g, f)


def identity_map(space: MetricSpace) -> MetricMap:
    if space.is_finite:
        return TableMap(space, space, identity(space.carrier), "id")
    return AffineMap(Fraction(1), Fraction(0), name="id")


class PointwiseFamily:
    def at(self, x) -> Transformer:
        raise NotImplementedError

    def to_json(self) -> Any:
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantFamily(PointwiseFamily):
    transformer: Transformer

    def at(self, x):
        return self.transformer

    def to_json(self):
        return self.transformer.to_json()


@dataclass(frozen=True, eq=False)
class TableFamily(PointwiseFamily):
    table: Dict[Any, Transformer]

    def at(self, x):
        try:
            return self.table[x]
        except KeyError:
            raise UndefinedPoint(f"No pointwise modulus at {x!r}")

    def to_json(self):
        return {str(x): t.to_json() for x, t in self.table.items()}


@dataclass(frozen=True, eq=False)
class ComposedFamily(PointwiseFamily):
    """omega_{g.f, x} = omega_{f, x} after omega_{g, f(x)}."""

    f_family: PointwiseFamily
    g_family: PointwiseFamily
    f_map: MetricMap

    def at(self, x):
        return Compose(self.f_family.at(x), self.g_family.at(self.f_map(x)))

    def to_json(self):
        return {"op": "compose_family"}


@dataclass(eq=False)
class ContinuousMap:
    map: MetricMap
    pointwise: Optional[PointwiseFamily] = None
    uniform: Optional[Transformer] = None

    def __post_init__(self):
        if self.pointwise is None and self.uniform is not None:
            self.pointwise = ConstantFamily(self.uniform)

    @property
    def name(self) -> str:
        return self.map.name

    def family(self, kind: str) -> PointwiseFamily:
        if kind == "uniform":
            if self.uniform is None:
                raise CapabilityError(f"{self.name} has no uniform modulus")
            return ConstantFamily(self.uniform)
        if kind == "pointwise":
            if self.pointwise is None:
                raise CapabilityError(f"{self.name} has no pointwise modulus")
            return self.pointwise
        raise ValueError(f"Unknown continuity kind {kind}")


def domain_points(
    space: MetricSpace,
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
) -> List:
    if space.is_finite:
        return space.points()
    rng = random.Random(seed)
    fixed = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2)]
    return sorted(set(fixed + random_rationals(rng, samples)))


def _line_witness(f: MetricMap, x0, delta: Fraction, eps: Fraction):
    far = max([Fraction(x0)] + f.kinks()) + 1
    for base in (x0, far):
        for x in (base + delta, base - delta):
            if LINE.d(f(x), f(base)) >= eps:
                return x, base
    return None


def check_continuity(
    kind: str,
    m: ContinuousMap,
    epsilons: Optional[Sequence[Fraction]] = None,
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
) -> CheckResult:
    """Check that d(x, x0) < modulus(eps) forces e(f x, f x0) < eps.

    Witnesses are ``(eps, x, x0)``.
    """
    family = m.family(kind)
    grid = list(epsilons) if epsilons is not None else list(EPSILON_GRID)
    f = m.map
    X, Y = f.domain, f.codomain
    check_id = f"{kind}-continuity:{m.name}"
    points = domain_points(X, samples, seed)
    cases = 0
    if X.is_finite:
        for eps in grid:
            for x0 in points:
                w = family.at(x0)(eps)
                for x in points:
                    cases += 1
                    if X.d(x, x0) < w and not Y.d(f(x), f(x0)) < eps:
                        return failed(check_id, (eps, x, x0), cases=cases)
        return passed(check_id, cases=cases, detail=f"exhaustive over {len(grid)} radii")
    rng = random.Random(seed)
    lipschitz = f.lipschitz
    for eps in grid:
        for x0 in points:
            w = family.at(x0)(eps)
            if lipschitz is not None and lipschitz * w > eps:
                delta = (eps / lipschitz + w) / 2
                found = _line_witness(f, x0, delta, eps)
                if found is not None:
                    x, base = found
                    return failed(check_id, (eps, base, x), cases=cases + 1)
                return failed(
                    check_id,
                    (eps, x0, None),
                    detail=f"lipschitz {lipschitz} times {w} exceeds {eps}",
                    cases=cases + 1,
                )
            for _ in range(2):
                cases += 1
                x = x0 + w * Fraction(rng.randint(-99, 99), 100)
                if not Y.d(f(x), f(x0)) < eps:
                    return failed(check_id, (eps, x, x0), cases=cases)
    detail = f"{len(grid)} radii, {len(points)} points, seed {seed}"
    if lipschitz is not None:
        detail = f"lipschitz bound {lipschitz}; " + detail
    return passed(check_id, cases=cases, detail=detail)


def derived_strong_extensionality(
    m: ContinuousMap,
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
) -> bool:
    """e(f x, f x') > 0 implies d(x, x') > 0 over the checked points."""
    m.family("pointwise")
    f = m.map
    points = domain_points(f.domain, samples, seed)
    return all(
        f.domain.d(x, x2) > 0
        for x in points
        for x2 in points
        if f.codomain.d(f(x), f(x2)) > 0
    )


def compose_moduli(
    kind: str,
    f: ContinuousMap,
    g: ContinuousMap,
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
) -> ContinuousMap:
    """g after f, with omega_{g.f, x} = omega_{f, x} after omega_{g, f(x)}
    and Omega_{g.f} = Omega_f after Omega_g."""
    gf = compose_maps(g.map, f.map)
    if kind == "uniform":
        out = ContinuousMap(gf, uniform=Compose(f.family(kind).at(None), g.family(kind).at(None)))
    else:
        out = ContinuousMap(
            gf, pointwise=ComposedFamily(f.family(kind), g.family(kind), f.map)
        )
    check = check_continuity(kind, out, samples=samples, seed=seed)
    if not check.ok:
        raise ValidationError(f"Composite {gf.name} is not {kind} continuous", check.witness)
    return out


@dataclass(frozen=True, eq=False)
class PulledBack(Expr):
    """op(y) = omega_y(op_H(f(y)))."""

    inner: OpennessModulus
    map: MetricMap
    family: PointwiseFamily

    @property
    def exact(self):
        return (
            self.inner.exact
            and self.map.pieces() is not None
            and isinstance(self.family, ConstantFamily)
            and self.family.transformer.pieces() is not None
        )

    def value(self, space, y):
        return self.family.at(y)(self.inner.raw(self.map(y)))

    def atoms(self):
        return [
            (k * s * a, k * (s * b + t) + c)
            for k, c in self.family.transformer.pieces()
            for s, t in self.inner.expr.atoms()
            for a, b in self.map.pieces()
        ]

    def kinks(self):
        out = list(self.map.kinks())
        for q in self.inner.expr.kinks():
            out.extend((q - b) / a for a, b in self.map.pieces() if a != 0)
        return out

    def to_json(self):
        return {
            "op": "pull_back",
            "map": self.map.name,
            "modulus": self.inner.expr.to_json(),
            "transformer": self.family.to_json(),
        }


@dataclass(eq=False)
class OpenInversion:
    """op_f: (H, op_H) -> (f^-1(H), x -> omega_x(op_H(f x))).

    With a ``registry`` on the domain, cs-equal inverse images share the
    first registered modulus.
    """

    kind: str
    cmap: ContinuousMap
    registry: Optional[ModulusRegistry] = None

    def __call__(self, h: Open, op_h: OpennessModulus) -> Tuple[Open, OpennessModulus]:
        f = self.cmap.map
        pre = f.preimage(h)
        modulus = OpennessModulus(
            f.domain,
            PulledBack(op_h, f, self.cmap.family(self.kind)),
            pre.one,
            label=f"{f.name}^-1 {op_h.label}",
        )
        if self.registry is not None:
            modulus = self.registry.register(pre, modulus)
        return pre, modulus


def inversion_from(
    kind: str, m: ContinuousMap, registry: Optional[ModulusRegistry] = None
) -> OpenInversion:
    m.family(kind)
    return OpenInversion(kind, m, registry)


@dataclass
class InvertedOpen:
    open: Open
    modulus: OpennessModulus
    checks: List[CheckResult] = field(default_factory=list)


def _points_of(space: MetricSpace, part, samples: int, seed: int) -> List:
    if space.is_finite:
        return sorted_ids(part)
    return _line_samples(part, samples, seed)


def _ball_condition(
    inversion: OpenInversion,
    op_h: OpennessModulus,
    modulus: OpennessModulus,
    points: Sequence,
) -> CheckResult:
    f = inversion.cmap.map
    plain = OpenInversion(inversion.kind, inversion.cmap)

    def agrees(x):
        b = ball(f.codomain, f(x), op_h(f(x)))
        _, pulled = plain(b.open, ball_modulus(b))
        return modulus(x) == pulled(x)

    return check_all(
        f"inverse-modulus-matches-ball:{modulus.label}", [(x,) for x in points], agrees
    )


def invert_open(
    kind: str,
    m: ContinuousMap,
    h: Open,
    registry: ModulusRegistry,
    into: Optional[ModulusRegistry] = None,
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
) -> InvertedOpen:
    """Inverse image of a registered open with its pulled-back modulus."""
    op_h = registry.lookup(h)
    continuity = check_continuity(kind, m, samples=samples, seed=seed)
    if not continuity.ok:
        raise ValidationError(f"{m.name} is not {kind} continuous", continuity.witness)
    inversion = inversion_from(kind, m, into)
    pre, modulus = inversion(h, op_h)
    opened = check_Td_open(m.map.domain, pre, modulus, samples, seed)
    if not opened.ok:
        raise ValidationError(
            f"{pre!r} is not open for {modulus.label}", opened.witness
        )
    points = _points_of(m.map.domain, pre.one, samples, seed)
    return InvertedOpen(
        pre, modulus, [continuity, opened, _ball_condition(inversion, op_h, modulus, points)]
    )


@dataclass(frozen=True, eq=False)
class InvertedBall(Transformer):
    """eps -> op_{f^-1(B(f x, eps))}(x) for a given inversion op_f."""

    op_f: Callable
    map: MetricMap
    x: Any

    def apply(self, eps):
        b = ball(self.map.codomain, self.map(self.x), eps)
        _, modulus = self.op_f(b.open, ball_modulus(b))
        return modulus(self.x)

    def to_json(self):
        x = self.x if isinstance(self.x, str) else format_rational(self.x)
        return {"op": "inverted_ball", "at": x}


@dataclass(frozen=True, eq=False)
class DerivedFamily(PointwiseFamily):
    op_f: Callable
    map: MetricMap

    def at(self, x):
        return InvertedBall(self.op_f, self.map, x)

    def to_json(self):
        return {"op": "inverted_ball"}


def continuity_from_inversion(
    kind: str,
    f: MetricMap,
    op_f: Callable,
    x0: Any = None,
    epsilons: Optional[Sequence[Fraction]] = None,
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
) -> ContinuousMap:
    """Read continuity moduli off the moduli op_f gives inverse images of balls.

    The uniform kind needs an inhabitant ``x0`` and checks that the value at
    x0 matches the value at every other checked point.
    """
    grid = list(epsilons) if epsilons is not None else list(EPSILON_GRID)
    family = DerivedFamily(op_f, f)
    if kind == "pointwise":
        out = ContinuousMap(f, pointwise=family)
    elif kind == "uniform":
        if x0 is None:
            raise CapabilityError("A uniform modulus needs an inhabitant x0")
        for eps in grid:
            base = family.at(x0)(eps)
            for x in domain_points(f.domain, samples, seed):
                value = family.at(x)(eps)
                if value != base:
                    raise ValidationError(
                        "Uniformity side condition fails",
                        {"epsilon": eps, "points": [x0, x], "values": [base, value]},
                    )
        out = ContinuousMap(f, pointwise=family, uniform=InvertedBall(op_f, f, x0))
    else:
        raise ValueError(f"Unknown continuity kind {kind}")
    check = check_continuity(kind, out, grid, samples, seed)
    if not check.ok:
        raise ValidationError(f"Recovered modulus of {f.name} fails", check.witness)
    return out


def sample_opens(
    space: MetricSpace,
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
) -> List[Tuple[Open, OpennessModulus]]:
    """Balls with their moduli, and unions of neighbouring pairs."""
    if space.is_finite:
        balls = list({b.open: b for b in canonical_balls(space)}.values())
    else:
        balls = _random_line_balls(random.Random(seed), max(2, samples // 8))
    out = [(b.open, ball_modulus(b)) for b in balls]
    for b, c in zip(balls, balls[1:]):
        out.append(
            (
                join(b.open, c.open),
                combine_modulus("union_max", ball_modulus(b), ball_modulus(c)),
            )
        )
    return out


def roundtrip_check(
    kind: str,
    m: ContinuousMap,
    epsilons: Optional[Sequence[Fraction]] = None,
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
) -> List[CheckResult]:
    """Modulus to inversion and back, and inversion to modulus and back,
    compared with exact equality."""
    grid = list(epsilons) if epsilons is not None else epsilon_grid(seed, samples)
    f = m.map
    points = domain_points(f.domain, samples, seed)
    family = m.family(kind)
    op_f = inversion_from(kind, m)
    recovered = continuity_from_inversion(
        kind, f, op_f, x0=points[0], epsilons=grid, samples=samples, seed=seed
    )
    forward = check_all(
        f"{kind}-modulus-roundtrip:{m.name}",
        [(eps, x) for eps in grid for x in points],
        lambda eps, x: recovered.family(kind).at(x)(eps) == family.at(x)(eps),
    )
    op_f2 = inversion_from(kind, recovered)
    cases = []
    for h, op_h in sample_opens(f.codomain, samples, seed):
        pre = f.preimage(h)
        for x in _points_of(f.domain, pre.one, samples // 4, seed):
            cases.append((h, op_h, x))
    backward = check_all(
        f"{kind}-inversion-roundtrip:{m.name}",
        cases,
        lambda h, op_h, x: op_f(h, op_h)[1](x) == op_f2(h, op_h)[1](x),
    )
    return [forward, backward]


def inversion_laws(
    kind: str,
    m: ContinuousMap,
    epsilons: Optional[Sequence[Fraction]] = None,
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
) -> List[CheckResult]:
    grid = list(epsilons) if epsilons is not None else list(EPSILON_GRID)
    f = m.map
    X, Y = f.domain, f.codomain
    family = m.family(kind)
    points = domain_points(X, samples, seed)
    out = []

    registry = standard_registry(X)
    shared = inversion_from(kind, m, registry)
    plain = inversion_from(kind, m)
    top = pole_one(Y)
    one = combine_modulus("pole_const_one", Y)
    _, pole_modulus = shared(top, one)
    _, raw_modulus = plain(top, one)
    raw = {str(x): format_rational(raw_modulus(x)) for x in points[:4]}
    out.append(
        check_all(
            f"pole-preimage-modulus-is-one:{m.name}",
            [(x,) for x in points],
            lambda x: pole_modulus(x) == 1,
        )
    )
    out[-1].detail = f"pulled-back values {raw}"

    opens = sample_opens(Y, samples, seed)
    min_cases = []
    for (k, op_k), (l, op_l) in itertools.combinations(opens[:6], 2):
        kl = meet(k, l)
        op_kl = combine_modulus("intersection_min", op_k, op_l)
        for x in _points_of(X, f.preimage(kl).one, samples // 4, seed):
            min_cases.append((k, op_k, l, op_l, kl, op_kl, x))
    out.append(
        check_all(
            f"preimage-intersection-is-min:{m.name}",
            min_cases,
            lambda k, op_k, l, op_l, kl, op_kl, x: plain(kl, op_kl)[1](x)
            == min(plain(k, op_k)[1](x), plain(l, op_l)[1](x)),
        )
    )

    def ball_form(x, eps):
        w = family.at(x)(eps)
        star = ball(X, x, w)
        target = f.preimage(ball(Y, f(x), eps).open)
        return leq(star.open, target) and ball_modulus(star)(x) == w

    out.append(
        check_all(
            f"ball-form-inside-preimage:{m.name}",
            [(x, eps) for x in points for eps in grid],
            ball_form,
        )
    )

    def pair_compatible(u, y, eps, y2, delta):
        fu = f(u)
        r1, r2 = eps - Y.d(y, fu), delta - Y.d(y2, fu)
        if r1 <= 0 or r2 <= 0:
            return True
        w = family.at(u)
        lhs = ball(X, u, w(min(r1, r2)))
        rhs = ball(X, u, min(w(r1), w(r2)))
        return lhs.open == rhs.open

    pair_cases = [
        (u, f(u), eps, f(v), delta)
        for u in points[:6]
        for v in points[:6]
        for eps in grid
        for delta in grid[:3]
    ]
    out.append(
        check_all(f"pair-base-compatible:{m.name}", pair_cases, pair_compatible)
    )
    return out


def composition_laws(
    kind: str,
    f: ContinuousMap,
    g: ContinuousMap,
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
) -> List[CheckResult]:
    """Inverse-image moduli of identities and of composites."""
    X = f.map.domain
    ident = ContinuousMap(identity_map(X), uniform=Identity())
    id_inv = inversion_from(kind, ident)
    gf = compose_moduli(kind, f, g, samples, seed)
    gf_inv = inversion_from(kind, gf)
    f_inv, g_inv = inversion_from(kind, f), inversion_from(kind, g)
    id_cases = [
        (h, op_h, x)
        for h, op_h in sample_opens(X, samples, seed)
        for x in _points_of(X, h.one, samples // 4, seed)
    ]
    comp_cases = []
    for k, op_k in sample_opens(g.map.codomain, samples, seed):
        pre = gf.map.preimage(k)
        for x in _points_of(X, pre.one, samples // 4, seed):
            comp_cases.append((k, op_k, x))

    def nested(k, op_k, x):
        mid, op_mid = g_inv(k, op_k)
        _, op_outer = f_inv(mid, op_mid)
        return gf_inv(k, op_k)[1](x) == op_outer(x)

    return [
        check_all(
            "identity-inverse-modulus",
            id_cases,
            lambda h, op_h, x: id_inv(h, op_h)[1](x) == op_h(x),
        ),
        check_all(f"composite-inverse-modulus:{gf.name}", comp_cases, nested),
        verdict(
            f"composite-continuity:{gf.name}",
            check_continuity(kind, gf, samples=samples, seed=seed).ok,
        ),
    ]


def continuity_laws(
    m: ContinuousMap,
    samples: int = DEFAULT_CONFIG["SAMPLES"],
    seed: int = DEFAULT_CONFIG["SEED"],
) -> List[CheckResult]:
    """Every check this module offers for one map, for each modulus it has."""
    out = []
    kinds = [k for k in ("pointwise", "uniform") if getattr(m, k) is not None]
    grid = epsilon_grid(seed, samples)
    for kind in kinds:
        check = check_continuity(kind, m, grid, samples, seed)
        out.append(check)
        if not check.ok:
            continue
        out.extend(roundtrip_check(kind, m, grid, samples, seed))
        out.extend(inversion_laws(kind, m, samples=samples, seed=seed))
    if "pointwise" in kinds:
        out.append(
            verdict(
                f"strongly-extensional:{m.name}",
                derived_strong_extensionality(m, samples, seed),
            )
        )
    return out
