"""Complemented subsets of a finite carrier, their first algebra (union,
intersection, complement), complemented points and images."""
from dataclasses import dataclass
import itertools
import logging
from typing import Dict, Iterable, List, Optional, Sequence

from cstop.reports import CheckResult, check_all, skipped, verdict
from cstop.setineq import (
    Carrier,
    Element,
    ExtSubset,
    FunctionTable,
    classify_function,
    direct_image,
    empty_subset,
    family_intersection,
    family_union,
    inverse_image,
    neq_complement,
    product,
    product_carrier,
    require,
)
from cstop.utils import (
    CarrierMismatch,
    DisjointnessError,
    EmptyFamily,
    UndefinedPoint,
    check_cap,
    sorted_ids,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComplementedSubset:
    """A pair (one, zero) of extensional subsets whose members are pairwise apart.

    Equality of instances is equality of both parts, which on saturated
    subsets is exactly equality of complemented subsets.
    """

    one: ExtSubset
    zero: ExtSubset

    def __post_init__(self):
        if self.one.carrier is not self.zero.carrier:
            raise CarrierMismatch("The two parts live on different carriers")
        carrier = self.one.carrier
        for a1 in self.one:
            for a0 in self.zero:
                if not carrier.apart(a1, a0):
                    raise DisjointnessError(
                        f"{a1!r} and {a0!r} are not apart in {carrier.name}",
                        (a1, a0),
                    )

    @property
    def carrier(self) -> Carrier:
        return self.one.carrier

    @property
    def dom(self) -> ExtSubset:
        return self.one | self.zero

    @property
    def is_total(self) -> bool:
        return self.dom == self.carrier.universe

    def __repr__(self) -> str:
        return f"({self.one!r},{self.zero!r})"

    def to_json(self) -> Dict:
        return {"one": self.one.to_json(), "zero": self.zero.to_json()}


def make_complemented(a1: ExtSubset, a0: ExtSubset) -> ComplementedSubset:
    return ComplementedSubset(a1, a0)


def from_members(
    carrier: Carrier, one: Iterable[Element], zero: Iterable[Element]
) -> ComplementedSubset:
    return ComplementedSubset(carrier.subset(one), carrier.subset(zero))


def _same_carrier(a: ComplementedSubset, b: ComplementedSubset) -> None:
    if a.carrier is not b.carrier:
        raise CarrierMismatch(
            f"Complemented subsets live on {a.carrier.name} and {b.carrier.name}"
        )


def cs_union(a: ComplementedSubset, b: ComplementedSubset) -> ComplementedSubset:
    _same_carrier(a, b)
    return ComplementedSubset(a.one | b.one, a.zero & b.zero)


def cs_intersection(
    a: ComplementedSubset, b: ComplementedSubset
) -> ComplementedSubset:
    _same_carrier(a, b)
    return ComplementedSubset(a.one & b.one, a.zero | b.zero)


def cs_complement(a: ComplementedSubset) -> ComplementedSubset:
    return ComplementedSubset(a.zero, a.one)


def cs_difference(a: ComplementedSubset, b: ComplementedSubset) -> ComplementedSubset:
    return cs_intersection(a, cs_complement(b))


def cs_product(a: ComplementedSubset, c: ComplementedSubset) -> ComplementedSubset:
    """(A1 x C1, (A0 x Y) u (X x C0)) on the product carrier."""
    X, Y = a.carrier, c.carrier
    one = product(a.one, c.one)
    zero = product(a.zero, Y.universe) | product(X.universe, c.zero)
    return ComplementedSubset(one, zero)


CS_BINARY = {
    "union": cs_union,
    "intersection": cs_intersection,
    "difference": cs_difference,
    "product": cs_product,
}


def cs_binary(
    kind: str, a: ComplementedSubset, b: ComplementedSubset
) -> ComplementedSubset:
    try:
        op = CS_BINARY[kind]
    except KeyError:
        raise ValueError(f"Unknown complemented operation {kind}")
    return op(a, b)


def cs_family(kind: str, family: Sequence[ComplementedSubset]) -> ComplementedSubset:
    family = list(family)
    if not family:
        raise EmptyFamily(f"Cannot take the {kind} of an empty family")
    carrier = family[0].carrier
    for member in family[1:]:
        _same_carrier(family[0], member)
    ones = [member.one for member in family]
    zeros = [member.zero for member in family]
    if kind == "union":
        return ComplementedSubset(
            family_union(ones, carrier), family_intersection(zeros, carrier)
        )
    if kind == "intersection":
        return ComplementedSubset(
            family_intersection(ones, carrier), family_union(zeros, carrier)
        )
    raise ValueError(f"Unknown family operation {kind}")


@dataclass(frozen=True)
class CsOrder:
    leq: bool
    eq: bool


def cs_leq(a: ComplementedSubset, b: ComplementedSubset) -> bool:
    _same_carrier(a, b)
    return a.one <= b.one and b.zero <= a.zero


def cs_order(a: ComplementedSubset, b: ComplementedSubset) -> CsOrder:
    leq = cs_leq(a, b)
    return CsOrder(leq=leq, eq=leq and cs_leq(b, a))


def one_of(carrier: Carrier) -> ComplementedSubset:
    return ComplementedSubset(carrier.universe, empty_subset(carrier))


def zero_of(carrier: Carrier) -> ComplementedSubset:
    return ComplementedSubset(empty_subset(carrier), carrier.universe)


def local_one(a: ComplementedSubset) -> ComplementedSubset:
    return ComplementedSubset(a.dom, empty_subset(a.carrier))


def local_zero(a: ComplementedSubset) -> ComplementedSubset:
    return ComplementedSubset(empty_subset(a.carrier), a.dom)


@dataclass(frozen=True)
class Poles:
    zero_X: ComplementedSubset
    one_X: ComplementedSubset
    zero_A: ComplementedSubset
    one_A: ComplementedSubset
    dom: ExtSubset


def zeros_ones(a: ComplementedSubset) -> Poles:
    return Poles(
        zero_X=zero_of(a.carrier),
        one_X=one_of(a.carrier),
        zero_A=local_zero(a),
        one_A=local_one(a),
        dom=a.dom,
    )


class Characteristic:
    """The partial 0/1-valued map of a complemented subset, defined on its domain."""

    def __init__(self, a: ComplementedSubset):
        self.subset = a
        self.domain = a.dom

    def __call__(self, x: Element) -> int:
        if x in self.subset.one:
            return 1
        if x in self.subset.zero:
            return 0
        raise UndefinedPoint(f"{x!r} is outside the domain of {self.subset!r}")

    def table(self) -> Dict[Element, int]:
        return {x: self(x) for x in self.domain}


def characteristic(a: ComplementedSubset) -> Characteristic:
    return Characteristic(a)


@dataclass(frozen=True)
class ComplementedPoint:
    """The complemented subset ({x}, co) for a base element x."""

    x: Element
    co: ExtSubset

    def __post_init__(self):
        # validates disjointness of the class of x from the co-part
        self.as_subset

    @property
    def carrier(self) -> Carrier:
        return self.co.carrier

    @property
    def as_subset(self) -> ComplementedSubset:
        return ComplementedSubset(self.co.carrier.subset([self.x]), self.co)

    def __repr__(self) -> str:
        return f"({self.x},{self.co!r})"

    def to_json(self) -> Dict:
        return {"x": self.x, "co": self.co.to_json()}


def canonical_point(carrier: Carrier, x: Element) -> ComplementedPoint:
    return ComplementedPoint(x, neq_complement(carrier.subset([x])))


def canonical_points(carrier: Carrier) -> List[ComplementedPoint]:
    return [canonical_point(carrier, x) for x in carrier.elements]


def points_over(carrier: Carrier, x: Element) -> List[ComplementedPoint]:
    """Every complemented point with base element x."""
    return [
        ComplementedPoint(x, co)
        for co in carrier.subsets()
        if _is_point(carrier, x, co)
    ]


def all_points(carrier: Carrier) -> List[ComplementedPoint]:
    return [p for x in carrier.elements for p in points_over(carrier, x)]


@dataclass(frozen=True)
class Elementhood:
    inside: bool
    outside: bool


def point_in(p: ComplementedPoint, a: ComplementedSubset) -> bool:
    return p.x in a.one and a.zero <= p.co


def point_out(p: ComplementedPoint, a: ComplementedSubset) -> bool:
    return p.x in a.zero and a.one <= p.co


def elementhood(p: ComplementedPoint, a: ComplementedSubset) -> Elementhood:
    if p.carrier is not a.carrier:
        raise CarrierMismatch("Point and complemented subset live on different carriers")
    return Elementhood(inside=point_in(p, a), outside=point_out(p, a))


def points_of(a: ComplementedSubset) -> List[ComplementedPoint]:
    """Point(A): the points (x, P) with x in A1 and A0 within P."""
    return [
        ComplementedPoint(x, co)
        for x in sorted_ids(a.one.members)
        for co in a.carrier.subsets()
        if a.zero <= co and _is_point(a.carrier, x, co)
    ]


def _is_point(carrier: Carrier, x: Element, co: ExtSubset) -> bool:
    return all(carrier.apart(x2, y) for x2 in carrier.class_members(x) for y in co)


def is_potential_point(p: ComplementedPoint, family: Iterable[ComplementedSubset]) -> bool:
    return all(a.zero <= p.co for a in family)


def potential_points(
    family: Sequence[ComplementedSubset], carrier: Carrier
) -> List[ComplementedPoint]:
    return [p for p in all_points(carrier) if is_potential_point(p, family)]


def cs_inequality(a: ComplementedSubset, b: ComplementedSubset) -> bool:
    """Some point lies in one and positively outside the other.

    On a symmetric inequality canonical points suffice, and there the test is
    x in A1 n B0 or x in B1 n A0.
    """
    _same_carrier(a, b)
    carrier = a.carrier
    if carrier.is_symmetric:
        return bool((a.one & b.zero) | (b.one & a.zero))
    for p in all_points(carrier):
        if (point_in(p, a) and point_out(p, b)) or (point_in(p, b) and point_out(p, a)):
            return True
    return False


def cs_image(kind: str, f: FunctionTable, a: ComplementedSubset) -> ComplementedSubset:
    if kind == "inverse":
        require(f, "strongly_extensional")
        return ComplementedSubset(inverse_image(f, a.one), inverse_image(f, a.zero))
    if kind == "direct":
        require(f, "strong_injection")
        return ComplementedSubset(direct_image(f, a.one), direct_image(f, a.zero))
    raise ValueError(f"Unknown image kind {kind}")


def cs_preimage(f: FunctionTable, b: ComplementedSubset) -> ComplementedSubset:
    """Inverse image without re-classifying f; callers check strong extensionality."""
    return ComplementedSubset(inverse_image(f, b.one), inverse_image(f, b.zero))


def enumerate_complemented(
    carrier: Carrier, cap: Optional[int] = None
) -> List[ComplementedSubset]:
    """Every complemented subset, ordered by (one, zero) in subset order."""
    if cap is not None:
        check_cap(f"carrier {carrier.name}", len(carrier), cap)
    subsets = list(carrier.subsets())
    out = []
    for one in subsets:
        allowed = (
            neq_complement(one)
            if carrier.is_symmetric and carrier.is_extensional
            else None
        )
        for zero in subsets:
            if allowed is not None and not zero <= allowed:
                continue
            try:
                out.append(ComplementedSubset(one, zero))
            except DisjointnessError:
                continue
    logger.debug(f"Enumerated {len(out)} complemented subsets of {carrier.name}")
    return out


def _small_families(items: List, with_triples: bool = False) -> List[List]:
    families = [[a] for a in items]
    families += [[a, b] for a, b in itertools.combinations(items, 2)]
    if with_triples:
        families += [list(t) for t in itertools.combinations(items, 3)]
    return families


def algebra_laws(carrier: Carrier) -> List[CheckResult]:
    """Identities of the first algebra over every complemented subset."""
    As = enumerate_complemented(carrier)
    one_X, zero_X = one_of(carrier), zero_of(carrier)
    singles = [(a,) for a in As]
    pairs = [(a, b) for a in As for b in As]
    u, i, neg = cs_union, cs_intersection, cs_complement
    out = [
        check_all(
            "poles-bound-everything",
            singles,
            lambda a: cs_leq(zero_X, a) and cs_leq(a, one_X),
        ),
        verdict(
            "complement-swaps-poles",
            neg(zero_X) == one_X
            and all(neg(local_zero(a)) == local_one(a) for a in As),
        ),
        check_all(
            "union-with-complement-is-local-one",
            singles,
            lambda a: u(a, neg(a)) == local_one(a),
        ),
        check_all(
            "intersection-with-complement-is-local-zero",
            singles,
            lambda a: i(a, neg(a)) == local_zero(a),
        ),
        check_all(
            "zeros-are-union-neutral",
            singles,
            lambda a: u(zero_X, a) == a and u(local_zero(a), a) == a,
        ),
        check_all(
            "zeros-absorb-intersection",
            singles,
            lambda a: i(zero_X, a) == zero_X and i(local_zero(a), a) == local_zero(a),
        ),
        check_all(
            "ones-absorb-union",
            singles,
            lambda a: u(one_X, a) == one_X and u(local_one(a), a) == local_one(a),
        ),
        check_all(
            "ones-are-intersection-neutral",
            singles,
            lambda a: i(one_X, a) == a and i(local_one(a), a) == a,
        ),
        check_all(
            "local-zero-of-complement",
            singles,
            lambda a: local_zero(neg(a)) == local_zero(a),
        ),
        verdict(
            "local-poles-of-global-poles",
            local_zero(zero_X) == zero_X and local_one(one_X) == one_X,
        ),
        check_all(
            "local-zero-is-idempotent",
            singles,
            lambda a: local_zero(local_zero(a)) == local_zero(a)
            and local_zero(local_one(a)) == local_zero(a),
        ),
        check_all("complement-is-involutive", singles, lambda a: neg(neg(a)) == a),
        check_all(
            "complement-reverses-order",
            pairs,
            lambda a, b: cs_leq(a, b) == cs_leq(neg(b), neg(a)),
        ),
        check_all(
            "total-iff-local-one-is-one",
            singles,
            lambda a: a.is_total == (local_one(a) == one_X),
        ),
        check_all(
            "characteristic-is-well-defined",
            singles,
            lambda a: not (a.one & a.zero),
        ),
        check_all(
            "binary-family-matches-binary-operation",
            pairs,
            lambda a, b: cs_family("union", [a, b]) == u(a, b)
            and cs_family("intersection", [a, b]) == i(a, b),
        ),
        check_all(
            "intersection-is-greatest-lower-bound",
            [(a, b, c) for a in As[:9] for b in As for c in As],
            lambda a, b, c: not (cs_leq(a, b) and cs_leq(a, c)) or cs_leq(a, i(b, c)),
        ),
        check_all(
            "member-lies-within-family-union",
            [(fam,) for fam in _small_families(As, with_triples=len(As) <= 27)],
            lambda fam: all(cs_leq(b, cs_family("union", fam)) for b in fam),
        ),
    ]
    return out


def image_laws(f: FunctionTable) -> List[CheckResult]:
    """Complemented inverse and direct images of one function table."""
    X, Y = f.domain, f.codomain
    flags = classify_function(f)
    As = enumerate_complemented(X)
    Bs = enumerate_complemented(Y)
    out = []
    if flags.strongly_extensional:
        pre = lambda b: cs_preimage(f, b)
        pairs = [(a, b) for a in Bs for b in Bs]
        out += [
            check_all(
                "complemented-preimage-is-monotone",
                pairs,
                lambda a, b: not cs_leq(a, b) or cs_leq(pre(a), pre(b)),
            ),
            check_all(
                "complemented-preimage-keeps-totality",
                [(b,) for b in Bs if b.is_total],
                lambda b: pre(b).is_total,
            ),
            check_all(
                "complemented-preimage-of-union",
                pairs,
                lambda a, b: pre(cs_union(a, b)) == cs_union(pre(a), pre(b)),
            ),
            check_all(
                "complemented-preimage-of-intersection",
                pairs,
                lambda a, b: pre(cs_intersection(a, b))
                == cs_intersection(pre(a), pre(b)),
            ),
            check_all(
                "complemented-preimage-of-complement",
                [(b,) for b in Bs],
                lambda b: pre(cs_complement(b)) == cs_complement(pre(b)),
            ),
            check_all(
                "complemented-preimage-of-difference",
                pairs,
                lambda a, b: pre(cs_difference(a, b)) == cs_difference(pre(a), pre(b)),
            ),
            verdict(
                "complemented-preimage-of-poles",
                pre(one_of(Y)) == one_of(X) and pre(zero_of(Y)) == zero_of(X),
            ),
            check_all(
                "complemented-preimage-of-families",
                [(fam,) for fam in _small_families(Bs)],
                lambda fam: pre(cs_family("union", fam))
                == cs_family("union", [pre(b) for b in fam])
                and pre(cs_family("intersection", fam))
                == cs_family("intersection", [pre(b) for b in fam]),
            ),
        ]
    else:
        out.append(
            skipped("complemented-preimage", f"{f.name} is not strongly extensional")
        )
    if flags.strong_injection and Y.is_extensional:
        img = lambda a: ComplementedSubset(
            direct_image(f, a.one), direct_image(f, a.zero)
        )
        pairs = [(a, b) for a in As for b in As]
        out += [
            check_all(
                "complemented-image-of-union",
                pairs,
                lambda a, b: img(cs_union(a, b)) == cs_union(img(a), img(b)),
            ),
            check_all(
                "complemented-image-of-intersection",
                pairs,
                lambda a, b: img(cs_intersection(a, b))
                == cs_intersection(img(a), img(b)),
            ),
            check_all(
                "complemented-image-of-complement",
                [(a,) for a in As],
                lambda a: img(cs_complement(a)) == cs_complement(img(a)),
            ),
            verdict(
                "complemented-image-of-poles",
                img(one_of(X))
                == ComplementedSubset(direct_image(f, X.universe), empty_subset(Y))
                and img(zero_of(X))
                == ComplementedSubset(empty_subset(Y), direct_image(f, X.universe)),
            ),
        ]
        if flags.strongly_extensional:
            pre = lambda b: cs_preimage(f, b)
            out += [
                check_all(
                    "preimage-of-complemented-image",
                    [(a,) for a in As],
                    lambda a: pre(img(a)) == a,
                ),
                check_all(
                    "range-part-within-image-of-preimage",
                    [(b,) for b in Bs],
                    lambda b: cs_leq(cs_intersection(b, img(one_of(X))), img(pre(b))),
                ),
            ]
            if flags.surjection:
                out.append(
                    check_all(
                        "image-of-complemented-preimage",
                        [(b,) for b in Bs],
                        lambda b: img(pre(b)) == b,
                    )
                )
    else:
        out.append(
            skipped(
                "complemented-image",
                f"{f.name} is not a strong injection into an extensional carrier",
            )
        )
    return out


def product_laws(x: Carrier, y: Carrier) -> List[CheckResult]:
    As = enumerate_complemented(x)
    Bs = enumerate_complemented(y)
    triples = [(a, b, c) for a in As for b in Bs for c in Bs]
    return [
        verdict(
            "product-of-top-poles",
            cs_product(one_of(x), one_of(y)) == one_of(product_carrier(x, y)),
        ),
        verdict(
            "product-of-bottom-poles",
            cs_product(zero_of(x), zero_of(y)) == zero_of(product_carrier(x, y)),
        ),
        check_all(
            "complemented-product-over-union",
            triples,
            lambda a, b, c: cs_product(a, cs_union(b, c))
            == cs_union(cs_product(a, b), cs_product(a, c)),
        ),
        check_all(
            "complemented-product-over-intersection",
            triples,
            lambda a, b, c: cs_product(a, cs_intersection(b, c))
            == cs_intersection(cs_product(a, b), cs_product(a, c)),
        ),
        check_all(
            "complemented-product-over-difference-for-total-factor",
            [(a, b, c) for (a, b, c) in triples if a.is_total],
            lambda a, b, c: cs_product(a, cs_difference(b, c))
            == cs_difference(cs_product(a, b), cs_product(a, c)),
        ),
        check_all(
            "intersection-of-products",
            [(a1, b1, a2, b2) for a1 in As for a2 in As for b1 in Bs[:9] for b2 in Bs[:9]],
            lambda a1, b1, a2, b2: cs_intersection(
                cs_product(a1, b1), cs_product(a2, b2)
            )
            == cs_product(cs_intersection(a1, a2), cs_intersection(b1, b2)),
        ),
    ]


def point_laws(carrier: Carrier, full_points: bool = True) -> List[CheckResult]:
    """Elementhood of complemented points; the full point set when asked,
    canonical points always."""
    X = carrier
    As = enumerate_complemented(X)
    pairs = [(a, b) for a in As for b in As]
    out = []
    if full_points:
        pts = all_points(X)
        inhabited = [(a, b) for (a, b) in pairs if a.one]
        out += [
            check_all(
                "order-is-point-inclusion",
                inhabited,
                lambda a, b: cs_leq(a, b)
                == all(point_in(p, b) for p in pts if point_in(p, a)),
            ),
            check_all(
                "point-of-either-is-point-of-union",
                pairs,
                lambda a, b: all(
                    point_in(p, cs_union(a, b))
                    for p in pts
                    if point_in(p, a) or point_in(p, b)
                ),
            ),
            check_all(
                "potential-point-of-union-splits",
                pairs,
                lambda a, b: all(
                    point_in(p, a) or point_in(p, b)
                    for p in pts
                    if is_potential_point(p, [a, b]) and point_in(p, cs_union(a, b))
                ),
            ),
            check_all(
                "point-of-intersection-iff-both",
                pairs,
                lambda a, b: all(
                    point_in(p, cs_intersection(a, b))
                    == (point_in(p, a) and point_in(p, b))
                    for p in pts
                ),
            ),
            check_all(
                "outside-union-iff-outside-both",
                pairs,
                lambda a, b: all(
                    point_out(p, cs_union(a, b))
                    == (point_out(p, a) and point_out(p, b))
                    for p in pts
                ),
            ),
            check_all(
                "outside-either-is-outside-intersection",
                pairs,
                lambda a, b: all(
                    point_out(p, cs_intersection(a, b))
                    for p in pts
                    if point_out(p, a) or point_out(p, b)
                ),
            ),
            check_all(
                "potential-copoint-outside-intersection-splits",
                pairs,
                lambda a, b: all(
                    point_out(p, a) or point_out(p, b)
                    for p in pts
                    if is_potential_point(p, [cs_complement(a), cs_complement(b)])
                    and point_out(p, cs_intersection(a, b))
                ),
            ),
            check_all(
                "subset-is-union-of-its-points",
                [(a,) for a in As if a.one],
                lambda a: cs_family(
                    "union", [p.as_subset for p in points_of(a)]
                )
                == a,
            ),
            check_all(
                "points-over-x-closed-under-union-and-intersection",
                [(x,) for x in X.elements],
                lambda x: _points_over_closed(X, x),
            ),
            check_all(
                "empty-co-part-point",
                [(p, a) for p in pts for a in As if not p.co],
                lambda p, a: point_in(p, a) == (p.x in a.one and not a.zero),
            ),
            check_all(
                "points-sit-between-poles",
                [(p,) for p in pts],
                lambda p: point_in(p, one_of(X)) and point_out(p, zero_of(X)),
            ),
            check_all(
                "elementhood-is-monotone",
                pairs,
                lambda a, b: not cs_leq(a, b)
                or all(
                    (not point_in(p, a) or point_in(p, b))
                    and (not point_out(p, b) or point_out(p, a))
                    for p in pts
                ),
            ),
            check_all(
                "in-and-out-exclude",
                [(p, a) for p in pts for a in As],
                lambda p, a: not (point_in(p, a) and point_out(p, a)),
            ),
            check_all(
                "apart-points-have-apart-bases",
                [(p, q) for p in pts for q in pts],
                lambda p, q: not cs_inequality(p.as_subset, q.as_subset)
                or X.apart(p.x, q.x)
                or X.apart(q.x, p.x),
            ),
        ]
    if not X.is_symmetric:
        out.append(skipped("canonical-points", "needs a symmetric inequality"))
        return out
    cpts = canonical_points(X)
    out += [
        check_all(
            "canonical-elementhood-is-membership",
            [(p, a) for p in cpts for a in As],
            lambda p, a: point_in(p, a) == (p.x in a.one)
            and point_out(p, a) == (p.x in a.zero),
        ),
        check_all(
            "subset-within-union-of-canonical-points",
            [(a,) for a in As if a.one],
            lambda a: cs_leq(
                a,
                cs_family(
                    "union",
                    [canonical_point(X, x).as_subset for x in sorted_ids(a.one.members)],
                ),
            ),
        ),
        check_all(
            "canonical-point-of-union-splits",
            pairs,
            lambda a, b: all(
                point_in(p, cs_union(a, b)) == (point_in(p, a) or point_in(p, b))
                for p in cpts
            ),
        ),
        check_all(
            "canonical-copoint-of-intersection-splits",
            pairs,
            lambda a, b: all(
                point_out(p, cs_intersection(a, b))
                == (point_out(p, a) or point_out(p, b))
                for p in cpts
            ),
        ),
        check_all(
            "canonical-order-characterization",
            pairs,
            lambda a, b: cs_leq(a, b)
            == all(
                (not point_in(p, a) or point_in(p, b))
                and (not point_out(p, b) or point_out(p, a))
                for p in cpts
            ),
        ),
        check_all(
            "canonical-points-apart-iff-bases-apart",
            [(x, y) for x in X.elements for y in X.elements],
            lambda x, y: cs_inequality(
                canonical_point(X, x).as_subset, canonical_point(X, y).as_subset
            )
            == X.apart(x, y),
        ),
        check_all(
            "canonical-point-below-every-point-over-x",
            [(p,) for p in all_points(X)] if full_points else [],
            lambda p: cs_leq(canonical_point(X, p.x).as_subset, p.as_subset)
            and cs_leq(
                p.as_subset, ComplementedSubset(X.subset([p.x]), empty_subset(X))
            ),
        ),
    ]
    if X.elements:
        out.append(
            verdict("zero-apart-from-one", cs_inequality(zero_of(X), one_of(X)))
        )
    out.append(
        check_all(
            "complemented-inequality-is-irreflexive",
            [(a,) for a in As],
            lambda a: not cs_inequality(a, a),
        )
    )
    return out


def _points_over_closed(carrier: Carrier, x: Element) -> bool:
    over = {p.as_subset for p in points_over(carrier, x)}
    return all(
        cs_union(p, q) in over and cs_intersection(p, q) in over
        for p in over
        for q in over
    )


def canonical_preimage_laws(f: FunctionTable) -> List[CheckResult]:
    """x is in the inverse image of H exactly when f(x) is in H."""
    X, Y = f.domain, f.codomain
    if not classify_function(f).strongly_extensional:
        return [skipped("canonical-point-of-preimage", "needs a strongly extensional map")]
    if not (X.is_symmetric and Y.is_symmetric):
        return [skipped("canonical-point-of-preimage", "needs symmetric inequalities")]
    return [
        check_all(
            "canonical-point-of-preimage",
            [(x, h) for x in X.elements for h in enumerate_complemented(Y)],
            lambda x, h: point_in(canonical_point(X, x), cs_preimage(f, h))
            == point_in(canonical_point(Y, f(x)), h),
        )
    ]
