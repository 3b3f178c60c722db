"""Finite carriers with an equality partition and an inequality relation,
their extensional subsets, and function tables between them."""
from dataclasses import dataclass, field
from functools import lru_cache
import itertools
import logging
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

from cstop.reports import CheckResult, check_all, passed, skipped, verdict
from cstop.utils import (
    CapabilityError,
    CarrierError,
    CarrierMismatch,
    FunctionError,
    NotExtensional,
    powerset,
    set_partitions,
    sorted_ids,
)


logger = logging.getLogger(__name__)


Element = Hashable


@dataclass(frozen=True, eq=False)
class Carrier:
    """A finite set with equality given as a partition and a raw inequality.

    Instances compare by identity. Build them with ``validate_carrier`` so the
    flags below are always in step with the relation.
    """

    elements: Tuple[Element, ...]
    classes: Tuple[FrozenSet[Element], ...]
    neq: FrozenSet[Tuple[Element, Element]]
    name: str = "X"
    class_of: Dict[Element, int] = field(init=False, repr=False)
    is_inequality: bool = field(init=False)
    is_extensional: bool = field(init=False)
    is_tight: bool = field(init=False)
    is_symmetric: bool = field(init=False)
    is_cotransitive: bool = field(init=False)
    is_discrete: bool = field(init=False)

    def __post_init__(self):
        class_of = {}
        for idx, block in enumerate(self.classes):
            for x in block:
                class_of[x] = idx
        object.__setattr__(self, "class_of", class_of)
        els = self.elements
        object.__setattr__(
            self, "is_inequality", not any(self.eq(x, y) for (x, y) in self.neq)
        )
        object.__setattr__(
            self,
            "is_extensional",
            all(
                (x2, y2) in self.neq
                for (x, y) in self.neq
                for x2 in self.classes[class_of[x]]
                for y2 in self.classes[class_of[y]]
            ),
        )
        object.__setattr__(
            self,
            "is_tight",
            all(self.apart(x, y) or self.eq(x, y) for x in els for y in els),
        )
        object.__setattr__(
            self, "is_symmetric", all((y, x) in self.neq for (x, y) in self.neq)
        )
        object.__setattr__(
            self,
            "is_cotransitive",
            all(
                self.apart(x, z) or self.apart(z, y)
                for (x, y) in self.neq
                for z in els
            ),
        )
        object.__setattr__(
            self,
            "is_discrete",
            all(self.eq(x, y) or self.apart(x, y) for x in els for y in els),
        )

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: Element) -> bool:
        return x in self.class_of

    def __repr__(self) -> str:
        return f"Carrier({self.name}, {list(self.elements)})"

    def eq(self, x: Element, y: Element) -> bool:
        return self.class_of[x] == self.class_of[y]

    def apart(self, x: Element, y: Element) -> bool:
        return (x, y) in self.neq

    @property
    def is_apartness(self) -> bool:
        return self.is_symmetric and self.is_cotransitive

    def class_members(self, x: Element) -> FrozenSet[Element]:
        return self.classes[self.class_of[x]]

    def subset(self, members: Iterable[Element]) -> "ExtSubset":
        """The extensional subset generated by ``members`` (saturated)."""
        out = set()
        for x in members:
            if x not in self.class_of:
                raise CarrierError(f"{x!r} is not an element of {self.name}", x)
            out |= self.class_members(x)
        return ExtSubset(self, frozenset(out))

    @property
    def universe(self) -> "ExtSubset":
        return ExtSubset(self, frozenset(self.elements))

    @property
    def nothing(self) -> "ExtSubset":
        return ExtSubset(self, frozenset())

    def subsets(self) -> Iterator["ExtSubset"]:
        """Every extensional subset, ordered by the classes it picks."""
        for picked in powerset(self.classes):
            yield ExtSubset(self, frozenset().union(*picked))

    def restrict(self, members: "ExtSubset") -> "Carrier":
        return _restricted_carrier(self, members.members)

    def to_json(self) -> Dict:
        return {
            "elements": list(self.elements),
            "equality": [sorted_ids(block) for block in self.classes],
            "inequality": [list(pair) for pair in sorted_ids(self.neq)],
        }


@lru_cache(maxsize=None)
def _restricted_carrier(carrier: Carrier, members: FrozenSet[Element]) -> Carrier:
    elements = tuple(x for x in carrier.elements if x in members)
    classes = tuple(block for block in carrier.classes if block <= members)
    neq = frozenset((x, y) for (x, y) in carrier.neq if x in members and y in members)
    return Carrier(elements, classes, neq, name=f"{carrier.name}|A")


def validate_carrier(
    elements: Sequence[Element],
    equality: Optional[Iterable[Iterable[Element]]] = None,
    inequality: Optional[Iterable[Tuple[Element, Element]]] = None,
    name: str = "X",
) -> Carrier:
    """Check the equality partition and the first inequality axiom, then build.

    ``equality`` defaults to the identity partition and ``inequality`` to the
    complement of the equality.
    """
    elements = tuple(elements)
    if len(set(elements)) != len(elements):
        raise CarrierError(f"Duplicate elements in carrier {name}", elements)
    known = set(elements)
    if equality is None:
        classes = tuple(frozenset([x]) for x in elements)
    else:
        classes = tuple(frozenset(block) for block in equality)
        seen = set()
        for block in classes:
            if not block:
                raise CarrierError(f"Empty equality class in {name}")
            if block & seen:
                raise CarrierError(
                    f"Equality of {name} is not an equivalence relation",
                    sorted_ids(block & seen),
                )
            unknown = block - known
            if unknown:
                raise CarrierError(f"Unknown elements in {name}", sorted_ids(unknown))
            seen |= block
        if seen != known:
            raise CarrierError(
                f"Equality of {name} is not an equivalence relation",
                sorted_ids(known - seen),
            )
    class_of = {x: idx for idx, block in enumerate(classes) for x in block}
    if inequality is None:
        neq = frozenset(
            (x, y) for x in elements for y in elements if class_of[x] != class_of[y]
        )
    else:
        pairs = []
        for pair in inequality:
            x, y = tuple(pair)
            if x not in known or y not in known:
                raise CarrierError(f"Unknown elements in inequality of {name}", (x, y))
            pairs.append((x, y))
        neq = frozenset(pairs)
    for x, y in sorted_ids(neq):
        if class_of[x] == class_of[y]:
            raise CarrierError(
                f"{x!r} and {y!r} are both equal and apart in {name}", (x, y)
            )
    carrier = Carrier(elements, classes, neq, name=name)
    logger.debug(
        f"Validated carrier {name}: extensional={carrier.is_extensional} "
        f"tight={carrier.is_tight} symmetric={carrier.is_symmetric} "
        f"cotransitive={carrier.is_cotransitive} discrete={carrier.is_discrete}"
    )
    return carrier


def discrete_carrier(size: int, name: str = "X") -> Carrier:
    return validate_carrier([str(i) for i in range(size)], name=name)


def apartness_carrier(
    elements: Sequence[Element],
    equality: Iterable[Iterable[Element]],
    coarser: Iterable[Iterable[Element]],
    name: str = "X",
) -> Carrier:
    """Apartness whose classes of non-apart elements form ``coarser``."""
    block_of = {}
    for idx, block in enumerate(coarser):
        for x in block:
            block_of[x] = idx
    neq = [(x, y) for x in elements for y in elements if block_of[x] != block_of[y]]
    return validate_carrier(elements, equality, neq, name=name)


def apartness_carriers(max_size: int) -> Iterator[Carrier]:
    """Every apartness on carriers of size 1..max_size, up to element names."""
    for size in range(1, max_size + 1):
        elements = [str(i) for i in range(size)]
        for equality in set_partitions(elements):
            for coarser in set_partitions(elements):
                if all(
                    any(set(block) <= set(c) for c in coarser) for block in equality
                ):
                    yield apartness_carrier(elements, equality, coarser)


def extensional_carriers(max_size: int) -> Iterator[Carrier]:
    """Every extensional inequality on carriers of size 1..max_size."""
    for size in range(1, max_size + 1):
        elements = [str(i) for i in range(size)]
        for equality in set_partitions(elements):
            nclasses = len(equality)
            class_pairs = [
                (i, j) for i in range(nclasses) for j in range(nclasses) if i != j
            ]
            for chosen in powerset(class_pairs):
                neq = [
                    (x, y)
                    for (i, j) in chosen
                    for x in equality[i]
                    for y in equality[j]
                ]
                yield validate_carrier(elements, equality, neq)


@lru_cache(maxsize=None)
def product_carrier(left: Carrier, right: Carrier) -> Carrier:
    """(x, y) and (x', y') are apart iff x, x' or y, y' are apart."""
    elements = tuple(itertools.product(left.elements, right.elements))
    classes = tuple(
        frozenset(itertools.product(a, b))
        for a in left.classes
        for b in right.classes
    )
    neq = frozenset(
        ((x, y), (x2, y2))
        for (x, y) in elements
        for (x2, y2) in elements
        if left.apart(x, x2) or right.apart(y, y2)
    )
    return Carrier(elements, classes, neq, name=f"{left.name}x{right.name}")


@dataclass(frozen=True)
class ExtSubset:
    carrier: Carrier
    members: FrozenSet[Element]

    def __contains__(self, x: Element) -> bool:
        return x in self.members

    def __iter__(self) -> Iterator[Element]:
        return iter(sorted_ids(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __bool__(self) -> bool:
        return bool(self.members)

    def _same(self, other: "ExtSubset") -> None:
        if self.carrier is not other.carrier:
            raise CarrierMismatch(
                f"Subsets live on {self.carrier.name} and {other.carrier.name}"
            )

    def __le__(self, other: "ExtSubset") -> bool:
        self._same(other)
        return self.members <= other.members

    def __or__(self, other: "ExtSubset") -> "ExtSubset":
        self._same(other)
        return ExtSubset(self.carrier, self.members | other.members)

    def __and__(self, other: "ExtSubset") -> "ExtSubset":
        self._same(other)
        return ExtSubset(self.carrier, self.members & other.members)

    def __repr__(self) -> str:
        return "{" + ",".join(str(x) for x in self) + "}"

    def to_json(self) -> List:
        return list(self)


def empty_subset(carrier: Carrier) -> ExtSubset:
    """The elements apart from themselves; empty on every validated carrier."""
    return ExtSubset(
        carrier, frozenset(x for x in carrier.elements if carrier.apart(x, x))
    )


def union(a: ExtSubset, b: ExtSubset) -> ExtSubset:
    return a | b


def intersection(a: ExtSubset, b: ExtSubset) -> ExtSubset:
    return a & b


def family_union(family: Iterable[ExtSubset], carrier: Carrier) -> ExtSubset:
    out = carrier.nothing
    for a in family:
        out = out | a
    return out


def family_intersection(family: Iterable[ExtSubset], carrier: Carrier) -> ExtSubset:
    out = carrier.universe
    for a in family:
        out = out & a
    return out


def neq_complement(a: ExtSubset) -> ExtSubset:
    carrier = a.carrier
    members = frozenset(
        x for x in carrier.elements if all(carrier.apart(x, y) for y in a.members)
    )
    for x in members:
        if not carrier.class_members(x) <= members:
            raise NotExtensional(
                f"The inequality of {carrier.name} is not extensional", x
            )
    return ExtSubset(carrier, members)


def weak_complement(a: ExtSubset) -> ExtSubset:
    # classical reading of "not equal to any member"; a is saturated
    return ExtSubset(a.carrier, frozenset(a.carrier.elements) - a.members)


def product(a: ExtSubset, c: ExtSubset) -> ExtSubset:
    carrier = product_carrier(a.carrier, c.carrier)
    return ExtSubset(carrier, frozenset(itertools.product(a.members, c.members)))


def difference(a: ExtSubset, b: ExtSubset) -> ExtSubset:
    return a & neq_complement(b)


@dataclass(frozen=True, eq=False)
class FunctionTable:
    domain: Carrier
    codomain: Carrier
    table: Mapping[Element, Element]
    name: str = "f"

    def __call__(self, x: Element) -> Element:
        return self.table[x]

    def __repr__(self) -> str:
        return f"{self.name}: {self.domain.name} -> {self.codomain.name}"

    def to_json(self) -> Dict:
        return {
            "domain": self.domain.name,
            "codomain": self.codomain.name,
            "table": {str(x): self.table[x] for x in self.domain.elements},
        }


def make_function(
    domain: Carrier, codomain: Carrier, table: Mapping, name: str = "f"
) -> FunctionTable:
    for x in domain.elements:
        if x not in table:
            raise FunctionError(f"{name} is undefined at {x!r}", x)
        if table[x] not in codomain:
            raise FunctionError(
                f"{name}({x!r}) = {table[x]!r} is not in {codomain.name}", x
            )
    for x in domain.elements:
        for x2 in domain.class_members(x):
            if not codomain.eq(table[x], table[x2]):
                raise FunctionError(
                    f"{name} does not respect the equality of {domain.name}", (x, x2)
                )
    return FunctionTable(domain, codomain, dict(table), name=name)


def identity(carrier: Carrier) -> FunctionTable:
    return FunctionTable(carrier, carrier, {x: x for x in carrier.elements}, "id")


def compose(g: FunctionTable, f: FunctionTable) -> FunctionTable:
    """g after f."""
    if f.codomain is not g.domain:
        raise CarrierMismatch(f"Cannot compose {g.name} after {f.name}")
    table = {x: g(f(x)) for x in f.domain.elements}
    return FunctionTable(f.domain, g.codomain, table, name=f"{g.name}.{f.name}")


def all_functions(domain: Carrier, codomain: Carrier) -> Iterator[FunctionTable]:
    """Every function table, choosing one value per equality class."""
    reps = [sorted_ids(block)[0] for block in domain.classes]
    targets = list(codomain.elements)
    for values in itertools.product(targets, repeat=len(reps)):
        table = {}
        for rep, value in zip(reps, values):
            for x in domain.class_members(rep):
                table[x] = value
        yield FunctionTable(domain, codomain, table)


def direct_image(f: FunctionTable, a: ExtSubset) -> ExtSubset:
    if a.carrier is not f.domain:
        raise CarrierMismatch(f"{f.name} is not defined on {a.carrier.name}")
    return f.codomain.subset(f(x) for x in a.members)


def inverse_image(f: FunctionTable, c: ExtSubset) -> ExtSubset:
    if c.carrier is not f.codomain:
        raise CarrierMismatch(f"{f.name} does not land in {c.carrier.name}")
    return ExtSubset(f.domain, frozenset(x for x in f.domain.elements if f(x) in c))


SUBSET_OPS: Dict[str, Callable[..., ExtSubset]] = {
    "union": union,
    "intersection": intersection,
    "neq_complement": neq_complement,
    "weak_complement": weak_complement,
    "direct_image": direct_image,
    "inverse_image": inverse_image,
    "product": product,
}


def subset_op(kind: str, *args) -> ExtSubset:
    try:
        op = SUBSET_OPS[kind]
    except KeyError:
        raise ValueError(f"Unknown subset operation {kind}")
    return op(*args)


@dataclass(frozen=True)
class FunctionFlags:
    strongly_extensional: bool
    injection: bool
    strong_injection: bool
    embedding: bool
    surjection: bool


def classify_function(f: FunctionTable) -> FunctionFlags:
    X, Y = f.domain, f.codomain
    pairs = [(x, x2) for x in X.elements for x2 in X.elements]
    strongly_extensional = all(
        X.apart(x, x2) for (x, x2) in pairs if Y.apart(f(x), f(x2))
    )
    injection = all(Y.apart(f(x), f(x2)) for (x, x2) in pairs if X.apart(x, x2))
    embedding = all(X.eq(x, x2) for (x, x2) in pairs if Y.eq(f(x), f(x2)))
    surjection = all(any(Y.eq(f(x), y) for x in X.elements) for y in Y.elements)
    return FunctionFlags(
        strongly_extensional=strongly_extensional,
        injection=injection,
        strong_injection=injection and embedding,
        embedding=embedding,
        surjection=surjection,
    )


def require(f: FunctionTable, flag: str) -> FunctionFlags:
    flags = classify_function(f)
    if not getattr(flags, flag):
        raise CapabilityError(f"{f.name} is not {flag.replace('_', ' ')}")
    return flags


INVERSE_RELATIONS = ("left_inverse", "right_inverse", "inverse", "ineq_adjoint")


def _is_left_inverse(f: FunctionTable, g: FunctionTable) -> bool:
    # f after g is the identity of Y
    return all(f.codomain.eq(f(g(y)), y) for y in f.codomain.elements)


def _is_right_inverse(f: FunctionTable, g: FunctionTable) -> bool:
    return all(f.domain.eq(g(f(x)), x) for x in f.domain.elements)


def _is_ineq_adjoint(f: FunctionTable, g: FunctionTable) -> bool:
    X, Y = f.domain, f.codomain
    return all(
        X.apart(g(y), x) == Y.apart(y, f(x)) for x in X.elements for y in Y.elements
    )


def relation_holds(relation: str, f: FunctionTable, g: FunctionTable) -> bool:
    if g.domain is not f.codomain or g.codomain is not f.domain:
        raise CarrierMismatch(f"{g.name} does not go back along {f.name}")
    if relation == "left_inverse":
        return _is_left_inverse(f, g)
    if relation == "right_inverse":
        return _is_right_inverse(f, g)
    if relation == "inverse":
        return _is_left_inverse(f, g) and _is_right_inverse(f, g)
    if relation == "ineq_adjoint":
        return _is_ineq_adjoint(f, g)
    raise ValueError(f"Unknown relation {relation}")


def find_partners(relation: str, f: FunctionTable) -> List[FunctionTable]:
    """All g: Y -> X standing in ``relation`` to f."""
    return [
        g
        for g in all_functions(f.codomain, f.domain)
        if relation_holds(relation, f, g)
    ]


@dataclass
class AdjointReport:
    relation: str
    holds: bool
    conclusions: List[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.conclusions)


def _implies(check_id: str, premise: bool, conclusion: bool) -> CheckResult:
    if not premise:
        return passed(check_id, cases=0, detail="premise does not hold")
    return verdict(check_id, conclusion)


def check_inverse_adjoint(
    relation: str, f: FunctionTable, g: FunctionTable
) -> AdjointReport:
    holds = relation_holds(relation, f, g)
    if not holds:
        return AdjointReport(relation, False, [])
    X, Y = f.domain, f.codomain
    ff, gf = classify_function(f), classify_function(g)
    if relation == "ineq_adjoint":
        if not all(c.is_tight and c.is_symmetric for c in (X, Y)):
            return AdjointReport(
                relation,
                True,
                [skipped("adjoint-transfer", "needs tight symmetric carriers")],
            )
        conclusions = [
            _implies(
                "surjective-injection-transfers-to-adjoint",
                ff.surjection and ff.injection,
                gf.injection,
            ),
            _implies(
                "adjoint-surjective-injection-transfers-back",
                gf.surjection and gf.injection,
                ff.injection,
            ),
            _implies(
                "surjective-strong-extensionality-transfers-to-adjoint",
                ff.strongly_extensional and ff.surjection,
                gf.strongly_extensional,
            ),
            _implies(
                "adjoint-strong-extensionality-transfers-back",
                gf.strongly_extensional and gf.surjection,
                ff.strongly_extensional,
            ),
        ]
        return AdjointReport(relation, True, conclusions)
    if not (X.is_extensional and Y.is_extensional and ff.strongly_extensional):
        return AdjointReport(
            relation,
            True,
            [
                skipped(
                    "inverse-consequences",
                    "needs extensional carriers and a strongly extensional map",
                )
            ],
        )
    conclusions = []
    if relation in ("left_inverse", "inverse"):
        conclusions += [
            verdict("left-inverse:map-is-surjective", ff.surjection),
            verdict("left-inverse:inverse-is-strong-injection", gf.strong_injection),
            _implies(
                "left-inverse:injective-map-gives-strongly-extensional-inverse",
                ff.injection,
                gf.strongly_extensional,
            ),
            _implies(
                "left-inverse:surjective-strongly-extensional-inverse-gives-injection",
                gf.strongly_extensional and gf.surjection,
                ff.injection,
            ),
        ]
    if relation in ("right_inverse", "inverse"):
        conclusions += [
            verdict("right-inverse:inverse-is-surjective", gf.surjection),
            _implies(
                "right-inverse:surjective-map-gives-embedding",
                ff.surjection,
                gf.embedding,
            ),
            _implies(
                "right-inverse:strongly-extensional-inverse-gives-injection",
                gf.strongly_extensional,
                ff.injection,
            ),
            _implies(
                "right-inverse:bijective-map-gives-strongly-extensional-inverse",
                ff.surjection and ff.injection,
                gf.strongly_extensional,
            ),
        ]
    if relation == "inverse":
        conclusions.append(
            verdict(
                "inverse:injection-iff-strongly-extensional-inverse",
                ff.injection == gf.strongly_extensional,
            )
        )
    return AdjointReport(relation, True, conclusions)


@dataclass(frozen=True)
class TightnessFlags:
    one_tight: bool
    zero_tight: bool
    neq_stable: bool
    neg_stable: bool
    left_cotight: bool
    right_cotight: bool


def classify_tightness(a: ExtSubset) -> TightnessFlags:
    neq = neq_complement(a)
    weak = weak_complement(a)
    return TightnessFlags(
        one_tight=weak <= neq,
        zero_tight=weak_complement(neq) <= a,
        neq_stable=neq_complement(neq) <= a,
        neg_stable=weak_complement(weak) <= a,
        left_cotight=a <= neq_complement(weak),
        right_cotight=neq_complement(weak) <= a,
    )


def _families(carrier: Carrier) -> List[List[ExtSubset]]:
    subsets = list(carrier.subsets())
    families = [[a] for a in subsets]
    families += [[a, b] for a, b in itertools.combinations(subsets, 2)]
    families.append(subsets)
    return families


def image_laws(f: FunctionTable) -> List[CheckResult]:
    """Direct and inverse image identities for one function table."""
    X, Y = f.domain, f.codomain
    flags = classify_function(f)
    As = list(X.subsets())
    Cs = list(Y.subsets())
    pre = lambda c: inverse_image(f, c)
    img = lambda a: direct_image(f, a)
    out = []
    if flags.strongly_extensional:
        out.append(
            verdict(
                "inverse-image-keeps-empty", pre(empty_subset(Y)) == empty_subset(X)
            )
        )
    if flags.injection:
        out.append(
            verdict("image-keeps-empty", img(empty_subset(X)) == empty_subset(Y))
        )
    pairs_c = [(c, d) for c in Cs for d in Cs]
    pairs_a = [(a, b) for a in As for b in As]
    out += [
        check_all(
            "inverse-image-of-union",
            pairs_c,
            lambda c, d: pre(c | d) == pre(c) | pre(d),
        ),
        check_all(
            "inverse-image-of-intersection",
            pairs_c,
            lambda c, d: pre(c & d) == pre(c) & pre(d),
        ),
        check_all(
            "inverse-image-of-families",
            [(fam,) for fam in _families(Y)],
            lambda fam: pre(family_union(fam, Y))
            == family_union([pre(c) for c in fam], X)
            and pre(family_intersection(fam, Y))
            == family_intersection([pre(c) for c in fam], X),
        ),
        check_all(
            "image-of-union", pairs_a, lambda a, b: img(a | b) == img(a) | img(b)
        ),
        check_all(
            "image-of-intersection-is-smaller",
            pairs_a,
            lambda a, b: img(a & b) <= img(a) & img(b),
        ),
        check_all(
            "image-of-families",
            [(fam,) for fam in _families(X)],
            lambda fam: img(family_union(fam, X))
            == family_union([img(a) for a in fam], Y)
            and img(family_intersection(fam, X))
            <= family_intersection([img(a) for a in fam], Y),
        ),
        check_all(
            "subset-within-preimage-of-image", [(a,) for a in As], lambda a: a <= pre(img(a))
        ),
        check_all(
            "image-of-preimage-within-subset",
            [(c,) for c in Cs],
            lambda c: img(pre(c)) <= c,
        ),
        check_all(
            "image-of-preimage-meets",
            [(c, a) for c in Cs for a in As],
            lambda c, a: img(pre(c) & a) == c & img(a),
        ),
        check_all(
            "image-of-full-preimage",
            [(c,) for c in Cs],
            lambda c: img(pre(c)) == c & img(X.universe),
        ),
        verdict(
            "preimage-image-round-trip-iff-embedding",
            all(a == pre(img(a)) for a in As) == flags.embedding,
        ),
        verdict(
            "image-preimage-round-trip-iff-surjection",
            all(c == img(pre(c)) for c in Cs) == flags.surjection,
        ),
        verdict(
            "image-of-intersection-iff-embedding",
            all(img(a & b) == img(a) & img(b) for (a, b) in pairs_a)
            == flags.embedding,
        ),
    ]
    if flags.embedding:
        out.append(
            check_all(
                "embedding-image-of-family-intersection",
                [(fam,) for fam in _families(X)],
                lambda fam: img(family_intersection(fam, X))
                == family_intersection([img(a) for a in fam], Y),
            )
        )
    return out


def composition_laws(f: FunctionTable, g: FunctionTable) -> List[CheckResult]:
    gf = compose(g, f)
    return [
        check_all(
            "inverse-image-of-composite",
            [(h,) for h in g.codomain.subsets()],
            lambda h: inverse_image(gf, h) == inverse_image(f, inverse_image(g, h)),
        ),
        check_all(
            "image-of-composite",
            [(a,) for a in f.domain.subsets()],
            lambda a: direct_image(gf, a) == direct_image(g, direct_image(f, a)),
        ),
    ]


def product_laws(x: Carrier, y: Carrier) -> List[CheckResult]:
    As = list(x.subsets())
    Cs = list(y.subsets())
    triples = [(a, c, d) for a in As for c in Cs for d in Cs]
    return [
        check_all(
            "product-over-union",
            triples,
            lambda a, c, d: product(a, c | d) == product(a, c) | product(a, d),
        ),
        check_all(
            "product-over-intersection",
            triples,
            lambda a, c, d: product(a, c & d) == product(a, c) & product(a, d),
        ),
        check_all(
            "product-over-difference",
            triples,
            lambda a, c, d: product(a, difference(c, d))
            == difference(product(a, c), product(a, d)),
        ),
    ]


def neq_complement_laws(carrier: Carrier) -> List[CheckResult]:
    """Identities of the inequality complement on one carrier."""
    X = carrier
    As = list(X.subsets())
    nc = neq_complement
    out = [
        verdict("complement-of-everything-is-empty", nc(X.universe) == empty_subset(X)),
        verdict("complement-of-empty-is-everything", nc(empty_subset(X)) == X.universe),
        check_all(
            "complement-of-family-union",
            [(fam,) for fam in _families(X)],
            lambda fam: nc(family_union(fam, X))
            == family_intersection([nc(a) for a in fam], X),
        ),
        check_all(
            "complement-of-family-intersection",
            [(fam,) for fam in _families(X)],
            lambda fam: family_union([nc(a) for a in fam], X)
            <= nc(family_intersection(fam, X)),
        ),
    ]
    if X.is_symmetric:
        out += [
            check_all(
                "complement-galois",
                [(a, b) for a in As for b in As],
                lambda a, b: (a <= nc(b)) == (b <= nc(a)),
            ),
            check_all(
                "double-complement-grows", [(a,) for a in As], lambda a: a <= nc(nc(a))
            ),
            check_all(
                "triple-complement-collapses",
                [(a,) for a in As],
                lambda a: nc(a) == nc(nc(nc(a))),
            ),
        ]
    else:
        out.append(skipped("complement-galois", "needs a symmetric inequality"))
    return out


def neq_image_laws(f: FunctionTable) -> List[CheckResult]:
    flags = classify_function(f)
    X, Y = f.domain, f.codomain
    As = [(a,) for a in X.subsets()]
    Cs = [(c,) for c in Y.subsets()]
    nc = neq_complement
    out = []
    if flags.strongly_extensional:
        out.append(
            check_all(
                "preimage-of-complement",
                Cs,
                lambda c: inverse_image(f, nc(c)) <= nc(inverse_image(f, c)),
            )
        )
    if flags.injection and flags.surjection:
        out.append(
            check_all(
                "complement-of-preimage",
                Cs,
                lambda c: nc(inverse_image(f, c)) <= inverse_image(f, nc(c)),
            )
        )
    if flags.injection:
        out.append(
            check_all(
                "image-of-complement",
                As,
                lambda a: direct_image(f, nc(a)) <= nc(direct_image(f, a)),
            )
        )
    if flags.strongly_extensional and flags.surjection:
        out.append(
            check_all(
                "complement-of-image",
                As,
                lambda a: nc(direct_image(f, a)) <= direct_image(f, nc(a)),
            )
        )
    return out


def tightness_laws(carrier: Carrier) -> List[CheckResult]:
    X = carrier
    As = list(X.subsets())
    flags = {a: classify_tightness(a) for a in As}
    cases = [(a,) for a in As]
    out = [
        verdict("empty-is-one-tight", flags[empty_subset(X)].one_tight),
        check_all(
            "union-of-one-tight-is-one-tight",
            [(a, b) for a in As for b in As if flags[a].one_tight and flags[b].one_tight],
            lambda a, b: classify_tightness(a | b).one_tight,
        ),
        check_all(
            "zero-tight-is-negation-stable",
            cases,
            lambda a: not flags[a].zero_tight or flags[a].neg_stable,
        ),
        check_all(
            "one-tight-and-stable-is-zero-tight",
            cases,
            lambda a: not (flags[a].one_tight and flags[a].neg_stable)
            or flags[a].zero_tight,
        ),
        check_all(
            "cotight-and-one-tight-is-neq-stable",
            cases,
            lambda a: not (flags[a].right_cotight and flags[a].one_tight)
            or flags[a].neq_stable,
        ),
    ]
    if X.is_discrete:
        out.append(verdict("discrete-universe-is-one-tight", flags[X.universe].one_tight))
    if X.is_apartness:
        out.append(
            check_all(
                "neq-stable-is-left-cotight",
                cases,
                lambda a: not flags[a].neq_stable or flags[a].left_cotight,
            )
        )
    else:
        out.append(skipped("neq-stable-is-left-cotight", "needs an apartness"))
    if X.is_symmetric:
        out.append(
            check_all(
                "one-tight-is-left-cotight",
                cases,
                lambda a: not flags[a].one_tight or flags[a].left_cotight,
            )
        )
    else:
        out.append(skipped("one-tight-is-left-cotight", "needs a symmetric inequality"))
    return out


def carrier_laws(carrier: Carrier) -> List[CheckResult]:
    out = [
        verdict(
            "empty-subset-is-extensional",
            all(
                carrier.class_members(x) <= empty_subset(carrier).members
                for x in empty_subset(carrier).members
            ),
        )
    ]
    if carrier.is_apartness:
        out.append(verdict("apartness-is-extensional", carrier.is_extensional))
    return out
