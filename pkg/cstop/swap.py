"""Finite swap-algebra models given by operation tables, and the axiom scans
run against them."""
from dataclasses import dataclass, field
import itertools
import logging
from typing import Any, Callable, FrozenSet, List, Sequence, Tuple

from cstop.complemented import (
    ComplementedSubset,
    cs_complement,
    cs_family,
    cs_inequality,
    cs_intersection,
    cs_union,
    enumerate_complemented,
    local_one,
    local_zero,
    one_of,
    zero_of,
)
from cstop.reports import (
    CheckResult,
    check_all,
    expect_failure,
    passed,
    skipped,
    verdict,
)
from cstop.setineq import Carrier
from cstop.utils import (
    DEFAULT_CONFIG,
    EmptyFamily,
    ValidationError,
    check_cap,
    powerset,
)


logger = logging.getLogger(__name__)


@dataclass
class SwapAlgebraModel:
    """Operations are tables over element indices; ``classes[i]`` names the
    equality class of element i."""

    elements: List[Any]
    join: List[List[int]]
    meet: List[List[int]]
    neg: List[int]
    local_zero: List[int]
    local_one: List[int]
    zero: int
    one: int
    neq: FrozenSet[Tuple[int, int]]
    classes: List[int] = field(default_factory=list)
    name: str = "A"

    def __post_init__(self):
        n = len(self.elements)
        if not self.classes:
            self.classes = list(range(n))
        if len(self.classes) != n:
            raise ValidationError(f"Model {self.name} has a short equality table")
        for table in (self.join, self.meet):
            if len(table) != n or any(len(row) != n for row in table):
                raise ValidationError(f"Model {self.name} has a non-square table")
            for i, row in enumerate(table):
                for j, k in enumerate(row):
                    if not 0 <= k < n:
                        raise ValidationError(
                            f"Model {self.name} is not closed", (i, j, k)
                        )
        for table in (self.neg, self.local_zero, self.local_one):
            if len(table) != n or any(not 0 <= k < n for k in table):
                raise ValidationError(f"Model {self.name} is not closed")
        if not (0 <= self.zero < n and 0 <= self.one < n):
            raise ValidationError(f"Constants of {self.name} are not elements")
        for i, j in self.neq:
            if self.eq(i, j):
                raise ValidationError(
                    f"Elements of {self.name} are both equal and apart",
                    (self.elements[i], self.elements[j]),
                )

    def __len__(self) -> int:
        return len(self.elements)

    def eq(self, i: int, j: int) -> bool:
        return self.classes[i] == self.classes[j]

    def apart(self, i: int, j: int) -> bool:
        return (i, j) in self.neq

    def label(self, *indices: int) -> Tuple:
        return tuple(self.elements[i] for i in indices)


def _scan(
    check_id: str,
    model: SwapAlgebraModel,
    arity: int,
    predicate: Callable[..., bool],
) -> CheckResult:
    cases = itertools.product(range(len(model)), repeat=arity)
    return _labelled(model, check_all(check_id, cases, predicate))


def _refute(
    check_id: str,
    model: SwapAlgebraModel,
    arity: int,
    predicate: Callable[..., bool],
    finding: str,
) -> CheckResult:
    cases = itertools.product(range(len(model)), repeat=arity)
    return _labelled(model, expect_failure(check_id, cases, predicate, finding))


def _labelled(model: SwapAlgebraModel, result: CheckResult) -> CheckResult:
    # witnesses come back as table indices
    if result.witness is not None:
        result.witness = model.label(*result.witness)
    return result


def check_swap_axioms(
    m: SwapAlgebraModel, expect_type_ii: bool = True
) -> List[CheckResult]:
    """Every swap-algebra axiom plus both type conditions.

    With ``expect_type_ii`` off, the type II condition passes when a
    counterexample is found and reports it.
    """
    j, mt, ng, z, o, eq = m.join, m.meet, m.neg, m.local_zero, m.local_one, m.eq
    out = [
        _scan("join-idempotent", m, 1, lambda a: eq(j[a][a], a)),
        _scan("join-commutative", m, 2, lambda a, b: eq(j[a][b], j[b][a])),
        _scan(
            "join-associative",
            m,
            3,
            lambda a, b, c: eq(j[a][j[b][c]], j[j[a][b]][c]),
        ),
        _scan(
            "join-distributes-over-meet",
            m,
            3,
            lambda a, b, c: eq(j[a][mt[b][c]], mt[j[a][b]][j[a][c]]),
        ),
        verdict("zero-apart-from-one", m.apart(m.zero, m.one), m.label(m.zero, m.one)),
        verdict(
            "negated-zero-is-one", eq(ng[m.zero], m.one), m.label(m.zero, m.one)
        ),
        _scan("double-negation", m, 1, lambda a: eq(ng[ng[a]], a)),
        _scan("de-morgan", m, 2, lambda a, b: eq(ng[j[a][b]], mt[ng[a]][ng[b]])),
        _scan(
            "local-complements",
            m,
            1,
            lambda a: eq(j[a][ng[a]], o[a]) and eq(mt[a][ng[a]], z[a]),
        ),
        _scan("local-zero-absorbs", m, 1, lambda a: eq(a, j[z[a]][a])),
        _scan("absorption", m, 2, lambda a, b: eq(mt[j[a][b]][a], a)),
    ]
    type_ii = lambda a, b: eq(j[z[a]][b], mt[o[a]][b])
    if expect_type_ii:
        out.append(_scan("local-poles-agree", m, 2, type_ii))
    else:
        out.append(
            _refute(
                "local-poles-agree",
                m,
                2,
                type_ii,
                "the first algebra of complemented subsets is not of type II",
            )
        )
    return out


def informative_laws(m: SwapAlgebraModel) -> List[CheckResult]:
    """Idempotence of the local poles; reported, never failing."""
    out = []
    for check_id, predicate in (
        ("local-zero-is-idempotent", lambda a: m.eq(m.local_zero[m.local_zero[a]], m.local_zero[a])),
        ("local-one-is-idempotent", lambda a: m.eq(m.local_one[m.local_one[a]], m.local_one[a])),
    ):
        result = _scan(check_id, m, 1, predicate)
        detail = "holds" if result.ok else f"does not hold at {result.witness!r}"
        out.append(passed(f"informative:{check_id}", cases=result.cases, detail=detail))
    return out


def model_from_family(
    family: Sequence[ComplementedSubset], name: str = "A"
) -> SwapAlgebraModel:
    """The swap algebra on a family of complemented subsets closed under the
    first algebra and the local poles."""
    family = list(dict.fromkeys(family))
    if not family:
        raise EmptyFamily("A swap model needs at least one element")
    carrier = family[0].carrier
    index = {a: i for i, a in enumerate(family)}

    def idx(a: ComplementedSubset) -> int:
        try:
            return index[a]
        except KeyError:
            raise ValidationError(f"Family {name} is not closed", a)

    n = len(family)
    join = [[idx(cs_union(a, b)) for b in family] for a in family]
    meet = [[idx(cs_intersection(a, b)) for b in family] for a in family]
    neq = frozenset(
        (i, k)
        for i in range(n)
        for k in range(n)
        if cs_inequality(family[i], family[k])
    )
    model = SwapAlgebraModel(
        elements=family,
        join=join,
        meet=meet,
        neg=[idx(cs_complement(a)) for a in family],
        local_zero=[idx(local_zero(a)) for a in family],
        local_one=[idx(local_one(a)) for a in family],
        zero=idx(zero_of(carrier)),
        one=idx(one_of(carrier)),
        neq=neq,
        name=name,
    )
    logger.debug(f"Built swap model {name} with {n} elements")
    return model


def cs_as_swap_algebra(
    carrier: Carrier, cap: int = DEFAULT_CONFIG["MAX_SWAP_MODEL"]
) -> SwapAlgebraModel:
    elements = enumerate_complemented(carrier)
    check_cap(f"swap model over {carrier.name}", len(elements), cap)
    return model_from_family(elements, name=f"E({carrier.name})")


def boolean_algebra(atoms: int = 1) -> SwapAlgebraModel:
    """The powerset of ``atoms`` atoms, with constant local poles."""
    elements = [frozenset(s) for s in powerset(range(atoms))]
    index = {a: i for i, a in enumerate(elements)}
    top = frozenset(range(atoms))
    zero, one = index[frozenset()], index[top]
    n = len(elements)
    return SwapAlgebraModel(
        elements=[sorted(a) for a in elements],
        join=[[index[a | b] for b in elements] for a in elements],
        meet=[[index[a & b] for b in elements] for a in elements],
        neg=[index[top - a] for a in elements],
        local_zero=[zero] * n,
        local_one=[one] * n,
        zero=zero,
        one=one,
        neq=frozenset((i, k) for i in range(n) for k in range(n) if i != k),
        name=f"P({atoms})",
    )


def total_elements(m: SwapAlgebraModel) -> SwapAlgebraModel:
    """The sub-model of elements whose local one is the one."""
    keep = [i for i in range(len(m)) if m.eq(m.local_one[i], m.one)]
    position = {i: k for k, i in enumerate(keep)}

    def pos(i: int) -> int:
        try:
            return position[i]
        except KeyError:
            raise ValidationError(
                f"Total elements of {m.name} are not closed", m.elements[i]
            )

    return SwapAlgebraModel(
        elements=[m.elements[i] for i in keep],
        join=[[pos(m.join[i][k]) for k in keep] for i in keep],
        meet=[[pos(m.meet[i][k]) for k in keep] for i in keep],
        neg=[pos(m.neg[i]) for i in keep],
        local_zero=[pos(m.local_zero[i]) for i in keep],
        local_one=[pos(m.local_one[i]) for i in keep],
        zero=pos(m.zero),
        one=pos(m.one),
        neq=frozenset(
            (position[i], position[k]) for (i, k) in m.neq if i in position and k in position
        ),
        classes=[m.classes[i] for i in keep],
        name=f"Tot({m.name})",
    )


def boolean_laws(m: SwapAlgebraModel) -> List[CheckResult]:
    j, mt, ng, eq = m.join, m.meet, m.neg, m.eq
    return [
        _scan("boolean:join-idempotent", m, 1, lambda a: eq(j[a][a], a)),
        _scan("boolean:meet-idempotent", m, 1, lambda a: eq(mt[a][a], a)),
        _scan("boolean:join-commutative", m, 2, lambda a, b: eq(j[a][b], j[b][a])),
        _scan("boolean:meet-commutative", m, 2, lambda a, b: eq(mt[a][b], mt[b][a])),
        _scan(
            "boolean:join-associative",
            m,
            3,
            lambda a, b, c: eq(j[a][j[b][c]], j[j[a][b]][c]),
        ),
        _scan(
            "boolean:meet-associative",
            m,
            3,
            lambda a, b, c: eq(mt[a][mt[b][c]], mt[mt[a][b]][c]),
        ),
        _scan(
            "boolean:join-distributes",
            m,
            3,
            lambda a, b, c: eq(j[a][mt[b][c]], mt[j[a][b]][j[a][c]]),
        ),
        _scan(
            "boolean:meet-distributes",
            m,
            3,
            lambda a, b, c: eq(mt[a][j[b][c]], j[mt[a][b]][mt[a][c]]),
        ),
        _scan(
            "boolean:absorption",
            m,
            2,
            lambda a, b: eq(mt[a][j[a][b]], a) and eq(j[a][mt[a][b]], a),
        ),
        _scan(
            "boolean:complements",
            m,
            1,
            lambda a: eq(j[a][ng[a]], m.one) and eq(mt[a][ng[a]], m.zero),
        ),
        _scan("boolean:zero-is-bottom", m, 1, lambda a: eq(j[m.zero][a], a)),
        _scan("boolean:one-is-top", m, 1, lambda a: eq(mt[m.one][a], a)),
    ]


def close_family(family: Sequence[ComplementedSubset]) -> List[ComplementedSubset]:
    """Smallest family containing ``family`` and the top pole, closed under
    complement and union."""
    family = list(family)
    if not family:
        raise EmptyFamily("Cannot close an empty family without a carrier")
    members = dict.fromkeys(family)
    members.setdefault(one_of(family[0].carrier))
    frontier = list(members)
    while frontier:
        new = []
        current = list(members)
        for a in frontier:
            candidates = [cs_complement(a)] + [cs_union(a, b) for b in current]
            for c in candidates:
                if c not in members:
                    members[c] = None
                    new.append(c)
        frontier = new
    return list(members)


@dataclass
class FieldReport:
    is_field: bool
    checks: List[CheckResult]
    completion: List[ComplementedSubset]


def check_field(family: Sequence[ComplementedSubset]) -> FieldReport:
    family = list(dict.fromkeys(family))
    if not family:
        raise EmptyFamily("A field needs a carrier to live on")
    members = set(family)
    carrier = family[0].carrier
    pairs = [(a, b) for a in family for b in family]
    checks = [
        verdict("field-contains-top", one_of(carrier) in members),
        check_all(
            "field-closed-under-complement",
            [(a,) for a in family],
            lambda a: cs_complement(a) in members,
        ),
        check_all(
            "field-closed-under-union", pairs, lambda a, b: cs_union(a, b) in members
        ),
    ]
    is_field = all(c.ok for c in checks)
    if is_field:
        checks += [
            check_all(
                "field-contains-local-poles",
                [(a,) for a in family],
                lambda a: local_one(a) in members and local_zero(a) in members,
            ),
            check_all(
                "field-closed-under-intersection",
                pairs,
                lambda a, b: cs_intersection(a, b) in members,
            ),
        ]
    return FieldReport(is_field, checks, family if is_field else close_family(family))


def bishop_distributivity(
    a: ComplementedSubset, family: Sequence[ComplementedSubset]
) -> bool:
    zero_a = local_zero(a)
    left = cs_union(zero_a, cs_intersection(a, cs_family("union", family)))
    right = cs_union(
        zero_a, cs_family("union", [cs_intersection(a, g) for g in family])
    )
    return left == right


def indexed_distributivity(
    a: ComplementedSubset, family: Sequence[ComplementedSubset]
) -> bool:
    left = cs_intersection(a, cs_family("union", family))
    right = cs_family("union", [cs_intersection(a, g) for g in family])
    return left == right


CLASSICAL_NOTE = (
    "classical evaluation; the constructive failure of this law "
    "is not visible on finite models"
)


def check_distributivity(
    kind: str, a: ComplementedSubset, family: Sequence[ComplementedSubset]
) -> CheckResult:
    family = list(family)
    if not family:
        raise EmptyFamily("Distributivity needs a nonempty family")
    if kind == "bishop":
        return verdict("bishop-distributivity", bishop_distributivity(a, family), (a, family))
    if kind == "D_I":
        return verdict(
            "indexed-distributivity",
            indexed_distributivity(a, family),
            (a, family),
            detail=CLASSICAL_NOTE,
        )
    raise ValueError(f"Unknown distributivity kind {kind}")


def distributivity_laws(carrier: Carrier) -> List[CheckResult]:
    As = enumerate_complemented(carrier)
    families = [[g] for g in As] + [[g, h] for g, h in itertools.combinations(As, 2)]
    cases = [(a, fam) for a in As for fam in families]
    return [
        check_all("bishop-distributivity", cases, bishop_distributivity),
        check_all(
            "indexed-distributivity-for-total",
            [(a, fam) for (a, fam) in cases if a.is_total],
            indexed_distributivity,
        ),
        CheckResult(
            "indexed-distributivity",
            check_all("indexed-distributivity", cases, indexed_distributivity).status,
            detail=CLASSICAL_NOTE,
            cases=len(cases),
        ),
    ]


def swap_suite(carrier: Carrier, cap: int) -> List[CheckResult]:
    """Axioms and types of the complemented-subset algebra, and the Boolean
    laws on its total elements."""
    model = cs_as_swap_algebra(carrier, cap)
    out = check_swap_axioms(model, expect_type_ii=not len(carrier))
    if not len(carrier):
        # the empty carrier has a single complemented subset
        out = [
            skipped(c.check_id, "0 and 1 coincide on the empty carrier")
            if c.check_id == "zero-apart-from-one"
            else c
            for c in out
        ]
    out += informative_laws(model)
    out += boolean_laws(total_elements(model))
    report = check_field(list(model.elements))
    out += report.checks
    return out
