"""A small formula language over finite sorts with strong negation and
classical evaluation.

Text form: ``(and (eq x S:0) (forall y S (neq x y)))``. Constants are
written ``sort:element``; ``top`` and ``bottom`` are the constant formulas.
"""
from dataclasses import dataclass
import itertools
import logging
import re
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from cstop.reports import CheckResult, check_all
from cstop.setineq import Carrier, Element, discrete_carrier
from cstop.utils import DEFAULT_CONFIG, FormulaError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const:
    sort: str
    element: Element

    def __str__(self) -> str:
        return f"{self.sort}:{self.element}"


Term = Union[Var, Const]


class Formula:
    pass


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Neq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    sort: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    sort: str
    body: Formula


BINARY = {"and": And, "or": Or, "implies": Implies}
QUANTIFIERS = {"forall": Forall, "exists": Exists}
ATOMS = {"eq": Eq, "neq": Neq}


def strong_negate(f: Formula) -> Formula:
    """Swap = and !=, and with or, forall with exists, top with bottom;
    A => B goes to A and No B."""
    if isinstance(f, Eq):
        return Neq(f.left, f.right)
    if isinstance(f, Neq):
        return Eq(f.left, f.right)
    if isinstance(f, Top):
        return Bottom()
    if isinstance(f, Bottom):
        return Top()
    if isinstance(f, And):
        return Or(strong_negate(f.left), strong_negate(f.right))
    if isinstance(f, Or):
        return And(strong_negate(f.left), strong_negate(f.right))
    if isinstance(f, Implies):
        return And(f.left, strong_negate(f.right))
    if isinstance(f, Forall):
        return Exists(f.var, f.sort, strong_negate(f.body))
    if isinstance(f, Exists):
        return Forall(f.var, f.sort, strong_negate(f.body))
    raise FormulaError(f"Not a formula: {f!r}")


def strong_implication(a: Formula, b: Formula) -> Formula:
    return And(Implies(a, b), Implies(strong_negate(b), strong_negate(a)))


def negation(a: Formula) -> Formula:
    return Implies(a, Bottom())


def implication_free(f: Formula) -> bool:
    if isinstance(f, Implies):
        return False
    if isinstance(f, (And, Or)):
        return implication_free(f.left) and implication_free(f.right)
    if isinstance(f, (Forall, Exists)):
        return implication_free(f.body)
    return True


def depth(f: Formula) -> int:
    if isinstance(f, (And, Or, Implies)):
        return 1 + max(depth(f.left), depth(f.right))
    if isinstance(f, (Forall, Exists)):
        return 1 + depth(f.body)
    return 0


@dataclass(frozen=True)
class FiniteStructure:
    """Named sorts, each a finite carrier interpreting = and !=."""

    sorts: Mapping[str, Carrier]

    @property
    def is_tight(self) -> bool:
        """!= is the complement of = on every sort."""
        return all(
            c.apart(x, y) != c.eq(x, y) for c in self.sorts.values()
            for x in c.elements
            for y in c.elements
        )

    def carrier(self, sort: str) -> Carrier:
        try:
            return self.sorts[sort]
        except KeyError:
            raise FormulaError(f"Unknown sort {sort}")


Env = Dict[str, Tuple[str, Element]]


def _resolve(t: Term, structure: FiniteStructure, env: Env) -> Tuple[str, Element]:
    if isinstance(t, Const):
        if t.element not in structure.carrier(t.sort):
            raise FormulaError(f"{t.element!r} is not an element of sort {t.sort}")
        return t.sort, t.element
    try:
        return env[t.name]
    except KeyError:
        raise FormulaError(f"Unbound variable {t.name}")


def _compare(f, structure: FiniteStructure, env: Env) -> Tuple[Carrier, Element, Element]:
    (s1, x), (s2, y) = _resolve(f.left, structure, env), _resolve(f.right, structure, env)
    if s1 != s2:
        raise FormulaError(f"Comparing terms of sorts {s1} and {s2}")
    return structure.carrier(s1), x, y


def evaluate(
    f: Formula, structure: FiniteStructure, env: Optional[Env] = None
) -> bool:
    env = env or {}
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Eq):
        c, x, y = _compare(f, structure, env)
        return c.eq(x, y)
    if isinstance(f, Neq):
        c, x, y = _compare(f, structure, env)
        return c.apart(x, y)
    if isinstance(f, And):
        return evaluate(f.left, structure, env) and evaluate(f.right, structure, env)
    if isinstance(f, Or):
        return evaluate(f.left, structure, env) or evaluate(f.right, structure, env)
    if isinstance(f, Implies):
        return not evaluate(f.left, structure, env) or evaluate(f.right, structure, env)
    if isinstance(f, (Forall, Exists)):
        values = (
            evaluate(f.body, structure, {**env, f.var: (f.sort, x)})
            for x in structure.carrier(f.sort).elements
        )
        return all(values) if isinstance(f, Forall) else any(values)
    raise FormulaError(f"Not a formula: {f!r}")


TOKEN_RE = re.compile(r"\s*(\(|\)|[^\s()]+)")
CONST_RE = re.compile(r"^([A-Za-z_]\w*):(\S+)$")
NAME_RE = re.compile(r"^[A-Za-z_]\w*$")


def _tokens(text: str) -> List[str]:
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaError(f"Cannot read formula at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def _term(token: str) -> Term:
    m = CONST_RE.match(token)
    if m is not None:
        return Const(m.group(1), m.group(2))
    if NAME_RE.match(token) is None:
        raise FormulaError(f"Bad term {token!r}")
    return Var(token)


def parse_formula(text: str) -> Formula:
    tokens = _tokens(text)
    f, rest = _parse(tokens)
    if rest:
        raise FormulaError(f"Trailing input after formula: {' '.join(rest)}")
    return f


def _expect(tokens: List[str], what: str) -> Tuple[str, List[str]]:
    if not tokens:
        raise FormulaError(f"Formula ends where {what} was expected")
    return tokens[0], tokens[1:]


def _parse(tokens: List[str]) -> Tuple[Formula, List[str]]:
    head, rest = _expect(tokens, "a formula")
    if head == "top":
        return Top(), rest
    if head == "bottom":
        return Bottom(), rest
    if head != "(":
        raise FormulaError(f"Unexpected token {head!r}")
    op, rest = _expect(rest, "an operator")
    if op in ATOMS:
        left, rest = _expect(rest, "a term")
        right, rest = _expect(rest, "a term")
        f = ATOMS[op](_term(left), _term(right))
    elif op in BINARY:
        left, rest = _parse(rest)
        right, rest = _parse(rest)
        f = BINARY[op](left, right)
    elif op in QUANTIFIERS:
        var, rest = _expect(rest, "a variable")
        sort, rest = _expect(rest, "a sort")
        if NAME_RE.match(var) is None or NAME_RE.match(sort) is None:
            raise FormulaError(f"Bad binder {var} {sort}")
        body, rest = _parse(rest)
        f = QUANTIFIERS[op](var, sort, body)
    else:
        raise FormulaError(f"Unknown operator {op!r}")
    close, rest = _expect(rest, "')'")
    if close != ")":
        raise FormulaError(f"Expected ')' but found {close!r}")
    return f, rest


_NAMES = {v: k for k, v in {**ATOMS, **BINARY, **QUANTIFIERS}.items()}


def format_formula(f: Formula) -> str:
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Bottom):
        return "bottom"
    name = _NAMES[type(f)]
    if isinstance(f, (Eq, Neq)):
        return f"({name} {f.left} {f.right})"
    if isinstance(f, (And, Or, Implies)):
        return f"({name} {format_formula(f.left)} {format_formula(f.right)})"
    return f"({name} {f.var} {f.sort} {format_formula(f.body)})"


def _de_bruijn(f: Formula, bound: Tuple[str, ...]):
    def term(t: Term):
        if isinstance(t, Var) and t.name in bound:
            return ("bound", bound[::-1].index(t.name))
        return ("free", str(t))

    if isinstance(f, (Eq, Neq)):
        return (type(f).__name__, term(f.left), term(f.right))
    if isinstance(f, (And, Or, Implies)):
        return (type(f).__name__, _de_bruijn(f.left, bound), _de_bruijn(f.right, bound))
    if isinstance(f, (Forall, Exists)):
        return (type(f).__name__, f.sort, _de_bruijn(f.body, bound + (f.var,)))
    return (type(f).__name__,)


def alpha_equivalent(a: Formula, b: Formula) -> bool:
    return _de_bruijn(a, ()) == _de_bruijn(b, ())


def rename_bound(f: Formula, suffix: str = "_") -> Formula:
    """Rename every bound variable by appending ``suffix``."""

    def go(f: Formula, renames: Dict[str, str]) -> Formula:
        def term(t: Term) -> Term:
            if isinstance(t, Var) and t.name in renames:
                return Var(renames[t.name])
            return t

        if isinstance(f, (Eq, Neq)):
            return type(f)(term(f.left), term(f.right))
        if isinstance(f, (And, Or, Implies)):
            return type(f)(go(f.left, renames), go(f.right, renames))
        if isinstance(f, (Forall, Exists)):
            new = f.var + suffix
            return type(f)(new, f.sort, go(f.body, {**renames, f.var: new}))
        return f

    return go(f, {})


def enumerate_formulas(
    sort: str,
    constants: Sequence[Element],
    max_depth: int = DEFAULT_CONFIG["MAX_FORMULA_DEPTH"],
    max_vars: int = 2,
    width: int = 12,
) -> List[Formula]:
    """Closed formulas over one sort up to ``max_depth``.

    Binary connectives and quantifiers take their children from the first
    ``width`` formulas of the level below, which keeps the count small and
    the order deterministic.
    """
    cache: Dict[Tuple[int, Tuple[str, ...]], List[Formula]] = {}

    def level(d: int, scope: Tuple[str, ...]) -> List[Formula]:
        key = (d, scope)
        if key in cache:
            return cache[key]
        if d == 0:
            terms = [Var(v) for v in scope] + [Const(sort, c) for c in constants]
            out = [Top(), Bottom()]
            for s, t in itertools.combinations_with_replacement(terms, 2):
                out += [Eq(s, t), Neq(s, t)]
        else:
            out = list(level(d - 1, scope))
            pool = level(d - 1, scope)[:width]
            for node in (And, Or, Implies):
                out += [node(a, b) for a in pool for b in pool]
            if len(scope) < max_vars:
                v = f"x{len(scope)}"
                inner = [
                    g for g in level(d - 1, scope + (v,)) if v in _free(g)
                ][:width]
                for node in (Forall, Exists):
                    out += [node(v, sort, g) for g in inner]
        cache[key] = list(dict.fromkeys(out))
        return cache[key]

    return level(max_depth, ())


def _free(f: Formula) -> set:
    if isinstance(f, (Eq, Neq)):
        return {t.name for t in (f.left, f.right) if isinstance(t, Var)}
    if isinstance(f, (And, Or, Implies)):
        return _free(f.left) | _free(f.right)
    if isinstance(f, (Forall, Exists)):
        return _free(f.body) - {f.var}
    return set()


def free_variables(f: Formula) -> List[str]:
    return sorted(_free(f))


def tight_structures(max_size: int = 3, sort: str = "S") -> Iterator[FiniteStructure]:
    for size in range(1, max_size + 1):
        yield FiniteStructure({sort: discrete_carrier(size, name=sort)})


def negation_laws(
    max_size: int = 3,
    max_depth: int = DEFAULT_CONFIG["MAX_FORMULA_DEPTH"],
    width: int = 12,
) -> List[CheckResult]:
    """Strong negation against classical negation on tight structures."""
    structures = list(tight_structures(max_size))
    formulas = enumerate_formulas("S", ["0"], max_depth=max_depth, width=width)
    logger.info(
        f"Checking {len(formulas)} formulas on {len(structures)} tight structures"
    )
    cases = [(f, s) for f in formulas for s in structures]
    pairs = [(a, b) for a, b in zip(formulas, formulas[1:])][: len(formulas) // 4]
    return [
        check_all(
            "strong-negation-is-classical-negation",
            cases,
            lambda f, s: evaluate(strong_negate(f), s) == (not evaluate(f, s)),
        ),
        check_all(
            "double-strong-negation-is-identity",
            [(f,) for f in formulas if implication_free(f)],
            lambda f: strong_negate(strong_negate(f)) == f,
        ),
        check_all(
            "strong-negation-of-negation-is-original",
            cases,
            lambda f, s: evaluate(strong_negate(negation(f)), s) == evaluate(f, s),
        ),
        check_all(
            "tight-formula-implication",
            cases,
            lambda f, s: evaluate(Implies(negation(strong_negate(f)), f), s),
        ),
        check_all(
            "strong-implication-is-implication",
            [(a, b, s) for a, b in pairs for s in structures],
            lambda a, b, s: evaluate(strong_implication(a, b), s)
            == evaluate(Implies(a, b), s),
        ),
        check_all(
            "renaming-bound-variables-is-alpha-equivalent",
            [(f,) for f in formulas],
            lambda f: alpha_equivalent(f, rename_bound(f)),
        ),
        check_all(
            "text-form-reads-back",
            [(f,) for f in formulas[:: max(1, len(formulas) // 64)]],
            lambda f: parse_formula(format_formula(f)) == f,
        ),
    ]
