"""The JSON model document: parsing sections into validated structures.

Rationals are written as ``"p/q"`` strings (or integers). Sections refer to
each other by name; every name must resolve to something defined in an
earlier section, or earlier in the same section.
"""
from dataclasses import dataclass, field
import json
import logging
from typing import IO, Any, Callable, Dict, List, Optional, Tuple

from cstop.complemented import ComplementedSubset, one_of, zero_of
from cstop.continuity import (
    AffineMap,
    Compose,
    ConstRadius,
    ContinuousMap,
    DistanceMap,
    Identity,
    MetricMap,
    MinRadius,
    Scale,
    TableFamily,
    Transformer,
    compose_maps,
    table_transformer,
    TableMap,
)
from cstop.csb import CsBase, CsbMap, intersection_base, metric_base, validate_base
from cstop.formulas import FiniteStructure, Formula, parse_formula
from cstop.metric import (
    LINE,
    MetricSpace,
    Open,
    OpennessModulus,
    ball,
    ball_modulus,
    ball_union_set,
    combine_modulus,
    copoint,
    join,
    meet,
    pole_one,
    pole_zero,
    standard_registry,
    validate_metric,
)
from cstop.reports import CheckResult, failed, passed, skipped
from cstop.setineq import (
    Carrier,
    Element,
    ExtSubset,
    FunctionTable,
    make_function,
    validate_carrier,
)
from cstop.topology import CsTopology, ModulusRegistry, validate_topology
from cstop.utils import (
    FormulaError,
    NotExtensional,
    SchemaError,
    ValidationError,
    parse_rational,
)


logger = logging.getLogger(__name__)


SCHEMA_VERSION = 1

SECTIONS = [
    "carrier",
    "metric",
    "subsets",
    "complemented",
    "functions",
    "topology",
    "base",
    "moduli",
    "maps",
    "formulas",
]


def get_snake_or_camel(obj: Dict[str, Any], key: str) -> Any:
    if key in obj:
        return obj[key]
    bits = key.split("_")
    new_key = bits[0] + "".join(ele.title() for ele in bits[1:])
    return obj.get(new_key)


def _require(obj: Any, key: str, where: str) -> Any:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where} must be an object")
    value = get_snake_or_camel(obj, key)
    if value is None:
        raise SchemaError(f"{where} is missing '{key}'")
    return value


def _as_list(value: Any, where: str) -> List:
    if not isinstance(value, list):
        raise SchemaError(f"{where} must be a list")
    return value


def _as_dict(value: Any, where: str) -> Dict:
    if not isinstance(value, dict):
        raise SchemaError(f"{where} must be an object")
    return value


def _as_pair(value: Any, where: str) -> List:
    value = _as_list(value, where)
    if len(value) != 2:
        raise SchemaError(f"{where} must have exactly two entries")
    return value


def _as_name(value: Any, where: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"{where} must be a name, got {value!r}")
    return value


def _is_element_like(value: Any) -> bool:
    if isinstance(value, tuple):
        return all(_is_element_like(part) for part in value)
    return isinstance(value, str)


def _element_names(value: Any, where: str) -> List[str]:
    return [_as_name(x, where) for x in _as_list(value, where)]


@dataclass
class ModelDocument:
    version: int
    carriers: Dict[str, Carrier] = field(default_factory=dict)
    metric: Optional[MetricSpace] = None
    subsets: Dict[str, ExtSubset] = field(default_factory=dict)
    complemented: Dict[str, ComplementedSubset] = field(default_factory=dict)
    functions: Dict[str, FunctionTable] = field(default_factory=dict)
    topology: Optional[CsTopology] = None
    base: Optional[CsBase] = None
    opens: Dict[str, Open] = field(default_factory=dict)
    registry: Optional[ModulusRegistry] = None
    maps: Dict[str, ContinuousMap] = field(default_factory=dict)
    csb_maps: Dict[str, CsbMap] = field(default_factory=dict)
    formulas: Dict[str, Formula] = field(default_factory=dict)
    present: List[str] = field(default_factory=list)

    @property
    def default_carrier(self) -> Carrier:
        if not self.carriers:
            raise SchemaError("The document defines no carrier")
        return next(iter(self.carriers.values()))

    def carrier(self, name: Optional[str]) -> Carrier:
        if name is None:
            return self.default_carrier
        if not isinstance(name, str):
            raise SchemaError(f"Carrier references must be names, got {name!r}")
        try:
            return self.carriers[name]
        except KeyError:
            raise SchemaError(f"Unknown carrier {name}")

    def has(self, section: str) -> bool:
        return section in self.present

    def modulus(self, name: str) -> Tuple[Open, OpennessModulus]:
        g = self.opens[name]
        return g, self.registry.lookup(g)

    def structure(self) -> FiniteStructure:
        return FiniteStructure(dict(self.carriers))


def load_document(fh: IO) -> Dict:
    try:
        data = json.load(fh)
    except json.JSONDecodeError as e:
        raise SchemaError(f"Document is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise SchemaError("Document must be a JSON object")
    version = data.get("version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise SchemaError(f"Unsupported document version {version!r}")
    unknown = set(data) - set(SECTIONS) - {"version"}
    if unknown:
        raise SchemaError(f"Unknown sections: {', '.join(sorted(unknown))}")
    return data


def _element(carrier: Carrier, value: Any, where: str) -> Element:
    if isinstance(value, list):
        value = tuple(value)
    if not _is_element_like(value) or value not in carrier:
        raise SchemaError(f"{where}: {value!r} is not an element of {carrier.name}")
    return value


def _parse_carrier(data: Any, where: str) -> Carrier:
    data = _as_dict(data, where)
    name = _as_name(data.get("name", "X"), f"{where}.name")
    elements = _element_names(_require(data, "elements", where), f"{where}.elements")
    equality = data.get("equality")
    if equality is not None:
        equality = [
            _element_names(block, f"{where}.equality")
            for block in _as_list(equality, f"{where}.equality")
        ]
    inequality = data.get("inequality")
    if inequality is not None:
        inequality = [
            tuple(_element_names(_as_pair(p, f"{where}.inequality"), f"{where}.inequality"))
            for p in _as_list(inequality, f"{where}.inequality")
        ]
    return validate_carrier(elements, equality, inequality, name=name)


def _parse_carriers(doc: ModelDocument, data: Any) -> None:
    items = data if isinstance(data, list) else [data]
    for idx, item in enumerate(items):
        carrier = _parse_carrier(item, f"carrier[{idx}]")
        if carrier.name in doc.carriers:
            raise SchemaError(f"Carrier {carrier.name} is defined twice")
        doc.carriers[carrier.name] = carrier


def _parse_metric(doc: ModelDocument, data: Any) -> None:
    data = _as_dict(data, "metric")
    if data.get("line"):
        doc.metric = LINE
        return
    name = _as_name(data.get("name", "M"), "metric.name")
    elements = _element_names(_require(data, "elements", "metric"), "metric.elements")
    matrix = [
        [parse_rational(v) for v in _as_list(row, "metric.distances")]
        for row in _as_list(_require(data, "distances", "metric"), "metric.distances")
    ]
    doc.metric = validate_metric(elements, matrix, name=name)
    if name in doc.carriers:
        raise SchemaError(f"Carrier {name} is defined twice")
    doc.carriers[name] = doc.metric.carrier


def _parse_subset(doc: ModelDocument, value: Any, where: str) -> ExtSubset:
    if isinstance(value, str):
        try:
            return doc.subsets[value]
        except KeyError:
            raise SchemaError(f"{where}: unknown subset {value}")
    if isinstance(value, list):
        carrier, members = doc.default_carrier, value
    else:
        carrier = doc.carrier(_as_dict(value, where).get("carrier"))
        members = _as_list(_require(value, "members", where), where)
    members = {_element(carrier, x, where) for x in members}
    subset = carrier.subset(members)
    missing = subset.members - members
    if missing:
        raise NotExtensional(
            f"{where} is not closed under the equality of {carrier.name}",
            sorted(map(str, missing)),
        )
    return subset


def _parse_subsets(doc: ModelDocument, data: Any) -> None:
    for name, value in _as_dict(data, "subsets").items():
        doc.subsets[name] = _parse_subset(doc, value, f"subsets.{name}")


def _parse_complemented_value(
    doc: ModelDocument, value: Any, where: str, carrier: Optional[Carrier] = None
) -> ComplementedSubset:
    if isinstance(value, str):
        if value in ("top", "bottom"):
            carrier = carrier or doc.default_carrier
            return one_of(carrier) if value == "top" else zero_of(carrier)
        try:
            return doc.complemented[value]
        except KeyError:
            raise SchemaError(f"{where}: unknown complemented subset {value}")
    value = _as_dict(value, where)
    carrier = doc.carrier(value.get("carrier")) if "carrier" in value else carrier
    carrier = carrier or doc.default_carrier

    def part(key: str) -> ExtSubset:
        raw = value.get(key, [])
        if isinstance(raw, list):
            raw = {"carrier": carrier.name, "members": raw}
        sub = _parse_subset(doc, raw, f"{where}.{key}")
        if sub.carrier is not carrier:
            raise SchemaError(f"{where}.{key} lives on {sub.carrier.name}")
        return sub

    return ComplementedSubset(part("one"), part("zero"))


def _parse_complemented(doc: ModelDocument, data: Any) -> None:
    for name, value in _as_dict(data, "complemented").items():
        doc.complemented[name] = _parse_complemented_value(
            doc, value, f"complemented.{name}"
        )


def _parse_functions(doc: ModelDocument, data: Any) -> None:
    for name, value in _as_dict(data, "functions").items():
        where = f"functions.{name}"
        domain = doc.carrier(_require(value, "domain", where))
        codomain = doc.carrier(_require(value, "codomain", where))
        raw = _as_dict(_require(value, "table", where), f"{where}.table")
        table = {
            _element(domain, x, where): _element(codomain, y, where)
            for x, y in raw.items()
        }
        doc.functions[name] = make_function(domain, codomain, table, name=name)


def _parse_topology(doc: ModelDocument, data: Any) -> None:
    carrier = doc.carrier(_as_dict(data, "topology").get("carrier"))
    opens = [
        _parse_complemented_value(doc, ref, "topology.opens", carrier)
        for ref in _as_list(_require(data, "opens", "topology"), "topology.opens")
    ]
    doc.topology = validate_topology(carrier, opens, name=data.get("name", "T"))


def _parse_base(doc: ModelDocument, data: Any) -> None:
    data = _as_dict(data, "base")
    if data.get("metric"):
        if doc.metric is None or not doc.metric.is_finite:
            raise SchemaError("A metric base needs a finite metric section")
        doc.base = metric_base(doc.metric)
        return
    carrier = doc.carrier(data.get("carrier"))
    name = data.get("name", "B")

    def ref(value: Any, where: str) -> ComplementedSubset:
        return _parse_complemented_value(doc, value, where, carrier)

    members = [
        ref(v, "base.members")
        for v in _as_list(_require(data, "members", "base"), "base.members")
    ]
    whole = get_snake_or_camel(data, "beta_whole")
    if whole is None:
        doc.base = intersection_base(carrier, members, name=name)
        return
    empty = get_snake_or_camel(data, "beta_empty") or {}
    pairs = get_snake_or_camel(data, "beta_pair") or []
    beta_whole = {
        _element(carrier, x, "base.beta_whole"): ref(v, "base.beta_whole")
        for x, v in _as_dict(whole, "base.beta_whole").items()
    }
    beta_empty = {
        _element(carrier, x, "base.beta_empty"): ref(v, "base.beta_empty")
        for x, v in _as_dict(empty, "base.beta_empty").items()
    }
    beta_pair = {}
    for entry in _as_list(pairs, "base.beta_pair"):
        entry = _as_list(entry, "base.beta_pair")
        if len(entry) != 4:
            raise SchemaError("base.beta_pair entries are [b, c, x, member]")
        b, c, x, v = entry
        key = (
            ref(b, "base.beta_pair"),
            ref(c, "base.beta_pair"),
            _element(carrier, x, "base.beta_pair"),
        )
        beta_pair[key] = ref(v, "base.beta_pair")
    doc.base = validate_base(
        carrier, members, beta_whole, beta_empty, beta_pair, name=name
    )


def _point(doc: ModelDocument, value: Any, where: str):
    if doc.metric is None:
        raise SchemaError(f"{where}: points need a metric section")
    if doc.metric.is_finite:
        return _element(doc.metric.carrier, value, where)
    return parse_rational(value)


def _parse_open(doc: ModelDocument, name: str, entry: Any) -> Tuple[Open, OpennessModulus]:
    where = f"moduli.{name}"
    entry = _as_dict(entry, where)
    space = doc.metric

    def named(ref: str) -> Open:
        try:
            return doc.opens[ref]
        except KeyError:
            raise SchemaError(f"{where}: unknown open {ref}")

    if "ball" in entry:
        center, radius = _as_pair(entry["ball"], where)
        b = ball(space, _point(doc, center, where), parse_rational(radius))
        return b.open, ball_modulus(b)
    if "balls" in entry and not space.is_finite:
        balls = [
            (parse_rational(c), parse_rational(r))
            for c, r in (_as_pair(p, where) for p in _as_list(entry["balls"], where))
        ]
        parts = [ball(space, c, r) for c, r in balls]
        g = ball_union_set(balls)
        return g, combine_modulus("union_max", *[ball_modulus(b) for b in parts])
    if "union" in entry or "intersection" in entry:
        kind = "union" if "union" in entry else "intersection"
        refs = _as_list(entry[kind], where)
        if len(refs) < 2:
            raise SchemaError(f"{where}: {kind} needs at least two opens")
        opens = [named(_as_name(r, where)) for r in refs]
        moduli = [doc.registry.lookup(g) for g in opens]
        if kind == "intersection":
            g, m = opens[0], moduli[0]
            for h, mh in zip(opens[1:], moduli[1:]):
                g, m = meet(g, h), combine_modulus("intersection_min", m, mh)
            return g, m
        g = opens[0]
        for h in opens[1:]:
            g = join(g, h)
        kind = entry.get("kind", "union_max")
        if kind not in ("union_max", "disjoint_union"):
            raise SchemaError(f"{where}: unknown union modulus {kind!r}")
        return g, combine_modulus(kind, *moduli)
    if "copoint" in entry:
        x = _point(doc, entry["copoint"], where)
        return copoint(space, x), combine_modulus("copoint_half", space, x)
    if "pole" in entry:
        if entry["pole"] == "one":
            return pole_one(space), combine_modulus("pole_const_one", space)
        if entry["pole"] == "zero":
            return pole_zero(space), combine_modulus("coempty_half_self", space)
    raise SchemaError(f"{where}: cannot tell what kind of open this is")


def _parse_moduli(doc: ModelDocument, data: Any) -> None:
    if doc.metric is None:
        raise SchemaError("The moduli section needs a metric section")
    doc.registry = standard_registry(doc.metric)
    for name, entry in _as_dict(data, "moduli").items():
        g, m = _parse_open(doc, name, entry)
        doc.opens[name] = g
        doc.registry.register(g, m)


def parse_transformer(data: Any, where: str = "transformer") -> Transformer:
    if not isinstance(data, dict) or len(data) != 1:
        raise SchemaError(f"{where} must be an object with a single key")
    ((op, arg),) = data.items()
    if op == "identity":
        return Identity()
    if op == "const":
        return ConstRadius(parse_rational(arg))
    if op == "scale":
        return Scale(parse_rational(arg))
    if op == "min":
        return MinRadius(tuple(parse_transformer(a, where) for a in _as_list(arg, where)))
    if op == "compose":
        outer, inner = _as_pair(arg, where)
        return Compose(parse_transformer(outer, where), parse_transformer(inner, where))
    if op == "table":
        try:
            return table_transformer(
                {parse_rational(k): parse_rational(v) for k, v in _as_dict(arg, where).items()}
            )
        except ValidationError as e:
            raise SchemaError(f"{where}: {e}")
    raise SchemaError(f"{where}: unknown transformer {op}")


def _parse_metric_map(doc: ModelDocument, name: str, entry: Dict) -> MetricMap:
    where = f"maps.{name}"
    if "affine" in entry:
        a, b = _as_pair(entry["affine"], where)
        return AffineMap(parse_rational(a), parse_rational(b), name=name)
    if "distance" in entry:
        return DistanceMap(parse_rational(entry["distance"]), name=name)
    if "table" in entry:
        f = doc.functions.get(_as_name(entry["table"], where))
        if f is None:
            raise SchemaError(f"{where}: unknown function {entry['table']}")
        if doc.metric is None or f.domain is not getattr(doc.metric, "carrier", None):
            raise SchemaError(f"{where}: table maps must act on the metric space")
        if f.codomain is not doc.metric.carrier:
            raise SchemaError(f"{where}: table maps must act on the metric space")
        return TableMap(doc.metric, doc.metric, f, name=name)
    if "compose" in entry:
        outer, inner = _as_pair(entry["compose"], where)
        try:
            return compose_maps(
                doc.maps[_as_name(outer, where)].map, doc.maps[_as_name(inner, where)].map
            )
        except KeyError as e:
            raise SchemaError(f"{where}: unknown map {e}")
    raise SchemaError(f"{where}: cannot tell what kind of map this is")


def _parse_csb_map(doc: ModelDocument, name: str, entry: Dict) -> CsbMap:
    where = f"maps.{name}"
    if doc.base is None:
        raise SchemaError(f"{where}: csb maps need a base section")
    f = doc.functions.get(_as_name(entry["csb"], where))
    if f is None:
        raise SchemaError(f"{where}: unknown function {entry['csb']}")
    carrier = doc.base.carrier

    def ref(value):
        return _parse_complemented_value(doc, value, where, carrier)

    uniform = pointwise = None
    if "uniform" in entry:
        table = {ref(c): ref(d) for c, d in _as_dict(entry["uniform"], where).items()}
        uniform = table.__getitem__
    if "pointwise" in entry:
        per_point = {
            _element(carrier, x, where): {
                ref(c): ref(d) for c, d in _as_dict(row, where).items()
            }
            for x, row in _as_dict(entry["pointwise"], where).items()
        }
        pointwise = lambda x, c: per_point[x][c]
    return CsbMap(f, doc.base, doc.base, pointwise=pointwise, uniform=uniform)


def _parse_maps(doc: ModelDocument, data: Any) -> None:
    for name, entry in _as_dict(data, "maps").items():
        entry = _as_dict(entry, f"maps.{name}")
        if "csb" in entry:
            doc.csb_maps[name] = _parse_csb_map(doc, name, entry)
            continue
        m = _parse_metric_map(doc, name, entry)
        uniform = entry.get("uniform")
        pointwise = entry.get("pointwise")
        family = None
        if pointwise is not None:
            family = TableFamily(
                {
                    _point(doc, x, f"maps.{name}.pointwise"): parse_transformer(t)
                    for x, t in _as_dict(pointwise, f"maps.{name}.pointwise").items()
                }
            )
        doc.maps[name] = ContinuousMap(
            m,
            pointwise=family,
            uniform=None if uniform is None else parse_transformer(uniform),
        )


def _parse_formulas(doc: ModelDocument, data: Any) -> None:
    for name, text in _as_dict(data, "formulas").items():
        try:
            doc.formulas[name] = parse_formula(_as_name(text, f"formulas.{name}"))
        except FormulaError as e:
            raise SchemaError(f"formulas.{name}: {e}")


PARSERS: List[Tuple[str, Callable[[ModelDocument, Any], None]]] = [
    ("carrier", _parse_carriers),
    ("metric", _parse_metric),
    ("subsets", _parse_subsets),
    ("complemented", _parse_complemented),
    ("functions", _parse_functions),
    ("topology", _parse_topology),
    ("base", _parse_base),
    ("moduli", _parse_moduli),
    ("maps", _parse_maps),
    ("formulas", _parse_formulas),
]


def parse_document(data: Dict) -> ModelDocument:
    """Build every section, raising on the first schema or axiom failure."""
    doc = ModelDocument(version=data.get("version", SCHEMA_VERSION))
    for section, parser in PARSERS:
        if section in data:
            parser(doc, data[section])
            doc.present.append(section)
    return doc


def validate_document(data: Dict) -> Tuple[Optional[ModelDocument], List[CheckResult]]:
    """Build the sections in order and record one check per section.

    A schema problem raises ``SchemaError``. An axiom failure becomes a
    failed check carrying its witness, and later sections are skipped.
    """
    doc = ModelDocument(version=data.get("version", SCHEMA_VERSION))
    checks: List[CheckResult] = []
    broken = None
    for section, parser in PARSERS:
        if section not in data:
            continue
        check_id = f"valid-{section}"
        if broken is not None:
            checks.append(skipped(check_id, f"depends on {broken}"))
            continue
        try:
            parser(doc, data[section])
        except ValidationError as e:
            logger.info(f"Section {section} failed validation: {e}")
            checks.append(failed(check_id, e.witness, detail=str(e)))
            broken = section
            continue
        doc.present.append(section)
        checks.append(passed(check_id))
    return (None if broken else doc), checks
