import pytest

from cstop.complemented import cs_product, from_members, one_of, zero_of
from cstop.csb import (
    CsBase,
    _covering_checks,
    check_csb_continuity,
    compose_csb,
    CsbMap,
    csb_laws,
    csb_map_laws,
    generate_topology,
    identity_csb,
    induced_relations,
    intersection_base,
    metric_base,
    metric_generated_laws,
    metric_relation_laws,
    product_laws,
    product_space,
    projection_moduli,
    relative_base,
    validate_base,
    weak_minimality,
    weak_topology,
    with_uniform_whole,
)
from cstop.complemented import cs_intersection, cs_preimage
from cstop.metric import validate_metric
from cstop.setineq import apartness_carrier, discrete_carrier, make_function
from cstop.topology import sierpinski
from cstop.utils import AxiomViolation, CapabilityError


def sierpinski_base():
    two = discrete_carrier(2, name="2")
    return intersection_base(two, [from_members(two, ["0"], ["1"])], name="S")


def singleton_base():
    """Points as their own neighbourhoods; beta_X is not uniform."""
    x = discrete_carrier(2)
    a0, a1 = from_members(x, ["0"], ["1"]), from_members(x, ["1"], ["0"])
    return validate_base(
        x,
        [a0, a1, zero_of(x)],
        lambda p: a0 if p == "0" else a1,
        lambda p: zero_of(x),
        lambda b, c, p: cs_intersection(b, c),
        name="P",
    )


def three_points():
    return validate_metric(
        ["a", "b", "c"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]], name="ABC"
    )


def all_ok(checks):
    return all(c.ok for c in checks), [c for c in checks if not c.ok]


def test_sierpinski_base_generates_sierpinski():
    base = sierpinski_base()
    assert len(base) == 3
    assert base.covering == {"whole": True, "empty": True, "pair": True}
    gen = generate_topology(base)
    assert len(gen.topology) == 3
    expected = {(g.one.members, g.zero.members) for g in sierpinski().opens}
    assert {(g.one.members, g.zero.members) for g in gen.topology.opens} == expected
    ok, bad = all_ok(gen.checks)
    assert ok, bad


def test_member_gets_the_constant_modulus():
    base = sierpinski_base()
    s = from_members(base.carrier, ["0"], ["1"])
    gen = generate_topology(base)
    assert gen.modulus(s) == {"0": s}


def test_induced_relations_of_sierpinski():
    base = sierpinski_base()
    rel = induced_relations(base)
    assert rel.witness("0", "1") == from_members(base.carrier, ["0"], ["1"])
    assert rel.separates and rel.co_separates
    ok, bad = all_ok(rel.checks)
    assert ok, bad


def test_total_members_give_cotransitive_inequality():
    base = singleton_base()
    rel = induced_relations(base)
    assert rel.cotransitive
    ok, bad = all_ok(rel.checks)
    assert ok, bad


def test_coempty_covering_is_the_meet_inside_the_carrier():
    base = sierpinski_base()
    s = from_members(base.carrier, ["0"], ["1"])
    # a coempty modulus whose 0-part is not all of X
    odd = CsBase(
        base.carrier, base.family, base.beta_whole, {"0": s}, base.beta_pair
    )
    check = {c.check_id: c for c in _covering_checks(odd)}["covering-coempty"]
    assert check.ok
    assert {c.check_id: c for c in base.checks}["covering-coempty"].ok


def test_trivial_base():
    x = discrete_carrier(2)
    base = validate_base(
        x,
        [one_of(x), zero_of(x)],
        lambda p: one_of(x),
        lambda p: zero_of(x),
        lambda b, c, p: cs_intersection(b, c),
    )
    assert all(base.covering.values())
    assert base.whole_is_uniform
    assert len(generate_topology(base).topology) == 2


def test_base_point_violation():
    x = discrete_carrier(2)
    s = from_members(x, ["0"], ["1"])
    with pytest.raises(AxiomViolation) as err:
        validate_base(
            x,
            [one_of(x), zero_of(x), s],
            lambda p: s,
            lambda p: zero_of(x),
            lambda b, c, p: cs_intersection(b, c),
        )
    assert err.value.axiom == "base-point"
    assert err.value.witness == "1"


def test_beta_values_must_be_members():
    x = discrete_carrier(2)
    with pytest.raises(AxiomViolation) as err:
        validate_base(
            x,
            [zero_of(x)],
            lambda p: one_of(x),
            lambda p: zero_of(x),
            lambda b, c, p: cs_intersection(b, c),
        )
    assert err.value.axiom == "base-moduli-in-family"


def test_metric_base():
    space = three_points()
    base = metric_base(space)
    assert all(base.covering.values())
    for laws in (metric_relation_laws(space), metric_generated_laws(space)):
        ok, bad = all_ok(laws)
        assert ok, bad


def test_relative_base():
    base = sierpinski_base()
    whole = relative_base(base, base.carrier.universe)
    assert len(whole) == len(base)
    point = relative_base(base, base.carrier.subset(["0"]))
    assert len(point) == 2
    assert all(b.one.members <= {"0"} for b in point.family)
    ok, bad = all_ok(point.checks)
    assert ok, bad


def test_identity_is_uniformly_continuous():
    base = sierpinski_base()
    report = check_csb_continuity("uniform", identity_csb(base))
    assert report.ok, report.checks


def test_any_map_into_the_trivial_base():
    x, y = discrete_carrier(2), discrete_carrier(1)
    source = intersection_base(x, [], name="X")
    target = intersection_base(y, [], name="Y")
    f = make_function(x, y, {"0": "0", "1": "0"}, name="const")
    m = CsbMap(f, source, target, uniform=lambda c: cs_preimage(f, c))
    assert check_csb_continuity("uniform", m).ok


def test_unknown_kind_and_missing_data():
    base = sierpinski_base()
    with pytest.raises(ValueError):
        check_csb_continuity("global", identity_csb(base))
    m = CsbMap(
        make_function(base.carrier, base.carrier, {"0": "0", "1": "1"}),
        base,
        base,
        inversion=lambda h, op_h: dict(op_h),
    )
    with pytest.raises(CapabilityError):
        check_csb_continuity("pointwise", m)
    assert check_csb_continuity("plain", m).ok


def test_csb_map_needs_strong_extensionality():
    y = apartness_carrier(["0", "1"], [["0"], ["1"]], [["0", "1"]])
    x = discrete_carrier(2)
    f = make_function(y, x, {"0": "0", "1": "1"})
    with pytest.raises(CapabilityError):
        CsbMap(
            f, intersection_base(y, []), intersection_base(x, []), uniform=lambda c: c
        )


def test_composition_is_pointwise_continuous():
    base = sierpinski_base()
    ident = identity_csb(base)
    twice = compose_csb(ident, ident)
    assert check_csb_continuity("pointwise", twice).ok
    ok, bad = all_ok(csb_map_laws(twice))
    assert ok, bad


def test_product_of_sierpinski_bases():
    s = sierpinski_base()
    p = product_space(s, s)
    assert len(p.carrier) == 4
    assert one_of(p.carrier) in p
    assert cs_product(one_of(s.carrier), one_of(s.carrier)) == one_of(p.carrier)
    ok, bad = all_ok(product_laws(s, s))
    assert ok, bad


def test_projections():
    s = sierpinski_base()
    p = product_space(s, s)
    left = projection_moduli(p, "left")
    assert check_csb_continuity("pointwise", left).ok
    uniform = projection_moduli(p, "left", uniform=True)
    assert check_csb_continuity("uniform", uniform).ok
    g = from_members(s.carrier, ["0"], ["1"])
    pre, _ = uniform.invert(g, {"0": g})
    assert pre == cs_product(g, one_of(s.carrier))


def test_uniform_projection_needs_uniform_whole():
    b = singleton_base()
    p = product_space(b, b)
    assert check_csb_continuity("pointwise", projection_moduli(p, "right")).ok
    with pytest.raises(CapabilityError):
        projection_moduli(p, "right", uniform=True)
    plus = with_uniform_whole(b)
    assert plus.whole_is_uniform
    q = product_space(plus, plus)
    assert check_csb_continuity("uniform", projection_moduli(q, "right", True)).ok


def test_projection_of_a_non_product():
    with pytest.raises(CapabilityError):
        projection_moduli(sierpinski_base(), "left")


def test_weak_topology_of_an_indicator():
    x = discrete_carrier(2)
    s = sierpinski_base()
    f = make_function(x, s.carrier, {"0": "0", "1": "1"}, name="chi")
    weak = weak_topology(x, [(s, f)])
    expected = {one_of(x), zero_of(x), from_members(x, ["0"], ["1"])}
    assert set(weak.base.family) == expected
    ok, bad = all_ok(weak.checks)
    assert ok, bad
    assert weak_minimality(weak).ok
    injective = weak_topology(x, [(s, f)], injective=0)
    assert set(injective.base.family) == expected


def test_weak_topology_of_nothing():
    x = discrete_carrier(2)
    weak = weak_topology(x, [])
    assert set(weak.base.family) == {one_of(x), zero_of(x)}
    assert weak.maps == []


def test_weak_topology_of_two_maps():
    x = discrete_carrier(2)
    s = sierpinski_base()
    chi = make_function(x, s.carrier, {"0": "0", "1": "1"}, name="chi")
    flip = make_function(x, s.carrier, {"0": "1", "1": "0"}, name="flip")
    weak = weak_topology(x, [(s, chi), (s, flip)])
    assert len(weak.base) == 4
    assert from_members(x, ["1"], ["0"]) in weak.base
    ok, bad = all_ok(weak.checks)
    assert ok, bad


def test_weak_topology_closes_under_every_finite_intersection():
    x = discrete_carrier(4)
    s = sierpinski_base()
    maps = []
    for i in "012":
        table = {p: "1" if p == i else "0" for p in x.elements}
        maps.append((s, make_function(x, s.carrier, table, name=f"chi{i}")))
    trivial = intersection_base(x, [], name="T")
    maps.append((trivial, make_function(x, x, {p: p for p in x.elements}, name="id")))
    weak = weak_topology(x, maps)
    injective = weak_topology(x, maps, injective=3)
    assert set(injective.base.family) == set(weak.base.family)
    assert len(injective.base) == 9
    assert from_members(x, ["3"], ["0", "1", "2"]) in injective.base
    ok, bad = all_ok(injective.checks)
    assert ok, bad


def test_weak_topology_needs_strong_extensionality():
    y = apartness_carrier(["0", "1"], [["0"], ["1"]], [["0", "1"]])
    s = sierpinski_base()
    f = make_function(y, s.carrier, {"0": "0", "1": "1"}, name="f")
    with pytest.raises(CapabilityError):
        weak_topology(y, [(s, f)])


@pytest.mark.parametrize("base", [sierpinski_base, singleton_base])
def test_csb_laws(base):
    ok, bad = all_ok(csb_laws(base()))
    assert ok, bad
