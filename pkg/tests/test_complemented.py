import pytest

from cstop.complemented import (
    algebra_laws,
    all_points,
    canonical_point,
    canonical_preimage_laws,
    characteristic,
    cs_binary,
    cs_complement,
    cs_difference,
    cs_family,
    cs_image,
    cs_inequality,
    cs_intersection,
    cs_leq,
    cs_order,
    cs_preimage,
    cs_product,
    cs_union,
    elementhood,
    enumerate_complemented,
    from_members,
    image_laws,
    local_one,
    local_zero,
    make_complemented,
    one_of,
    point_laws,
    points_of,
    potential_points,
    product_laws,
    zero_of,
    zeros_ones,
)
from cstop.setineq import (
    all_functions,
    apartness_carrier,
    discrete_carrier,
    make_function,
)
from cstop.utils import (
    CapabilityError,
    CarrierMismatch,
    DisjointnessError,
    EmptyFamily,
    SizeCapExceeded,
    UndefinedPoint,
)


def bad_checks(checks):
    return [c for c in checks if not c.ok]


@pytest.mark.parametrize("size, count", [(0, 1), (1, 3), (2, 9), (3, 27)])
def test_enumerate_discrete(size, count):
    assert len(enumerate_complemented(discrete_carrier(size))) == count


def test_enumerate_without_apartness():
    x = apartness_carrier(["0", "1"], [["0"], ["1"]], [["0", "1"]])
    assert len(enumerate_complemented(x)) == 7


def test_enumerate_cap():
    with pytest.raises(SizeCapExceeded):
        enumerate_complemented(discrete_carrier(5), cap=4)


def test_disjointness_is_enforced():
    x = discrete_carrier(2)
    with pytest.raises(DisjointnessError):
        from_members(x, ["0"], ["0"])
    y = apartness_carrier(["0", "1"], [["0"], ["1"]], [["0", "1"]])
    with pytest.raises(DisjointnessError):
        from_members(y, ["0"], ["1"])


def test_first_algebra():
    x = discrete_carrier(3)
    a = from_members(x, ["0"], ["1"])
    b = from_members(x, ["1"], ["2"])
    assert cs_union(a, b) == from_members(x, ["0", "1"], [])
    assert cs_intersection(a, b) == from_members(x, [], ["1", "2"])
    assert cs_complement(a) == from_members(x, ["1"], ["0"])
    assert cs_difference(a, b) == from_members(x, [], ["1"])
    assert cs_leq(cs_intersection(a, b), a)
    assert local_zero(a) == from_members(x, [], ["0", "1"])
    assert local_one(a) == from_members(x, ["0", "1"], [])
    assert cs_family("union", [a, b, zero_of(x)]) == cs_union(a, b)
    with pytest.raises(EmptyFamily):
        cs_family("union", [])


def test_carriers_must_match():
    a = one_of(discrete_carrier(1))
    b = one_of(discrete_carrier(1))
    with pytest.raises(CarrierMismatch):
        cs_union(a, b)


def test_characteristic():
    x = discrete_carrier(3)
    chi = characteristic(from_members(x, ["0"], ["1"]))
    assert chi("0") == 1 and chi("1") == 0
    with pytest.raises(UndefinedPoint):
        chi("2")


def test_product():
    x, y = discrete_carrier(2), discrete_carrier(2)
    p = cs_product(from_members(x, ["0"], ["1"]), from_members(y, ["1"], []))
    assert p.one.members == frozenset({("0", "1")})
    assert p.zero.members == frozenset({("1", "0"), ("1", "1")})


def test_points():
    x = discrete_carrier(2)
    p = canonical_point(x, "0")
    assert p.co.members == frozenset({"1"})
    a = from_members(x, ["0"], ["1"])
    assert elementhood(p, a).inside
    assert elementhood(p, cs_complement(a)).outside
    assert [q.co.members for q in points_of(a)] == [frozenset({"1"})]


def test_cs_inequality():
    x = discrete_carrier(2)
    a = from_members(x, ["0"], ["1"])
    assert cs_inequality(a, cs_complement(a))
    assert not cs_inequality(a, a)


def test_images_need_function_classes():
    x = discrete_carrier(2)
    y = apartness_carrier(["0", "1"], [["0"], ["1"]], [["0", "1"]])
    f = make_function(y, x, {"0": "0", "1": "1"})
    b = from_members(x, ["0"], ["1"])
    with pytest.raises(CapabilityError):
        cs_image("inverse", f, b)
    with pytest.raises(DisjointnessError):
        cs_preimage(f, b)
    const = make_function(x, x, {"0": "0", "1": "0"})
    with pytest.raises(CapabilityError):
        cs_image("direct", const, b)
    assert cs_image("inverse", const, b) == one_of(x)


@pytest.mark.parametrize("size", [1, 2])
def test_algebra_laws(size):
    assert not bad_checks(algebra_laws(discrete_carrier(size)))


def test_algebra_laws_on_non_tight_carrier():
    x = apartness_carrier(["0", "1", "2"], [["0"], ["1"], ["2"]], [["0", "1"], ["2"]])
    assert not bad_checks(algebra_laws(x))


def test_image_laws_over_all_functions():
    x = discrete_carrier(2)
    for f in all_functions(x, x):
        assert not bad_checks(image_laws(f)), f.table
        assert not bad_checks(canonical_preimage_laws(f)), f.table


def test_product_laws():
    assert not bad_checks(product_laws(discrete_carrier(2), discrete_carrier(1)))


@pytest.mark.parametrize("size, full", [(1, True), (2, True), (3, False)])
def test_point_laws(size, full):
    assert not bad_checks(point_laws(discrete_carrier(size), full_points=full))


def test_binary_operations_by_name():
    x = discrete_carrier(3)
    a = make_complemented(x.subset(["0"]), x.subset(["1"]))
    b = from_members(x, ["1"], ["2"])
    assert a == from_members(x, ["0"], ["1"])
    for kind, op in (
        ("union", cs_union),
        ("intersection", cs_intersection),
        ("difference", cs_difference),
    ):
        assert cs_binary(kind, a, b) == op(a, b)
    for kind in ("union", "intersection"):
        assert cs_family(kind, [a, b]) == cs_binary(kind, a, b)
    assert cs_binary("product", a, b) == cs_product(a, b)
    with pytest.raises(ValueError):
        cs_binary("symmetric-difference", a, b)


def test_order_and_poles():
    x = discrete_carrier(3)
    a = from_members(x, ["0"], ["1"])
    order = cs_order(cs_intersection(a, a), a)
    assert order.leq and order.eq
    order = cs_order(zero_of(x), a)
    assert order.leq and not order.eq
    poles = zeros_ones(a)
    assert poles.zero_X == zero_of(x) and poles.one_X == one_of(x)
    assert poles.zero_A == local_zero(a) and poles.one_A == local_one(a)
    assert poles.dom.members == frozenset({"0", "1"})


def test_potential_points():
    x = discrete_carrier(2)
    family = [from_members(x, ["0"], ["1"])]
    found = potential_points(family, x)
    assert found
    assert all(p.co.members >= frozenset({"1"}) for p in found)
    assert [p.x for p in found] == ["0"]
    assert len(potential_points([], x)) == len(all_points(x))
