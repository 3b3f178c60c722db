import itertools

import pytest

from cstop.setineq import (
    all_functions,
    apartness_carrier,
    apartness_carriers,
    carrier_laws,
    check_inverse_adjoint,
    classify_function,
    classify_tightness,
    compose,
    composition_laws,
    direct_image,
    discrete_carrier,
    empty_subset,
    extensional_carriers,
    find_partners,
    identity,
    image_laws,
    inverse_image,
    make_function,
    neq_complement,
    neq_complement_laws,
    neq_image_laws,
    product_carrier,
    product_laws,
    relation_holds,
    require,
    subset_op,
    tightness_laws,
    validate_carrier,
)
from cstop.utils import (
    CapabilityError,
    CarrierError,
    CarrierMismatch,
    FunctionError,
    NotExtensional,
)


def all_ok(checks):
    return all(c.ok for c in checks), [c for c in checks if not c.ok]


def test_discrete_carrier_flags():
    x = discrete_carrier(3)
    assert x.elements == ("0", "1", "2")
    assert x.is_inequality and x.is_extensional and x.is_tight
    assert x.is_symmetric and x.is_cotransitive and x.is_discrete
    assert x.is_apartness


def test_carrier_with_coarse_equality():
    x = validate_carrier(["a", "b", "c"], [["a", "b"], ["c"]])
    assert x.eq("a", "b")
    assert x.apart("a", "c") and not x.apart("a", "b")
    assert x.subset(["a"]).members == frozenset({"a", "b"})


def test_non_tight_apartness():
    # 0 and 1 are not equal but not apart either
    x = apartness_carrier(["0", "1", "2"], [["0"], ["1"], ["2"]], [["0", "1"], ["2"]])
    assert x.is_apartness
    assert not x.is_tight
    assert not x.is_discrete


@pytest.mark.parametrize(
    "elements, equality, inequality",
    [
        (["0", "0"], None, None),
        (["0", "1"], [["0"]], None),
        (["0", "1"], [["0", "1"], ["1"]], None),
        (["0", "1"], None, [("0", "2")]),
        (["0", "1"], [["0", "1"]], [("0", "1")]),
    ],
)
def test_validate_carrier_rejects(elements, equality, inequality):
    with pytest.raises(CarrierError):
        validate_carrier(elements, equality, inequality)


def test_empty_subset_is_empty():
    for x in apartness_carriers(3):
        assert not empty_subset(x)


def test_extensional_carriers_are_extensional():
    carriers = list(extensional_carriers(2))
    assert carriers
    assert all(c.is_extensional and c.is_inequality for c in carriers)


def test_neq_complement_of_singleton():
    x = discrete_carrier(3)
    assert neq_complement(x.subset(["0"])).members == frozenset({"1", "2"})
    assert neq_complement(x.nothing) == x.universe


def test_neq_complement_needs_extensional_inequality():
    x = validate_carrier(["a", "b", "c"], [["a", "b"], ["c"]], [("c", "a"), ("a", "c")])
    assert not x.is_extensional
    with pytest.raises(NotExtensional):
        neq_complement(x.subset(["c"]))


def test_images():
    x, y = discrete_carrier(3), discrete_carrier(2)
    f = make_function(x, y, {"0": "0", "1": "0", "2": "1"})
    assert direct_image(f, x.subset(["0", "1"])).members == frozenset({"0"})
    assert inverse_image(f, y.subset(["0"])).members == frozenset({"0", "1"})
    with pytest.raises(CarrierMismatch):
        inverse_image(f, x.subset(["0"]))


def test_make_function_rejects():
    x = validate_carrier(["a", "b"], [["a", "b"]])
    y = discrete_carrier(2)
    with pytest.raises(FunctionError):
        make_function(x, y, {"a": "0"})
    with pytest.raises(FunctionError):
        make_function(x, y, {"a": "0", "b": "1"})
    with pytest.raises(FunctionError):
        make_function(y, x, {"0": "a", "1": "z"})


def test_classify_function():
    x, y = discrete_carrier(2), discrete_carrier(2)
    swap = make_function(x, y, {"0": "1", "1": "0"})
    flags = classify_function(swap)
    assert flags.strongly_extensional and flags.injection and flags.surjection
    assert flags.strong_injection and flags.embedding
    const = make_function(x, y, {"0": "0", "1": "0"})
    flags = classify_function(const)
    assert flags.strongly_extensional
    assert not flags.injection and not flags.surjection
    with pytest.raises(CapabilityError):
        require(const, "injection")


def test_function_out_of_non_apart_carrier_is_not_strongly_extensional():
    x = apartness_carrier(["0", "1"], [["0"], ["1"]], [["0", "1"]])
    y = discrete_carrier(2)
    f = make_function(x, y, {"0": "0", "1": "1"})
    assert not classify_function(f).strongly_extensional


def test_inverse_relations():
    x = discrete_carrier(2)
    swap = make_function(x, x, {"0": "1", "1": "0"})
    assert relation_holds("inverse", swap, swap)
    assert relation_holds("ineq_adjoint", swap, swap)
    assert find_partners("inverse", swap) and len(find_partners("inverse", swap)) == 1
    const = make_function(x, x, {"0": "0", "1": "0"})
    assert find_partners("left_inverse", const) == []


def test_compose_and_identity():
    x = discrete_carrier(2)
    swap = make_function(x, x, {"0": "1", "1": "0"}, name="s")
    twice = compose(swap, swap)
    assert twice.table == identity(x).table
    assert twice.name == "s.s"


def test_product_carrier():
    p = product_carrier(discrete_carrier(2), discrete_carrier(2))
    assert len(p) == 4
    assert p.apart(("0", "0"), ("0", "1"))
    assert p.is_discrete


def test_tightness_on_discrete_carrier():
    x = discrete_carrier(2)
    flags = classify_tightness(x.subset(["0"]))
    assert flags.one_tight and flags.zero_tight and flags.neq_stable


def test_tightness_on_non_tight_carrier():
    x = apartness_carrier(["0", "1"], [["0"], ["1"]], [["0", "1"]])
    flags = classify_tightness(x.subset(["0"]))
    assert not flags.one_tight


@pytest.mark.parametrize("size", [1, 2, 3])
def test_carrier_law_suites(size):
    for x in apartness_carriers(size):
        for laws in (carrier_laws, neq_complement_laws, tightness_laws):
            ok, bad = all_ok(laws(x))
            assert ok, bad


def test_image_law_suites_over_all_functions():
    carriers = [discrete_carrier(1), discrete_carrier(2)] + list(apartness_carriers(2))
    for x, y in itertools.product(carriers, repeat=2):
        for f in all_functions(x, y):
            for laws in (image_laws, neq_image_laws):
                ok, bad = all_ok(laws(f))
                assert ok, (f.table, bad)


def test_composition_and_product_laws():
    x = discrete_carrier(2)
    for f, g in itertools.product(list(all_functions(x, x)), repeat=2):
        ok, bad = all_ok(composition_laws(f, g))
        assert ok, bad
    ok, bad = all_ok(product_laws(x, discrete_carrier(1)))
    assert ok, bad


def test_subset_op_dispatch():
    x, y = discrete_carrier(3), discrete_carrier(2)
    f = make_function(x, y, {"0": "0", "1": "0", "2": "1"})
    a, b = x.subset(["0"]), x.subset(["1"])
    assert subset_op("union", a, b).members == frozenset({"0", "1"})
    assert subset_op("intersection", a, b).members == frozenset()
    assert subset_op("neq_complement", a).members == frozenset({"1", "2"})
    assert subset_op("weak_complement", a).members == frozenset({"1", "2"})
    assert subset_op("direct_image", f, a).members == frozenset({"0"})
    assert subset_op("inverse_image", f, y.subset(["1"])).members == frozenset({"2"})
    assert len(subset_op("product", a, y.universe).members) == 2
    with pytest.raises(ValueError):
        subset_op("closure", a)


def test_identity_satisfies_every_adjoint_relation():
    x = discrete_carrier(3)
    for relation in ("left_inverse", "right_inverse", "inverse", "ineq_adjoint"):
        report = check_inverse_adjoint(relation, identity(x), identity(x))
        assert report.holds
        assert report.conclusions and report.ok


def test_inverse_adjoint_reports():
    x = discrete_carrier(3)
    cycle = make_function(x, x, {"0": "1", "1": "2", "2": "0"})
    back = make_function(x, x, {"0": "2", "1": "0", "2": "1"})
    report = check_inverse_adjoint("inverse", cycle, back)
    assert report.holds and report.ok
    ids = [c.check_id for c in report.conclusions]
    assert "inverse:injection-iff-strongly-extensional-inverse" in ids
    const = make_function(x, x, {"0": "0", "1": "0", "2": "0"})
    for g in all_functions(x, x):
        assert not check_inverse_adjoint("left_inverse", const, g).holds
    assert check_inverse_adjoint("left_inverse", const, back).conclusions == []
    y = discrete_carrier(2)
    with pytest.raises(CarrierMismatch):
        check_inverse_adjoint("inverse", cycle, make_function(y, x, {"0": "0", "1": "1"}))
