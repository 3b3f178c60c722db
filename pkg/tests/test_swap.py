import pytest

from cstop.complemented import enumerate_complemented, from_members, one_of
from cstop.reports import SKIPPED
from cstop.setineq import apartness_carrier, discrete_carrier
from cstop.swap import (
    boolean_algebra,
    boolean_laws,
    check_distributivity,
    check_field,
    check_swap_axioms,
    close_family,
    cs_as_swap_algebra,
    distributivity_laws,
    model_from_family,
    swap_suite,
    total_elements,
)
from cstop.utils import EmptyFamily, SizeCapExceeded, ValidationError


def by_id(checks):
    return {c.check_id: c for c in checks}


@pytest.mark.parametrize("size", [1, 2, 3])
def test_complemented_subsets_form_a_type_one_swap_algebra(size):
    model = cs_as_swap_algebra(discrete_carrier(size))
    checks = by_id(check_swap_axioms(model, expect_type_ii=False))
    assert all(c.ok for c in checks.values()), [c for c in checks.values() if not c.ok]
    assert checks["absorption"].ok
    # the type II failure is reported with its witness
    assert checks["local-poles-agree"].witness is not None


def test_type_two_fails_when_demanded():
    model = cs_as_swap_algebra(discrete_carrier(1))
    checks = by_id(check_swap_axioms(model, expect_type_ii=True))
    assert not checks["local-poles-agree"].ok


def test_empty_carrier_collapses():
    model = cs_as_swap_algebra(discrete_carrier(0))
    assert len(model) == 1
    checks = by_id(check_swap_axioms(model, expect_type_ii=True))
    assert not checks["zero-apart-from-one"].ok
    assert checks["local-poles-agree"].ok
    suite = by_id(swap_suite(discrete_carrier(0), 64))
    assert suite["zero-apart-from-one"].status == SKIPPED
    assert all(c.ok for c in suite.values() if c.status != SKIPPED)


def test_boolean_algebra_passes_everything():
    model = boolean_algebra(2)
    assert len(model) == 4
    assert all(c.ok for c in check_swap_axioms(model))
    assert all(c.ok for c in boolean_laws(model))


@pytest.mark.parametrize("size, total", [(1, 2), (2, 4), (3, 8)])
def test_total_elements_are_boolean(size, total):
    tot = total_elements(cs_as_swap_algebra(discrete_carrier(size)))
    assert len(tot) == total
    assert all(c.ok for c in boolean_laws(tot))


def test_swap_model_cap():
    with pytest.raises(SizeCapExceeded):
        cs_as_swap_algebra(discrete_carrier(3), cap=20)


def test_model_needs_closed_family():
    x = discrete_carrier(2)
    with pytest.raises(ValidationError):
        model_from_family([from_members(x, ["0"], ["1"])])
    with pytest.raises(EmptyFamily):
        model_from_family([])


def test_field():
    x = discrete_carrier(2)
    a = from_members(x, ["0"], ["1"])
    report = check_field([a])
    assert not report.is_field
    closed = close_family([a])
    assert one_of(x) in closed
    assert check_field(closed).is_field
    assert check_field(enumerate_complemented(x)).is_field


def test_distributivity():
    x = discrete_carrier(2)
    a = from_members(x, ["0"], [])
    family = [from_members(x, ["1"], ["0"])]
    assert check_distributivity("bishop", a, family).ok
    assert check_distributivity("D_I", a, family).ok
    with pytest.raises(EmptyFamily):
        check_distributivity("bishop", a, [])


def test_distributivity_laws():
    assert all(c.ok for c in distributivity_laws(discrete_carrier(2)))


@pytest.mark.parametrize(
    "carrier",
    [
        discrete_carrier(2),
        apartness_carrier(["0", "1"], [["0"], ["1"]], [["0", "1"]]),
    ],
)
def test_swap_suite(carrier):
    assert all(c.ok for c in swap_suite(carrier, 64))
