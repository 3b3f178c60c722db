from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest

from cstop.complemented import from_members
from cstop.generators import random_metric
from cstop.intervals import IntervalSet
from cstop.metric import (
    LINE,
    Const,
    OpennessModulus,
    ball,
    ball_laws,
    ball_modulus,
    ball_union_set,
    combine_modulus,
    combine_registered,
    copoint,
    covering_check,
    check_Td_open,
    leq,
    line_exactness_laws,
    meet,
    join,
    metric_base_moduli,
    openness_laws,
    order_fact_laws,
    pole_one,
    pole_zero,
    register_ball,
    standard_registry,
    union_side_conditions,
    validate_metric,
)
from cstop.schema import parse_document
from cstop.utils import (
    CarrierMismatch,
    InvalidModulus,
    MetricError,
    UndefinedPoint,
    ValidationError,
)


def two_points():
    return validate_metric(["a", "b"], [[0, 2], [2, 0]], name="AB")


def three_points():
    return validate_metric(
        ["a", "b", "c"], [[0, 1, 2], [1, 0, 1], [2, 1, 0]], name="ABC"
    )


def all_ok(checks):
    return all(c.ok for c in checks), [c for c in checks if not c.ok]


@pytest.mark.parametrize(
    "matrix",
    [
        [[0, 1]],
        [[1, 1], [1, 0]],
        [[0, -1], [-1, 0]],
        [[0, 1], [2, 0]],
    ],
)
def test_validate_metric_rejects(matrix):
    with pytest.raises(MetricError):
        validate_metric(["a", "b"], matrix)


def test_triangle_inequality_witness():
    with pytest.raises(MetricError) as err:
        validate_metric(["a", "b", "c"], [[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    assert len(err.value.witness) == 3


def test_zero_distance_means_equal():
    space = validate_metric(["a", "b"], [[0, 0], [0, 0]])
    assert space.carrier.eq("a", "b")
    assert space.carrier.is_tight


def test_finite_ball():
    space = two_points()
    b = ball(space, "a", 1)
    assert b.open == from_members(space.carrier, ["a"], ["b"])
    assert ball(space, "a", 3).open == from_members(space.carrier, ["a", "b"], [])


@pytest.mark.parametrize("radius", [0, -1])
def test_ball_radius_must_be_positive(radius):
    with pytest.raises(MetricError):
        ball(LINE, 0, radius)


def test_ball_center_must_be_a_point():
    with pytest.raises(MetricError):
        ball(two_points(), "z", 1)


def test_line_ball():
    b = ball(LINE, 0, 1).open
    assert b.one == IntervalSet.open(-1, 1)
    assert 1 in b.zero and -1 in b.zero and Fraction(1, 2) not in b.zero
    assert b.to_json()["balls"] == [{"center": "0/1", "radius": "1/1"}]


def test_ball_inclusion_on_the_line():
    half = ball(LINE, Fraction(1, 2), Fraction(1, 2))
    assert leq(half.open, ball(LINE, 0, 1).open)
    assert not leq(ball(LINE, 1, 1).open, ball(LINE, 0, 1).open)


def test_ball_modulus_values():
    op = ball_modulus(ball(LINE, 0, 1))
    assert op(Fraction(1, 2)) == Fraction(1, 2)
    assert op(0) == 1
    with pytest.raises(UndefinedPoint):
        op(1)


def test_combined_modulus_values():
    b02, b12 = ball(LINE, 0, 2), ball(LINE, 1, 2)
    inter = combine_modulus("intersection_min", ball_modulus(b02), ball_modulus(b12))
    assert inter(1) == 1
    union = combine_modulus(
        "union_max", ball_modulus(ball(LINE, 0, 1)), ball_modulus(ball(LINE, 3, 2))
    )
    assert union(0) == 1
    assert combine_modulus("copoint_half", LINE, 0)(3) == Fraction(3, 2)
    assert combine_modulus("pole_const_one", LINE)(Fraction(-7)) == 1
    with pytest.raises(ValueError):
        combine_modulus("projection", LINE)


def test_moduli_must_share_a_space():
    with pytest.raises(CarrierMismatch):
        combine_modulus(
            "intersection_min",
            ball_modulus(ball(LINE, 0, 1)),
            ball_modulus(ball(two_points(), "a", 1)),
        )


def test_disjoint_union_modulus():
    left, right = ball(LINE, -2, 1), ball(LINE, 2, 1)
    op = combine_modulus("disjoint_union", ball_modulus(left), ball_modulus(right))
    assert op(2) == 1 and op(-2) == 1
    g = join(left.open, right.open)
    assert check_Td_open(LINE, g, op).ok
    with pytest.raises(ValidationError):
        combine_modulus(
            "disjoint_union", ball_modulus(left), ball_modulus(ball(LINE, -1, 1))
        )


@pytest.mark.parametrize("method", ["auto", "exact", "sampled"])
def test_balls_are_open(method):
    b = ball(LINE, Fraction(1, 3), 2)
    assert check_Td_open(LINE, b.open, ball_modulus(b), method=method).ok


def test_poles_are_open():
    for space in (LINE, three_points()):
        assert check_Td_open(
            space, pole_one(space), combine_modulus("pole_const_one", space)
        ).ok
        assert check_Td_open(
            space, pole_zero(space), combine_modulus("coempty_half_self", space)
        ).ok


def test_weak_threshold_is_not_open():
    space = three_points()
    g = from_members(space.carrier, ["a", "b"], ["c"])
    op = OpennessModulus(space, Const(Fraction(2)), g.one, label="two")
    result = check_Td_open(space, g, op)
    assert not result.ok
    assert result.witness == {"point": "b", "radius": 2}


def test_non_positive_modulus_is_reported():
    space = three_points()
    b = ball(space, "a", 2)
    op = OpennessModulus(space, Const(Fraction(0)), b.open.one, label="zero")
    with pytest.raises(InvalidModulus):
        check_Td_open(space, b.open, op)


def test_modulus_domain_must_match():
    space = three_points()
    op = ball_modulus(ball(space, "a", 2))
    with pytest.raises(InvalidModulus):
        check_Td_open(space, ball(space, "c", 1).open, op)


def test_covering():
    b, c = ball(LINE, 0, 1), ball(LINE, 3, 2)
    assert covering_check(LINE, b.open, ball_modulus(b)).ok
    union = combine_modulus("union_max", ball_modulus(b), ball_modulus(c))
    assert covering_check(LINE, join(b.open, c.open), union).ok
    d = ball(LINE, Fraction(1, 2), 1)
    inter = combine_modulus("intersection_min", ball_modulus(b), ball_modulus(d))
    assert covering_check(LINE, meet(b.open, d.open), inter).ok


def test_copoint_on_a_finite_space():
    space = three_points()
    g = copoint(space, "a")
    assert g == from_members(space.carrier, ["b", "c"], ["a"])
    op = combine_modulus("copoint_half", space, "a")
    assert check_Td_open(space, g, op).ok


def test_metric_base():
    space = three_points()
    base = metric_base_moduli(space)
    assert base.ok, [c for c in base.checks if not c.ok]
    assert base.beta_whole("a").open == ball(space, "a", 1).open
    line_base = metric_base_moduli(LINE, samples=8)
    assert line_base.ok
    assert line_base.beta_whole(0).open == ball(LINE, 0, 1).open
    pair = line_base.beta_pair(ball(LINE, 0, 2), ball(LINE, 1, 2), 1)
    assert pair.radius == 1 and pair.center == 1
    with pytest.raises(UndefinedPoint):
        line_base.beta_pair(ball(LINE, 0, 1), ball(LINE, 5, 1), 0)
    with pytest.raises(UndefinedPoint):
        line_base.beta_empty(0)


def test_registry_shares_moduli():
    registry = standard_registry(LINE)
    first = register_ball(registry, ball(LINE, 0, 1))
    again = register_ball(registry, ball(LINE, 0, 1))
    assert first is again
    assert registry.lookup(pole_one(LINE)).label == "one"
    b = ball(LINE, 1, 1)
    register_ball(registry, b)
    target, op = combine_registered(
        registry, "intersection_min", ball(LINE, 0, 1).open, b.open
    )
    assert registry.lookup(target) is op
    assert op(Fraction(1, 2)) == Fraction(1, 2)


def test_ball_union_set_of_nothing_is_empty():
    assert ball_union_set([]) == pole_zero(LINE)
    g = ball_union_set([(0, 1), (1, 1)])
    assert g.one == IntervalSet.open(-1, 2)


@pytest.mark.parametrize("space", [two_points, three_points])
def test_finite_law_suites(space):
    s = space()
    for laws in (
        ball_laws(s),
        openness_laws(s),
        openness_laws(s, covering=True),
    ):
        ok, bad = all_ok(laws)
        assert ok, bad


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=10_000))
def test_random_metric_law_suites(n, seed):
    space = parse_document(random_metric(n, seed=seed)).metric
    for laws in (ball_laws(space), openness_laws(space, covering=True)):
        ok, bad = all_ok(laws)
        assert ok, bad


def test_line_law_suites():
    for laws in (
        ball_laws(LINE, samples=8, seed=3),
        openness_laws(LINE, samples=8, seed=3),
        openness_laws(LINE, samples=8, seed=3, covering=True),
        order_fact_laws(samples=16, seed=3),
        line_exactness_laws(samples=8, seed=3, grid=200),
    ):
        ok, bad = all_ok(laws)
        assert ok, bad


def test_union_side_conditions():
    space = three_points()
    b, c = ball(space, "a", 1), ball(space, "c", 1)
    checks = union_side_conditions(
        space, b.open, c.open, ball_modulus(b), ball_modulus(c)
    )
    ok, bad = all_ok(checks)
    assert ok, bad


def test_exact_line_scan_rejects_a_narrow_constant():
    b = ball(LINE, 0, 1)
    op = OpennessModulus(LINE, Const(Fraction(1, 2)), b.open.one, label="half")
    result = check_Td_open(LINE, b.open, op, method="exact")
    assert not result.ok
    assert result.witness == {"point": Fraction(-5, 6), "radius": Fraction(1, 2)}


@pytest.mark.parametrize("seed", [0, 3, 11])
def test_line_exactness_covers_invalid_moduli(seed):
    laws = line_exactness_laws(samples=8, seed=seed, grid=200)
    checks = {c.check_id: c for c in laws}
    rejected = checks["line-exact-rejects-invalid"]
    assert rejected.ok, rejected
    assert rejected.cases == 1 + 2
    assert checks["line-exact-agrees-with-grid"].cases == 2 + 1
