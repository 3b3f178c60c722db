from fractions import Fraction
import math

from hypothesis import given, strategies as st
import pytest

from cstop.intervals import IntervalSet, nonnegative, sample_points


def test_adjacent_open_intervals_stay_apart():
    s = IntervalSet.open(-1, 0) | IntervalSet.open(0, 1)
    assert len(s) == 2
    assert 0 not in s
    assert s | IntervalSet.point(0) == IntervalSet.open(-1, 1)


def test_closed_end_meets_open_start():
    s = IntervalSet.interval(0, 1, end_closed=True) | IntervalSet.open(1, 2)
    assert s == IntervalSet.open(0, 2)


def test_complement_of_a_ball():
    ball = IntervalSet.open(-1, 1)
    outside = ball.complement()
    assert -1 in outside and 1 in outside and 0 not in outside
    assert outside.to_json() == ["(-inf,-1/1]", "[1/1,inf)"]
    assert outside.complement() == ball


def test_intersection_and_difference():
    a, b = IntervalSet.open(0, 2), IntervalSet.closed(1, 3)
    assert a & b == IntervalSet.interval(1, 2, start_closed=True)
    assert a.difference(b) == IntervalSet.open(0, 1)
    assert IntervalSet.open(0, 1) <= a
    assert not a <= IntervalSet.open(0, 1)
    assert IntervalSet.open(0, 1).isdisjoint(IntervalSet.open(1, 2))


def test_everything_and_empty():
    assert IntervalSet.everything().complement() == IntervalSet.empty()
    assert not IntervalSet.empty()
    assert IntervalSet.everything().boundary == []
    assert nonnegative().boundary == [Fraction(0)]


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (2, 0, IntervalSet.open(Fraction(-1, 2), Fraction(1, 2))),
        (-1, 0, IntervalSet.open(-1, 1)),
        (0, 0, IntervalSet.everything()),
        (0, 5, IntervalSet.empty()),
        (1, 1, IntervalSet.open(-2, 0)),
    ],
)
def test_preimage_affine(a, b, expected):
    assert IntervalSet.open(-1, 1).preimage_affine(a, b) == expected


def test_preimage_of_an_unbounded_set():
    s = IntervalSet.interval(0, math.inf, start_closed=True)
    assert s.preimage_affine(-1, 0) == IntervalSet.interval(
        -math.inf, 0, end_closed=True
    )


def test_sample_points_lie_inside():
    s = IntervalSet.open(0, 1) | IntervalSet.interval(5, math.inf)
    points = sample_points(s, extra=[Fraction(1, 2), Fraction(3)])
    assert points and all(p in s for p in points)
    assert Fraction(3) not in points
    assert sample_points(IntervalSet.point(2)) == [Fraction(2)]


bounds = st.fractions(min_value=-10, max_value=10)


@st.composite
def interval_sets(draw):
    spans = draw(st.lists(st.tuples(bounds, bounds, st.booleans()), max_size=4))
    out = IntervalSet.empty()
    for a, b, closed in spans:
        lo, hi = min(a, b), max(a, b)
        out = out | IntervalSet.interval(lo, hi, closed, closed)
    return out


@given(interval_sets(), interval_sets())
def test_de_morgan(a, b):
    assert (a | b).complement() == a.complement() & b.complement()


@given(interval_sets(), bounds)
def test_point_is_in_exactly_one_part(s, x):
    assert (x in s) != (x in s.complement())
