import pytest

from cstop.complemented import (
    ComplementedSubset,
    from_members,
    one_of,
    zero_of,
)
from cstop.setineq import (
    apartness_carrier,
    discrete_carrier,
    identity,
    make_function,
)
from cstop.topology import (
    ModulusRegistry,
    closed_and_clopen,
    discrete_topology,
    is_cs_continuous,
    is_homeomorphism,
    map_laws,
    quotient_topology,
    relative_family,
    relative_topology,
    sierpinski,
    topology_laws,
    trivial_topology,
    validate_topology,
)
from cstop.utils import (
    AxiomViolation,
    CapabilityError,
    CarrierMismatch,
    UnregisteredModulus,
)


def test_trivial_and_sierpinski_are_valid():
    x = discrete_carrier(3)
    assert len(trivial_topology(x)) == 2
    s = sierpinski()
    assert len(s) == 3
    assert ComplementedSubset(s.carrier.subset(["0"]), s.carrier.subset(["1"])) in s


def test_duplicate_opens_collapse():
    x = discrete_carrier(2)
    t = validate_topology(x, [one_of(x), zero_of(x), one_of(x)])
    assert len(t) == 2


@pytest.mark.parametrize(
    "family, axiom",
    [
        (lambda x: [one_of(x)], "contains-bottom"),
        (lambda x: [zero_of(x)], "contains-top"),
        (
            lambda x: [
                one_of(x),
                zero_of(x),
                from_members(x, ["0"], []),
                from_members(x, ["1"], []),
            ],
            "closed-under-intersection",
        ),
        (
            lambda x: [
                one_of(x),
                zero_of(x),
                from_members(x, ["0"], ["1"]),
                from_members(x, [], ["1"]),
                from_members(x, [], []),
            ],
            "closed-under-unions",
        ),
    ],
)
def test_axiom_violations(family, axiom):
    x = discrete_carrier(2)
    with pytest.raises(AxiomViolation) as err:
        validate_topology(x, family(x))
    assert err.value.axiom == axiom


def test_opens_must_share_the_carrier():
    x, y = discrete_carrier(1), discrete_carrier(1)
    with pytest.raises(CarrierMismatch):
        validate_topology(x, [one_of(x), zero_of(y)])


@pytest.mark.parametrize(
    "space, clopen",
    [
        (lambda: discrete_topology(discrete_carrier(2)), 9),
        (sierpinski, 2),
        (lambda: trivial_topology(discrete_carrier(2)), 2),
    ],
)
def test_clopen(space, clopen):
    report = closed_and_clopen(space())
    assert len(report.clopen) == clopen
    assert all(c.ok for c in report.swap_checks), [
        c for c in report.swap_checks if not c.ok
    ]


def test_relative_topology_on_everything_is_unchanged():
    s = sierpinski()
    assert set(relative_family(s, s.carrier.universe)) == set(s.opens)


def test_relative_topology_on_a_point():
    s = sierpinski()
    r = relative_topology(s, s.carrier.subset(["0"]))
    assert len(r.carrier) == 1
    assert len(r) == 2
    assert one_of(r.carrier) in r and zero_of(r.carrier) in r


def test_quotients():
    x = discrete_carrier(2)
    t = discrete_topology(x)
    assert set(quotient_topology(t, identity(x)).opens) == set(t.opens)
    point = discrete_carrier(1)
    const = make_function(x, point, {"0": "0", "1": "0"})
    assert len(quotient_topology(t, const)) == 3
    assert len(quotient_topology(trivial_topology(x), const)) == 2
    s = sierpinski()
    indicator = make_function(x, s.carrier, {"0": "0", "1": "1"})
    q = quotient_topology(t, indicator)
    assert from_members(s.carrier, ["0"], ["1"]) in q


def test_continuity():
    x = discrete_carrier(2)
    s = sierpinski()
    indicator = make_function(x, s.carrier, {"0": "0", "1": "1"}, name="chi")
    assert is_cs_continuous(indicator, discrete_topology(x), s).continuous
    # every preimage of a pole is a pole
    trivial = trivial_topology(s.carrier)
    assert is_cs_continuous(indicator, trivial_topology(x), trivial).continuous
    report = is_cs_continuous(identity(s.carrier), s, discrete_topology(s.carrier))
    assert not report.continuous
    assert any(not c.ok for c in report.per_open)
    assert report.open_map is not None


def test_continuity_needs_matching_spaces():
    x = discrete_carrier(2)
    with pytest.raises(CarrierMismatch):
        is_cs_continuous(identity(x), sierpinski(), sierpinski())


def test_continuity_needs_strong_extensionality():
    y = apartness_carrier(["0", "1"], [["0"], ["1"]], [["0", "1"]])
    x = discrete_carrier(2)
    f = make_function(y, x, {"0": "0", "1": "1"})
    with pytest.raises(CapabilityError):
        is_cs_continuous(f, discrete_topology(y), discrete_topology(x))


def test_homeomorphisms():
    x = discrete_carrier(2)
    t = discrete_topology(x)
    swap = make_function(x, x, {"0": "1", "1": "0"})
    assert is_homeomorphism(swap, swap, t, t)
    s = sierpinski()
    assert is_homeomorphism(identity(s.carrier), identity(s.carrier), s, s)
    flip = make_function(s.carrier, s.carrier, {"0": "1", "1": "0"})
    assert not is_homeomorphism(flip, flip, s, s)


@pytest.mark.parametrize(
    "space", [sierpinski, lambda: discrete_topology(discrete_carrier(2))]
)
def test_topology_laws(space):
    checks = topology_laws(space())
    assert all(c.ok for c in checks), [c for c in checks if not c.ok]


def test_map_laws():
    x = discrete_carrier(2)
    s = sierpinski()
    chi = make_function(x, s.carrier, {"0": "0", "1": "1"}, name="chi")
    flip = make_function(s.carrier, s.carrier, {"0": "1", "1": "0"}, name="flip")
    checks = map_laws(chi, discrete_topology(x), s, flip)
    assert all(c.ok for c in checks), [c for c in checks if not c.ok]


def test_registry_is_first_wins():
    x = discrete_carrier(2)
    registry = ModulusRegistry()
    first, second = object(), object()
    assert registry.register(one_of(x), first) is first
    assert registry.register(one_of(x), second) is first
    assert one_of(x) in registry and len(registry) == 1
    with pytest.raises(UnregisteredModulus):
        registry.lookup(zero_of(x))
