"""Finite unions of rational intervals on the line, kept in a normal form.

Each interval is a pair of endpoints ``(value, eps)``. ``eps`` is 0 for a
closed endpoint, 1 for an open start and -1 for an open end, so starts and
ends of either kind compare with plain tuple ordering. Unbounded ends use
``-inf`` / ``inf`` and are always open.
"""
from dataclasses import dataclass
from fractions import Fraction
import logging
import math
from typing import Iterable, Iterator, List, Optional, Tuple, Union

from cstop.utils import format_rational


logger = logging.getLogger(__name__)


Value = Union[Fraction, float]
Endpoint = Tuple[Value, int]
Span = Tuple[Endpoint, Endpoint]

NEG_INF: Endpoint = (-math.inf, 1)
POS_INF: Endpoint = (math.inf, -1)


def _value(v) -> Value:
    if isinstance(v, float) and math.isinf(v):
        return v
    return Fraction(v)


def _merge(spans: Iterable[Span]) -> Tuple[Span, ...]:
    spans = sorted(s for s in spans if s[0] <= s[1])
    if not spans:
        return ()
    out = []
    start, end = spans[0]
    for nxt_start, nxt_end in spans[1:]:
        if nxt_start <= (end[0], end[1] + 1):
            end = max(end, nxt_end)
        else:
            out.append((start, end))
            start, end = nxt_start, nxt_end
    out.append((start, end))
    return tuple(out)


@dataclass(frozen=True)
class IntervalSet:
    """Sorted, merged, non-empty intervals. Equal sets have equal spans."""

    spans: Tuple[Span, ...] = ()

    @classmethod
    def of(cls, spans: Iterable[Span]) -> "IntervalSet":
        return cls(_merge(spans))

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    @classmethod
    def everything(cls) -> "IntervalSet":
        return cls(((NEG_INF, POS_INF),))

    @classmethod
    def interval(
        cls,
        start: Value,
        end: Value,
        start_closed: bool = False,
        end_closed: bool = False,
    ) -> "IntervalSet":
        start, end = _value(start), _value(end)
        s = (start, 0 if start_closed and not math.isinf(start) else 1)
        e = (end, 0 if end_closed and not math.isinf(end) else -1)
        return cls.of([(s, e)])

    @classmethod
    def open(cls, start: Value, end: Value) -> "IntervalSet":
        return cls.interval(start, end)

    @classmethod
    def closed(cls, start: Value, end: Value) -> "IntervalSet":
        return cls.interval(start, end, True, True)

    @classmethod
    def point(cls, x: Value) -> "IntervalSet":
        return cls.closed(x, x)

    def __bool__(self) -> bool:
        return bool(self.spans)

    def __iter__(self) -> Iterator[Span]:
        return iter(self.spans)

    def __len__(self) -> int:
        return len(self.spans)

    def __contains__(self, x) -> bool:
        point = (Fraction(x), 0)
        return any(start <= point <= end for start, end in self.spans)

    def union(self, *others: "IntervalSet") -> "IntervalSet":
        spans = list(self.spans)
        for other in others:
            spans.extend(other.spans)
        return IntervalSet.of(spans)

    def intersection(self, *others: "IntervalSet") -> "IntervalSet":
        out = self
        for other in others:
            out = IntervalSet.of(
                (max(s1, s2), min(e1, e2))
                for s1, e1 in out.spans
                for s2, e2 in other.spans
            )
        return out

    def complement(self) -> "IntervalSet":
        gaps = []
        cursor = NEG_INF
        for start, end in self.spans:
            gaps.append((cursor, (start[0], start[1] - 1)))
            cursor = (end[0], end[1] + 1)
        gaps.append((cursor, POS_INF))
        return IntervalSet.of(gaps)

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        return self.intersection(other.complement())

    def issubset(self, other: "IntervalSet") -> bool:
        return not self.difference(other)

    __or__ = union
    __and__ = intersection
    __le__ = issubset

    def isdisjoint(self, other: "IntervalSet") -> bool:
        return not self.intersection(other)

    @property
    def boundary(self) -> List[Fraction]:
        """Finite endpoint values, sorted."""
        out = set()
        for start, end in self.spans:
            for v, _ in (start, end):
                if not math.isinf(v):
                    out.add(v)
        return sorted(out)

    def preimage_affine(self, a: Fraction, b: Fraction) -> "IntervalSet":
        """{x : a*x + b in self}."""
        a, b = Fraction(a), Fraction(b)
        if a == 0:
            return IntervalSet.everything() if b in self else IntervalSet.empty()

        def pull(v: Value) -> Value:
            if math.isinf(v):
                return v if a > 0 else -v
            return (v - b) / a

        spans = []
        for (sv, se), (ev, ee) in self.spans:
            if a > 0:
                spans.append(((pull(sv), se), (pull(ev), ee)))
            else:
                spans.append(((pull(ev), -ee), (pull(sv), -se)))
        return IntervalSet.of(spans)

    def __repr__(self) -> str:
        if not self.spans:
            return "{}"
        return " u ".join(_format_span(span) for span in self.spans)

    def to_json(self) -> List[str]:
        return [_format_span(span) for span in self.spans]


def _format_value(v: Value) -> str:
    if math.isinf(v):
        return "-inf" if v < 0 else "inf"
    return format_rational(v)


def _format_span(span: Span) -> str:
    (sv, se), (ev, ee) = span
    left = "[" if se == 0 else "("
    right = "]" if ee == 0 else ")"
    return f"{left}{_format_value(sv)},{_format_value(ev)}{right}"


def nonnegative() -> IntervalSet:
    return IntervalSet.interval(0, math.inf, start_closed=True)


def sample_points(
    s: IntervalSet, extra: Optional[Iterable[Fraction]] = None
) -> List[Fraction]:
    """Points of ``s`` near every finite endpoint and inside every interval,
    plus whichever of ``extra`` lie in ``s``."""
    candidates = set()
    for (sv, _), (ev, _) in s.spans:
        lo = sv if not math.isinf(sv) else (ev - 4 if not math.isinf(ev) else Fraction(-4))
        hi = ev if not math.isinf(ev) else lo + 8
        for k in (0, 1, 2, 3, 4):
            candidates.add(lo + (hi - lo) * Fraction(k, 4))
        width = hi - lo
        for k in (1000, 10**6):
            candidates.add(lo + width / k)
            candidates.add(hi - width / k)
    for x in extra or ():
        candidates.add(Fraction(x))
    return sorted(x for x in candidates if x in s)
