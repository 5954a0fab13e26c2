"""Exact algebra on finite unions of half-open integer intervals.

Time is measured in integer ticks. An interval [a, b) covers the ticks
a, a+1, ..., b-1, so its measure is b - a. The canonical form (sorted,
pairwise disjoint, maximally merged, no empty pieces) is unique for a
given point set, which makes structural equality set equality.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Tuple

Span = Tuple[int, int]


def _normalize(spans: Iterable[Span]) -> Tuple[Span, ...]:
    cleaned = []
    for a, b in spans:
        if not isinstance(a, int) or not isinstance(b, int):
            raise TypeError(f"interval endpoints must be integers, got ({a!r}, {b!r})")
        if a > b:
            raise ValueError(f"interval start {a} exceeds end {b}")
        if a < b:
            cleaned.append((a, b))
    cleaned.sort()
    merged: list[Span] = []
    for a, b in cleaned:
        if merged and a <= merged[-1][1]:
            if b > merged[-1][1]:
                merged[-1] = (merged[-1][0], b)
        else:
            merged.append((a, b))
    return tuple(merged)


class IntervalSet:
    """Immutable canonical union of half-open integer intervals."""

    __slots__ = ("_spans",)

    def __init__(self, spans: Iterable[Span] = ()) -> None:
        self._spans = _normalize(spans)

    @classmethod
    def _raw(cls, spans: Tuple[Span, ...]) -> "IntervalSet":
        # internal fast path; caller guarantees canonical input
        out = object.__new__(cls)
        out._spans = spans
        return out

    @classmethod
    def span(cls, start: int, end: int) -> "IntervalSet":
        return cls(((start, end),))

    @property
    def spans(self) -> Tuple[Span, ...]:
        return self._spans

    def measure(self) -> int:
        """Total number of ticks covered."""
        return sum(b - a for a, b in self._spans)

    def bounds(self) -> Optional[Span]:
        """Smallest enclosing span, or None when empty."""
        if not self._spans:
            return None
        return (self._spans[0][0], self._spans[-1][1])

    def contains(self, tick: int) -> bool:
        spans = self._spans
        lo, hi = 0, len(spans)
        while lo < hi:
            mid = (lo + hi) // 2
            a, b = spans[mid]
            if tick < a:
                hi = mid
            elif tick >= b:
                lo = mid + 1
            else:
                return True
        return False

    def union(self, other: "IntervalSet") -> "IntervalSet":
        if not self._spans:
            return other
        if not other._spans:
            return self
        xs, ys = self._spans, other._spans
        i = j = 0
        merged: list[Span] = []
        while i < len(xs) or j < len(ys):
            if j >= len(ys) or (i < len(xs) and xs[i] <= ys[j]):
                a, b = xs[i]
                i += 1
            else:
                a, b = ys[j]
                j += 1
            if merged and a <= merged[-1][1]:
                if b > merged[-1][1]:
                    merged[-1] = (merged[-1][0], b)
            else:
                merged.append((a, b))
        return IntervalSet._raw(tuple(merged))

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        xs, ys = self._spans, other._spans
        i = j = 0
        out: list[Span] = []
        while i < len(xs) and j < len(ys):
            a = max(xs[i][0], ys[j][0])
            b = min(xs[i][1], ys[j][1])
            if a < b:
                out.append((a, b))
            if xs[i][1] <= ys[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet._raw(tuple(out))

    def subtract(self, other: "IntervalSet") -> "IntervalSet":
        if not other._spans or not self._spans:
            return self
        ys = other._spans
        out: list[Span] = []
        j = 0
        for a, b in self._spans:
            cur = a
            while j < len(ys) and ys[j][1] <= cur:
                j += 1
            k = j
            while k < len(ys) and ys[k][0] < b:
                c, d = ys[k]
                if cur < c:
                    out.append((cur, c))
                cur = max(cur, d)
                if d >= b:
                    break
                k += 1
            if cur < b:
                out.append((cur, b))
        return IntervalSet._raw(tuple(out))

    def issubset(self, other: "IntervalSet") -> bool:
        j = 0
        ys = other._spans
        for a, b in self._spans:
            while j < len(ys) and ys[j][1] < b:
                j += 1
            if j >= len(ys) or ys[j][0] > a or ys[j][1] < b:
                return False
        return True

    __or__ = union
    __and__ = intersect
    __sub__ = subtract

    def __bool__(self) -> bool:
        return bool(self._spans)

    def __len__(self) -> int:
        return len(self._spans)

    def __iter__(self) -> Iterator[Span]:
        return iter(self._spans)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._spans == other._spans

    def __hash__(self) -> int:
        return hash(self._spans)

    def __repr__(self) -> str:
        body = " ".join(f"[{a},{b})" for a, b in self._spans) or "{}"
        return f"IntervalSet({body})"


EMPTY = IntervalSet()


def coverage_at_least(sets: Iterable[IntervalSet], k: int) -> IntervalSet:
    """Ticks covered by at least k of the given interval sets.

    The sweep processes start/end events in time order; between events the
    coverage count is constant, so the result's endpoints are a subset of
    the input endpoints.
    """
    if k <= 0:
        raise ValueError("coverage threshold must be positive")
    events: list[Tuple[int, int]] = []
    for ivs in sets:
        for a, b in ivs.spans:
            events.append((a, 1))
            events.append((b, -1))
    events.sort()
    spans: list[Span] = []
    count = 0
    open_start: Optional[int] = None
    i, n = 0, len(events)
    while i < n:
        t = events[i][0]
        while i < n and events[i][0] == t:
            count += events[i][1]
            i += 1
        if open_start is None and count >= k:
            open_start = t
        elif open_start is not None and count < k:
            spans.append((open_start, t))
            open_start = None
    # every start event is balanced by an end event, so the region closes
    return IntervalSet._raw(tuple(spans))
