"""Interaction-stream data model.

A stream holds a finite tick horizon, a set of nodes with presence
intervals, and per-pair interaction intervals. Undirected pairs are
stored under their sorted key; directed streams keep ordered (src, dst)
keys plus separate in/out adjacency. Everything is immutable after
construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .intervals import EMPTY, IntervalSet, Span


class TimeNodeSet:
    """A set of (tick, node) points stored as node -> IntervalSet.

    Canonical form keeps only nodes whose interval set is nonempty, so
    equal point sets compare (and hash) equal.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[str, IntervalSet] = ()) -> None:
        self._entries = {v: ivs for v, ivs in dict(entries).items() if ivs}

    @classmethod
    def _raw(cls, entries: Dict[str, IntervalSet]) -> "TimeNodeSet":
        # caller guarantees all interval sets nonempty
        out = object.__new__(cls)
        out._entries = entries
        return out

    @classmethod
    def empty(cls) -> "TimeNodeSet":
        return cls._raw({})

    def nodes(self) -> Tuple[str, ...]:
        return tuple(sorted(self._entries))

    def get(self, node: str) -> IntervalSet:
        return self._entries.get(node, EMPTY)

    def items(self) -> Iterator[Tuple[str, IntervalSet]]:
        for v in sorted(self._entries):
            yield v, self._entries[v]

    def measure(self) -> int:
        """Total node-ticks."""
        return sum(ivs.measure() for ivs in self._entries.values())

    def node_count(self) -> int:
        return len(self._entries)

    def union(self, other: "TimeNodeSet") -> "TimeNodeSet":
        merged = dict(self._entries)
        for v, ivs in other._entries.items():
            cur = merged.get(v)
            merged[v] = ivs if cur is None else cur.union(ivs)
        return TimeNodeSet._raw(merged)

    def intersect(self, other: "TimeNodeSet") -> "TimeNodeSet":
        out = {}
        small, big = self._entries, other._entries
        if len(big) < len(small):
            small, big = big, small
        for v, ivs in small.items():
            o = big.get(v)
            if o is not None:
                got = ivs.intersect(o)
                if got:
                    out[v] = got
        return TimeNodeSet._raw(out)

    def difference(self, other: "TimeNodeSet") -> "TimeNodeSet":
        out = {}
        for v, ivs in self._entries.items():
            got = ivs.subtract(other.get(v))
            if got:
                out[v] = got
        return TimeNodeSet._raw(out)

    def issubset(self, other: "TimeNodeSet") -> bool:
        return all(ivs.issubset(other.get(v)) for v, ivs in self._entries.items())

    def restrict(self, nodes: Iterable[str]) -> "TimeNodeSet":
        keep = set(nodes)
        return TimeNodeSet._raw({v: ivs for v, ivs in self._entries.items() if v in keep})

    def __contains__(self, node: str) -> bool:
        return node in self._entries

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TimeNodeSet):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        return hash(frozenset(self._entries.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{v}:{ivs!r}" for v, ivs in self.items())
        return f"TimeNodeSet({body})"


class StreamGraph:
    """Nodes with presence intervals plus timed pairwise interactions."""

    __slots__ = ("directed", "horizon", "nodes", "_presence", "_pairs", "_adj", "_in_adj")

    def __init__(
        self,
        interactions: Mapping[Tuple[str, str], Iterable[Span]],
        presence: Optional[Mapping[str, Iterable[Span]]] = None,
        horizon: Optional[Span] = None,
        directed: bool = False,
        nodes: Iterable[str] = (),
    ) -> None:
        self.directed = directed
        pairs: Dict[Tuple[str, str], IntervalSet] = {}
        for (u, v), spans in interactions.items():
            if u == v:
                if not directed:
                    raise ValueError(f"self-interaction on node {u!r} in an undirected stream")
            elif not directed and u > v:
                u, v = v, u
            ivs = spans if isinstance(spans, IntervalSet) else IntervalSet(spans)
            if not ivs:
                continue
            key = (u, v)
            prev = pairs.get(key)
            pairs[key] = ivs if prev is None else prev.union(ivs)

        names = set(nodes)
        for u, v in pairs:
            names.add(u)
            names.add(v)

        default_presence: Dict[str, IntervalSet] = {}
        for (u, v), ivs in pairs.items():
            for w in (u, v):
                cur = default_presence.get(w, EMPTY)
                default_presence[w] = cur.union(ivs)

        if presence is None:
            pres = default_presence
        else:
            pres = {}
            for v, spans in presence.items():
                ivs = spans if isinstance(spans, IntervalSet) else IntervalSet(spans)
                if ivs:
                    pres[v] = ivs
                names.add(v)
            for v, needed in default_presence.items():
                if not needed.issubset(pres.get(v, EMPTY)):
                    raise ValueError(
                        f"presence of node {v!r} does not cover its interaction intervals"
                    )

        names.update(pres)
        self.nodes: Tuple[str, ...] = tuple(sorted(names))
        self._presence = pres
        self._pairs = pairs

        lo: Optional[int] = None
        hi: Optional[int] = None
        for ivs in pres.values():
            b = ivs.bounds()
            if b is not None:
                lo = b[0] if lo is None else min(lo, b[0])
                hi = b[1] if hi is None else max(hi, b[1])
        if horizon is None:
            self.horizon: Span = (lo, hi) if lo is not None else (0, 0)
        else:
            if lo is not None and (lo < horizon[0] or hi > horizon[1]):
                raise ValueError(
                    f"intervals [{lo},{hi}) fall outside the declared horizon {horizon}"
                )
            self.horizon = (int(horizon[0]), int(horizon[1]))

        adj: Dict[str, Dict[str, IntervalSet]] = {v: {} for v in self.nodes}
        in_adj: Dict[str, Dict[str, IntervalSet]] = {v: {} for v in self.nodes} if directed else adj
        for (u, v), ivs in pairs.items():
            adj[u][v] = ivs
            in_adj[v][u] = ivs
        self._adj = adj
        self._in_adj = in_adj

    def presence(self, node: str) -> IntervalSet:
        if node not in self._adj:
            raise KeyError(f"unknown node {node!r}")
        return self._presence.get(node, EMPTY)

    def presence_set(self) -> TimeNodeSet:
        return TimeNodeSet._raw(dict(self._presence))

    def pair(self, u: str, v: str) -> IntervalSet:
        """Interaction intervals of a pair (u -> v when directed)."""
        if not self.directed and u > v:
            u, v = v, u
        return self._pairs.get((u, v), EMPTY)

    def interaction_items(self) -> Iterator[Tuple[Tuple[str, str], IntervalSet]]:
        for key in sorted(self._pairs):
            yield key, self._pairs[key]

    def adjacency(self, node: str) -> Mapping[str, IntervalSet]:
        """Neighbors with interaction intervals (out-neighbors when directed)."""
        return self._adj[node]

    def in_adjacency(self, node: str) -> Mapping[str, IntervalSet]:
        if not self.directed:
            raise ValueError("in-adjacency is only defined for directed streams")
        return self._in_adj[node]

    def interaction_count(self) -> int:
        return len(self._pairs)

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return (
            f"StreamGraph({kind}, |V|={len(self.nodes)}, pairs={len(self._pairs)}, "
            f"horizon={self.horizon})"
        )


@dataclass(frozen=True)
class StaticGraph:
    """Time-collapsed graph: an edge wherever a pair interacts at least once."""

    nodes: Tuple[str, ...]
    edges: frozenset
    directed: bool = False

    def neighbors(self, node: str) -> Tuple[str, ...]:
        if self.directed:
            raise ValueError("use out_neighbors/in_neighbors on a directed graph")
        out = [v for u, v in self.edges if u == node] + [u for u, v in self.edges if v == node]
        return tuple(sorted(out))

    def out_neighbors(self, node: str) -> Tuple[str, ...]:
        return tuple(sorted(v for u, v in self.edges if u == node))

    def in_neighbors(self, node: str) -> Tuple[str, ...]:
        return tuple(sorted(u for u, v in self.edges if v == node))


Event = Tuple[int, str, int]  # (tick, other node, +1 start / -1 end)


@dataclass(frozen=True)
class AdjacencyEventTable:
    """Per-node interaction events sorted by time.

    Ties at the same tick put ends (-1) before starts (+1), then sort by
    the other node's id. For directed streams `inbound` carries the
    mirror table; it is None otherwise.
    """

    events: Mapping[str, Tuple[Event, ...]]
    inbound: Optional[Mapping[str, Tuple[Event, ...]]] = None


def _event_list(adjacency: Mapping[str, IntervalSet]) -> Tuple[Event, ...]:
    events: List[Event] = []
    for other, ivs in adjacency.items():
        for a, b in ivs.spans:
            events.append((a, other, 1))
            events.append((b, other, -1))
    events.sort(key=lambda e: (e[0], e[2], e[1]))
    return tuple(events)


def build_event_table(stream: StreamGraph) -> AdjacencyEventTable:
    out = {v: _event_list(stream.adjacency(v)) for v in stream.nodes}
    if not stream.directed:
        return AdjacencyEventTable(events=out)
    inbound = {v: _event_list(stream.in_adjacency(v)) for v in stream.nodes}
    return AdjacencyEventTable(events=out, inbound=inbound)


def induced_substream(stream: StreamGraph, wp: TimeNodeSet) -> StreamGraph:
    """Substream induced by a time-node subset of the presence set."""
    if not wp.issubset(stream.presence_set()):
        raise ValueError("the inducing set is not contained in the stream's presence")
    interactions = {}
    for (u, v), ivs in stream.interaction_items():
        clipped = ivs.intersect(wp.get(u)).intersect(wp.get(v))
        if clipped:
            interactions[(u, v)] = clipped
    return StreamGraph(
        interactions,
        presence={v: ivs for v, ivs in wp.items()},
        horizon=stream.horizon,
        directed=stream.directed,
        nodes=wp.nodes(),
    )


def induced_substream_between(stream: StreamGraph, w1: TimeNodeSet, w2: TimeNodeSet) -> StreamGraph:
    """Directed substream keeping interactions from w1 into w2."""
    if not stream.directed:
        raise ValueError("two-sided induction needs a directed stream")
    w = stream.presence_set()
    if not (w1.issubset(w) and w2.issubset(w)):
        raise ValueError("the inducing sets are not contained in the stream's presence")
    interactions = {}
    for (u, v), ivs in stream.interaction_items():
        clipped = ivs.intersect(w1.get(u)).intersect(w2.get(v))
        if clipped:
            interactions[(u, v)] = clipped
    union = w1.union(w2)
    return StreamGraph(
        interactions,
        presence={v: ivs for v, ivs in union.items()},
        horizon=stream.horizon,
        directed=True,
        nodes=union.nodes(),
    )


def induced_static_graph(stream: StreamGraph) -> StaticGraph:
    edges = frozenset(key for key, _ in stream.interaction_items())
    names = sorted({n for pair in edges for n in pair})
    return StaticGraph(nodes=tuple(names), edges=edges, directed=stream.directed)


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant integer function over the stream horizon."""

    segments: Tuple[Tuple[int, int, int], ...]  # (start, end, value), contiguous

    def value(self, tick: int) -> int:
        for a, b, val in self.segments:
            if a <= tick < b:
                return val
        raise ValueError(f"tick {tick} outside the profiled horizon")

    def breakpoints(self) -> Tuple[int, ...]:
        return tuple(seg[0] for seg in self.segments[1:])


def degree_profile(stream: StreamGraph, node: str, direction: Optional[str] = None) -> StepFunction:
    """Number of distinct active neighbors of `node` as a function of time.

    `direction` must be None for undirected streams and "out" or "in"
    for directed ones.
    """
    if stream.directed:
        if direction == "out":
            adjacency = stream.adjacency(node)
        elif direction == "in":
            adjacency = stream.in_adjacency(node)
        else:
            raise ValueError("directed streams need direction='out' or 'in'")
    else:
        if direction is not None:
            raise ValueError("undirected streams take no direction")
        adjacency = stream.adjacency(node)

    alpha, omega = stream.horizon
    events: List[Tuple[int, int]] = []
    for ivs in adjacency.values():
        for a, b in ivs.spans:
            events.append((a, 1))
            events.append((b, -1))
    events.sort()

    segments: List[Tuple[int, int, int]] = []
    cursor, count = alpha, 0
    i, n = 0, len(events)
    while i < n:
        t = events[i][0]
        if t > cursor:
            segments.append((cursor, t, count))
            cursor = t
        while i < n and events[i][0] == t:
            count += events[i][1]
            i += 1
    if cursor < omega or not segments:
        segments.append((cursor, omega, count))
    # merge equal-valued neighbors produced by touching intervals
    merged: List[Tuple[int, int, int]] = []
    for seg in segments:
        if merged and merged[-1][2] == seg[2] and merged[-1][1] == seg[0]:
            merged[-1] = (merged[-1][0], seg[1], seg[2])
        else:
            merged.append(seg)
    return StepFunction(tuple(merged))
