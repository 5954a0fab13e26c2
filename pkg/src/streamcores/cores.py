"""Interior (core) operators on time-node sets and their static counterparts.

star_satellite_core keeps the time-nodes that, inside the induced
substream, either have at least k simultaneous neighbors (stars) or
touch such a node (satellites). One removal pass is enough: a star's
neighbors all qualify as satellites, so no star loses degree when the
non-qualifying time-nodes are dropped.

The hub/authority bi-core on directed streams prunes the hub side by
out-degree and the authority side by in-degree, alternating passes on
the substream induced by the current pair until nothing changes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Set, Tuple

from .intervals import IntervalSet, coverage_at_least
from .stream import StaticGraph, StreamGraph, TimeNodeSet


@dataclass(frozen=True)
class CoreSpec:
    """Which core operator to run, with its thresholds."""

    kind: str  # "identity" | "star-sat" | "ha"
    k: int = 0
    h: int = 0
    a: int = 0

    def __post_init__(self):
        if self.kind not in ("identity", "star-sat", "ha"):
            raise ValueError(f"unknown core kind {self.kind!r}")
        if min(self.k, self.h, self.a) < 0:
            raise ValueError("core thresholds must be non-negative")

    @classmethod
    def identity(cls) -> "CoreSpec":
        return cls("identity")

    @classmethod
    def star_satellite(cls, k: int) -> "CoreSpec":
        return cls("star-sat", k=k)

    @classmethod
    def hub_authority(cls, h: int, a: int) -> "CoreSpec":
        return cls("ha", h=h, a=a)

    @classmethod
    def parse(cls, text: str) -> "CoreSpec":
        """Parse "identity", "star-sat:K" or "ha:H,A"."""
        name, _, args = text.strip().partition(":")
        try:
            if name == "identity" and not args:
                return cls.identity()
            if name == "star-sat":
                return cls.star_satellite(int(args))
            if name == "ha":
                h, a = args.split(",")
                return cls.hub_authority(int(h), int(a))
        except ValueError as err:
            raise ValueError(f"bad core spec {text!r}: {err}") from None
        raise ValueError(f"bad core spec {text!r}")

    def __str__(self) -> str:
        if self.kind == "identity":
            return "identity"
        if self.kind == "star-sat":
            return f"star-sat:{self.k}"
        return f"ha:{self.h},{self.a}"


@dataclass(frozen=True)
class BiCoreResult:
    """Both sides of a bi-core: stars/hubs on the left, satellites/authorities on the right."""

    left: TimeNodeSet
    right: TimeNodeSet

    def flattened(self) -> TimeNodeSet:
        return self.left.union(self.right)


def _clipped_pairs(stream: StreamGraph, wp: TimeNodeSet) -> Dict[str, list]:
    """Per-node neighbor intervals inside the substream induced by wp."""
    active: Dict[str, list] = {}
    for u in wp.nodes():
        own = wp.get(u)
        for v, ivs in stream.adjacency(u).items():
            if v <= u or v not in wp:
                continue
            clipped = ivs.intersect(own).intersect(wp.get(v))
            if clipped:
                active.setdefault(u, []).append((v, clipped))
                active.setdefault(v, []).append((u, clipped))
    return active


def star_satellite_split(stream: StreamGraph, wp: TimeNodeSet, k: int) -> BiCoreResult:
    """Stars and satellites of the k-star-satellite core, separately."""
    if stream.directed:
        raise ValueError("star-satellite cores are defined on undirected streams")
    if k < 0:
        raise ValueError("k must be non-negative")

    active = _clipped_pairs(stream, wp)
    stars: Dict[str, IntervalSet] = {}
    if k == 0:
        stars = {v: wp.get(v) for v in wp.nodes()}
    else:
        for u, nbrs in active.items():
            got = coverage_at_least([ivs for _, ivs in nbrs], k)
            if got:
                stars[u] = got

    sats: Dict[str, IntervalSet] = {}
    for u, nbrs in active.items():
        star_iv = stars.get(u)
        if not star_iv:
            continue
        for v, ivs in nbrs:
            got = ivs.intersect(star_iv)
            if got:
                cur = sats.get(v)
                sats[v] = got if cur is None else cur.union(got)
    return BiCoreResult(TimeNodeSet(stars), TimeNodeSet(sats))


def star_satellite_core(stream: StreamGraph, wp: TimeNodeSet, k: int) -> TimeNodeSet:
    """Greatest subset of wp whose members are all stars or satellites at their times."""
    return star_satellite_split(stream, wp, k).flattened()


def _prune_side(
    stream: StreamGraph,
    keep: TimeNodeSet,
    opposite: TimeNodeSet,
    threshold: int,
    incoming: bool,
) -> TimeNodeSet:
    if threshold == 0:
        return keep
    out: Dict[str, IntervalSet] = {}
    for u in keep.nodes():
        adjacency = stream.in_adjacency(u) if incoming else stream.adjacency(u)
        clipped = []
        own = keep.get(u)
        for v, ivs in adjacency.items():
            other = opposite.get(v)
            if other:
                got = ivs.intersect(own).intersect(other)
                if got:
                    clipped.append(got)
        if clipped:
            got = coverage_at_least(clipped, threshold)
            if got:
                out[u] = got
    return TimeNodeSet._raw(out)


def bha_bicore(
    stream: StreamGraph, w1: TimeNodeSet, w2: TimeNodeSet, h: int, a: int
) -> BiCoreResult:
    """Greatest (hubs, authorities) pair of a directed stream.

    Hubs need out-degree >= h towards the authority side, authorities
    need in-degree >= a from the hub side, both inside the substream the
    pair induces; a node present on both sides must satisfy both.
    """
    if not stream.directed:
        raise ValueError("hub-authority cores are defined on directed streams")
    if h < 0 or a < 0:
        raise ValueError("thresholds must be non-negative")

    # each changing pass removes at least one atom of some node's intervals
    atoms = sum(len(ivs.spans) * 2 for _, ivs in w1.items())
    atoms += sum(len(ivs.spans) * 2 for _, ivs in w2.items())
    atoms += sum(len(ivs.spans) * 2 for _, ivs in stream.interaction_items())
    cap = (len(stream.nodes) + 1) * (atoms + 2)

    hubs, auths = w1, w2
    for _ in range(cap):
        new_hubs = _prune_side(stream, hubs, auths, h, incoming=False)
        new_auths = _prune_side(stream, auths, new_hubs, a, incoming=True)
        if new_hubs == hubs and new_auths == auths:
            return BiCoreResult(hubs, auths)
        hubs, auths = new_hubs, new_auths
    raise RuntimeError("bi-core pruning failed to reach a fixed point within its bound")


def ha_core(stream: StreamGraph, x: TimeNodeSet, h: int, a: int) -> TimeNodeSet:
    """Flattened hub-authority core: union of the two bi-core sides on (x, x)."""
    return bha_bicore(stream, x, x, h, a).flattened()


def apply_core(spec: CoreSpec, stream: StreamGraph, x: TimeNodeSet) -> TimeNodeSet:
    if spec.kind == "identity":
        return x
    if spec.kind == "star-sat":
        return star_satellite_core(stream, x, spec.k)
    return ha_core(stream, x, spec.h, spec.a)


# -- static counterparts ----------------------------------------------------


def _static_adjacency(graph: StaticGraph) -> Dict[str, Set[str]]:
    adj: Dict[str, Set[str]] = {v: set() for v in graph.nodes}
    for u, v in graph.edges:
        adj[u].add(v)
        if not graph.directed:
            adj[v].add(u)
    return adj


def static_star_satellite_core(graph: StaticGraph, x: Iterable[str], k: int) -> FrozenSet[str]:
    """Time-collapsed analogue: degree counted in the induced subgraph."""
    if graph.directed:
        raise ValueError("star-satellite cores are defined on undirected graphs")
    if k < 0:
        raise ValueError("k must be non-negative")
    members = frozenset(x)
    if k == 0:
        return members
    adj = _static_adjacency(graph)
    degree = {v: len(adj.get(v, ()) & members) for v in members if v in adj}
    stars = {v for v, d in degree.items() if d >= k}
    sats = {v for v in members if v in adj and adj[v] & stars}
    return frozenset(stars | sats)


def static_bha_bicore(
    graph: StaticGraph, x1: Iterable[str], x2: Iterable[str], h: int, a: int
) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    if not graph.directed:
        raise ValueError("hub-authority cores are defined on directed graphs")
    hubs, auths = set(x1), set(x2)
    out_adj: Dict[str, Set[str]] = {v: set() for v in graph.nodes}
    in_adj: Dict[str, Set[str]] = {v: set() for v in graph.nodes}
    for u, v in graph.edges:
        out_adj[u].add(v)
        in_adj[v].add(u)
    while True:
        new_hubs = hubs if h == 0 else {
            v for v in hubs if len(out_adj.get(v, set()) & auths) >= h
        }
        new_auths = auths if a == 0 else {
            v for v in auths if len(in_adj.get(v, set()) & new_hubs) >= a
        }
        if new_hubs == hubs and new_auths == auths:
            return frozenset(hubs), frozenset(auths)
        hubs, auths = new_hubs, new_auths


def static_ha_core(graph: StaticGraph, x: Iterable[str], h: int, a: int) -> FrozenSet[str]:
    hubs, auths = static_bha_bicore(graph, x, x, h, a)
    return hubs | auths


def apply_static_core(spec: CoreSpec, graph: StaticGraph, x: Iterable[str]) -> FrozenSet[str]:
    if spec.kind == "identity":
        return frozenset(x)
    if spec.kind == "star-sat":
        return static_star_satellite_core(graph, x, spec.k)
    return static_ha_core(graph, x, spec.h, spec.a)
