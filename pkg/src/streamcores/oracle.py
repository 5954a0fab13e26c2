"""Brute-force reference implementations over per-tick samples.

Everything here trades speed for obviousness: streams are expanded to
(tick, node) samples, core properties are re-checked sample by sample,
and closures are enumerated over the whole pattern lattice. Intended
for validating the interval-based engines on small instances only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Mapping, Set, Tuple

from .context import AttributeContext, Pattern
from .cores import CoreSpec
from .stream import StaticGraph, StreamGraph, TimeNodeSet

Sample = Tuple[int, str]

SAMPLE_BUDGET = 10_000


@dataclass(frozen=True)
class DiscretizedStream:
    """Per-tick expansion of a stream graph."""

    directed: bool
    samples: FrozenSet[Sample]
    edges_at: Mapping[int, Tuple[Tuple[str, str], ...]]


def discretize(stream: StreamGraph) -> DiscretizedStream:
    samples: Set[Sample] = set()
    for v in stream.nodes:
        for a, b in stream.presence(v).spans:
            for t in range(a, b):
                samples.add((t, v))
    if len(samples) > SAMPLE_BUDGET:
        raise ValueError(f"{len(samples)} samples exceed the oracle budget {SAMPLE_BUDGET}")
    edges: Dict[int, list] = {}
    for (u, v), ivs in stream.interaction_items():
        for a, b in ivs.spans:
            for t in range(a, b):
                edges.setdefault(t, []).append((u, v))
    return DiscretizedStream(
        directed=stream.directed,
        samples=frozenset(samples),
        edges_at={t: tuple(sorted(pairs)) for t, pairs in edges.items()},
    )


def sample_set(tns: TimeNodeSet) -> FrozenSet[Sample]:
    out: Set[Sample] = set()
    for v, ivs in tns.items():
        for a, b in ivs.spans:
            for t in range(a, b):
                out.add((t, v))
    return frozenset(out)


def _star_satellite_pass(d: DiscretizedStream, x: FrozenSet[Sample], k: int) -> FrozenSet[Sample]:
    keep: Set[Sample] = set()
    degree: Dict[Sample, int] = {}
    active: Dict[int, list] = {}
    for t, pairs in d.edges_at.items():
        live = [(u, v) for u, v in pairs if (t, u) in x and (t, v) in x]
        if live:
            active[t] = live
        for u, v in live:
            degree[(t, u)] = degree.get((t, u), 0) + 1
            degree[(t, v)] = degree.get((t, v), 0) + 1
    for s in x:
        if degree.get(s, 0) >= k:
            keep.add(s)
    for t, pairs in active.items():
        for u, v in pairs:
            if degree.get((t, u), 0) >= k:
                keep.add((t, v))
            if degree.get((t, v), 0) >= k:
                keep.add((t, u))
    return frozenset(keep)


def _bha_pass(
    d: DiscretizedStream,
    x1: FrozenSet[Sample],
    x2: FrozenSet[Sample],
    h: int,
    a: int,
) -> Tuple[FrozenSet[Sample], FrozenSet[Sample]]:
    outdeg: Dict[Sample, int] = {}
    indeg: Dict[Sample, int] = {}
    for t, pairs in d.edges_at.items():
        for u, v in pairs:
            if (t, u) in x1 and (t, v) in x2:
                outdeg[(t, u)] = outdeg.get((t, u), 0) + 1
                indeg[(t, v)] = indeg.get((t, v), 0) + 1
    keep1 = frozenset(s for s in x1 if outdeg.get(s, 0) >= h)
    keep2 = frozenset(s for s in x2 if indeg.get(s, 0) >= a)
    return keep1, keep2


def brute_bicore(
    d: DiscretizedStream,
    x1: FrozenSet[Sample],
    x2: FrozenSet[Sample],
    h: int,
    a: int,
) -> Tuple[FrozenSet[Sample], FrozenSet[Sample]]:
    while True:
        n1, n2 = _bha_pass(d, x1, x2, h, a)
        if n1 == x1 and n2 == x2:
            return x1, x2
        x1, x2 = n1, n2


def brute_core(d: DiscretizedStream, x: FrozenSet[Sample], spec: CoreSpec) -> FrozenSet[Sample]:
    """Greatest fixed point by literal repeated removal of violating samples."""
    x = frozenset(x)
    if spec.kind == "identity":
        return x
    if spec.kind == "star-sat":
        if spec.k == 0:
            return x
        while True:
            nxt = _star_satellite_pass(d, x, spec.k)
            if nxt == x:
                return x
            x = nxt
    h1, h2 = brute_bicore(d, x, x, spec.h, spec.a)
    return h1 | h2


def brute_enumerate(
    d: DiscretizedStream,
    ctx: AttributeContext,
    spec: CoreSpec,
    min_support: int,
    count_nodes: bool = False,
) -> FrozenSet[Tuple[Pattern, FrozenSet[Sample]]]:
    """Closures of every pattern, deduplicated by support, kept when large enough."""
    universe = ctx.universe
    if len(universe) > 12:
        raise ValueError("pattern lattice too large for exhaustive enumeration")
    if min_support <= 0:
        raise ValueError("minimum support must be positive")
    found: Set[Tuple[Pattern, FrozenSet[Sample]]] = set()
    for mask in range(universe.full_mask + 1):
        ext = frozenset(s for s in d.samples if ctx.description(s[1]) & mask == mask)
        core = brute_core(d, ext, spec)
        size = len({v for _, v in core}) if count_nodes else len(core)
        if size < min_support:
            continue
        closed = universe.full_mask
        for _, v in core:
            closed &= ctx.description(v)
        found.add((closed, core))
    return frozenset(found)


# -- static graphs -----------------------------------------------------------


def brute_static_core(graph: StaticGraph, x: FrozenSet[str], spec: CoreSpec) -> FrozenSet[str]:
    x = frozenset(x)
    if spec.kind == "identity":
        return x
    if spec.kind == "star-sat":
        if spec.k == 0:
            return x
        while True:
            degree = {v: 0 for v in x}
            for u, v in graph.edges:
                if u in x and v in x:
                    degree[u] += 1
                    degree[v] += 1
            stars = {v for v, deg in degree.items() if deg >= spec.k}
            keep = set(stars)
            for u, v in graph.edges:
                if u in x and v in x:
                    if u in stars:
                        keep.add(v)
                    if v in stars:
                        keep.add(u)
            keep = frozenset(keep)
            if keep == x:
                return x
            x = keep
    hubs = auths = x
    while True:
        outdeg = {v: 0 for v in hubs}
        indeg = {v: 0 for v in auths}
        for u, v in graph.edges:
            if u in hubs and v in auths:
                outdeg[u] += 1
                indeg[v] += 1
        n1 = frozenset(v for v in hubs if outdeg[v] >= spec.h)
        n2 = frozenset(v for v in auths if indeg[v] >= spec.a)
        if n1 == hubs and n2 == auths:
            return hubs | auths
        hubs, auths = n1, n2


def brute_static_enumerate(
    graph: StaticGraph,
    ctx: AttributeContext,
    spec: CoreSpec,
    min_support: int,
) -> FrozenSet[Tuple[Pattern, FrozenSet[str]]]:
    universe = ctx.universe
    if len(universe) > 12:
        raise ValueError("pattern lattice too large for exhaustive enumeration")
    found: Set[Tuple[Pattern, FrozenSet[str]]] = set()
    for mask in range(universe.full_mask + 1):
        ext = frozenset(v for v in graph.nodes if ctx.description(v) & mask == mask)
        core = brute_static_core(graph, ext, spec)
        if len(core) < min_support:
            continue
        closed = universe.full_mask
        for v in core:
            closed &= ctx.description(v)
        found.add((closed, core))
    return frozenset(found)
