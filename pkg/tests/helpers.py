"""Shared generators and invariant checks for the test suite."""

from __future__ import annotations

import random
from typing import List, Tuple

from streamcores import (
    AttributeContext,
    ClosedPatternRecord,
    CoreSpec,
    IntervalSet,
    ItemUniverse,
    MinerConfig,
    StreamGraph,
    TimeNodeSet,
    apply_core,
)
from streamcores.context import extent, intent

NODE_NAMES = ["a", "b", "c", "d", "e"]


def random_stream(
    rng: random.Random,
    *,
    directed: bool = False,
    max_nodes: int = 5,
    max_intervals: int = 12,
    max_tick: int = 20,
    allow_empty: bool = False,
) -> StreamGraph:
    n = rng.randint(2, max_nodes)
    names = NODE_NAMES[:n]
    pairs = {}
    lo = 0 if allow_empty else 1
    for _ in range(rng.randint(lo, max_intervals)):
        u, v = rng.sample(names, 2)
        a = rng.randint(0, max_tick - 1)
        b = rng.randint(a + 1, max_tick)
        key = (u, v) if directed else tuple(sorted((u, v)))
        pairs.setdefault(key, []).append((a, b))
    return StreamGraph(pairs, directed=directed, nodes=names)


def random_context(rng: random.Random, stream: StreamGraph, max_items: int = 6) -> AttributeContext:
    count = rng.randint(1, max_items)
    universe = ItemUniverse([f"i{j}" for j in range(count)])
    return AttributeContext(
        universe, {v: rng.getrandbits(count) for v in stream.nodes}
    )


def random_core_spec(rng: random.Random, directed: bool) -> CoreSpec:
    if directed:
        return CoreSpec.hub_authority(rng.randint(0, 2), rng.randint(0, 2))
    return CoreSpec.star_satellite(rng.randint(0, 3))


def random_subset(rng: random.Random, base: TimeNodeSet, max_tick: int = 20) -> TimeNodeSet:
    """A random time-node subset of `base`."""
    entries = {}
    for v, ivs in base.items():
        if rng.random() < 0.15:
            continue
        picks = []
        for _ in range(rng.randint(1, 3)):
            a = rng.randint(0, max_tick)
            b = rng.randint(a, max_tick + 1)
            picks.append((a, b))
        got = ivs.intersect(IntervalSet(picks))
        if got:
            entries[v] = got
    return TimeNodeSet(entries)


def random_nested_pair(
    rng: random.Random, base: TimeNodeSet
) -> Tuple[TimeNodeSet, TimeNodeSet]:
    bigger = random_subset(rng, base)
    smaller = random_subset(rng, bigger)
    return smaller, bigger


def mining_records(
    stream: StreamGraph,
    ctx: AttributeContext,
    cfg: MinerConfig,
) -> List[ClosedPatternRecord]:
    from streamcores import mine
    return [rec for rec in mine(stream, ctx, cfg) if not rec.below_min_support]


def assert_mining_invariants(records, stream, ctx, cfg) -> None:
    """Soundness, uniqueness and tree-shape checks on a finished run."""
    intents = [rec.mask for rec in records]
    supports = [rec.support for rec in records]
    assert len(set(intents)) == len(records), "duplicate intents"
    assert len(set(supports)) == len(records), "duplicate supports"
    by_mask = {rec.mask: rec for rec in records}
    for rec in records:
        assert intent(rec.support, ctx) == rec.mask
        # re-deriving the support from scratch must land on the same set
        again = apply_core(cfg.core, stream, extent(rec.mask, ctx, stream))
        assert again == rec.support, f"support of {rec.items} not reproducible"
        if rec.parent_item is not None:
            parent_mask = rec.mask & ~ctx.universe.bit(rec.parent_item)
            # the parent is some record whose mask is contained in this one
            ancestors = [r for r in records if r.mask & rec.mask == r.mask and r is not rec]
            assert ancestors, f"no ancestor for {rec.items}"
    # support size never grows along tree edges
    order = [rec for rec in records]
    for i, rec in enumerate(order):
        if rec.depth == 0:
            continue
        # the closest preceding record with smaller depth is the DFS parent
        parent = next(r for r in reversed(order[:i]) if r.depth == rec.depth - 1)
        assert rec.support.issubset(parent.support)
        assert rec.support_measure <= parent.support_measure


def intervals_close(got: IntervalSet, want: IntervalSet, slack: int = 1) -> bool:
    """Same shape with every endpoint within `slack` ticks."""
    if len(got.spans) != len(want.spans):
        return False
    return all(
        abs(ga - wa) <= slack and abs(gb - wb) <= slack
        for (ga, gb), (wa, wb) in zip(got.spans, want.spans)
    )


def timenodes_close(got: TimeNodeSet, want: TimeNodeSet, slack: int = 1) -> bool:
    if got.nodes() != want.nodes():
        return False
    return all(intervals_close(got.get(v), want.get(v), slack) for v in want.nodes())
