"""Depth-first enumeration of frequent core closed patterns.

The traversal starts from the closure of the empty pattern and adds one
item at a time. A child's support is the core of the parent's support
restricted to nodes carrying the new item, which coincides with the
core of the global extent. An exclusion mask prevents re-reaching a
closed pattern through a second branch: a closure containing an already
finished item is skipped, and each finished item is added to the mask
only after its whole subtree was explored. Children run against a
snapshot of the mask, siblings see it grow.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from .context import AttributeContext, Pattern, extent, intent
from .cores import CoreSpec, apply_core, apply_static_core
from .intervals import IntervalSet
from .stream import StaticGraph, StreamGraph, TimeNodeSet

log = logging.getLogger(__name__)

SUPPORT_MEASURES = ("duration", "nodes")


@dataclass
class MinerConfig:
    core: CoreSpec = field(default_factory=CoreSpec.identity)
    min_support: int = 1
    min_intent_size: int = 0
    item_order: Optional[Sequence[str]] = None  # permutation of the universe, default file order
    support_measure: str = "duration"  # threshold unit: node-ticks or distinct nodes
    threads: int = 1

    def validate(self, universe) -> Tuple[str, ...]:
        """Check the config against an item universe; returns the item order."""
        if self.min_support <= 0:
            raise ValueError("minimum support must be positive")
        if self.min_intent_size < 0:
            raise ValueError("minimum intent size cannot be negative")
        if self.support_measure not in SUPPORT_MEASURES:
            raise ValueError(f"support measure must be one of {SUPPORT_MEASURES}")
        if self.threads < 1:
            raise ValueError("thread count must be at least 1")
        if self.item_order is None:
            return universe.items
        order = tuple(self.item_order)
        if sorted(order) != sorted(universe.items):
            raise ValueError("item order must be a permutation of the universe")
        return order


@dataclass
class ClosedPatternRecord:
    items: Tuple[str, ...]  # universe order
    support: TimeNodeSet
    support_measure: int  # node-ticks
    node_count: int
    mask: Optional[Pattern] = None
    parent_item: Optional[str] = None
    depth: int = 0
    below_min_support: bool = False


def _support_size(support: TimeNodeSet, measure: str) -> int:
    return support.node_count() if measure == "nodes" else support.measure()


def _restrict_to_item(support: TimeNodeSet, ctx: AttributeContext, bit: Pattern) -> TimeNodeSet:
    entries = {v: ivs for v, ivs in support.items() if ctx.description(v) & bit}
    return TimeNodeSet._raw(entries)


class _Frame:
    __slots__ = ("mask", "support", "excluded", "position", "pending", "depth", "candidates")

    def __init__(self, mask, support, excluded, depth, candidates=None):
        self.mask = mask
        self.support = support
        self.excluded = excluded
        self.position = 0
        self.pending = 0
        self.depth = depth
        self.candidates = candidates


def mine(
    stream: StreamGraph, ctx: AttributeContext, cfg: MinerConfig
) -> List[ClosedPatternRecord]:
    """Enumerate every core closed pattern with support at least cfg.min_support.

    The closure of the whole presence set is always emitted first; when
    its support falls short of the threshold it is flagged instead of
    dropped. Output order is the deterministic depth-first order induced
    by the item order.
    """
    universe = ctx.universe
    order = cfg.validate(universe)
    if not stream.nodes:
        log.warning("mining an empty stream: no patterns")
        return []
    bits = tuple(universe.bit(name) for name in order)
    names = {universe.bit(name): name for name in order}

    def core(x: TimeNodeSet) -> TimeNodeSet:
        return apply_core(cfg.core, stream, x)

    def evaluate(support: TimeNodeSet, bit: Pattern) -> Tuple[TimeNodeSet, int]:
        got = core(_restrict_to_item(support, ctx, bit))
        return got, _support_size(got, cfg.support_measure)

    pool = ThreadPoolExecutor(max_workers=cfg.threads) if cfg.threads > 1 else None

    def candidates_for(frame: _Frame) -> Optional[Dict[Pattern, Tuple[TimeNodeSet, int]]]:
        if pool is None:
            return None
        todo = [bit for bit in bits if not frame.mask & bit]
        done = pool.map(lambda b: evaluate(frame.support, b), todo)
        return dict(zip(todo, done))

    def make_record(mask, support, size, parent, depth) -> ClosedPatternRecord:
        return ClosedPatternRecord(
            items=universe.items_of(mask),
            support=support,
            support_measure=support.measure(),
            node_count=support.node_count(),
            mask=mask,
            parent_item=parent,
            depth=depth,
            below_min_support=size < cfg.min_support,
        )

    root_support = core(stream.presence_set())
    root_mask = intent(root_support, ctx)
    root_size = _support_size(root_support, cfg.support_measure)
    records = [make_record(root_mask, root_support, root_size, None, 0)]

    root = _Frame(root_mask, root_support, 0, 0)
    root.candidates = candidates_for(root)
    stack = [root]
    try:
        while stack:
            frame = stack[-1]
            if frame.pending:
                frame.excluded |= frame.pending
                frame.pending = 0
            pushed = False
            while frame.position < len(bits):
                bit = bits[frame.position]
                frame.position += 1
                if frame.mask & bit:
                    continue
                if frame.candidates is not None:
                    support, size = frame.candidates[bit]
                else:
                    support, size = evaluate(frame.support, bit)
                if size < cfg.min_support:
                    continue
                closed = intent(support, ctx)
                if closed & frame.excluded:
                    continue
                records.append(
                    make_record(closed, support, size, names[bit], frame.depth + 1)
                )
                frame.pending = bit
                child = _Frame(closed, support, frame.excluded, frame.depth + 1)
                child.candidates = candidates_for(child)
                stack.append(child)
                pushed = True
                break
            if not pushed:
                stack.pop()
    finally:
        if pool is not None:
            pool.shutdown()

    if cfg.min_intent_size:
        records = filter_min_intent(records, cfg.min_intent_size)
    return records


def count_by_intent_size(records: Sequence[ClosedPatternRecord]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for rec in records:
        n = len(rec.items)
        out[n] = out.get(n, 0) + 1
    return dict(sorted(out.items()))


def filter_min_intent(
    records: Sequence[ClosedPatternRecord], n: int
) -> List[ClosedPatternRecord]:
    """Keep records with at least n items, preserving order."""
    return [rec for rec in records if len(rec.items) >= n]


# -- static-graph miner -------------------------------------------------------


@dataclass
class StaticPatternRecord:
    items: Tuple[str, ...]
    support: FrozenSet[str]
    node_count: int
    mask: Optional[Pattern] = None
    parent_item: Optional[str] = None
    depth: int = 0
    below_min_support: bool = False


def static_mine(
    graph: StaticGraph, ctx: AttributeContext, cfg: MinerConfig
) -> List[StaticPatternRecord]:
    """The same enumeration on a static graph; supports are node sets."""
    universe = ctx.universe
    order = cfg.validate(universe)
    if not graph.nodes:
        log.warning("mining an empty graph: no patterns")
        return []
    bits = tuple(universe.bit(name) for name in order)
    names = {universe.bit(name): name for name in order}

    def core(x: FrozenSet[str]) -> FrozenSet[str]:
        return apply_static_core(cfg.core, graph, x)

    def closed_of(support: FrozenSet[str]) -> Pattern:
        mask = universe.full_mask
        for v in support:
            mask &= ctx.description(v)
        return mask

    def make_record(mask, support, parent, depth) -> StaticPatternRecord:
        return StaticPatternRecord(
            items=universe.items_of(mask),
            support=support,
            node_count=len(support),
            mask=mask,
            parent_item=parent,
            depth=depth,
            below_min_support=len(support) < cfg.min_support,
        )

    root_support = core(frozenset(graph.nodes))
    root_mask = closed_of(root_support)
    records = [make_record(root_mask, root_support, None, 0)]

    stack = [_Frame(root_mask, root_support, 0, 0)]
    while stack:
        frame = stack[-1]
        if frame.pending:
            frame.excluded |= frame.pending
            frame.pending = 0
        pushed = False
        while frame.position < len(bits):
            bit = bits[frame.position]
            frame.position += 1
            if frame.mask & bit:
                continue
            support = core(frozenset(
                v for v in frame.support if ctx.description(v) & bit
            ))
            if len(support) < cfg.min_support:
                continue
            closed = closed_of(support)
            if closed & frame.excluded:
                continue
            records.append(make_record(closed, support, names[bit], frame.depth + 1))
            frame.pending = bit
            stack.append(_Frame(closed, support, frame.excluded, frame.depth + 1))
            pushed = True
            break
        if not pushed:
            stack.pop()

    if cfg.min_intent_size:
        records = [rec for rec in records if len(rec.items) >= cfg.min_intent_size]
    return records


# -- pattern files ------------------------------------------------------------


def _record_payload(rec: ClosedPatternRecord) -> dict:
    payload = {
        "intent": list(rec.items),
        "support": {v: [list(span) for span in ivs.spans] for v, ivs in rec.support.items()},
        "support_measure": rec.support_measure,
        "node_count": rec.node_count,
    }
    if rec.below_min_support:
        payload["below_min_support"] = True
    return payload


def write_patterns(records: Sequence[ClosedPatternRecord], path: Union[str, Path]) -> None:
    """One JSON object per line, fields in a fixed order."""
    with open(path, "w") as handle:
        for rec in records:
            handle.write(json.dumps(_record_payload(rec)) + "\n")


def write_static_patterns(
    records: Sequence[StaticPatternRecord], path: Union[str, Path]
) -> None:
    with open(path, "w") as handle:
        for rec in records:
            payload = {
                "intent": list(rec.items),
                "support": sorted(rec.support),
                "node_count": rec.node_count,
            }
            if rec.below_min_support:
                payload["below_min_support"] = True
            handle.write(json.dumps(payload) + "\n")


def read_patterns(path: Union[str, Path]) -> List[ClosedPatternRecord]:
    records = []
    with open(path) as handle:
        for i, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                support = TimeNodeSet({
                    v: IntervalSet((int(a), int(b)) for a, b in spans)
                    for v, spans in obj["support"].items()
                })
                records.append(ClosedPatternRecord(
                    items=tuple(obj["intent"]),
                    support=support,
                    support_measure=int(obj["support_measure"]),
                    node_count=int(obj["node_count"]),
                    below_min_support=bool(obj.get("below_min_support", False)),
                ))
            except (KeyError, TypeError, ValueError, json.JSONDecodeError) as err:
                raise ValueError(f"{path}:{i}: bad pattern record: {err}") from None
    return records
