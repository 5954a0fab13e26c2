"""Greedy diverse-subset selection of mined patterns.

Patterns are scanned in decreasing interestingness; one is kept only
when its support is at temporal Jaccard distance at least beta from
every already kept support.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from .mining import ClosedPatternRecord
from .stream import TimeNodeSet

INTEREST_MEASURES: Dict[str, Callable[[ClosedPatternRecord], int]] = {
    "duration": lambda rec: rec.support_measure,
    "nodes": lambda rec: rec.node_count,
    "intent-size": lambda rec: len(rec.items),
}


@dataclass
class SelectionConfig:
    beta: float = 0.0
    g: str = "duration"

    def __post_init__(self):
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError("beta must lie in [0, 1]")
        if self.g not in INTEREST_MEASURES:
            raise ValueError(f"interestingness measure must be one of {tuple(INTEREST_MEASURES)}")


def temporal_jaccard_distance(wi: TimeNodeSet, wj: TimeNodeSet) -> float:
    """1 - |intersection| / |union| in node-ticks; 0 iff equal, 1 iff disjoint."""
    union = wi.union(wj).measure()
    if union == 0:
        raise ValueError("the distance of two empty supports is undefined")
    inter = wi.intersect(wj).measure()
    return 1.0 - inter / union


def g_beta_select(
    records: Sequence[ClosedPatternRecord], cfg: SelectionConfig
) -> List[ClosedPatternRecord]:
    """Greedy scan in decreasing interestingness, ties broken by intent."""
    measure = INTEREST_MEASURES[cfg.g]
    ordered = sorted(records, key=lambda rec: (-measure(rec), tuple(sorted(rec.items))))
    kept: List[ClosedPatternRecord] = []
    for rec in ordered:
        if all(temporal_jaccard_distance(rec.support, k.support) >= cfg.beta for k in kept):
            kept.append(rec)
    return kept


def selection_counts(
    records: Sequence[ClosedPatternRecord], betas: Sequence[float], g: str = "duration"
) -> List[Tuple[float, int]]:
    """Kept-set size for each beta; the sweep the reports are built from."""
    return [
        (beta, len(g_beta_select(records, SelectionConfig(beta=beta, g=g))))
        for beta in betas
    ]
