"""Readers and writers for interaction records, presence tables and node attributes.

Record formats (whitespace- or comma-separated, `#` starts a comment):

* triples  `t u v`        -- an instant contact, extended to [t - delta, t)
* quadruples `b e u v`    -- an interaction over [b, e)
* contact rows `t i j Ci Cj` -- tab-separated face-to-face contacts; the
  class columns are ignored by the graph loader and consumed by the
  attribute loader
* presence rows `b e v`   -- node v is present over [b, e)
* attribute rows `node,item1;item2;...`

Timestamps are seconds; they are converted to integer ticks with a
configurable ticks-per-second resolution and must land on the grid.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .context import AttributeContext, ItemUniverse
from .intervals import IntervalSet
from .stream import StreamGraph

log = logging.getLogger(__name__)

PathOrLines = Union[str, Path, Iterable[str]]


class ParseError(ValueError):
    """Malformed input with file/row context."""

    def __init__(self, message: str, source: str = "", row: int = 0):
        where = f"{source}:{row}: " if source else f"row {row}: "
        super().__init__(where + message)
        self.source = source
        self.row = row


def _iter_rows(data: PathOrLines) -> Tuple[str, Iterable[Tuple[int, str]]]:
    if isinstance(data, (str, Path)):
        path = Path(data)
        lines = path.read_text().splitlines()
        source = str(path)
    else:
        lines = list(data)
        source = ""

    def rows():
        for i, line in enumerate(lines, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            yield i, text
    return source, rows()


def _split(text: str) -> List[str]:
    if "," in text:
        return [f.strip() for f in text.split(",")]
    return text.split()


def to_ticks(value: str | float | int, resolution: int, source: str, row: int) -> int:
    """Convert a timestamp in seconds to integer ticks; must land on the grid."""
    try:
        number = float(value)
    except ValueError:
        raise ParseError(f"bad timestamp {value!r}", source, row) from None
    scaled = number * resolution
    ticks = round(scaled)
    if abs(scaled - ticks) > 1e-9 * max(1.0, abs(scaled)):
        raise ParseError(
            f"timestamp {value!r} is not representable at {resolution} ticks/second",
            source, row,
        )
    return int(ticks)


def ingest_link_stream(
    records: Sequence[Tuple],
    instant_extension: int = 20,
    *,
    directed: bool = False,
    presence: Optional[Mapping[str, IntervalSet]] = None,
    horizon: Optional[Tuple[int, int]] = None,
    source: str = "",
) -> StreamGraph:
    """Build a stream from (t, u, v) triples and/or (b, e, u, v) quadruples.

    Times are integer ticks here. A triple contributes the interval
    [t - instant_extension, t), so back-to-back contacts merge into one
    interval. Quadruples are taken as written.
    """
    pair_spans: Dict[Tuple[str, str], List[Tuple[int, int]]] = {}
    for i, rec in enumerate(records, start=1):
        if len(rec) == 3:
            t, u, v = rec
            if instant_extension <= 0:
                raise ParseError("instant records need a positive extension", source, i)
            b, e = t - instant_extension, t
        elif len(rec) == 4:
            b, e, u, v = rec
            if b >= e:
                raise ParseError(f"empty interval [{b}, {e})", source, i)
        else:
            raise ParseError(f"expected 3 or 4 fields, got {len(rec)}", source, i)
        u, v = str(u), str(v)
        if u == v and not directed:
            raise ParseError(f"self-interaction on node {u!r}", source, i)
        if horizon is not None and (b < horizon[0] or e > horizon[1]):
            raise ParseError(f"interval [{b}, {e}) outside horizon {horizon}", source, i)
        if not directed and u > v:
            u, v = v, u
        pair_spans.setdefault((u, v), []).append((int(b), int(e)))

    interactions = {key: IntervalSet(spans) for key, spans in pair_spans.items()}
    return StreamGraph(
        interactions, presence=presence, horizon=horizon, directed=directed
    )


def read_link_stream(
    data: PathOrLines,
    *,
    fmt: str = "auto",
    resolution: int = 1,
    instant_extension_seconds: float = 20.0,
    directed: bool = False,
    presence: Optional[Mapping[str, IntervalSet]] = None,
    horizon: Optional[Tuple[int, int]] = None,
) -> StreamGraph:
    """Parse a link-stream file into a StreamGraph.

    `fmt` is one of "auto", "triples", "quadruples", "contacts". The
    contacts format is the tab-separated `t i j Ci Cj` face-to-face
    export; its class columns are skipped here.
    """
    if fmt not in ("auto", "triples", "quadruples", "contacts"):
        raise ValueError(f"unknown stream format {fmt!r}")
    source, rows = _iter_rows(data)
    delta = round(instant_extension_seconds * resolution)
    if delta <= 0 and fmt != "quadruples":
        raise ValueError("instant extension must be positive")
    records = []
    for row, text in rows:
        fields = _split(text)
        if fmt == "auto":
            fmt = {3: "triples", 4: "quadruples", 5: "contacts"}.get(len(fields), "")
            if not fmt:
                raise ParseError(f"cannot infer format from {len(fields)} columns", source, row)
        if fmt == "triples":
            if len(fields) != 3:
                raise ParseError(f"expected 3 columns, got {len(fields)}", source, row)
            t, u, v = fields
            records.append((to_ticks(t, resolution, source, row), u, v))
        elif fmt == "quadruples":
            if len(fields) != 4:
                raise ParseError(f"expected 4 columns, got {len(fields)}", source, row)
            b, e, u, v = fields
            records.append((
                to_ticks(b, resolution, source, row),
                to_ticks(e, resolution, source, row),
                u, v,
            ))
        else:  # contacts
            if len(fields) != 5:
                raise ParseError(f"expected 5 columns, got {len(fields)}", source, row)
            t, u, v = fields[0], fields[1], fields[2]
            records.append((to_ticks(t, resolution, source, row), u, v))
    return ingest_link_stream(
        records,
        delta,
        directed=directed,
        presence=presence,
        horizon=horizon,
        source=source,
    )


def read_presence(data: PathOrLines, *, resolution: int = 1) -> Dict[str, IntervalSet]:
    """Parse `b e v` presence rows into node -> IntervalSet."""
    source, rows = _iter_rows(data)
    spans: Dict[str, List[Tuple[int, int]]] = {}
    for row, text in rows:
        fields = _split(text)
        if len(fields) != 3:
            raise ParseError(f"expected 3 columns, got {len(fields)}", source, row)
        b, e, v = fields
        bt = to_ticks(b, resolution, source, row)
        et = to_ticks(e, resolution, source, row)
        if bt >= et:
            raise ParseError(f"empty presence interval [{bt}, {et})", source, row)
        spans.setdefault(str(v), []).append((bt, et))
    return {v: IntervalSet(sp) for v, sp in spans.items()}


def write_link_stream(stream: StreamGraph, path: Union[str, Path]) -> None:
    """Write canonical quadruple rows `b e u v` in tick units.

    Rows are ordered by pair then interval start, so re-ingesting at
    resolution 1 reproduces the stream.
    """
    lines = ["# b e u v (ticks)"]
    for (u, v), ivs in stream.interaction_items():
        for a, b in ivs.spans:
            lines.append(f"{a} {b} {u} {v}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_presence(stream: StreamGraph, path: Union[str, Path]) -> None:
    lines = ["# b e v (ticks)"]
    for v in stream.nodes:
        for a, b in stream.presence(v).spans:
            lines.append(f"{a} {b} {v}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_attributes(data: PathOrLines, *, stream: Optional[StreamGraph] = None) -> AttributeContext:
    """Parse `node,item1;item2;...` rows into an attribute context.

    The item universe keeps first-appearance order. With a stream given,
    rows for unknown nodes are kept but flagged, and stream nodes without
    a row get the empty description (also flagged).
    """
    source, rows = _iter_rows(data)
    descriptions: Dict[str, List[str]] = {}
    items: List[str] = []
    seen_items = set()
    for row, text in rows:
        head, _, tail = text.partition(",")
        node = head.strip()
        if not node:
            raise ParseError("missing node id", source, row)
        if node in descriptions:
            raise ParseError(f"duplicate description for node {node!r}", source, row)
        names = [w.strip() for w in tail.split(";") if w.strip()]
        for name in names:
            if name not in seen_items:
                seen_items.add(name)
                items.append(name)
        descriptions[node] = names

    universe = ItemUniverse(items)
    if stream is not None:
        extra = sorted(set(descriptions) - set(stream.nodes))
        missing = sorted(set(stream.nodes) - set(descriptions))
        if extra:
            log.warning("attribute rows for %d node(s) absent from the stream: %s",
                        len(extra), ", ".join(extra[:5]))
        if missing:
            log.warning("%d stream node(s) without attributes get the empty description: %s",
                        len(missing), ", ".join(missing[:5]))
    return AttributeContext(
        universe, {v: universe.mask_of(names) for v, names in descriptions.items()}
    )


def write_attributes(ctx: AttributeContext, path: Union[str, Path]) -> None:
    lines = []
    for node in sorted(ctx.nodes()):
        names = ctx.universe.items_of(ctx.description(node))
        lines.append(f"{node},{';'.join(names)}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_highschool_context(
    *,
    metadata: Optional[PathOrLines] = None,
    contacts: Optional[PathOrLines] = None,
    facebook: Optional[PathOrLines] = None,
    declared: Optional[PathOrLines] = None,
    diaries: Optional[PathOrLines] = None,
    stream: Optional[StreamGraph] = None,
) -> AttributeContext:
    """Assemble student descriptions from the face-to-face study files.

    Produces items `C_<class>` and `G_<gender>` from the metadata table
    (tab-separated `id class gender`), `F_<id>` per Facebook friend,
    `D_<id>` per declared friend, and `M_<id>` per diary contact. Class
    items can also be recovered from the contact rows themselves.
    """
    tags: Dict[str, List[str]] = {}

    def add(node: str, item: str) -> None:
        bucket = tags.setdefault(node, [])
        if item not in bucket:
            bucket.append(item)

    if metadata is not None:
        source, rows = _iter_rows(metadata)
        for row, text in rows:
            fields = _split(text)
            if len(fields) < 2:
                raise ParseError(f"expected at least 2 columns, got {len(fields)}", source, row)
            node = fields[0]
            add(node, f"C_{fields[1]}")
            if len(fields) > 2 and fields[2] not in ("", "Unknown"):
                add(node, f"G_{fields[2]}")
    if contacts is not None:
        source, rows = _iter_rows(contacts)
        for row, text in rows:
            fields = _split(text)
            if len(fields) != 5:
                raise ParseError(f"expected 5 columns, got {len(fields)}", source, row)
            _, i, j, ci, cj = fields
            add(i, f"C_{ci}")
            add(j, f"C_{cj}")
    for prefix, data in (("F", facebook), ("D", declared), ("M", diaries)):
        if data is None:
            continue
        source, rows = _iter_rows(data)
        for row, text in rows:
            fields = _split(text)
            if len(fields) < 2:
                raise ParseError(f"expected 2 columns, got {len(fields)}", source, row)
            u, v = fields[0], fields[1]
            add(u, f"{prefix}_{v}")
            if prefix == "F":
                add(v, f"{prefix}_{u}")  # Facebook friendship is mutual

    items: List[str] = []
    seen = set()
    for node in tags:
        for item in tags[node]:
            if item not in seen:
                seen.add(item)
                items.append(item)
    universe = ItemUniverse(items)
    ctx = AttributeContext(universe, {v: universe.mask_of(names) for v, names in tags.items()})
    if stream is not None:
        missing = sorted(set(stream.nodes) - set(tags))
        if missing:
            log.warning("%d stream node(s) without metadata get the empty description",
                        len(missing))
    return ctx
