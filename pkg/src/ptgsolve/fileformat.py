"""Line-based text format for arenas.

Grammar ('#' starts a comment, blank lines are skipped)::

    clock <id>
    location <id> owner=<1|2> rate=<int> inv=<interval>
    target <id> [<id> ...]
    edge <src> <label> <dst> guard=<interval> reset=<true|false> price=<int>
    interval := ('['|'(') (int|'-inf') ',' (int|'inf') (']'|')')

Unknown keys are rejected; duplicate (source, label) edges are rejected
with their line numbers.  A ``-inf`` lower endpoint is normalized to a
closed 0 (clock values are nonnegative, so the two constraints coincide).
Semantic checks beyond the grammar are left to ``validate_arena``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .arena import (
    Bound,
    INFINITY,
    Interval,
    Location,
    PTGArena,
    Transition,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int | None = None):
        where = f"line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


_INTERVAL_RE = re.compile(
    r"^([\[(])\s*(-inf|-?\d+)\s*,\s*(inf|-?\d+)\s*([\])])$"
)


def parse_interval(text: str, line: int) -> Interval:
    m = _INTERVAL_RE.match(text.strip())
    if not m:
        raise ParseError(f"malformed interval {text!r}", line)
    lo_br, lo_txt, hi_txt, hi_br = m.groups()
    if lo_txt == "-inf":
        low = Bound(0, True)
    else:
        low = Bound(int(lo_txt), lo_br == "[")
    if hi_txt == "inf":
        if hi_br == "]":
            raise ParseError("an infinite upper bound must be open: use ')'", line)
        high = Bound(INFINITY, False)
    else:
        high = Bound(int(hi_txt), hi_br == "]")
    try:
        return Interval(low, high)
    except ValueError as exc:
        raise ParseError(str(exc), line) from exc


def _split_fields(parts: list[str], expected: list[str], line: int) -> dict[str, str]:
    out = {}
    for part in parts:
        if "=" not in part:
            raise ParseError(f"expected key=value, got {part!r}", line)
        key, value = part.split("=", 1)
        if key not in expected:
            raise ParseError(f"unknown key {key!r} (expected one of {expected})", line)
        if key in out:
            raise ParseError(f"duplicate key {key!r}", line)
        out[key] = value
    missing = [k for k in expected if k not in out]
    if missing:
        raise ParseError(f"missing keys {missing}", line)
    return out


@dataclass
class ArenaDocument:
    """A parsed arena together with its raw text and source positions."""

    text: str
    arena: PTGArena
    positions: dict = field(default_factory=dict)


def parse_arena_document(text: str) -> ArenaDocument:
    clock = "x"
    locations: list[Location] = []
    transitions: list[Transition] = []
    targets: list[str] = []
    positions: dict = {}
    edge_lines: dict[tuple[str, str], int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "clock":
            if len(parts) != 2:
                raise ParseError("clock takes exactly one identifier", lineno)
            clock = parts[1]
            positions["clock"] = lineno
        elif kind == "location":
            if len(parts) < 2:
                raise ParseError("location needs an identifier", lineno)
            fields = _split_fields(parts[2:], ["owner", "rate", "inv"], lineno)
            if fields["owner"] not in ("1", "2"):
                raise ParseError("owner must be 1 or 2", lineno)
            try:
                rate = int(fields["rate"])
            except ValueError:
                raise ParseError(f"rate must be an integer, got {fields['rate']!r}", lineno)
            inv = parse_interval(fields["inv"], lineno)
            locations.append(Location(parts[1], int(fields["owner"]), rate, inv))
            positions[("location", parts[1])] = lineno
        elif kind == "target":
            if len(parts) < 2:
                raise ParseError("target needs at least one identifier", lineno)
            for tid in parts[1:]:
                targets.append(tid)
                positions[("target", tid)] = lineno
        elif kind == "edge":
            if len(parts) < 4:
                raise ParseError(
                    "edge needs <src> <label> <dst> plus guard/reset/price", lineno
                )
            src, label, dst = parts[1], parts[2], parts[3]
            fields = _split_fields(parts[4:], ["guard", "reset", "price"], lineno)
            guard = parse_interval(fields["guard"], lineno)
            if fields["reset"] not in ("true", "false"):
                raise ParseError("reset must be true or false", lineno)
            try:
                price = int(fields["price"])
            except ValueError:
                raise ParseError(f"price must be an integer, got {fields['price']!r}", lineno)
            if (src, label) in edge_lines:
                raise ParseError(
                    f"duplicate edge ({src!r}, {label!r}); first seen on line "
                    f"{edge_lines[(src, label)]}",
                    lineno,
                )
            edge_lines[(src, label)] = lineno
            transitions.append(
                Transition(src, label, guard, fields["reset"] == "true", price, dst)
            )
            positions[("edge", src, label)] = lineno
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno, column=1)

    if not locations:
        raise ParseError("empty arena: no locations declared", 1)
    arena = PTGArena(tuple(locations), tuple(transitions), frozenset(targets), clock)
    return ArenaDocument(text, arena, positions)


def parse_arena(text: str) -> PTGArena:
    return parse_arena_document(text).arena


def serialize_arena(arena: PTGArena) -> str:
    """Canonical text rendering; parsing it back yields an identical arena."""
    lines = [f"clock {arena.clock}"]
    for loc in arena.locations:
        lines.append(
            f"location {loc.id} owner={loc.owner} rate={loc.rate} inv={loc.invariant}"
        )
    if arena.targets:
        lines.append("target " + " ".join(sorted(arena.targets)))
    for t in arena.transitions:
        reset = "true" if t.reset else "false"
        lines.append(
            f"edge {t.source} {t.label} {t.target} guard={t.guard} "
            f"reset={reset} price={t.price}"
        )
    return "\n".join(lines) + "\n"
