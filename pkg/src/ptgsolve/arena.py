"""Data model for one-clock priced timed games and finite priced game graphs.

A priced timed game (PTG) is played on a timed automaton with a single clock:
locations carry an owner (player 1 minimizes, player 2 maximizes), a price
rate per time unit and a clock invariant; transitions carry a guard, an
optional clock reset and a discrete price.  Player 1 tries to reach a target
location with minimal accumulated cost, player 2 opposes.

This module also hosts the finite-graph counterpart (PricedGameGraph), the
extended integers used for game values, and the boundedness transformation
that removes infinite invariants without changing values at clock values
up to the largest guard/invariant constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping


class ArenaError(ValueError):
    """Raised when an arena or graph fails structural validation."""


# ---------------------------------------------------------------------------
# Extended integers
# ---------------------------------------------------------------------------


class ExtValue:
    """An integer extended with +oo and -oo.

    Ordering is total (-oo < any finite < +oo) and addition saturates at the
    infinities.  Adding +oo and -oo is a hard error since it has no sensible
    reading for game values.
    """

    __slots__ = ("kind", "n")

    _FINITE, _PLUS, _MINUS = 0, 1, -1

    def __init__(self, kind: int, n: int = 0):
        self.kind = kind
        self.n = n

    @staticmethod
    def finite(n: int) -> "ExtValue":
        return ExtValue(ExtValue._FINITE, int(n))

    @property
    def is_finite(self) -> bool:
        return self.kind == ExtValue._FINITE

    @property
    def is_plus_inf(self) -> bool:
        return self.kind == ExtValue._PLUS

    @property
    def is_minus_inf(self) -> bool:
        return self.kind == ExtValue._MINUS

    def as_int(self) -> int:
        if not self.is_finite:
            raise ValueError("not a finite value: %s" % self)
        return self.n

    def _key(self):
        # kind already sorts -oo < finite < +oo when paired with n
        return (self.kind, self.n) if self.is_finite else (self.kind * 2, 0)

    def __eq__(self, other):
        if not isinstance(other, ExtValue):
            return NotImplemented
        return self.kind == other.kind and (not self.is_finite or self.n == other.n)

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other: "ExtValue") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "ExtValue") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "ExtValue") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "ExtValue") -> bool:
        return self._key() >= other._key()

    def __add__(self, other):
        if isinstance(other, int):
            other = ExtValue.finite(other)
        if not isinstance(other, ExtValue):
            return NotImplemented
        if self.is_finite and other.is_finite:
            return ExtValue.finite(self.n + other.n)
        if self.is_plus_inf and other.is_minus_inf:
            raise ArithmeticError("+oo + -oo is undefined")
        if self.is_minus_inf and other.is_plus_inf:
            raise ArithmeticError("+oo + -oo is undefined")
        return PLUS_INF if (self.is_plus_inf or other.is_plus_inf) else MINUS_INF

    __radd__ = __add__

    def __neg__(self):
        if self.is_finite:
            return ExtValue.finite(-self.n)
        return MINUS_INF if self.is_plus_inf else PLUS_INF

    def __repr__(self):
        if self.is_plus_inf:
            return "+inf"
        if self.is_minus_inf:
            return "-inf"
        return str(self.n)


PLUS_INF = ExtValue(ExtValue._PLUS)
MINUS_INF = ExtValue(ExtValue._MINUS)


# ---------------------------------------------------------------------------
# Intervals over clock values
# ---------------------------------------------------------------------------

INFINITY = "inf"


@dataclass(frozen=True)
class Bound:
    """One endpoint of a clock interval.

    ``value`` is an integer, or the string ``"inf"`` for an unbounded upper
    endpoint (never legal as a lower endpoint).
    """

    value: int | str
    closed: bool

    @property
    def is_infinite(self) -> bool:
        return self.value == INFINITY

    def __post_init__(self):
        if not self.is_infinite and not isinstance(self.value, int):
            raise ArenaError("bound value must be an integer or 'inf'")
        if self.is_infinite and self.closed:
            raise ArenaError("an infinite bound cannot be closed")


@dataclass(frozen=True)
class Interval:
    """A convex set of clock values with integer endpoints."""

    low: Bound
    high: Bound

    def __post_init__(self):
        if self.low.is_infinite:
            raise ArenaError("interval lower bound cannot be infinite")
        if self.low.value < 0:
            raise ArenaError("interval lower bound must be >= 0")

    @staticmethod
    def closed(low: int, high: int) -> "Interval":
        return Interval(Bound(low, True), Bound(high, True))

    @staticmethod
    def point(v: int) -> "Interval":
        return Interval.closed(v, v)

    @staticmethod
    def at_least(low: int, closed: bool = True) -> "Interval":
        return Interval(Bound(low, closed), Bound(INFINITY, False))

    @property
    def is_empty(self) -> bool:
        if self.high.is_infinite:
            return False
        if self.low.value > self.high.value:
            return True
        if self.low.value == self.high.value:
            return not (self.low.closed and self.high.closed)
        return False

    def contains(self, v: Fraction | int) -> bool:
        if self.low.closed:
            if v < self.low.value:
                return False
        elif v <= self.low.value:
            return False
        if self.high.is_infinite:
            return True
        if self.high.closed:
            return v <= self.high.value
        return v < self.high.value

    def finite_constants(self) -> list[int]:
        out = [self.low.value]
        if not self.high.is_infinite:
            out.append(self.high.value)
        return out

    def __str__(self):
        lo = "[" if self.low.closed else "("
        hi = "]" if (not self.high.is_infinite and self.high.closed) else ")"
        top = "inf" if self.high.is_infinite else str(self.high.value)
        return f"{lo}{self.low.value},{top}{hi}"


# ---------------------------------------------------------------------------
# PTG arenas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Location:
    id: str
    owner: int
    rate: int
    invariant: Interval


@dataclass(frozen=True)
class Transition:
    source: str
    label: str
    guard: Interval
    reset: bool
    price: int
    target: str


@dataclass(frozen=True)
class PTGArena:
    """A one-clock priced timed game.

    ``transitions`` is keyed by (source location, label): the transition
    relation is a function, so a location never has two moves with the same
    label.
    """

    locations: tuple[Location, ...]
    transitions: tuple[Transition, ...]
    targets: frozenset[str]
    clock: str = "x"

    def location(self, loc_id: str) -> Location:
        for loc in self.locations:
            if loc.id == loc_id:
                return loc
        raise KeyError(loc_id)

    def has_location(self, loc_id: str) -> bool:
        return any(loc.id == loc_id for loc in self.locations)

    def transitions_from(self, loc_id: str) -> list[Transition]:
        return [t for t in self.transitions if t.source == loc_id]

    def transition(self, loc_id: str, label: str) -> Transition | None:
        for t in self.transitions:
            if t.source == loc_id and t.label == label:
                return t
        return None

    def is_target(self, loc_id: str) -> bool:
        return loc_id in self.targets

    def is_bounded(self) -> bool:
        return all(not loc.invariant.high.is_infinite for loc in self.locations)


@dataclass(frozen=True)
class BiValuedProfile:
    """The two admissible location rates of a bi-valued arena.

    Both rates belong to {-d, 0, d} for a single positive scale d; the
    degenerate case low_rate == high_rate (all rates equal) is allowed.
    """

    low_rate: int
    high_rate: int
    scale: int

    def is_low(self, rate: int) -> bool:
        """Whether a location rate plays the low role of the pair.

        The play-shifting constructions treat the two rates asymmetrically.
        In the degenerate all-rates-equal case the sign decides: spending
        less time at a nonpositive rate, or more time at a positive one,
        never decreases the weight.
        """
        if self.low_rate != self.high_rate:
            return rate == self.low_rate
        return rate <= 0


@dataclass(frozen=True)
class Rejection:
    """A non-exceptional refusal, carrying the reason."""

    reason: str

    def __bool__(self):
        return False


# ---------------------------------------------------------------------------
# Arena operations
# ---------------------------------------------------------------------------


def validate_arena(arena: PTGArena) -> list[str]:
    """Return a list of violation descriptions; empty iff the arena is valid.

    Violations are data, not exceptions: callers decide how to react.
    """
    problems: list[str] = []
    seen_ids: set[str] = set()
    for loc in arena.locations:
        if loc.id in seen_ids:
            problems.append(f"duplicate location id {loc.id!r}")
        seen_ids.add(loc.id)
        if loc.owner not in (1, 2):
            problems.append(f"location {loc.id!r}: owner must be 1 or 2")
        if loc.invariant.is_empty:
            problems.append(f"location {loc.id!r}: empty invariant")
        if not loc.invariant.low.closed:
            # waiting must be continuous from the entry point of the invariant
            problems.append(
                f"location {loc.id!r}: invariant lower bound must be closed"
            )
    seen_moves: set[tuple[str, str]] = set()
    for t in arena.transitions:
        key = (t.source, t.label)
        if key in seen_moves:
            problems.append(
                f"transitions: duplicate (source, label) pair ({t.source!r}, {t.label!r})"
            )
        seen_moves.add(key)
        if t.source not in seen_ids:
            problems.append(f"transition {t.label!r}: unknown source {t.source!r}")
        if t.target not in seen_ids:
            problems.append(f"transition {t.label!r}: unknown target {t.target!r}")
        if t.guard.is_empty:
            problems.append(
                f"transition ({t.source!r}, {t.label!r}): empty guard"
            )
    for tgt in sorted(arena.targets):
        if tgt not in seen_ids:
            problems.append(f"target {tgt!r} is not a declared location")
    if not arena.locations:
        problems.append("arena has no locations")
    return problems


def require_valid(arena: PTGArena) -> None:
    problems = validate_arena(arena)
    if problems:
        raise ArenaError("; ".join(problems))


def bi_valued_profile(arena: PTGArena) -> BiValuedProfile | Rejection:
    """Check the bi-valued rate restriction and extract the rate pair.

    Non-target locations must use at most two distinct rates, both taken
    from {-d, 0, d} for one positive integer d.  Target locations are
    exempt: no time is ever charged after the play stops there.  Label
    prices are unconstrained.
    """
    rates = sorted({loc.rate for loc in arena.locations if loc.id not in arena.targets})
    if len(rates) > 2:
        return Rejection(f"more than two distinct rates: {rates}")
    if not rates:
        return BiValuedProfile(0, 0, 1)
    nonzero = [abs(r) for r in rates if r != 0]
    if len(set(nonzero)) > 1:
        return Rejection(f"rates {rates} do not fit {{-d, 0, d}} for a single d")
    scale = nonzero[0] if nonzero else 1
    low = rates[0]
    high = rates[-1]
    return BiValuedProfile(low, high, scale)


def max_constant(arena: PTGArena) -> int:
    """Largest finite integer appearing in any guard or invariant (>= 0)."""
    best = 0
    for loc in arena.locations:
        best = max(best, *loc.invariant.finite_constants())
    for t in arena.transitions:
        best = max(best, *t.guard.finite_constants())
    return best


def _guard_open_above(guard: Interval) -> bool:
    """True iff the guard is satisfied by arbitrarily large clock values."""
    return guard.high.is_infinite


_OVERFLOW_SUFFIX = "__beyond"
_BRIDGE_LABEL = "__overflow"
_TICK_LABEL = "__tick"


def make_bounded(arena: PTGArena) -> PTGArena:
    """Give every invariant a finite upper bound, preserving game values.

    Every unbounded invariant is capped at M+1 where M is the largest
    constant of the arena (M+1, not M, so guards satisfiable only above M
    stay alive).  Clock values beyond M+1 are represented by companion
    locations with invariant x <= 1, whose clock tracks the fractional
    "phase" of the real value; being in a companion means the real value
    exceeds M.  A companion carries a copy of every original transition
    whose guard is satisfiable above M: resetting copies keep their target,
    non-resetting copies move to the target's companion (the real landing
    value is still above M).

    Companions come in two flavours, decided by whether the owner actually
    profits from unbounded waiting:

    * pump rooms, for player-1 locations with negative rate and player-2
      locations with positive rate: entered by a price-0 resetting bridge
      guarded x = M+1 and equipped with a resetting self-loop at x = 1, so
      the owner can keep spending time one unit per lap;
    * landing pads, for all other unbounded locations reachable by a
      non-resetting companion move: no bridge and no self-loop.  Waiting
      beyond M never helps these owners (their dominated long waits are
      simply dropped), but other locations may still throw the play into
      them at a clock value above M.

    Only companions that are actually reachable are created (pump rooms,
    plus the non-reset closure of companion moves).  Companions of target
    locations are targets.  Idempotent on already-bounded arenas.
    """
    require_valid(arena)
    if arena.is_bounded():
        return arena

    cap = max_constant(arena) + 1
    unbounded = {loc.id: loc for loc in arena.locations if loc.invariant.high.is_infinite}

    def is_pump(loc: Location) -> bool:
        if loc.id in arena.targets:
            return False
        return (loc.owner == 1 and loc.rate < 0) or (loc.owner == 2 and loc.rate > 0)

    pump_ids = {lid for lid, loc in unbounded.items() if is_pump(loc)}

    # closure: a companion's non-resetting copies land in companions of
    # their (unbounded) targets, which must therefore exist as pads
    companion_ids: set[str] = set()
    worklist = sorted(pump_ids)
    while worklist:
        lid = worklist.pop()
        if lid in companion_ids:
            continue
        companion_ids.add(lid)
        if lid in arena.targets:
            continue
        for t in arena.transitions_from(lid):
            if _guard_open_above(t.guard) and not t.reset and t.target in unbounded:
                worklist.append(t.target)

    companion_of = {lid: lid + _OVERFLOW_SUFFIX for lid in companion_ids}
    taken = {loc.id for loc in arena.locations}
    for cid in companion_of.values():
        if cid in taken:
            raise ArenaError(f"companion id {cid!r} collides with a location id")

    new_locations: list[Location] = []
    for loc in arena.locations:
        if loc.id in unbounded:
            capped = Interval(loc.invariant.low, Bound(cap, True))
            new_locations.append(Location(loc.id, loc.owner, loc.rate, capped))
        else:
            new_locations.append(loc)
    for lid, cid in sorted(companion_of.items()):
        base = unbounded[lid]
        new_locations.append(Location(cid, base.owner, base.rate, Interval.closed(0, 1)))

    new_transitions: list[Transition] = list(arena.transitions)
    new_targets = set(arena.targets)
    for lid, cid in sorted(companion_of.items()):
        if lid in arena.targets:
            new_targets.add(cid)
            continue
        if lid in pump_ids:
            new_transitions.append(
                Transition(lid, _BRIDGE_LABEL, Interval.point(cap), True, 0, cid)
            )
            new_transitions.append(
                Transition(cid, _TICK_LABEL, Interval.point(1), True, 0, cid)
            )
        for t in arena.transitions_from(lid):
            if not _guard_open_above(t.guard):
                continue
            if t.reset:
                new_transitions.append(
                    Transition(cid, t.label, Interval.at_least(0), True, t.price, t.target)
                )
            elif t.target in companion_of:
                new_transitions.append(
                    Transition(
                        cid, t.label, Interval.at_least(0), False, t.price,
                        companion_of[t.target],
                    )
                )
            # bounded target: the move was impossible above M in the original

    bounded = PTGArena(
        tuple(new_locations), tuple(new_transitions), frozenset(new_targets), arena.clock
    )
    require_valid(bounded)
    return bounded


# ---------------------------------------------------------------------------
# Finite priced game graphs
# ---------------------------------------------------------------------------


class PricedGameGraph:
    """A finite two-player graph with integer edge weights and targets.

    Vertices are (id, owner) pairs; edges form a partial function on
    vertex x action.  Vertex and action ids must be totally orderable
    within one graph: their sorted order defines the deterministic
    tie-breaking used by the solver and by DOT export.
    """

    def __init__(
        self,
        vertices: Iterable[tuple[object, int]],
        actions: Iterable[object],
        edges: Mapping[tuple[object, object], tuple[object, int]],
        targets: Iterable[object],
    ):
        self.vertices: list[tuple[object, int]] = list(vertices)
        self.actions: list[object] = list(actions)
        self.edges: dict[tuple[object, object], tuple[object, int]] = dict(edges)
        self.targets: frozenset = frozenset(targets)

        self.owner: dict[object, int] = {vid: own for vid, own in self.vertices}
        self._vertex_rank = {
            vid: i for i, vid in enumerate(sorted(self.owner, key=self._sort_key))
        }
        self._action_rank = {
            a: i for i, a in enumerate(sorted(set(self.actions), key=self._sort_key))
        }
        # adjacency sorted by (successor rank, action rank): the solver's
        # tie-breaking order
        self._adj: dict[object, list[tuple[object, object, int]]] = {
            vid: [] for vid in self.owner
        }
        for (vid, act), (succ, w) in self.edges.items():
            if vid in self._adj:
                self._adj[vid].append((act, succ, w))
        for vid, lst in self._adj.items():
            lst.sort(key=lambda e: (self._vertex_rank.get(e[1], -1), self._action_rank.get(e[0], -1)))

    @staticmethod
    def _sort_key(x):
        # allow heterogeneous but per-graph-homogeneous id types
        return (str(type(x)), x if not isinstance(x, (list, dict)) else str(x))

    def vertex_ids(self) -> list[object]:
        return [vid for vid, _ in self.vertices]

    def sorted_vertex_ids(self) -> list[object]:
        return sorted(self.owner, key=lambda v: self._vertex_rank[v])

    def vertex_rank(self, vid) -> int:
        return self._vertex_rank[vid]

    def action_rank(self, act) -> int:
        return self._action_rank[act]

    def out_edges(self, vid) -> list[tuple[object, object, int]]:
        """Edges from ``vid`` as (action, successor, weight), in tie-break order."""
        return self._adj[vid]

    def is_target(self, vid) -> bool:
        return vid in self.targets

    def max_abs_weight(self) -> int:
        return max((abs(w) for (_, _), (_, w) in self.edges.items()), default=0)


def validate_graph(graph: PricedGameGraph, *, allow_deadlocks: bool = False) -> list[str]:
    """Structural validation of a priced game graph.

    A non-target vertex with no outgoing edge is a deadlock; by default it
    is reported as a violation (the solver nevertheless treats such
    vertices correctly, as value +oo).
    """
    problems: list[str] = []
    ids = [vid for vid, _ in graph.vertices]
    if len(ids) != len(set(map(str, ids))):
        pass  # duplicate detection below via owner map size
    if len(graph.owner) != len(graph.vertices):
        problems.append("duplicate vertex ids")
    for vid, own in graph.vertices:
        if own not in (1, 2):
            problems.append(f"vertex {vid!r}: owner must be 1 or 2")
    for (vid, act), (succ, w) in graph.edges.items():
        if vid not in graph.owner:
            problems.append(f"edge from unknown vertex {vid!r}")
        if succ not in graph.owner:
            problems.append(f"edge ({vid!r}, {act!r}) to unknown vertex {succ!r}")
        if not isinstance(w, int):
            problems.append(f"edge ({vid!r}, {act!r}): weight must be an integer")
    for tgt in graph.targets:
        if tgt not in graph.owner:
            problems.append(f"target {tgt!r} is not a vertex")
    if not allow_deadlocks:
        for vid in graph.owner:
            if vid not in graph.targets and not graph.out_edges(vid):
                problems.append(f"vertex {vid!r} is a non-target deadlock")
    return problems
