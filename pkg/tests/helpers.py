"""Seeded generators and independent oracles shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from ptgsolve.arena import (
    Bound,
    INFINITY,
    Interval,
    Location,
    PTGArena,
    Transition,
    max_constant,
    require_valid,
    validate_arena,
)
from ptgsolve.regions import constants
from ptgsolve.simulation import Configuration, Play, TimedMove


# ---------------------------------------------------------------------------
# Random bounded bi-valued arenas
# ---------------------------------------------------------------------------

_LABELS = ("a", "b", "c")


def random_arena(
    seed: int,
    max_locations: int = 5,
    max_const: int = 3,
    rate_pair: tuple[int, int] = (-1, 1),
    price_bound: int = 2,
) -> PTGArena:
    """A valid bounded arena with rates drawn from ``rate_pair``."""
    rng = random.Random(seed)
    n = rng.randint(2, max_locations)
    top = rng.randint(1, max_const)
    locations = []
    for i in range(n - 1):
        upper = top if rng.random() < 0.8 else rng.randint(1, top)
        locations.append(
            Location(f"l{i}", rng.choice((1, 2)), rng.choice(rate_pair),
                     Interval.closed(0, upper))
        )
    locations.append(Location("goal", 1, 0, Interval.closed(0, top)))

    transitions = []
    for i in range(n - 1):
        for label in rng.sample(_LABELS, rng.randint(1, 2)):
            lo = rng.randint(0, top)
            hi = rng.randint(lo, top)
            lo_closed = True if lo == hi else rng.random() < 0.7
            hi_closed = True if lo == hi else rng.random() < 0.7
            guard = Interval(Bound(lo, lo_closed), Bound(hi, hi_closed))
            target = rng.choice([loc.id for loc in locations])
            transitions.append(
                Transition(f"l{i}", label, guard, rng.random() < 0.4,
                           rng.randint(-price_bound, price_bound), target)
            )
    arena = PTGArena(tuple(locations), tuple(transitions), frozenset({"goal"}))
    assert validate_arena(arena) == []
    return arena


# ---------------------------------------------------------------------------
# Random plays on a bounded arena
# ---------------------------------------------------------------------------


def _window_from(valuation: Fraction, guard: Interval, inv: Interval,
                 landing_inv: Interval | None):
    """Post-delay window guard & inv & [valuation, +oo) & landing invariant
    (for non-resetting moves), or None if empty."""
    lows = [(Fraction(guard.low.value), guard.low.closed), (valuation, True)]
    if landing_inv is not None:
        lows.append((Fraction(landing_inv.low.value), landing_inv.low.closed))
    lo, lo_closed = max(lows, key=lambda b: (b[0], not b[1]))
    uppers = [guard.high, inv.high]
    if landing_inv is not None:
        uppers.append(landing_inv.high)
    hi_candidates = [
        (Fraction(b.value), b.closed) for b in uppers if not b.is_infinite
    ]
    if not hi_candidates:
        raise AssertionError("random plays require a bounded arena")
    hi, hi_closed = min(hi_candidates, key=lambda b: (b[0], b[1]))
    if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
        return None
    return lo, lo_closed, hi, hi_closed


def random_play(arena: PTGArena, seed: int, max_len: int) -> Play:
    """A seeded random play starting on a border, with exact rational delays.

    Stops early at targets or when no move is available; posts are biased
    to cover borders, region edges and middle-gap values.
    """
    rng = random.Random(seed)
    ladder = constants(arena)
    starts = [
        (loc, m)
        for loc in arena.locations
        if loc.id not in arena.targets
        for m in ladder
        if loc.invariant.contains(m)
    ]
    loc, m = rng.choice(starts)
    play = Play(arena, Configuration(loc.id, Fraction(m)))
    for _ in range(max_len):
        here = play.last
        if arena.is_target(here.location):
            break
        inv = arena.location(here.location).invariant
        options: list[TimedMove] = []
        for t in arena.transitions_from(here.location):
            landing_inv = None if t.reset else arena.location(t.target).invariant
            if t.reset and not arena.location(t.target).invariant.contains(0):
                continue
            window = _window_from(here.valuation, t.guard, inv, landing_inv)
            if window is None:
                continue
            lo, lo_closed, hi, hi_closed = window
            nudge = Fraction(1, rng.choice((16, 24, 40)))
            posts = set()
            if lo_closed:
                posts.add(lo)
            if hi_closed:
                posts.add(hi)
            for m2 in ladder:
                if lo <= m2 <= hi:
                    posts.add(Fraction(m2))
            mid = lo + (hi - lo) * Fraction(rng.randint(1, 7), 8)
            posts.update({lo + nudge, hi - nudge, mid})
            for post in posts:
                if post < lo or (post == lo and not lo_closed):
                    continue
                if post > hi or (post == hi and not hi_closed):
                    continue
                if post < here.valuation:
                    continue
                options.append(TimedMove(post - here.valuation, t.label))
        if not options:
            break
        options.sort(key=lambda mv: (mv.delay, mv.label))
        play = play.extend(rng.choice(options))
    return play


# ---------------------------------------------------------------------------
# Unbounded arenas paired with independent bounded equivalents
# ---------------------------------------------------------------------------


def single_exit_arena(owner: int, rate: int, guard_const: int, price: int,
                      closed_guard: bool, reset: bool) -> PTGArena:
    """One unbounded location with a single exit to a target."""
    guard = Interval(Bound(guard_const, closed_guard), Bound(INFINITY, False))
    goal_inv = Interval.closed(0, max(guard_const, 1)) if reset else Interval.at_least(0)
    arena = PTGArena(
        (
            Location("u", owner, rate, Interval.at_least(0)),
            Location("goal", 1, 0, goal_inv),
        ),
        (Transition("u", "exit", guard, reset, price, "goal"),),
        frozenset({"goal"}),
    )
    require_valid(arena)
    return arena


def single_exit_expected(owner: int, rate: int, guard_const: int, price: int):
    """Closed-form value at (u, 0): exit as early/late as profitable."""
    from ptgsolve.arena import ExtValue, MINUS_INF, PLUS_INF

    if owner == 1:
        return MINUS_INF if rate < 0 else ExtValue.finite(rate * guard_const + price)
    return PLUS_INF if rate > 0 else ExtValue.finite(rate * guard_const + price)


def loop_exit_arena(owner: int, rate: int, price: int) -> PTGArena:
    """Unbounded location with a resetting wait-loop and a point-guard exit."""
    arena = PTGArena(
        (
            Location("u", owner, rate, Interval.at_least(0)),
            Location("goal", 1, 0, Interval.closed(0, 1)),
        ),
        (
            Transition("u", "w", Interval.at_least(1), True, 0, "u"),
            Transition("u", "e", Interval.point(1), False, price, "goal"),
        ),
        frozenset({"goal"}),
    )
    require_valid(arena)
    return arena


def loop_exit_expected(owner: int, rate: int, price: int):
    from ptgsolve.arena import ExtValue, MINUS_INF, PLUS_INF

    if owner == 2:
        return PLUS_INF  # loop forever, never reach the target
    return MINUS_INF if rate < 0 else ExtValue.finite(rate + price)


def random_unbounded_arena(seed: int, max_locations: int = 4,
                           max_const: int = 2,
                           rate_pair: tuple[int, int] = (-1, 1)) -> PTGArena:
    """A valid arena where some non-target locations are unbounded."""
    rng = random.Random(seed)
    base = random_arena(seed, max_locations, max_const, rate_pair)
    locations = []
    unbounded_ids = set()
    for loc in base.locations:
        if loc.id not in base.targets and rng.random() < 0.6:
            locations.append(Location(loc.id, loc.owner, loc.rate, Interval.at_least(0)))
            unbounded_ids.add(loc.id)
        else:
            locations.append(loc)
    transitions = []
    for t in base.transitions:
        guard = t.guard
        if t.source in unbounded_ids and rng.random() < 0.5:
            guard = Interval(guard.low, Bound(INFINITY, False))
        reset = t.reset
        if not reset and not guard.high.is_infinite:
            pass
        transitions.append(Transition(t.source, t.label, guard, reset, t.price, t.target))
    arena = PTGArena(tuple(locations), tuple(transitions), base.targets, base.clock)
    fixed = _drop_illegal_unbounded_landings(arena)
    require_valid(fixed)
    return fixed


def _drop_illegal_unbounded_landings(arena: PTGArena) -> PTGArena:
    """Force resets on above-bound moves into bounded locations, so the move
    stays meaningful above the top constant (otherwise it could never fire
    there and the generator would waste coverage)."""
    transitions = []
    for t in arena.transitions:
        if (
            t.guard.high.is_infinite
            and not t.reset
            and not arena.location(t.target).invariant.high.is_infinite
        ):
            transitions.append(
                Transition(t.source, t.label, t.guard, True, t.price, t.target)
            )
        else:
            transitions.append(t)
    return PTGArena(arena.locations, tuple(transitions), arena.targets, arena.clock)


def alt_make_bounded(arena: PTGArena, period: int = 2) -> PTGArena:
    """Independently coded boundedness transform used as the test oracle.

    Same semantic idea as the production transform, different construction
    parameters and code: overflow companions wrap with the given period
    (production wraps every 1 time unit), with their own closure and
    bridging logic.
    """
    require_valid(arena)
    if arena.is_bounded():
        return arena
    cap = max_constant(arena) + 1
    unbounded = {l.id: l for l in arena.locations if l.invariant.high.is_infinite}

    def profits(loc: Location) -> bool:
        if loc.id in arena.targets:
            return False
        return (loc.owner == 1) == (loc.rate < 0) and loc.rate != 0

    pumps = {lid for lid, loc in unbounded.items() if profits(loc)}
    needed: set[str] = set()
    frontier = sorted(pumps)
    while frontier:
        lid = frontier.pop()
        if lid in needed:
            continue
        needed.add(lid)
        if lid in arena.targets:
            continue
        for t in arena.transitions_from(lid):
            if t.guard.high.is_infinite and not t.reset and t.target in unbounded:
                frontier.append(t.target)

    pad_id = {lid: f"{lid}__hi{period}" for lid in needed}
    locations = []
    for loc in arena.locations:
        if loc.id in unbounded:
            locations.append(
                Location(loc.id, loc.owner, loc.rate,
                         Interval(loc.invariant.low, Bound(cap, True)))
            )
        else:
            locations.append(loc)
    for lid in sorted(needed):
        base = unbounded[lid]
        locations.append(Location(pad_id[lid], base.owner, base.rate,
                                  Interval.closed(0, period)))

    transitions = list(arena.transitions)
    targets = set(arena.targets)
    for lid in sorted(needed):
        cid = pad_id[lid]
        if lid in arena.targets:
            targets.add(cid)
            continue
        if lid in pumps:
            transitions.append(Transition(lid, "__jump", Interval.point(cap), True, 0, cid))
            transitions.append(Transition(cid, "__lap", Interval.point(period), True, 0, cid))
        for t in arena.transitions_from(lid):
            if not t.guard.high.is_infinite:
                continue
            if t.reset:
                transitions.append(
                    Transition(cid, t.label, Interval.at_least(0), True, t.price, t.target)
                )
            elif t.target in pad_id:
                transitions.append(
                    Transition(cid, t.label, Interval.at_least(0), False, t.price,
                               pad_id[t.target])
                )
    out = PTGArena(tuple(locations), tuple(transitions), frozenset(targets), arena.clock)
    require_valid(out)
    return out


def original_border_probes(arena: PTGArena) -> list[tuple[str, int]]:
    """(location, constant) pairs at which bounded variants must agree."""
    consts = {0}
    for loc in arena.locations:
        consts.update(loc.invariant.finite_constants())
    for t in arena.transitions:
        consts.update(t.guard.finite_constants())
    probes = []
    for loc in arena.locations:
        for m in sorted(consts):
            if loc.invariant.contains(m):
                probes.append((loc.id, m))
    return probes
