"""Concrete timed semantics: configurations, plays, matches and the
border-shifting play transformations.

All clock values, delays and costs are exact rationals; a step in a play
charges rate * delay + label price.  A play's payoff is the accumulated
cost up to its first target configuration, or +oo when no target is ever
reached (including plays truncated at a step bound).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arena import (
    ExtValue,
    PLUS_INF,
    PTGArena,
    Rejection,
    bi_valued_profile,
)
from .regions import check_eta, constants


class SimulationError(ValueError):
    pass


class MoveError(SimulationError):
    """The named transition does not exist at the current location."""


class GuardViolation(SimulationError):
    pass


class InvariantViolation(SimulationError):
    pass


class StrategyDomainError(SimulationError):
    """A strategy was consulted on a prefix outside its domain."""

    def __init__(self, message: str, play: "Play" | None = None):
        super().__init__(message)
        self.play = play


@dataclass(frozen=True)
class Configuration:
    location: str
    valuation: Fraction


@dataclass(frozen=True)
class TimedMove:
    delay: Fraction
    label: str

    def __post_init__(self):
        if self.delay < 0:
            raise SimulationError(f"negative delay {self.delay}")


@dataclass(frozen=True)
class Step:
    before: Configuration
    move: TimedMove
    cost: Fraction
    after: Configuration


class Play:
    """An alternating sequence of configurations and timed moves.

    Plays are append-only: ``extend`` returns a new play sharing the
    prefix.  ``truncated`` marks a play cut off at a step bound before
    reaching a target.
    """

    def __init__(self, arena: PTGArena, start: Configuration,
                 steps: tuple[Step, ...] = (), truncated: bool = False):
        if not arena.location(start.location).invariant.contains(start.valuation):
            raise InvariantViolation(
                f"start valuation {start.valuation} outside invariant of {start.location}"
            )
        self.arena = arena
        self.start = start
        self.steps = steps
        self.truncated = truncated

    @property
    def configs(self) -> list[Configuration]:
        return [self.start] + [s.after for s in self.steps]

    @property
    def last(self) -> Configuration:
        return self.steps[-1].after if self.steps else self.start

    def extend(self, move: TimedMove) -> "Play":
        after, cost = timed_step(self.arena, self.last, move)
        step = Step(self.last, move, cost, after)
        return Play(self.arena, self.start, self.steps + (step,), self.truncated)

    def mark_truncated(self) -> "Play":
        return Play(self.arena, self.start, self.steps, True)

    def prefix_cost(self, k: int | None = None) -> Fraction:
        k = len(self.steps) if k is None else k
        return sum((s.cost for s in self.steps[:k]), Fraction(0))

    def stop_index(self) -> int | None:
        """Index of the first target configuration, or None."""
        for i, c in enumerate(self.configs):
            if self.arena.is_target(c.location):
                return i
        return None

    def reached_target(self) -> bool:
        return self.stop_index() is not None

    def __len__(self):
        return len(self.steps)


def timed_step(arena: PTGArena, config: Configuration, move: TimedMove):
    """Apply one timed move; returns (successor configuration, step cost).

    The move is legal when the transition exists, the post-delay valuation
    satisfies the guard, waiting keeps the invariant (an interval, so
    checking the endpoint suffices) and the landing valuation satisfies
    the successor's invariant.
    """
    t = arena.transition(config.location, move.label)
    if t is None:
        raise MoveError(f"no transition {move.label!r} at {config.location!r}")
    loc = arena.location(config.location)
    post = config.valuation + move.delay
    if not loc.invariant.contains(post):
        raise InvariantViolation(
            f"waiting to {post} leaves the invariant of {loc.id!r}"
        )
    if not t.guard.contains(post):
        raise GuardViolation(
            f"guard {t.guard} of ({loc.id!r}, {move.label!r}) rejects {post}"
        )
    landing = Fraction(0) if t.reset else post
    if not arena.location(t.target).invariant.contains(landing):
        raise InvariantViolation(
            f"landing at {landing} violates the invariant of {t.target!r}"
        )
    cost = loc.rate * move.delay + t.price
    return Configuration(t.target, landing), cost


def play_cost(play: Play) -> Fraction | ExtValue:
    """Cost up to the first target configuration; +oo if none occurs."""
    stop = play.stop_index()
    if stop is None:
        return PLUS_INF
    return play.prefix_cost(stop)


def run_match(arena: PTGArena, p1_strategy, p2_strategy,
              start: Configuration, max_steps: int) -> Play:
    """Deterministic match: the owner of the current location moves.

    Stops at the first target configuration, or after ``max_steps`` moves
    with the play marked truncated.
    """
    play = Play(arena, start)
    while len(play.steps) < max_steps:
        here = play.last
        if arena.is_target(here.location):
            return play
        owner = arena.location(here.location).owner
        strategy = p1_strategy if owner == 1 else p2_strategy
        move = strategy.move(play)
        play = play.extend(move)
    if not arena.is_target(play.last.location):
        play = play.mark_truncated()
    return play


def serialize_trace(play: Play) -> str:
    """One line per step: ``loc v +t a  loc' v' [cost]`` with p/q rationals."""
    lines = []
    for s in play.steps:
        lines.append(
            f"{s.before.location} {s.before.valuation} +{s.move.delay} "
            f"{s.move.label} → {s.after.location} {s.after.valuation} [{s.cost}]"
        )
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Border-shifting play transformations
# ---------------------------------------------------------------------------


def _require_shift_inputs(play: Play, eta: Fraction):
    eta = check_eta(eta)
    arena = play.arena
    profile = bi_valued_profile(arena)
    if isinstance(profile, Rejection):
        raise SimulationError(f"arena is not bi-valued: {profile.reason}")
    ladder = constants(arena)
    v0 = play.start.valuation
    if not any(abs(v0 - m) <= eta for m in ladder):
        raise SimulationError(
            f"play must start within eta of a border, got {v0}"
        )
    return arena, profile, ladder, eta


def _near_border(v: Fraction, ladder, width: Fraction) -> bool:
    return any(abs(v - m) <= width for m in ladder)


def _gap_below(v: Fraction, ladder) -> int:
    """Index k with M_k < v < M_{k+1} for a v strictly inside a gap."""
    for k in range(len(ladder) - 1):
        if ladder[k] < v < ladder[k + 1]:
            return k
    raise SimulationError(f"valuation {v} is not inside a border gap")


def shift_up(play: Play, eta: Fraction) -> Play:
    """Rebuild the play so every stop is within eta of a border, never
    decreasing the total weight.

    Steps already stopping near a border are copied (same post-delay
    valuation).  A step stopping in a middle gap is clamped to the low edge
    M_k + eta when the location carries the low rate (spend as little time
    as possible there), and pushed to the high edge M_{k+1} - eta when it
    carries the high rate; the push is skipped (delay 0) for a player-1
    location that spent no time while sitting exactly at M_k + eta.  The
    result is region-equivalent to the input and is built prefix by
    prefix, so equal prefixes shift equally.
    """
    arena, profile, ladder, eta = _require_shift_inputs(play, eta)
    shifted = Play(arena, play.start, (), play.truncated)
    for step in play.steps:
        loc = arena.location(step.before.location)
        post = step.before.valuation + step.move.delay
        here = shifted.last.valuation
        if _near_border(post, ladder, eta):
            t_new = post - here
        else:
            k = _gap_below(post, ladder)
            low_edge = ladder[k] + eta
            high_edge = ladder[k + 1] - eta
            if profile.is_low(loc.rate):
                t_new = max(low_edge - here, Fraction(0))
            elif loc.owner == 2 or step.move.delay > 0 or here != low_edge:
                t_new = high_edge - here
            else:
                t_new = Fraction(0)
        shifted = shifted.extend(TimedMove(t_new, step.move.label))
    return shifted


def _convergent_in_place(v: Fraction, ladder, width: Fraction, eta: Fraction) -> bool:
    """May a step stop at ``v`` with a zero delay and stay convergent?
    Either ``v`` is within the current width of a border, or it sits in a
    just-above band (M_k + width, M_k + eta], where zero delays are
    explicitly allowed."""
    if _near_border(v, ladder, width):
        return True
    return any(m + width < v <= m + eta for m in ladder)


def _min_convergent_landing(here: Fraction, post: Fraction, lo: int, hi: int,
                            ladder, width: Fraction, eta: Fraction) -> Fraction:
    """Earliest stop >= ``here`` that is convergent at ``width`` and lies in
    the gap (lo, hi) containing ``post`` (used for the expensive rate,
    which wants to spend as little time as possible)."""
    if lo < here < hi and _convergent_in_place(here, ladder, width, eta):
        return here
    candidates = [Fraction(lo) + width, Fraction(hi) - width]
    if _near_border(post, ladder, width):
        candidates.append(post)
    reachable = [c for c in candidates if c >= here]
    if not reachable:
        raise SimulationError(
            f"no convergent stop in ({lo}, {hi}) at width {width} from {here}"
        )
    return min(reachable)


def shift_down(play: Play, eta: Fraction) -> Play:
    """Rebuild the play so the n-th stop is within eta/2^(n+1) of a border
    (or a zero delay from just above one), never increasing the weight.

    Mirror image of shift_up with step-indexed widths, hardened against
    stops that park exactly on a width threshold (the widths halve every
    step, so a stop copied just below a border can be orphaned by all
    later widths; the hardening pre-pays for the later drift):

    * a stop at a border is forced (point regions are singletons);
    * a location with the high rate takes the earliest convergent stop in
      the original stop's gap: in place when already convergent, at
      M_k + eta/2^(n+1) when approaching from below, copying a stop that
      is already within the current width, or failing all that the band
      just under the next border;
    * a location with the low rate wants time maximized (spent time is
      refunded, or at worst free) and lands at
      max(M_{k+1} - eta/2^(n+2), midpoint(stop, M_{k+1})): half the
      current width so the immediately following step is already within
      reach, while the midpoint banks enough refund to pay for later
      climbs when the low rate is strictly negative; a player-2 location
      that spent no time while sitting at or below M_k + eta clamps into
      that low band instead.
    """
    arena, profile, ladder, eta = _require_shift_inputs(play, eta)
    shifted = Play(arena, play.start, (), play.truncated)
    for i, step in enumerate(play.steps):
        width = eta / 2 ** (i + 1)
        loc = arena.location(step.before.location)
        post = step.before.valuation + step.move.delay
        here = shifted.last.valuation
        if post in ladder:
            target = post  # point region: the landing is forced
        else:
            k = _gap_below(post, ladder)
            lo, hi = ladder[k], ladder[k + 1]
            if not profile.is_low(loc.rate):
                target = _min_convergent_landing(here, post, lo, hi, ladder, width, eta)
            elif loc.owner == 2 and step.move.delay == 0 and here <= lo + eta:
                target = max(Fraction(lo) + width, here)
            else:
                target = max(Fraction(hi) - width / 2, (post + hi) / 2, here)
        shifted = shifted.extend(TimedMove(target - here, step.move.label))
    return shifted


def classify_play(play: Play, eta: Fraction) -> dict:
    """Flags {"eta_close", "eta_convergent"} for a play.

    eta_close: every post-delay valuation is within eta of a border.
    eta_convergent: the i-th step stops within eta/2^(i+1) of a border,
    or is a zero delay taken from (M_k + eta/2^(i+1), M_k + eta].
    """
    eta = check_eta(eta)
    ladder = constants(play.arena)
    close = True
    convergent = True
    for i, step in enumerate(play.steps):
        post = step.before.valuation + step.move.delay
        if not _near_border(post, ladder, eta):
            close = False
        width = eta / 2 ** (i + 1)
        ok = _near_border(post, ladder, width)
        if not ok and step.move.delay == 0:
            v = step.before.valuation
            ok = any(m + width < v <= m + eta for m in ladder)
        if not ok:
            convergent = False
    return {"eta_close": close, "eta_convergent": convergent}
