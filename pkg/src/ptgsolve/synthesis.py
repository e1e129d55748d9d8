"""End-to-end solving of one-clock bi-valued arenas and extraction of
near-optimal timed strategies.

The pipeline is: bound the arena, build its border abstraction, solve the
finite game, and read the game value at a border configuration (l, M_k)
off the abstract vertex (l, {M_k}).  When the value is finite, both
players' abstract strategies concretize into timed strategies whose match
cost stays within epsilon of the value, with the stop-width eta chosen
from epsilon and the player-1 step bound L.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction

from .abstraction import AbstractVertex, build_border_abstraction
from .arena import (
    ArenaError,
    ExtValue,
    PTGArena,
    Rejection,
    bi_valued_profile,
    make_bounded,
    require_valid,
)
from .regions import EtaRegion, Position, check_eta, constants, region_of
from .simulation import Play, StrategyDomainError, TimedMove
from .solver import CounterStrategy, MemorylessStrategy, SolveResult, solve_finite


@dataclass(frozen=True)
class EpsilonPlan:
    """A numeric eta certified against epsilon and the step bound L."""

    epsilon: Fraction
    eta: Fraction
    steps: int

    def __post_init__(self):
        check_eta(self.eta)
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.steps < 1:
            raise ValueError("step bound must be >= 1")
        if not (self.eta < self.epsilon / (2 * self.steps)):
            raise ValueError("eta must be < epsilon / (2 L)")
        if not (self.eta < self.epsilon / 3):
            raise ValueError("eta must be < epsilon / 3")


def steps_bound(result: SolveResult) -> int:
    """Step budget of the player-1 counter strategy: the stabilization
    index of the value table (at least 1).  Rejects tables with infinite
    values, where no finite budget exists."""
    for vid in result.values:
        if not result.values[vid].is_finite:
            raise ArenaError(f"infinite value at {vid!r}; no finite step bound")
    return max(1, result.table.stabilization_index)


def choose_eta(epsilon: Fraction, steps: int) -> Fraction:
    """A canonical eta strictly under all three bounds: half the minimum
    of epsilon/(2L), epsilon/3 and 1/3."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if steps < 1:
        raise ValueError("step bound must be >= 1")
    return min(epsilon / (2 * steps), epsilon / 3, Fraction(1, 3)) / 2


def _useful_region_of(valuation: Fraction, ladder, eta: Fraction,
                      play: Play | None = None) -> EtaRegion:
    cls = region_of(valuation, ladder, eta)
    if not cls.is_useful:
        raise StrategyDomainError(
            f"valuation {valuation} is not within eta of a border", play
        )
    return cls.useful


def _delay_to_region(target: EtaRegion, here: EtaRegion, valuation: Fraction,
                     ladder, eta: Fraction) -> Fraction:
    """Player-1 translation of an abstract action's target region."""
    if target == here:
        return Fraction(0)
    m = Fraction(target.anchor(ladder))
    if target.position == Position.AT:
        return m - valuation
    if target.position == Position.JUST_BELOW:
        return m - eta - valuation
    return m + eta - valuation


class UniformP1Strategy:
    """Timed realization of the abstract counter strategy.

    Decisions depend only on the region history; every move stops exactly
    at a border or at distance eta from one, so the strategy is
    region-uniform.  The counter starts at the step bound and decreases
    with every move of either player.
    """

    def __init__(self, counter: CounterStrategy, plan: EpsilonPlan, ladder):
        self.counter = counter
        self.plan = plan
        self.ladder = list(ladder)

    def move(self, play: Play) -> TimedMove:
        budget = self.plan.steps - len(play.steps)
        if budget < 1:
            raise StrategyDomainError("player-1 step budget exhausted", play)
        here = play.last
        region = _useful_region_of(here.valuation, self.ladder, self.plan.eta, play)
        vertex = AbstractVertex(here.location, region)
        action = self.counter.action_at(vertex, budget)
        delay = _delay_to_region(
            action.target_region, region, here.valuation, self.ladder, self.plan.eta
        )
        return TimedMove(delay, action.label)


class ConvergentP2Strategy:
    """Timed realization of the abstract positional strategy for player 2.

    The n-th move stops within eta/2^(n+1) of a border (clamped to a zero
    delay when the current valuation already sits past the offset point),
    so the produced plays converge onto the borders.
    """

    def __init__(self, positional: MemorylessStrategy, plan: EpsilonPlan, ladder):
        self.positional = positional
        self.plan = plan
        self.ladder = list(ladder)

    def move(self, play: Play) -> TimedMove:
        here = play.last
        region = _useful_region_of(here.valuation, self.ladder, self.plan.eta, play)
        vertex = AbstractVertex(here.location, region)
        action = self.positional.action_at(vertex)
        target = action.target_region
        m = Fraction(target.anchor(self.ladder))
        offset = self.plan.eta / 2 ** (len(play.steps) + 1)
        if target.position == Position.AT:
            delay = m - here.valuation
        elif target.position == Position.JUST_BELOW:
            delay = max(m - offset - here.valuation, Fraction(0))
        else:
            delay = max(m + offset - here.valuation, Fraction(0))
        return TimedMove(delay, action.label)


def concretize_p1(sigma_hat: CounterStrategy, plan: EpsilonPlan, ladder) -> UniformP1Strategy:
    return UniformP1Strategy(sigma_hat, plan, ladder)


def concretize_p2(tau_hat: MemorylessStrategy, plan: EpsilonPlan, ladder) -> ConvergentP2Strategy:
    return ConvergentP2Strategy(tau_hat, plan, ladder)


class RandomUniformP1Strategy:
    """Seeded random region-uniform player-1 strategy (an adversary for
    stress-testing player 2's concretized strategy)."""

    def __init__(self, seed: int, graph, eta: Fraction, ladder):
        self.rng = random.Random(seed)
        self.graph = graph
        self.eta = check_eta(eta)
        self.ladder = list(ladder)

    def move(self, play: Play) -> TimedMove:
        here = play.last
        region = _useful_region_of(here.valuation, self.ladder, self.eta, play)
        vertex = AbstractVertex(here.location, region)
        edges = self.graph.out_edges(vertex)
        if not edges:
            raise StrategyDomainError(f"no moves at abstract vertex {vertex}", play)
        action, _, _ = self.rng.choice(edges)
        delay = _delay_to_region(
            action.target_region, region, here.valuation, self.ladder, self.eta
        )
        return TimedMove(delay, action.label)


@dataclass
class SynthesisOutcome:
    """Value of a border configuration plus, when finite, both concretized
    strategies and the supporting pipeline artifacts."""

    value: ExtValue
    p1: UniformP1Strategy | None
    p2: ConvergentP2Strategy | None
    plan: EpsilonPlan | None
    bounded: PTGArena
    ladder: list[int]
    result: SolveResult
    start_vertex: AbstractVertex

    def __iter__(self):
        return iter((self.value, self.p1, self.p2))


def solve_ptg(arena: PTGArena, state: tuple[str, Fraction],
              epsilon: Fraction) -> SynthesisOutcome:
    """Game value at a border configuration (location, M_k), with
    epsilon-optimal timed strategies for both players when it is finite.

    Non-border valuations are rejected: the value transfer between the
    arena and its finite abstraction is established at borders only.
    """
    require_valid(arena)
    profile = bi_valued_profile(arena)
    if isinstance(profile, Rejection):
        raise ArenaError(f"arena is not bi-valued: {profile.reason}")
    location, valuation = state
    if not arena.has_location(location):
        raise ArenaError(f"unknown location {location!r}")
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ArenaError("epsilon must be positive")

    bounded = make_bounded(arena)
    ladder = constants(bounded)
    valuation = Fraction(valuation)
    if valuation not in ladder:
        raise ArenaError(
            f"valuation {valuation} is not a border constant of {ladder}"
        )
    if not bounded.location(location).invariant.contains(valuation):
        raise ArenaError(
            f"valuation {valuation} violates the invariant of {location!r}"
        )
    graph = build_border_abstraction(bounded)
    result = solve_finite(graph)
    start = AbstractVertex(
        location, EtaRegion(ladder.index(int(valuation)), Position.AT)
    )
    value = result.value(start)
    if not value.is_finite:
        return SynthesisOutcome(value, None, None, None, bounded, ladder, result, start)

    steps = max(1, result.table.stabilization_index)
    plan = EpsilonPlan(epsilon, choose_eta(epsilon, steps), steps)
    p1 = concretize_p1(result.p1, plan, ladder)
    p2 = concretize_p2(result.p2, plan, ladder)
    return SynthesisOutcome(value, p1, p2, plan, bounded, ladder, result, start)


class Verdict(enum.Enum):
    WIN = "WIN"
    EPSILON_BOUNDARY = "EPSILON_BOUNDARY"
    LOSE = "LOSE"


_COMPARATORS = ("<=", "<", "=", ">", ">=")

# verdicts for (value < K, value == K, value > K), per comparator; read
# from player 1's side, with the three-way comparison taken literally on
# extended values (so +oo compares greater than every finite bound)
_VERDICT_TABLE = {
    "<=": (Verdict.WIN, Verdict.EPSILON_BOUNDARY, Verdict.LOSE),
    "<": (Verdict.WIN, Verdict.EPSILON_BOUNDARY, Verdict.LOSE),
    "=": (Verdict.LOSE, Verdict.EPSILON_BOUNDARY, Verdict.LOSE),
    ">": (Verdict.LOSE, Verdict.EPSILON_BOUNDARY, Verdict.WIN),
    ">=": (Verdict.LOSE, Verdict.EPSILON_BOUNDARY, Verdict.WIN),
}


def decide_objective(value: ExtValue, comparator: str, bound: int) -> Verdict:
    """Verdict for the payoff objective ``payoff <comparator> bound``.

    Decided at the value level: WIN / LOSE when the game value is strictly
    inside / outside the objective, EPSILON_BOUNDARY when the value sits
    exactly on the bound, where player 1 only guarantees payoffs within
    every positive epsilon of it and exact optimality is not claimed.
    """
    if comparator not in _COMPARATORS:
        raise ValueError(f"comparator must be one of {_COMPARATORS}")
    k = ExtValue.finite(bound)
    if value < k:
        idx = 0
    elif value == k:
        idx = 1
    else:
        idx = 2
    return _VERDICT_TABLE[comparator][idx]
