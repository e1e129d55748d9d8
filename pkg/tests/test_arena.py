import pytest
from hypothesis import given, strategies as st

from ptgsolve.arena import (
    Bound,
    ExtValue,
    Interval,
    Location,
    MINUS_INF,
    PLUS_INF,
    PTGArena,
    Rejection,
    Transition,
    bi_valued_profile,
    make_bounded,
    max_constant,
    validate_arena,
)
from ptgsolve.abstraction import build_border_abstraction
from ptgsolve.regions import EtaRegion, Position, constants
from ptgsolve.abstraction import AbstractVertex
from ptgsolve.solver import solve_finite

from helpers import random_unbounded_arena


ext_values = st.one_of(
    st.integers(min_value=-50, max_value=50).map(ExtValue.finite),
    st.just(PLUS_INF),
    st.just(MINUS_INF),
)


class TestExtValue:
    def test_total_order(self):
        assert MINUS_INF < ExtValue.finite(-(10**9)) < ExtValue.finite(0) < PLUS_INF

    def test_saturating_addition(self):
        assert PLUS_INF + 5 == PLUS_INF
        assert MINUS_INF + ExtValue.finite(10**6) == MINUS_INF
        assert ExtValue.finite(2) + ExtValue.finite(3) == ExtValue.finite(5)

    def test_plus_inf_plus_minus_inf_is_an_error(self):
        with pytest.raises(ArithmeticError):
            PLUS_INF + MINUS_INF
        with pytest.raises(ArithmeticError):
            MINUS_INF + PLUS_INF

    @given(ext_values, ext_values)
    def test_order_totality(self, a, b):
        assert (a < b) or (b < a) or (a == b)

    @given(ext_values, st.integers(min_value=-20, max_value=20))
    def test_addition_total_except_forbidden(self, a, n):
        # adding a finite value never raises and preserves the kind
        out = a + n
        assert out.is_finite == a.is_finite

    def test_negation(self):
        assert -PLUS_INF == MINUS_INF
        assert -ExtValue.finite(4) == ExtValue.finite(-4)


class TestValidate:
    def test_fig1_is_valid(self, fig1):
        assert validate_arena(fig1) == []

    def test_duplicate_source_label_is_reported(self, fig1):
        doubled = PTGArena(
            fig1.locations,
            fig1.transitions + (fig1.transitions[0],),
            fig1.targets,
        )
        problems = validate_arena(doubled)
        assert len(problems) == 1
        assert "l1" in problems[0] and "'a'" in problems[0]

    def test_undeclared_target_is_reported(self, fig1):
        broken = PTGArena(fig1.locations, fig1.transitions, frozenset({"nowhere"}))
        problems = validate_arena(broken)
        assert len(problems) == 1
        assert "nowhere" in problems[0]

    def test_empty_guard_is_reported(self):
        arena = PTGArena(
            (Location("l", 1, 0, Interval.closed(0, 1)),),
            (Transition("l", "a", Interval(Bound(1, False), Bound(1, False)), False, 0, "l"),),
            frozenset({"l"}),
        )
        assert any("empty guard" in p for p in validate_arena(arena))


def _three_rate_arena():
    # three distinct price-rates (0, 1 and -1) on essential locations:
    # outside the bi-valued class
    locs = (
        Location("s", 2, 0, Interval.closed(0, 1)),
        Location("m", 1, 1, Interval.closed(0, 1)),
        Location("d", 2, -1, Interval.closed(0, 1)),
        Location("g", 1, 0, Interval.closed(0, 1)),
    )
    edges = (
        Transition("s", "a", Interval.closed(0, 1), False, 0, "m"),
        Transition("m", "a", Interval.point(1), True, 0, "d"),
        Transition("d", "a", Interval.point(1), False, 0, "g"),
    )
    return PTGArena(locs, edges, frozenset({"g"}))


class TestBiValued:
    def test_fig1_profile(self, fig1):
        profile = bi_valued_profile(fig1)
        assert not isinstance(profile, Rejection)
        assert (profile.low_rate, profile.high_rate, profile.scale) == (-1, 1, 1)

    def test_three_rates_rejected(self):
        rejection = bi_valued_profile(_three_rate_arena())
        assert isinstance(rejection, Rejection)
        assert "[-1, 0, 1]" in rejection.reason

    def test_all_zero_rates_degenerate_profile(self):
        arena = PTGArena(
            (
                Location("l", 1, 0, Interval.closed(0, 1)),
                Location("g", 1, 0, Interval.closed(0, 1)),
            ),
            (Transition("l", "a", Interval.closed(0, 1), False, 0, "g"),),
            frozenset({"g"}),
        )
        profile = bi_valued_profile(arena)
        assert (profile.low_rate, profile.high_rate) == (0, 0)

    def test_mismatched_scales_rejected(self):
        arena = PTGArena(
            (
                Location("l", 1, 2, Interval.closed(0, 1)),
                Location("m", 1, -1, Interval.closed(0, 1)),
                Location("g", 1, 0, Interval.closed(0, 1)),
            ),
            (
                Transition("l", "a", Interval.closed(0, 1), False, 0, "g"),
                Transition("m", "a", Interval.closed(0, 1), False, 0, "g"),
            ),
            frozenset({"g"}),
        )
        assert isinstance(bi_valued_profile(arena), Rejection)

    def test_order_independence(self, fig1):
        flipped = PTGArena(tuple(reversed(fig1.locations)), fig1.transitions, fig1.targets)
        assert bi_valued_profile(flipped) == bi_valued_profile(fig1)


class TestMaxConstant:
    def test_fig1(self, fig1):
        assert max_constant(fig1) == 2

    def test_single_zero_guard(self):
        arena = PTGArena(
            (
                Location("l", 1, 0, Interval.closed(0, 0)),
                Location("g", 1, 0, Interval.closed(0, 0)),
            ),
            (Transition("l", "a", Interval.point(0), False, 0, "g"),),
            frozenset({"g"}),
        )
        assert max_constant(arena) == 0

    def test_constants_two_and_three(self):
        arena = PTGArena(
            (
                Location("l", 1, 0, Interval.closed(0, 2)),
                Location("g", 1, 0, Interval.closed(0, 3)),
            ),
            (Transition("l", "a", Interval.closed(0, 2), False, 0, "g"),),
            frozenset({"g"}),
        )
        assert max_constant(arena) == 3


class TestMakeBounded:
    def test_idempotent_on_bounded(self, fig1):
        assert make_bounded(fig1) is fig1

    def test_loop_exit_example_values_match_hand_bounded_twin(self):
        # one location, invariant [0, inf), resetting self-loop at x >= 1,
        # exit to the target at x = 1
        unbounded = PTGArena(
            (
                Location("l", 1, 1, Interval.at_least(0)),
                Location("g", 1, 0, Interval.closed(0, 1)),
            ),
            (
                Transition("l", "w", Interval.at_least(1), True, 0, "l"),
                Transition("l", "e", Interval.point(1), False, 0, "g"),
            ),
            frozenset({"g"}),
        )
        hand_bounded = PTGArena(
            (
                Location("l", 1, 1, Interval.closed(0, 2)),
                Location("g", 1, 0, Interval.closed(0, 1)),
            ),
            (
                Transition("l", "w", Interval(Bound(1, True), Bound(2, True)), True, 0, "l"),
                Transition("l", "e", Interval.point(1), False, 0, "g"),
            ),
            frozenset({"g"}),
        )
        got = _border_value(make_bounded(unbounded), "l", 0)
        want = _border_value(hand_bounded, "l", 0)
        assert got == want == ExtValue.finite(1)

    def test_unbounded_player2_trap_keeps_plus_inf(self):
        # player 2 can sit on the self-loop forever: no target path, +oo
        arena = PTGArena(
            (
                Location("t", 2, 1, Interval.at_least(0)),
                Location("g", 1, 0, Interval.closed(0, 1)),
            ),
            (Transition("t", "w", Interval.at_least(1), True, 0, "t"),),
            frozenset({"g"}),
        )
        bounded = make_bounded(arena)
        assert _border_value(bounded, "t", 0) == PLUS_INF

    def test_validates_and_grows_at_most_one_constant(self):
        for seed in range(30):
            arena = random_unbounded_arena(seed)
            bounded = make_bounded(arena)
            assert validate_arena(bounded) == []
            assert bounded.is_bounded()
            assert max_constant(bounded) <= max_constant(arena) + 1
            # idempotence on the result
            assert make_bounded(bounded) is bounded


def _border_value(bounded_arena, location, const):
    graph = build_border_abstraction(bounded_arena)
    ladder = constants(bounded_arena)
    result = solve_finite(graph)
    vertex = AbstractVertex(location, EtaRegion(ladder.index(const), Position.AT))
    return result.value(vertex)
