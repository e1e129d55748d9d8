from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ptgsolve.arena import (
    Interval,
    Location,
    PTGArena,
    Transition,
)
from ptgsolve.regions import (
    EtaRegion,
    Position,
    constants,
    delay,
    region_of,
    useful_regions,
)

AT, ABOVE, BELOW = Position.AT, Position.JUST_ABOVE, Position.JUST_BELOW


def _arena_with(guards, inv_top):
    locs = (
        Location("l", 1, 0, Interval.closed(0, inv_top)),
        Location("g", 1, 0, Interval.closed(0, inv_top)),
    )
    edges = tuple(
        Transition("l", f"a{i}", g, False, 0, "g") for i, g in enumerate(guards)
    )
    return PTGArena(locs, edges, frozenset({"g"}))


class TestConstants:
    def test_fig1(self, fig1):
        assert constants(fig1) == [0, 1, 2]

    def test_point_and_upper_guard_on_same_constant(self):
        arena = _arena_with([Interval.point(3), Interval.closed(0, 3)], 3)
        assert constants(arena) == [0, 3]

    def test_no_guards_only_invariant(self):
        arena = PTGArena(
            (Location("l", 1, 0, Interval.closed(0, 5)),),
            (),
            frozenset({"l"}),
        )
        assert constants(arena) == [0, 5]


class TestUsefulRegions:
    def test_ladder_0_2_3(self):
        regions = useful_regions([0, 2, 3])
        assert regions == [
            EtaRegion(0, AT), EtaRegion(0, ABOVE),
            EtaRegion(1, BELOW), EtaRegion(1, AT), EtaRegion(1, ABOVE),
            EtaRegion(2, BELOW), EtaRegion(2, AT),
        ]
        rendered = [r.render([0, 2, 3]) for r in regions]
        assert rendered == [
            "{0}", "(0,0+eta]", "[2-eta,2)", "{2}", "(2,2+eta]", "[3-eta,3)", "{3}",
        ]

    def test_trivial_ladder(self):
        assert useful_regions([0]) == [EtaRegion(0, AT)]

    def test_ladder_0_1_has_four_regions(self):
        assert len(useful_regions([0, 1])) == 4

    def test_length_is_3k_plus_1(self):
        for ladder in ([0, 1], [0, 1, 2, 5], [0, 3, 4, 7, 9]):
            assert len(useful_regions(ladder)) == 3 * (len(ladder) - 1) + 1

    def test_sorted_by_region_order(self):
        regions = useful_regions([0, 2, 3, 7])
        assert regions == sorted(regions)


class TestDelay:
    def test_adjacent_bands(self):
        ladder = [0, 2, 3]
        assert delay(ladder, EtaRegion(1, ABOVE), EtaRegion(2, BELOW)) == 1

    def test_zero_to_band_below_two(self):
        ladder = [0, 2, 3]
        assert delay(ladder, EtaRegion(0, AT), EtaRegion(1, BELOW)) == 2

    def test_reflexive(self):
        ladder = [0, 2, 3]
        for r in useful_regions(ladder):
            assert delay(ladder, r, r) == 0

    def test_order_violation_raises(self):
        ladder = [0, 2, 3]
        with pytest.raises(ValueError):
            delay(ladder, EtaRegion(1, AT), EtaRegion(0, AT))

    def test_additive_along_the_order(self):
        ladder = [0, 1, 4, 6]
        regions = useful_regions(ladder)
        for i, a in enumerate(regions):
            for j in range(i, len(regions)):
                for k in range(j, len(regions)):
                    b, c = regions[j], regions[k]
                    assert delay(ladder, a, c) == delay(ladder, a, b) + delay(ladder, b, c)

    @given(
        st.integers(min_value=0, max_value=20),
        st.integers(min_value=0, max_value=20),
        st.fractions(min_value=Fraction(1, 100), max_value=Fraction(32, 100)),
    )
    def test_matches_closest_integer_of_lower_bound_difference(self, i, j, eta):
        ladder = [0, 2, 3, 7, 11]
        regions = useful_regions(ladder)
        a, b = sorted([regions[i % len(regions)], regions[j % len(regions)]])
        diff = b.lower_bound(ladder, eta) - a.lower_bound(ladder, eta)
        closest = int((diff + Fraction(1, 2)).__floor__())
        assert delay(ladder, a, b) == closest


class TestRegionOf:
    ladder = [0, 2, 3]

    def test_at_border_any_eta(self):
        for eta in (Fraction(1, 4), Fraction(1, 100)):
            cls = region_of(Fraction(2), self.ladder, eta)
            assert cls.useful == EtaRegion(1, AT)

    def test_just_above(self):
        cls = region_of(Fraction(21, 10), self.ladder, Fraction(1, 4))
        assert cls.useful == EtaRegion(1, ABOVE)

    def test_far_gap(self):
        cls = region_of(Fraction(1), self.ladder, Fraction(1, 4))
        assert not cls.is_useful
        assert cls.gap_index == 0

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            region_of(Fraction(4), self.ladder, Fraction(1, 4))
        with pytest.raises(ValueError):
            region_of(Fraction(-1), self.ladder, Fraction(1, 4))

    def test_rejects_bad_eta(self):
        with pytest.raises(ValueError):
            region_of(Fraction(1), self.ladder, Fraction(1, 2))

    @settings(max_examples=300)
    @given(
        st.fractions(min_value=0, max_value=3),
        st.fractions(min_value=Fraction(1, 50), max_value=Fraction(32, 100)),
    )
    def test_partition(self, v, eta):
        # exactly one class, and membership is consistent with the class kind
        cls = region_of(v, self.ladder, eta)
        memberships = [
            r for r in useful_regions(self.ladder) if r.contains(v, self.ladder, eta)
        ]
        if cls.is_useful:
            assert memberships == [cls.useful]
        else:
            assert memberships == []
            k = cls.gap_index
            assert self.ladder[k] + eta < v < self.ladder[k + 1] - eta

    def test_at_classification_is_eta_independent(self):
        for eta in (Fraction(1, 5), Fraction(1, 17), Fraction(3, 10)):
            assert region_of(Fraction(3), self.ladder, eta).useful == EtaRegion(2, AT)
