"""Symbolic algebra of clock regions near integer borders.

Let 0 = M_0 < M_1 < ... < M_K be the integers appearing in the guards and
invariants of a bounded arena (the "ladder").  For a width parameter
eta in (0, 1/3), the clock axis splits into point regions {M_k}, narrow
bands just above and just below each border, and wide middle gaps.  The
narrow regions are the "useful" ones: near-optimal strategies only ever
stop in them, and all constructions downstream work on them symbolically,
without committing to a numeric eta.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arena import PTGArena, require_valid


class Position(enum.IntEnum):
    """Position of a narrow region relative to its border constant.

    The numeric values realize the natural order by lower bounds:
    [M_k - eta, M_k) < {M_k} < (M_k, M_k + eta].
    """

    JUST_BELOW = 0
    AT = 1
    JUST_ABOVE = 2


@dataclass(frozen=True, order=True)
class EtaRegion:
    """A narrow region anchored at ladder index ``border_index``.

    Purely symbolic: the numeric eta is supplied only where concrete
    valuations are needed.  Dataclass ordering realizes the region order.
    """

    border_index: int
    position: Position

    def __post_init__(self):
        if self.border_index < 0:
            raise ValueError("border index must be >= 0")
        if self.border_index == 0 and self.position == Position.JUST_BELOW:
            raise ValueError("no region below clock value 0")

    def anchor(self, ladder: Sequence[int]) -> int:
        return ladder[self.border_index]

    def lower_bound(self, ladder: Sequence[int], eta: Fraction) -> Fraction:
        m = Fraction(self.anchor(ladder))
        return m - eta if self.position == Position.JUST_BELOW else m

    def sample(self, ladder: Sequence[int], eta: Fraction) -> Fraction:
        """A concrete valuation inside the region for the given eta."""
        m = Fraction(self.anchor(ladder))
        if self.position == Position.AT:
            return m
        if self.position == Position.JUST_ABOVE:
            return m + eta
        return m - eta

    def contains(self, v: Fraction, ladder: Sequence[int], eta: Fraction) -> bool:
        m = self.anchor(ladder)
        if self.position == Position.AT:
            return v == m
        if self.position == Position.JUST_ABOVE:
            return m < v <= m + eta
        return m - eta <= v < m

    def render(self, ladder: Sequence[int]) -> str:
        m = self.anchor(ladder)
        if self.position == Position.AT:
            return "{%d}" % m
        if self.position == Position.JUST_ABOVE:
            return "(%d,%d+eta]" % (m, m)
        return "[%d-eta,%d)" % (m, m)


@dataclass(frozen=True)
class RegionClass:
    """Classification of a valuation: a useful region or a middle gap.

    ``FAR`` with gap index k stands for the open interval
    (M_k + eta, M_{k+1} - eta).
    """

    useful: EtaRegion | None = None
    gap_index: int | None = None

    @property
    def is_useful(self) -> bool:
        return self.useful is not None

    @staticmethod
    def far(gap_index: int) -> "RegionClass":
        return RegionClass(None, gap_index)

    @staticmethod
    def of(region: EtaRegion) -> "RegionClass":
        return RegionClass(region, None)


def constants(arena: PTGArena) -> list[int]:
    """The ladder: sorted distinct guard/invariant constants, 0 included."""
    require_valid(arena)
    if not arena.is_bounded():
        raise ValueError("arena must be bounded before extracting its ladder")
    values = {0}
    for loc in arena.locations:
        values.update(loc.invariant.finite_constants())
    for t in arena.transitions:
        values.update(t.guard.finite_constants())
    return sorted(values)


def useful_regions(ladder: Sequence[int]) -> list[EtaRegion]:
    """All narrow regions of the ladder, in increasing order (3K+1 of them).

    There is nothing below 0 and, in a bounded arena, nothing usable above
    the top constant, so the lowest border has no JUST_BELOW region and the
    highest no JUST_ABOVE region.
    """
    if not ladder or ladder[0] != 0 or list(ladder) != sorted(set(ladder)):
        raise ValueError("ladder must be strictly increasing and start at 0")
    top = len(ladder) - 1
    out: list[EtaRegion] = []
    for k in range(len(ladder)):
        if k > 0:
            out.append(EtaRegion(k, Position.JUST_BELOW))
        out.append(EtaRegion(k, Position.AT))
        if k < top:
            out.append(EtaRegion(k, Position.JUST_ABOVE))
    return out


def delay(ladder: Sequence[int], i: EtaRegion, j: EtaRegion) -> int:
    """Integer border-to-border distance between two regions with i <= j.

    Both regions' lower bounds sit within eta of their anchor constants,
    and eta < 1/3, so the closest integer to the difference of the numeric
    lower bounds is exactly the difference of the anchors.
    """
    if j < i:
        raise ValueError(f"regions out of order: {j} < {i}")
    return ladder[j.border_index] - ladder[i.border_index]


def check_eta(eta: Fraction) -> Fraction:
    eta = Fraction(eta)
    if not (0 < eta < Fraction(1, 3)):
        raise ValueError(f"eta must lie in (0, 1/3), got {eta}")
    return eta


def region_of(valuation: Fraction, ladder: Sequence[int], eta: Fraction) -> RegionClass:
    """Classify a valuation in [0, M_K] as a useful region or a middle gap."""
    eta = check_eta(eta)
    v = Fraction(valuation)
    if v < 0 or v > ladder[-1]:
        raise ValueError(f"valuation {v} outside [0, {ladder[-1]}]")
    for k, m in enumerate(ladder):
        if v == m:
            return RegionClass.of(EtaRegion(k, Position.AT))
        if m < v <= m + eta:
            return RegionClass.of(EtaRegion(k, Position.JUST_ABOVE))
        if m - eta <= v < m:
            return RegionClass.of(EtaRegion(k, Position.JUST_BELOW))
    for k in range(len(ladder) - 1):
        if ladder[k] + eta < v < ladder[k + 1] - eta:
            return RegionClass.far(k)
    raise AssertionError(f"classification gap at {v}")  # unreachable: classes tile


def coarse_region_index(valuation: Fraction, ladder: Sequence[int]) -> int:
    """Index of the coarse region of a valuation: 2k for {M_k}, 2k+1 for
    the open interval (M_k, M_{k+1}), and 2K+1 beyond the top constant."""
    v = Fraction(valuation)
    if v < 0:
        raise ValueError("negative valuation")
    for k, m in enumerate(ladder):
        if v == m:
            return 2 * k
        if v < m:
            return 2 * k - 1
    return 2 * len(ladder) - 1


def same_coarse_region(u: Fraction, v: Fraction, ladder: Sequence[int]) -> bool:
    return coarse_region_index(u, ladder) == coarse_region_index(v, ladder)


def same_fine_region(u: Fraction, v: Fraction, ladder: Sequence[int], eta: Fraction) -> bool:
    """Eta-refined region equivalence: same coarse region and same
    eta-proximity to every border (at the top border, same side of
    M_K - eta)."""
    if not same_coarse_region(u, v, ladder):
        return False
    eta = check_eta(eta)
    top = len(ladder) - 1
    for k, m in enumerate(ladder):
        if k < top:
            if (abs(u - m) <= eta) != (abs(v - m) <= eta):
                return False
        else:
            if (u >= m - eta) != (v >= m - eta):
                return False
    return True


def play_region_equiv(r, r2, ladder: Sequence[int], eta: Fraction | None = None) -> bool:
    """Region equivalence of two plays.

    True iff the plays have equal length, pairwise region-equivalent
    configurations with identical locations and labels, and
    region-equivalent post-delay valuations at every step.  With ``eta``
    given, the fine equivalence is used; otherwise the coarse one.
    """
    if eta is None:
        same = lambda a, b: same_coarse_region(a, b, ladder)
    else:
        e = check_eta(eta)
        same = lambda a, b: same_fine_region(a, b, ladder, e)

    if len(r.steps) != len(r2.steps):
        return False
    if r.configs[0].location != r2.configs[0].location:
        return False
    if not same(r.configs[0].valuation, r2.configs[0].valuation):
        return False
    for s1, s2 in zip(r.steps, r2.steps):
        if s1.move.label != s2.move.label:
            return False
        post1 = s1.before.valuation + s1.move.delay
        post2 = s2.before.valuation + s2.move.delay
        if not same(post1, post2):
            return False
        if s1.after.location != s2.after.location:
            return False
        if not same(s1.after.valuation, s2.after.valuation):
            return False
    return True
