"""Finite graph abstraction of a bounded bi-valued one-clock arena.

Vertices pair a location with a useful narrow region contained in its
invariant.  An action (J, a) means "let time elapse up to region J, then
fire label a"; the edge exists when J is ahead of the current region, the
whole stretch of regions crossed stays inside the invariant, and J
satisfies the guard of a.  Edge weights charge the location rate for the
integer border-to-border delay plus the label price, so the graph has
integer weights and can be handed to the finite-game solver.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arena import (
    ArenaError,
    Interval,
    PTGArena,
    PricedGameGraph,
    bi_valued_profile,
    Rejection,
    require_valid,
)
from .regions import EtaRegion, Position, constants, useful_regions


@dataclass(frozen=True, order=True)
class AbstractVertex:
    location: str
    region: EtaRegion


@dataclass(frozen=True, order=True)
class AbstractAction:
    target_region: EtaRegion
    label: str


def region_satisfies(region: EtaRegion, zone: Interval, ladder) -> bool:
    """Symbolic containment: is the region inside the zone for every
    eta in (0, 1/3)?

    Zone endpoints must be ladder constants (or the infinite upper bound);
    ladder gaps are at least 1 > 2*eta, which makes the checks below exact.
    """
    for c in zone.finite_constants():
        if c not in ladder:
            raise ValueError(f"zone endpoint {c} is not a ladder constant")
    m = region.anchor(ladder)
    lo, hi = zone.low, zone.high
    if region.position == Position.AT:
        return zone.contains(m)
    if region.position == Position.JUST_ABOVE:
        # (m, m+eta] fits iff the zone reaches strictly below m+delta for
        # all small delta and strictly above m
        low_ok = lo.value < m or (lo.value == m)  # openness at m irrelevant
        high_ok = hi.is_infinite or hi.value > m
        return low_ok and high_ok
    # JUST_BELOW: [m-eta, m)
    low_ok = lo.value < m
    high_ok = hi.is_infinite or hi.value > m or (hi.value == m)
    return low_ok and high_ok


def build_border_abstraction(arena: PTGArena) -> PricedGameGraph:
    """Construct the finite priced game graph of a bounded bi-valued arena.

    All legal edges are emitted (no pruning); target vertices are absorbing
    and get no outgoing edges.  Some non-target vertices can end up with no
    edges at all (no guard is satisfiable from their region); the solver
    reads them as value +oo, which matches the timed game, where such a
    configuration is stuck forever.
    """
    require_valid(arena)
    if not arena.is_bounded():
        raise ArenaError("arena must be bounded; apply make_bounded first")
    profile = bi_valued_profile(arena)
    if isinstance(profile, Rejection):
        raise ArenaError(f"arena is not bi-valued: {profile.reason}")

    ladder = constants(arena)
    regions = useful_regions(ladder)
    region_index = {r: i for i, r in enumerate(regions)}

    vertices: list[tuple[AbstractVertex, int]] = []
    for loc in arena.locations:
        for reg in regions:
            if region_satisfies(reg, loc.invariant, ladder):
                vertices.append((AbstractVertex(loc.id, reg), loc.owner))
    vertex_ids = {v for v, _ in vertices}

    actions: list[AbstractAction] = []
    labels = sorted({t.label for t in arena.transitions})
    for reg in regions:
        for lab in labels:
            actions.append(AbstractAction(reg, lab))

    at_zero = EtaRegion(0, Position.AT)
    edges: dict[tuple[AbstractVertex, AbstractAction], tuple[AbstractVertex, int]] = {}
    for vertex, _ in vertices:
        if arena.is_target(vertex.location):
            continue
        loc = arena.location(vertex.location)
        start = region_index[vertex.region]
        # walk forward while the invariant still holds for every crossed region
        for j in range(start, len(regions)):
            target_region = regions[j]
            if not region_satisfies(target_region, loc.invariant, ladder):
                break
            for t in arena.transitions_from(loc.id):
                if not region_satisfies(target_region, t.guard, ladder):
                    continue
                landing = at_zero if t.reset else target_region
                succ = AbstractVertex(t.target, landing)
                if succ not in vertex_ids:
                    continue
                weight = loc.rate * (
                    ladder[target_region.border_index] - ladder[vertex.region.border_index]
                ) + t.price
                edges[(vertex, AbstractAction(target_region, t.label))] = (succ, weight)

    targets = {v for v, _ in vertices if arena.is_target(v.location)}
    return PricedGameGraph(vertices, actions, edges, targets)


def reachable_subgraph(graph: PricedGameGraph, v0) -> PricedGameGraph:
    """Restriction of the graph to the vertices reachable from ``v0``."""
    if v0 not in graph.owner:
        raise KeyError(f"unknown vertex {v0!r}")
    seen = {v0}
    stack = [v0]
    while stack:
        v = stack.pop()
        for _, succ, _ in graph.out_edges(v):
            if succ not in seen:
                seen.add(succ)
                stack.append(succ)
    vertices = [(vid, own) for vid, own in graph.vertices if vid in seen]
    edges = {
        (vid, act): (succ, w)
        for (vid, act), (succ, w) in graph.edges.items()
        if vid in seen
    }
    targets = {t for t in graph.targets if t in seen}
    return PricedGameGraph(vertices, graph.actions, edges, targets)


def _vertex_label(vid, ladder) -> str:
    if isinstance(vid, AbstractVertex):
        return f"{vid.location} {vid.region.render(ladder)}"
    return str(vid)


def _action_label(act, ladder) -> str:
    if isinstance(act, AbstractAction):
        return f"({act.target_region.render(ladder)},{act.label})"
    return str(act)


def export_dot(graph: PricedGameGraph, ladder=None) -> str:
    """Deterministic DOT rendering of a priced game graph.

    Player-1 vertices are ellipses, player-2 vertices boxes, targets get a
    double border.  Edge labels read "(J,a) / w".  Output is byte-identical
    across runs for equal input.
    """
    ladder = ladder if ladder is not None else []
    lines = ["digraph priced_game {"]
    order = graph.sorted_vertex_ids()
    names = {vid: f"v{idx}" for idx, vid in enumerate(order)}
    for vid in order:
        shape = "ellipse" if graph.owner[vid] == 1 else "box"
        attrs = [f'label="{_vertex_label(vid, ladder)}"', f"shape={shape}"]
        if graph.is_target(vid):
            attrs.append("peripheries=2")
        lines.append(f"  {names[vid]} [{', '.join(attrs)}];")
    for vid in order:
        for act, succ, w in graph.out_edges(vid):
            label = f"{_action_label(act, ladder)} / {w}"
            lines.append(f'  {names[vid]} -> {names[succ]} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
