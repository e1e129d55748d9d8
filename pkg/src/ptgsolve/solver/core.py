"""Reachability-cost games on finite priced game graphs.

Player 1 (minimizer) tries to reach a target vertex with minimal total
edge weight; player 2 (maximizer) opposes.  Vertices outside player 1's
attractor of the targets have value +oo.  On the attractor, value
iteration from above converges to the values; a vertex whose iterate
falls below -(n-1)*W is classified -oo together with everything from
which player 1 can force it, and the iteration is re-run with -oo
absorbing.  Finite values are integers in [-(n-1)W, (n-1)W] and support
optimal strategies: memoryless for player 2, counter-indexed (over the
iterate table) for player 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..arena import ExtValue, MINUS_INF, PLUS_INF, PricedGameGraph
from . import backend
from .backend import INF, NEG_INF


class SolverError(RuntimeError):
    """Internal invariant breach in the solver."""


def _sat_add(x: int, w: int) -> int:
    if x == INF:
        return INF
    if x == NEG_INF:
        return NEG_INF
    return x + w


def _to_ext(x: int) -> ExtValue:
    if x == INF:
        return PLUS_INF
    if x == NEG_INF:
        return MINUS_INF
    return ExtValue.finite(x)


def attractor(graph: PricedGameGraph, base: set) -> set:
    """Vertices from which player 1 can force reaching ``base``.

    Classical fixpoint: a player-1 vertex joins when some edge enters the
    set, a player-2 vertex when it has edges and all of them enter.
    Vertices without edges never join (a deadlock reaches nothing).
    """
    inside = set(base)
    changed = True
    while changed:
        changed = False
        for vid in graph.owner:
            if vid in inside:
                continue
            edges = graph.out_edges(vid)
            if not edges:
                continue
            if graph.owner[vid] == 1:
                hit = any(succ in inside for _, succ, _ in edges)
            else:
                hit = all(succ in inside for _, succ, _ in edges)
            if hit:
                inside.add(vid)
                changed = True
    return inside


def player1_attractor(graph: PricedGameGraph) -> set:
    """The set of vertices with value < +oo: player 1 can force a target."""
    return attractor(graph, set(graph.targets))


@dataclass
class ValueTable:
    """Iterates of the value iteration, plus the vertex indexing.

    ``rows[i][j]`` is the i-step-capped optimal cost of the j-th vertex
    (sentinel ints); ``rows`` is pointwise non-increasing in i and the last
    row is the fixpoint.  ``stabilization_index`` is len(rows) - 1.
    """

    order: list
    index: dict
    rows: list[list[int]]

    @property
    def stabilization_index(self) -> int:
        return len(self.rows) - 1

    def raw(self, vid, i: int) -> int:
        return self.rows[i][self.index[vid]]

    def value(self, vid, i: int | None = None) -> ExtValue:
        i = self.stabilization_index if i is None else i
        return _to_ext(self.rows[i][self.index[vid]])


@dataclass
class MemorylessStrategy:
    """Player 2's optimal positional strategy on finite-valued vertices."""

    choice: dict

    def action_at(self, vid):
        if vid not in self.choice:
            raise SolverError(f"player-2 strategy undefined at {vid!r}")
        return self.choice[vid]


@dataclass
class CounterStrategy:
    """Player 1's optimal strategy, indexed by a step budget.

    At budget i >= 1 on a finite-valued vertex v, any edge realizing
    x_i(v) = w + x_{i-1}(succ) is optimal; ties go to the lowest successor
    id, then the lowest action.  Following the strategy from (v, N), with N
    the stabilization index, reaches a target within N steps at total cost
    at most x_N(v), against every opponent.
    """

    graph: PricedGameGraph
    table: ValueTable

    def action_at(self, vid, counter: int):
        n_stab = self.table.stabilization_index
        i = min(counter, n_stab)
        if i < 1:
            raise SolverError(f"player-1 strategy out of budget at {vid!r}")
        here = self.table.raw(vid, i)
        if here == INF or here == NEG_INF:
            raise SolverError(f"player-1 strategy requested at infinite-valued {vid!r}")
        for act, succ, w in self.graph.out_edges(vid):
            if _sat_add(self.table.raw(succ, i - 1), w) == here:
                return act
        raise SolverError(f"no consistent edge at {vid!r} with budget {counter}")


@dataclass
class SolveResult:
    graph: PricedGameGraph
    values: dict
    table: ValueTable
    p1: CounterStrategy
    p2: MemorylessStrategy
    weight_bound: int

    def value(self, vid) -> ExtValue:
        return self.values[vid]


_MAX_ROUNDS_SLACK = 64


def _round_cap(n: int, w_bound: int) -> int:
    # generous: finite stabilization needs <= n*(2(n-1)W + 2) changes and
    # -oo detection at most ~n more laps of descent past the cutoff
    return 4 * n * ((n - 1) * max(w_bound, 1) + 1) + _MAX_ROUNDS_SLACK


def solve_finite(graph: PricedGameGraph) -> SolveResult:
    """Classify +oo / -oo vertices and compute all finite values exactly."""
    order = graph.sorted_vertex_ids()
    index = {vid: i for i, vid in enumerate(order)}
    n = len(order)
    owners = [graph.owner[vid] for vid in order]
    is_target = [graph.is_target(vid) for vid in order]

    ptr = [0]
    dst: list[int] = []
    wt: list[int] = []
    for vid in order:
        if not graph.is_target(vid):
            for _, succ, w in graph.out_edges(vid):
                dst.append(index[succ])
                wt.append(w)
        ptr.append(len(dst))

    w_bound = graph.max_abs_weight()
    cutoff = -(n - 1) * w_bound
    finite_reach = player1_attractor(graph)
    plus_pinned = [vid not in finite_reach for vid in order]
    minus_pinned = [False] * n
    cap = _round_cap(n, w_bound)

    while True:
        x0 = []
        frozen = []
        for i, vid in enumerate(order):
            if is_target[i]:
                x0.append(0)
                frozen.append(True)
            elif minus_pinned[i]:
                x0.append(NEG_INF)
                frozen.append(True)
            elif plus_pinned[i]:
                x0.append(INF)
                frozen.append(True)
            else:
                x0.append(INF)
                frozen.append(False)
        rows, status = backend.run_sweeps(owners, frozen, x0, ptr, dst, wt, cutoff, cap)
        if status == backend.STATUS_MAXED:
            raise SolverError("value iteration failed to settle within its round cap")
        if status == backend.STATUS_STABLE:
            break
        # cutoff: everything below the finite range diverges to -oo, and so
        # does everything player 1 can force into the diving set
        last = rows[-1]
        diving = {order[i] for i in range(n) if NEG_INF < last[i] < cutoff}
        if not diving:
            raise SolverError("cutoff reported without a diving vertex")
        for vid in attractor(graph, diving):
            minus_pinned[index[vid]] = True

    table = ValueTable(order, index, rows)
    values = {vid: _to_ext(rows[-1][index[vid]]) for vid in order}
    p1, p2 = extract_strategies(table, graph)
    return SolveResult(graph, values, table, p1, p2, w_bound)


def extract_strategies(table: ValueTable, graph: PricedGameGraph):
    """Optimal strategies read off the fixpoint table.

    Player 2: positional argmax of w + value(successor) on finite-valued
    non-target vertices.  Player 1: the counter strategy over the iterate
    table.  Ties break on lowest successor id, then lowest action.
    """
    final = table.rows[-1]
    choice = {}
    for vid in table.order:
        i = table.index[vid]
        if graph.owner[vid] != 2 or graph.is_target(vid):
            continue
        if final[i] == INF or final[i] == NEG_INF:
            continue
        best_act = None
        best = None
        for act, succ, w in graph.out_edges(vid):
            cand = _sat_add(final[table.index[succ]], w)
            if best is None or cand > best:
                best = cand
                best_act = act
        if best != final[i]:
            raise SolverError(f"inconsistent fixpoint at {vid!r}")
        choice[vid] = best_act
    return CounterStrategy(graph, table), MemorylessStrategy(choice)


# ---------------------------------------------------------------------------
# Independent oracle
# ---------------------------------------------------------------------------


def brute_force_value(
    graph: PricedGameGraph, v0, max_vertices: int = 8
) -> ExtValue:
    """Exact game value of ``v0`` by exhaustive horizon-layered minimax.

    Deliberately shares no code with solve_finite: its own layering, its
    own infinity bookkeeping, no attractor and no sweep kernel.  Layer h
    holds the optimal cost when play must stop within h steps; +oo marks
    "cannot reach in time" and survives to the fixpoint exactly on the
    vertices player 1 cannot win.  A layer value below -(n-1)*W proves the
    vertex diverges, so it is pinned to -oo and layering continues until
    the layers repeat.
    """
    return brute_force_values(graph, max_vertices)[v0]


def brute_force_values(graph: PricedGameGraph, max_vertices: int = 8) -> dict:
    """All vertex values by the layered minimax oracle (one pass)."""
    n = len(graph.vertices)
    if n > max_vertices:
        raise ValueError(f"graph too large for the oracle ({n} > {max_vertices})")
    wmax = graph.max_abs_weight()
    bound = (n - 1) * wmax
    cap = 2 * n * (2 * (n - 1) * wmax + 2) + 4 * n + 8

    pin_minus: set = set()
    prev: dict = {
        vid: ExtValue.finite(0) if graph.is_target(vid) else PLUS_INF
        for vid in graph.owner
    }
    for _ in range(cap):
        cur: dict = {}
        for vid in graph.owner:
            if graph.is_target(vid):
                cur[vid] = ExtValue.finite(0)
                continue
            if vid in pin_minus:
                cur[vid] = MINUS_INF
                continue
            edges = graph.out_edges(vid)
            if not edges:
                cur[vid] = PLUS_INF
                continue
            cands = []
            for _, succ, w in edges:
                sv = prev[succ]
                cands.append(sv if not sv.is_finite else ExtValue.finite(sv.n + w))
            cur[vid] = max(cands) if graph.owner[vid] == 2 else min(cands)
        newly = {
            vid
            for vid, val in cur.items()
            if val.is_finite and val.n < -bound and vid not in pin_minus
        }
        for vid in newly:
            cur[vid] = MINUS_INF
            pin_minus.add(vid)
        if not newly and cur == prev:
            return cur
        prev = cur
    raise SolverError("oracle failed to settle within its layer cap")


def random_game(seed: int, n_max: int, a_max: int, w_max: int) -> PricedGameGraph:
    """Seed-deterministic random priced game graph.

    Every non-target vertex gets at least one edge, there is at least one
    target, and weights are uniform in [-w_max, w_max].
    """
    if n_max < 1 or a_max < 1 or w_max < 0:
        raise ValueError("bounds must be positive")
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    owners = [rng.choice((1, 2)) for _ in range(n)]
    n_targets = 1 if n == 1 else rng.randint(1, max(1, n // 3 + 1))
    targets = set(rng.sample(range(n), n_targets))
    actions = [f"a{i}" for i in range(a_max)]
    edges = {}
    for v in range(n):
        if v in targets:
            continue
        degree = rng.randint(1, a_max)
        for act in rng.sample(actions, degree):
            edges[(v, act)] = (rng.randrange(n), rng.randint(-w_max, w_max))
    return PricedGameGraph(
        [(v, owners[v]) for v in range(n)], actions, edges, targets
    )
