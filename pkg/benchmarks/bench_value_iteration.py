#!/usr/bin/env python3
"""Benchmark the value-iteration sweep kernels: compiled vs pure Python.

The sweep loop is the solver's pseudo-polynomial hot spot (rounds scale
with vertex count times weight magnitude).  This script times both kernel
implementations on identical CSR inputs and checks they produce identical
iterate tables.

Run:  python benchmarks/bench_value_iteration.py
"""

import time

from ptgsolve.abstraction import build_border_abstraction
from ptgsolve.solver import _sweep_py
from ptgsolve.solver.core import _round_cap

try:
    from ptgsolve.solver import _sweep as compiled
except ImportError:
    compiled = None

from helpers_bench import big_arena, big_game  # noqa: E402  (sibling module)


def csr_inputs(graph):
    order = graph.sorted_vertex_ids()
    index = {vid: i for i, vid in enumerate(order)}
    owners = [graph.owner[v] for v in order]
    frozen = [graph.is_target(v) for v in order]
    x0 = [0 if graph.is_target(v) else _sweep_py.INF for v in order]
    ptr, dst, wt = [0], [], []
    for v in order:
        if not graph.is_target(v):
            for _, succ, w in graph.out_edges(v):
                dst.append(index[succ])
                wt.append(w)
        ptr.append(len(dst))
    n = len(order)
    w_bound = graph.max_abs_weight()
    cutoff = -(n - 1) * w_bound
    return owners, frozen, x0, ptr, dst, wt, cutoff, _round_cap(n, w_bound)


def run(name, graph, repeats=1):
    args = csr_inputs(graph)
    rows_py = status_py = None
    t_py = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        rows_py, status_py = _sweep_py.run_sweeps(*args)
        t_py = min(t_py, time.perf_counter() - t0)
    line = (
        f"{name:<28} n={len(args[0]):>5} edges={len(args[4]):>7} "
        f"rounds={len(rows_py):>5}  python {t_py * 1e3:8.1f} ms"
    )
    if compiled is not None:
        rows_c = status_c = None
        t_c = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            rows_c, status_c = compiled.run_sweeps(*args)
            t_c = min(t_c, time.perf_counter() - t0)
        same = status_py == status_c and [list(r) for r in rows_py] == [
            list(r) for r in rows_c
        ]
        line += (
            f"  compiled {t_c * 1e3:8.1f} ms  speedup {t_py / t_c:6.1f}x"
            f"  identical={same}"
        )
        assert same, "kernel outputs diverged"
    else:
        line += "  (compiled kernel unavailable)"
    print(line)


def main():
    print("value-iteration sweep kernel benchmark")
    run("chain game, mixed weights", big_game(300, 4, 6, seed=3, negative_bias=0.2))
    run("chain game, negative-heavy", big_game(150, 3, 6, seed=11, negative_bias=0.8))
    run("wide game", big_game(1200, 3, 3, seed=7, negative_bias=0.1, p1_share=0.9))
    arena = big_arena(locations=8, top_constant=30)
    run("border abstraction", build_border_abstraction(arena))


if __name__ == "__main__":
    main()
