"""Command-line interface.

Subcommands: ``solve`` (value and strategies at a border configuration),
``abstract`` (DOT export of the finite abstraction), ``simulate`` (run a
match between concretized strategies) and ``oracle-check`` (random finite
games, solver vs. brute force).  Exit codes: 0 success, 1 usage error,
2 parse/validation error, 3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .abstraction import build_border_abstraction, export_dot, reachable_subgraph, AbstractVertex
from .arena import ArenaError, ExtValue, make_bounded, require_valid
from .fileformat import ParseError, parse_arena
from .regions import EtaRegion, Position, constants
from .simulation import (
    Configuration,
    SimulationError,
    play_cost,
    run_match,
    serialize_trace,
)
from .solver import SolverError, brute_force_values, random_game, solve_finite
from .synthesis import RandomUniformP1Strategy, decide_objective, solve_ptg

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

_FRACTION_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


class UsageError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    """Accept only integers or p/q fractions; decimals are rejected so no
    silent float conversion can occur."""
    if not _FRACTION_RE.match(text.strip()):
        raise UsageError(f"not an integer or p/q rational: {text!r}")
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _json_value(value: ExtValue):
    if value.is_plus_inf:
        return "+inf"
    if value.is_minus_inf:
        return "-inf"
    return value.as_int()


def _load_arena(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    arena = parse_arena(text)
    require_valid(arena)
    return arena


def _strategy_p2_json(outcome) -> dict:
    ladder = outcome.ladder
    graph = outcome.result.graph
    out = {}
    for vid in graph.sorted_vertex_ids():
        choice = outcome.result.p2.choice.get(vid)
        if choice is None:
            continue
        key = f"{vid.location} {vid.region.render(ladder)}"
        out[key] = f"({choice.target_region.render(ladder)},{choice.label})"
    return out


def _parse_objective(text: str):
    for comp in (">=", "<=", ">", "<", "="):
        if text.startswith(comp):
            return comp, int(text[len(comp):])
    raise UsageError(f"objective must look like '<=K', got {text!r}")


def cmd_solve(args) -> int:
    arena = _load_arena(args.input)
    valuation = parse_rational(args.valuation)
    epsilon = parse_rational(args.epsilon)
    outcome = solve_ptg(arena, (args.location, valuation), epsilon)

    verdicts = {}
    for objective in args.objective or []:
        comp, bound = _parse_objective(objective)
        verdicts[f"{comp}{bound}"] = decide_objective(outcome.value, comp, bound).value

    payload = {
        "value": _json_value(outcome.value),
        "eta": format_rational(outcome.plan.eta) if outcome.plan else None,
        "L": outcome.plan.steps if outcome.plan else None,
        "strategy_p2": _strategy_p2_json(outcome) if outcome.p2 else None,
        "verdicts": verdicts,
    }
    text = json.dumps(payload, indent=2)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_OK


def cmd_abstract(args) -> int:
    arena = _load_arena(args.input)
    bounded = make_bounded(arena)
    ladder = constants(bounded)
    graph = build_border_abstraction(bounded)
    if getattr(args, "from"):
        spec = getattr(args, "from")
        if "@" not in spec:
            raise UsageError("--from takes LOCATION@CONSTANT")
        loc, raw = spec.split("@", 1)
        value = int(parse_rational(raw))
        if value not in ladder:
            raise ArenaError(f"{value} is not a border constant of {ladder}")
        v0 = AbstractVertex(loc, EtaRegion(ladder.index(value), Position.AT))
        graph = reachable_subgraph(graph, v0)
    dot = export_dot(graph, ladder)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot)
    else:
        sys.stdout.write(dot)
    return EXIT_OK


def cmd_simulate(args) -> int:
    arena = _load_arena(args.input)
    epsilon = parse_rational(args.epsilon)
    location = args.location or arena.locations[0].id
    valuation = parse_rational(args.valuation)
    outcome = solve_ptg(arena, (location, valuation), epsilon)
    if outcome.p1 is None:
        print(f"value {_json_value(outcome.value)}: no strategies at an infinite value")
        return EXIT_OK
    if args.adversary == "optimal":
        p1 = outcome.p1
    else:
        p1 = RandomUniformP1Strategy(
            args.seed, outcome.result.graph, outcome.plan.eta, outcome.ladder
        )
    start = Configuration(location, valuation)
    play = run_match(outcome.bounded, p1, outcome.p2, start, args.steps)
    trace = serialize_trace(play)
    if trace:
        print(trace)
    cost = play_cost(play)
    cost_text = format_rational(cost) if isinstance(cost, Fraction) else "+inf"
    print(
        f"value {_json_value(outcome.value)} cost {cost_text} "
        f"reached {str(play.reached_target()).lower()} steps {len(play)}"
    )
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    mismatches = 0
    for i in range(args.count):
        graph = random_game(args.seed + i, args.max_vertices, args.max_actions, args.max_weight)
        result = solve_finite(graph)
        expected = brute_force_values(graph, max_vertices=args.max_vertices)
        for vid in graph.owner:
            if result.values[vid] != expected[vid]:
                mismatches += 1
                print(
                    f"seed {args.seed + i}: vertex {vid!r}: "
                    f"solver {result.values[vid]} oracle {expected[vid]}",
                    file=sys.stderr,
                )
    print(json.dumps({"count": args.count, "mismatches": mismatches}))
    return EXIT_OK if mismatches == 0 else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptgsolve",
        description="Exact solver for one-clock bi-valued priced timed games",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="value and strategies at a border configuration")
    p.add_argument("--input", required=True)
    p.add_argument("--location", required=True)
    p.add_argument("--valuation", required=True, help="border constant, as p/q or int")
    p.add_argument("--epsilon", required=True, help="strategy tolerance, as p/q")
    p.add_argument("--json", help="also write the JSON result to this file")
    p.add_argument(
        "--objective",
        action="append",
        help="payoff objective such as '<=2'; may repeat",
    )
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("abstract", help="export the finite abstraction as DOT")
    p.add_argument("--input", required=True)
    p.add_argument("--dot", help="output file (default: stdout)")
    p.add_argument("--from", dest="from", default=None, metavar="LOC@M",
                   help="restrict to the part reachable from (LOC, {M})")
    p.set_defaults(func=cmd_abstract)

    p = sub.add_parser("simulate", help="run a match between concretized strategies")
    p.add_argument("--input", required=True)
    p.add_argument("--epsilon", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--adversary", choices=("optimal", "random-uniform"),
                   default="optimal")
    p.add_argument("--location", default=None)
    p.add_argument("--valuation", default="0")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("oracle-check", help="solver vs. brute force on random games")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--max-vertices", type=int, default=6)
    p.add_argument("--max-actions", type=int, default=3)
    p.add_argument("--max-weight", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, ArenaError, SimulationError, FileNotFoundError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SolverError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
