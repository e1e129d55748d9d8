"""Exact solver and strategy synthesizer for one-clock bi-valued priced
timed games: region-graph abstraction, finite total-payoff solving, and
epsilon-optimal timed strategy extraction, all in exact arithmetic."""

from .arena import (
    ArenaError,
    BiValuedProfile,
    Bound,
    ExtValue,
    INFINITY,
    Interval,
    Location,
    MINUS_INF,
    PLUS_INF,
    PTGArena,
    PricedGameGraph,
    Rejection,
    Transition,
    bi_valued_profile,
    make_bounded,
    max_constant,
    validate_arena,
    validate_graph,
)
from .abstraction import (
    AbstractAction,
    AbstractVertex,
    build_border_abstraction,
    export_dot,
    reachable_subgraph,
    region_satisfies,
)
from .fileformat import ArenaDocument, ParseError, parse_arena, serialize_arena
from .regions import (
    EtaRegion,
    Position,
    RegionClass,
    constants,
    delay,
    play_region_equiv,
    region_of,
    useful_regions,
)
from .simulation import (
    Configuration,
    Play,
    TimedMove,
    classify_play,
    play_cost,
    run_match,
    serialize_trace,
    shift_down,
    shift_up,
    timed_step,
)
from .solver import (
    BACKEND,
    brute_force_value,
    brute_force_values,
    extract_strategies,
    player1_attractor,
    random_game,
    solve_finite,
)
from .synthesis import (
    ConvergentP2Strategy,
    EpsilonPlan,
    RandomUniformP1Strategy,
    UniformP1Strategy,
    Verdict,
    choose_eta,
    concretize_p1,
    concretize_p2,
    decide_objective,
    solve_ptg,
    steps_bound,
)

__version__ = "0.1.0"
