from .backend import BACKEND
from .core import (
    CounterStrategy,
    MemorylessStrategy,
    SolveResult,
    SolverError,
    ValueTable,
    attractor,
    brute_force_value,
    brute_force_values,
    extract_strategies,
    player1_attractor,
    random_game,
    solve_finite,
)

__all__ = [
    "BACKEND",
    "CounterStrategy",
    "MemorylessStrategy",
    "SolveResult",
    "SolverError",
    "ValueTable",
    "attractor",
    "brute_force_value",
    "brute_force_values",
    "extract_strategies",
    "player1_attractor",
    "random_game",
    "solve_finite",
]
