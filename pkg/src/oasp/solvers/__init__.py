"""Solvers for orienteering on single-access aisle-graphs.

Every solver is a pure function ``solve_x(graph, budget)`` returning a
:class:`SolverResult`. Odd budgets are floored to even.
"""

from .base import ALGORITHMS, SolverResult, Step, even_budget
from .brute import InstanceTooLarge, brute_force_optima, enumeration_guard, solve_brute_force
from .greedy import solve_gdymc, solve_gdyme
from .optsa import DpTables, optsa_many, optsa_tables, solve_optsa
from .ratio import APPROX_RATIO, RatioIndex, best_single_vertex, solve_apxmrc, solve_apxmre


def _optsa_result(graph, budget):
    return solve_optsa(graph, budget)[0]


SOLVERS = {
    "optsa": _optsa_result,
    "gdyme": solve_gdyme,
    "gdymc": solve_gdymc,
    "apxmre": solve_apxmre,
    "apxmrc": solve_apxmrc,
}


def solve(graph, budget, algorithm: str) -> SolverResult:
    try:
        fn = SOLVERS[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}") from None
    return fn(graph, budget)


__all__ = [
    "ALGORITHMS",
    "APPROX_RATIO",
    "DpTables",
    "InstanceTooLarge",
    "RatioIndex",
    "SOLVERS",
    "SolverResult",
    "Step",
    "best_single_vertex",
    "brute_force_optima",
    "enumeration_guard",
    "even_budget",
    "optsa_many",
    "optsa_tables",
    "solve",
    "solve_apxmrc",
    "solve_apxmre",
    "solve_brute_force",
    "solve_gdymc",
    "solve_gdyme",
    "solve_optsa",
]
