from __future__ import annotations

import itertools
import math

import numpy as np

from ..aisle_graph import AisleGraph, RouteSolution
from .base import SolverResult, check_graph, even_budget, stopwatch

GUARD_BITS = 30


class InstanceTooLarge(ValueError):
    pass


def enumeration_guard(m: int, n: int) -> bool:
    return m * math.log2(n + 1) <= GUARD_BITS


def enumerate_profiles(graph: AisleGraph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Every normalized depth profile with its cost and reward.

    A profile is normalized when its zero rows form a suffix. Rows are in
    lexicographic order, so ``argmax`` returns the smallest profile among
    ties. Costs come from counting tree edges directly: one per interconnect
    step below home, ``d - 1`` per entered row, each walked twice.
    """
    check_graph(graph)
    m, n = graph.m, graph.n
    if not enumeration_guard(m, n):
        raise InstanceTooLarge(f"A({m},{n}) has too many depth profiles to enumerate")
    profiles = np.array(list(itertools.product(range(n + 1), repeat=m)), dtype=np.int64)
    entered = profiles >= 1
    # zeros only as a suffix: once a row is 0, every later row is 0 too
    normalized = np.all(entered[:, :-1] | ~entered[:, 1:], axis=1)
    profiles = profiles[normalized]
    entered = entered[normalized]
    rows_entered = entered.sum(axis=1)
    vertices = profiles.sum(axis=1)  # tree size: every entered row contributes d vertices
    cost = np.where(rows_entered > 0, 2 * (vertices - 1), 0)
    padded = np.concatenate([np.zeros((m, 1)), graph.rewards], axis=1)
    prefix = np.cumsum(padded, axis=1)
    reward = prefix[np.arange(m)[None, :], profiles].sum(axis=1)
    return profiles, cost, reward


def brute_force_optima(graph: AisleGraph, budgets: list[int]) -> list[float]:
    """Optimal reward for each budget, from one enumeration."""
    _, cost, reward = enumerate_profiles(graph)
    order = np.argsort(cost, kind="stable")
    sorted_cost = cost[order]
    running = np.maximum.accumulate(reward[order])
    out = []
    for b in budgets:
        k = int(np.searchsorted(sorted_cost, even_budget(b), side="right"))
        out.append(float(running[k - 1]) if k else 0.0)
    return out


def solve_brute_force(graph: AisleGraph, budget: int) -> SolverResult:
    b = even_budget(budget)
    with stopwatch() as elapsed:
        profiles, cost, reward = enumerate_profiles(graph)
        masked = np.where(cost <= b, reward, -np.inf)
        k = int(np.argmax(masked))
        solution = RouteSolution.from_depths(graph, profiles[k].tolist())
    return SolverResult(solution, "brute", b, runtime_ms=elapsed[0])
