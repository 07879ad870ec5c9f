"""Greedy solvers keyed on vertex reward (GdyME) and row-prefix reward (GdyMC).

Both always collect the full row prefix of an accepted vertex. Vertices
whose key is zero are never offered. They cannot add reward, only cost.
"""

from __future__ import annotations

import heapq

import numpy as np

from ..aisle_graph import AisleGraph, RouteSolution, _marginal
from .base import SolverResult, Step, check_graph, even_budget, stopwatch


def _finish(graph, depths, cost, algorithm, b, steps, elapsed) -> SolverResult:
    solution = RouteSolution.from_depths(graph, depths)
    if solution.cost != cost or cost > b:
        raise AssertionError(f"{algorithm}: incremental cost {cost} != route cost {solution.cost}")
    return SolverResult(solution, algorithm, b, steps=steps, runtime_ms=elapsed)


def extraction_order(graph: AisleGraph) -> np.ndarray:
    """Flat indices of positive-reward vertices by decreasing reward.

    Equal rewards go to the smaller row, then the smaller column. This is the
    order a max-heap with that tie rule would pop them in, so the whole
    sequence can be sorted once.
    """
    flat = graph.rewards.ravel()
    idx = np.flatnonzero(flat > 0)
    return idx[np.argsort(-flat[idx], kind="stable")]


def solve_gdyme(graph: AisleGraph, budget: int) -> SolverResult:
    check_graph(graph)
    b = even_budget(budget)
    n = graph.n
    rewards = graph.rewards
    depths = [0] * graph.m
    i_max, cost = 1, 0
    steps: list[Step] = []
    with stopwatch() as elapsed:
        for flat in extraction_order(graph).tolist():
            if b - cost < 2:
                break
            i, j = divmod(flat, n)
            i, j = i + 1, j + 1
            if j <= depths[i - 1]:
                continue  # already on the route through an earlier prefix
            mc = _marginal(depths, i_max, i, j)
            if cost + mc > b:
                continue  # dropped for good: its marginal cost never shrinks below the residual
            depths[i - 1] = j
            i_max = max(i_max, i)
            cost += mc
            steps.append(Step((i, j), float(rewards[i - 1, j - 1]), mc))
    return _finish(graph, depths, cost, "gdyme", b, steps, elapsed[0])


def solve_gdymc(graph: AisleGraph, budget: int) -> SolverResult:
    """One candidate per row, keyed by the row's prefix reward.

    An infeasible candidate ``(i, j)`` is replaced by ``(i, j - 1)``. An
    accepted one retires its row.
    """
    check_graph(graph)
    b = even_budget(budget)
    t = graph.cumulative
    n = graph.n
    depths = [0] * graph.m
    i_max, cost = 1, 0
    steps: list[Step] = []
    with stopwatch() as elapsed:
        heap = [(-float(t[i, n - 1]), i + 1, n) for i in range(graph.m) if t[i, n - 1] > 0]
        heapq.heapify(heap)
        while heap and b - cost >= 2:
            key, i, j = heapq.heappop(heap)
            mc = _marginal(depths, i_max, i, j)
            if cost + mc <= b:
                depths[i - 1] = j
                i_max = max(i_max, i)
                cost += mc
                steps.append(Step((i, j), -key, mc))
            elif j > 2 and t[i - 1, j - 2] > 0:
                heapq.heappush(heap, (-float(t[i - 1, j - 2]), i, j - 1))
    return _finish(graph, depths, cost, "gdymc", b, steps, elapsed[0])
