"""Exact dynamic program over (row, half-budget).

``r[i, b]`` is the best reward of a route that reaches row ``i + 1`` with
budget ``2b``. ``q[i, b]`` is the depth that row ``i + 1`` takes in that
route. Entering row ``i + 1`` at depth ``j`` costs ``j`` half-budget units:
one for the vertical step and ``j - 1`` along the row.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..aisle_graph import AisleGraph, RouteSolution
from .base import SolverResult, check_graph, even_budget, stopwatch


@dataclass(frozen=True, eq=False)
class DpTables:
    r: np.ndarray  # float, -inf where row i+1 is unreachable
    q: np.ndarray  # int, 0 where r is -inf
    t: np.ndarray  # the graph's cumulative table

    @property
    def max_half_budget(self) -> int:
        return self.r.shape[1] - 1

    def best_reward(self, half_budget: int) -> float:
        return float(self.r[:, half_budget].max())

    def column_optima(self) -> np.ndarray:
        """Optimal reward for every half-budget ``0..B/2`` at once."""
        return self.r.max(axis=0)

    def backtrack(self, half_budget: int) -> list[int]:
        """Depth profile of an optimal route with budget ``2 * half_budget``.

        The deepest row is the first row attaining the column maximum.
        """
        if not 0 <= half_budget <= self.max_half_budget:
            raise ValueError(f"half budget {half_budget} outside 0..{self.max_half_budget}")
        m = self.r.shape[0]
        last = int(np.argmax(self.r[:, half_budget]))
        depths = [0] * m
        b = half_budget
        for i in range(last, 0, -1):
            j = int(self.q[i, b])
            depths[i] = j
            b -= j
        depths[0] = int(self.q[0, b])
        return depths


def optsa_tables(graph: AisleGraph, budget: int) -> DpTables:
    """Fill the DP tables up to half-budget ``budget // 2``.

    Ties between columns go to the smallest column. The column bound is
    ``min(b - i + 2, n)`` (1-based row ``i``). Smaller bounds cut off full-row
    visits.
    """
    check_graph(graph)
    bmax = even_budget(budget) // 2
    m, n = graph.m, graph.n
    t = graph.cumulative
    width = bmax + 1
    r = np.full((m, width), -np.inf)
    qtype = np.int16 if n < np.iinfo(np.int16).max else np.int32
    q = np.zeros((m, width), dtype=qtype)

    first = np.minimum(np.arange(width) + 1, n)
    r[0] = t[0, first - 1]
    q[0] = first
    for i in range(1, m):
        prev = r[i - 1]
        best = r[i]
        arg = q[i]
        for j in range(1, min(n, bmax) + 1):
            cand = prev[: width - j] + t[i, j - 1]
            seg = best[j:]
            better = cand > seg
            np.copyto(seg, cand, where=better)
            np.copyto(arg[j:], j, where=better)
    r.setflags(write=False)
    q.setflags(write=False)
    return DpTables(r, q, t)


def solve_optsa(graph: AisleGraph, budget: int) -> tuple[SolverResult, DpTables]:
    b = even_budget(budget)
    with stopwatch() as elapsed:
        tables = optsa_tables(graph, b)
        depths = tables.backtrack(b // 2)
        solution = RouteSolution.from_depths(graph, depths)
    return SolverResult(solution, "optsa", b, runtime_ms=elapsed[0]), tables


def optsa_many(graph: AisleGraph, budgets: list[int]) -> list[SolverResult]:
    """Solve several budgets from one table fill.

    Table cells do not depend on the budget they were filled for, so the
    largest budget's tables serve every smaller one. Each result reports the
    shared fill time plus its own backtracking time.
    """
    bs = [even_budget(x) for x in budgets]
    if not bs:
        return []
    with stopwatch() as fill:
        tables = optsa_tables(graph, max(bs))
    out = []
    for b in bs:
        with stopwatch() as back:
            solution = RouteSolution.from_depths(graph, tables.backtrack(b // 2))
        out.append(SolverResult(solution, "optsa", b, runtime_ms=fill[0] + back[0]))
    return out
