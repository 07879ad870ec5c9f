"""Ratio-greedy solvers with a best-single-vertex fallback (ApxMRE, ApxMRC).

Both build two candidates. S1 is the route to the largest-reward vertex
reachable on its own. S2 grows greedily: each step takes the candidate
with the best gain per unit of marginal cost. ApxMRE counts only the
vertex's own reward as gain. ApxMRC counts the prefix of the row that is not
collected yet. The better of S1 and S2 is returned, so the reward is at
least ``(1 - 1/e) / 2`` of the optimum.

Infeasible candidates are discarded for good. Marginal costs never shrink
below what they were when a candidate failed, so a failed candidate stays
infeasible.
"""

from __future__ import annotations

import heapq
import math
from typing import Optional

import numpy as np

from ..aisle_graph import AisleGraph, RouteSolution, _marginal
from .base import SolverResult, Step, check_graph, even_budget, stopwatch

APPROX_RATIO = 0.5 * (1.0 - 1.0 / math.e)


class RatioIndex:
    """Per-row gain/cost ratios for the current partial route.

    ``ratios(i, d)`` is the precomputable vector ``H[i, d]``: gain of each
    column of row ``i`` over the round trip ``2(j-1) + 2d`` from row
    ``i - d``. For rows already on the route, gains and costs are measured
    past the row's prefix. A column is *discarded* when it lies beyond the
    row's feasibility limit. Limits only ever decrease.
    """

    def __init__(self, graph: AisleGraph, budget: int, cumulative: bool):
        self.graph = graph
        self.cumulative = cumulative
        self.num = graph.cumulative if cumulative else graph.rewards
        self.t = graph.cumulative
        self.budget = budget
        self.depths = [0] * graph.m
        self.i_max = 1
        self.cost = 0
        self._twos = 2.0 * np.arange(graph.n + graph.m + 1)

    def ratios(self, i: int, d: int) -> np.ndarray:
        """The static ratio vector of row ``i`` seen from ``d`` rows above (column 1 at ``d = 0`` is ``-inf``)."""
        j = np.arange(1, self.graph.n + 1)
        den = 2.0 * (j - 1) + 2.0 * d
        with np.errstate(divide="ignore", invalid="ignore"):
            h = self.num[i - 1] / den
        if d == 0:
            h[0] = -np.inf
        return h

    @property
    def residual(self) -> int:
        return self.budget - self.cost

    def limit(self, i: int) -> int:
        """Deepest column of row ``i`` still within the residual budget."""
        res = self.residual // 2
        if i > self.i_max:
            return min(self.graph.n, 1 + res - (i - self.i_max))
        return min(self.graph.n, max(self.depths[i - 1], 1) + res)

    def live_ratio(self, i: int, j: int) -> float:
        """Current gain/cost ratio of ``(i, j)``; ``-inf`` once visited or discarded."""
        if j <= self.depths[i - 1] or j > self.limit(i):
            return -math.inf
        mc = _marginal(self.depths, self.i_max, i, j)
        if mc == 0:
            return -math.inf
        return self.gain(i, j) / mc

    def gain(self, i: int, j: int) -> float:
        if not self.cumulative:
            return float(self.num[i - 1, j - 1])
        p = max(self.depths[i - 1], 1)
        return float(self.t[i - 1, j - 1] - self.t[i - 1, p - 1])

    def discarded(self) -> np.ndarray:
        """Boolean ``m x n`` mask of unvisited columns past their row's limit."""
        n = self.graph.n
        cols = np.arange(1, n + 1)
        limits = np.array([self.limit(i) for i in range(1, self.graph.m + 1)])
        visited = cols[None, :] <= np.array(self.depths)[:, None]
        return (cols[None, :] > limits[:, None]) & ~visited

    def row_best(self, i: int) -> Optional[tuple[float, int]]:
        """Largest positive live ratio of row ``i`` and its column; smallest column wins ties."""
        lim = self.limit(i)
        row = self.num[i - 1]
        if i > self.i_max:
            if lim < 2:
                return None
            d = i - self.i_max
            gains = row[1:lim]
            den = self._twos[1 + d : lim + d]
            first = 2
        else:
            p = max(self.depths[i - 1], 1)
            if lim <= p:
                return None
            gains = row[p:lim]
            if self.cumulative:
                gains = gains - self.t[i - 1, p - 1]
            den = self._twos[1 : lim - p + 1]
            first = p + 1
        ratio = gains / den
        k = int(np.argmax(ratio))
        if ratio[k] <= 0:
            return None
        return float(ratio[k]), first + k

    def offset_free_bound(self, i: int) -> float:
        """Upper bound on row ``i``'s ratios for as long as its prefix stays at column <= 1."""
        if self.graph.n < 2:
            return 0.0
        return float((self.num[i - 1, 1:] / self._twos[1 : self.graph.n]).max())

    def accept(self, i: int, j: int) -> int:
        mc = _marginal(self.depths, self.i_max, i, j)
        if self.cost + mc > self.budget:
            raise AssertionError(f"accepting ({i},{j}) overruns the budget")
        self.depths[i - 1] = j
        self.i_max = max(self.i_max, i)
        self.cost += mc
        return mc


def best_single_vertex(graph: AisleGraph, budget: int) -> Optional[tuple[int, int, float]]:
    """Largest-reward vertex whose round trip from home fits in ``budget``.

    The first in row-major order wins ties. Returns ``None`` when no
    positive reward is reachable.
    """
    i = np.arange(graph.m)[:, None]
    j = np.arange(graph.n)[None, :]
    reach = 2 * j + 2 * i <= budget
    masked = np.where(reach, graph.rewards, -1.0)
    flat = int(np.argmax(masked))
    bi, bj = divmod(flat, graph.n)
    if masked[bi, bj] <= 0:
        return None
    return bi + 1, bj + 1, float(graph.rewards[bi, bj])


def _greedy_ratio(index: RatioIndex, check_discards: bool = False) -> list[Step]:
    m = index.graph.m
    version = [0] * m
    bounds = [index.offset_free_bound(i) for i in range(1, m + 1)]
    # rows whose live entry is exact for their current vertical offset; these
    # entries stop being upper bounds once i_max grows
    offset_exact = [False] * m
    heap = [(-bounds[r], r + 1, 0, 0) for r in range(m) if bounds[r] > 0]
    heapq.heapify(heap)
    steps: list[Step] = []
    limits = [index.limit(i) for i in range(1, m + 1)] if check_discards else None

    while heap and index.residual >= 2:
        neg, i, j, ver = heapq.heappop(heap)
        if ver != version[i - 1]:
            continue
        best = index.row_best(i)
        if best is None:
            continue
        ratio, col = best
        if ratio != -neg or col != j:
            heapq.heappush(heap, (-ratio, i, col, ver))
            offset_exact[i - 1] = i > index.i_max
            continue
        old_imax = index.i_max
        mc = index.accept(i, j)
        steps.append(Step((i, j), ratio, mc))
        version[i - 1] += 1
        offset_exact[i - 1] = False
        nxt = index.row_best(i)
        if nxt is not None:
            heapq.heappush(heap, (-nxt[0], i, nxt[1], version[i - 1]))
        if index.i_max > old_imax:
            for r in range(old_imax, m):
                if r != i - 1 and offset_exact[r]:
                    version[r] += 1
                    offset_exact[r] = False
                    if bounds[r] > 0:
                        heapq.heappush(heap, (-bounds[r], r + 1, 0, version[r]))
        if limits is not None:
            now = [index.limit(k) for k in range(1, m + 1)]
            for k in range(m):
                # discarded columns never come back
                assert now[k] <= limits[k] or index.depths[k] >= limits[k], (k + 1, limits[k], now[k])
            limits = now
    return steps


def _solve_ratio(graph: AisleGraph, budget: int, cumulative: bool, check_discards: bool) -> SolverResult:
    check_graph(graph)
    b = even_budget(budget)
    name = "apxmrc" if cumulative else "apxmre"
    with stopwatch() as elapsed:
        x_star = best_single_vertex(graph, b)
        if x_star is None:
            s1 = RouteSolution.empty(graph)
        else:
            depths = [1] * (x_star[0] - 1) + [x_star[1]] + [0] * (graph.m - x_star[0])
            s1 = RouteSolution.from_depths(graph, depths)
        index = RatioIndex(graph, b, cumulative)
        steps = _greedy_ratio(index, check_discards)
        s2 = RouteSolution.from_depths(graph, index.depths)
        if s2.cost != index.cost:
            raise AssertionError(f"{name}: incremental cost {index.cost} != route cost {s2.cost}")
    solution = s1 if s1.reward > s2.reward else s2
    return SolverResult(
        solution, name, b, best_single=s1, best_vertex=x_star, steps=steps, runtime_ms=elapsed[0]
    )


def solve_apxmre(graph: AisleGraph, budget: int, check_discards: bool = False) -> SolverResult:
    return _solve_ratio(graph, budget, cumulative=False, check_discards=check_discards)


def solve_apxmrc(graph: AisleGraph, budget: int, check_discards: bool = False) -> SolverResult:
    return _solve_ratio(graph, budget, cumulative=True, check_discards=check_discards)
