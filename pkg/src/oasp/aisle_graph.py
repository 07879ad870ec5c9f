"""Single-access aisle-graph model and its cycle-cost algebra.

An aisle-graph ``A(m, n)`` has ``m`` rows of ``n`` vertices each. Rows are
joined only through column 1, and the home vertex is ``(1, 1)``. Vertex
coordinates are 1-based everywhere in the public API. Arrays are 0-based
internally.

A route is encoded by its *depth profile*: ``depths[i - 1]`` is the deepest
column visited in row ``i``. Zero means the row was never entered. One means
only the interconnect vertex was traversed. Every edge costs one budget
unit, so a route costs twice the number of edges in its tree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

Vertex = tuple[int, int]


class InstanceError(ValueError):
    """Base class for invalid instances, depth profiles and vertices."""


class DimensionError(InstanceError):
    pass


class RewardValueError(InstanceError):
    pass


class InterconnectRewardError(InstanceError):
    pass


class DepthError(InstanceError):
    pass


@dataclass(frozen=True, eq=False)
class AisleGraph:
    """Immutable ``m x n`` reward grid with single-access rows.

    Use :func:`new_graph` to build one. It validates the grid.
    """

    rewards: np.ndarray

    @property
    def m(self) -> int:
        return self.rewards.shape[0]

    @property
    def n(self) -> int:
        return self.rewards.shape[1]

    @cached_property
    def cumulative(self) -> np.ndarray:
        """Row-wise prefix sums: ``cumulative[i, j]`` is the reward of row i+1 up to column j+1."""
        t = np.cumsum(self.rewards, axis=1)
        t.setflags(write=False)
        return t

    @cached_property
    def total_reward(self) -> float:
        return float(self.cumulative[:, -1].sum())

    def reward(self, vertex: Vertex) -> float:
        i, j = _check_vertex(self, vertex)
        return float(self.rewards[i - 1, j - 1])

    def to_lists(self) -> list[list[float | int]]:
        return [[_plain_number(x) for x in row] for row in self.rewards.tolist()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AisleGraph):
            return NotImplemented
        return self.rewards.shape == other.rewards.shape and bool(
            np.array_equal(self.rewards, other.rewards)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"AisleGraph(m={self.m}, n={self.n}, total_reward={self.total_reward:g})"


def _plain_number(x: float) -> float | int:
    return int(x) if float(x).is_integer() else x


def new_graph(m: int, n: int, rewards: Sequence[Sequence[float]] | np.ndarray) -> AisleGraph:
    """Validate ``rewards`` against ``m x n`` and build the graph.

    Column-1 rewards must be exactly zero. Every other reward must be finite
    and non-negative. Each kind of violation raises its own
    :class:`InstanceError` subclass and names the offending cell (1-based).
    """
    if int(m) != m or int(n) != n or m < 1 or n < 1:
        raise DimensionError(f"aisle-graph needs m >= 1 and n >= 1, got m={m}, n={n}")
    m, n = int(m), int(n)
    if isinstance(rewards, np.ndarray):
        rows = rewards.tolist() if rewards.ndim == 2 else None
    else:
        rows = [list(r) for r in rewards]
    if rows is None or len(rows) != m:
        got = "?" if rows is None else len(rows)
        raise DimensionError(f"expected {m} reward rows, got {got}")
    for i, row in enumerate(rows, start=1):
        if len(row) != n:
            raise DimensionError(f"row {i} has {len(row)} entries, expected {n}")
    try:
        grid = np.array(rows, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise RewardValueError(f"rewards must be numbers: {exc}") from None
    bad = ~np.isfinite(grid)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise RewardValueError(f"reward at cell ({i + 1},{j + 1}) is not finite: {grid[i, j]}")
    neg = grid < 0
    if neg.any():
        i, j = np.argwhere(neg)[0]
        raise RewardValueError(f"reward at cell ({i + 1},{j + 1}) is negative: {grid[i, j]:g}")
    nz = grid[:, 0] != 0
    if nz.any():
        i = int(np.argmax(nz))
        raise InterconnectRewardError(
            f"interconnect cell ({i + 1},1) must have reward 0, got {grid[i, 0]:g}"
        )
    grid.setflags(write=False)
    return AisleGraph(grid)


def cumulative_table(graph: AisleGraph) -> np.ndarray:
    return graph.cumulative


def _check_vertex(graph: AisleGraph, vertex: Vertex) -> Vertex:
    i, j = vertex
    if not (1 <= i <= graph.m and 1 <= j <= graph.n):
        raise DepthError(f"vertex ({i},{j}) outside A({graph.m},{graph.n})")
    return int(i), int(j)


def _check_depths(graph: AisleGraph, depths: Sequence[int]) -> list[int]:
    d = [int(x) for x in depths]
    if len(d) != graph.m:
        raise DepthError(f"depth profile has {len(d)} entries, expected {graph.m}")
    for i, x in enumerate(d, start=1):
        if not 0 <= x <= graph.n:
            raise DepthError(f"depth {x} of row {i} outside 0..{graph.n}")
    return d


def deepest_row(depths: Sequence[int]) -> int:
    """Largest 1-based row index with depth >= 1, 0 for the empty route."""
    for i in range(len(depths), 0, -1):
        if depths[i - 1] >= 1:
            return i
    return 0


def route_cost(graph: AisleGraph, depths: Sequence[int]) -> int:
    """Length of the minimal closed walk from home covering the depth profile.

    Rows above the deepest entered row count as depth 1 even when given as
    0, because the walk crosses their interconnect vertex anyway.
    """
    d = _check_depths(graph, depths)
    i_max = deepest_row(d)
    if i_max == 0:
        return 0
    horizontal = sum(max(x, 1) - 1 for x in d[:i_max])
    return 2 * (horizontal + i_max - 1)


def route_reward(graph: AisleGraph, depths: Sequence[int]) -> float:
    d = _check_depths(graph, depths)
    t = graph.cumulative
    return float(sum(t[i, x - 1] for i, x in enumerate(d) if x >= 1))


def full_visit_budget(graph: AisleGraph) -> int:
    """Exact cost of visiting every vertex: ``2(mn - 1)``."""
    return 2 * (graph.m * graph.n - 1)


def sweep_ceiling(graph: AisleGraph) -> int:
    """Largest budget of the benchmark sweeps, ``2(mn + m)``; budget percentages are relative to it."""
    return 2 * (graph.m * graph.n + graph.m)


def whole_graph_budget_bound(graph: AisleGraph) -> int:
    """The looser full-visit bound ``2nm + 2(m - 1)``; kept for comparison with :func:`full_visit_budget`."""
    return 2 * graph.n * graph.m + 2 * (graph.m - 1)


@dataclass(frozen=True)
class RouteSolution:
    """A depth profile with its cost and reward already computed.

    Build one with :meth:`from_depths`. Rows above ``i_max`` are stored with
    depth at least 1.
    """

    depths: tuple[int, ...]
    cost: int
    reward: float
    i_max: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "i_max", deepest_row(self.depths))

    @classmethod
    def from_depths(cls, graph: AisleGraph, depths: Sequence[int]) -> "RouteSolution":
        d = _check_depths(graph, depths)
        i_max = deepest_row(d)
        d = [max(x, 1) if i < i_max else x for i, x in enumerate(d)]
        return cls(tuple(d), route_cost(graph, d), route_reward(graph, d))

    @classmethod
    def empty(cls, graph: AisleGraph) -> "RouteSolution":
        return cls((0,) * graph.m, 0, 0.0)

    def visits(self, vertex: Vertex) -> bool:
        i, j = vertex
        return j <= self.depths[i - 1]

    def to_dict(self) -> dict:
        return {
            "reward": _plain_number(self.reward),
            "cost": self.cost,
            "depths": list(self.depths),
        }


def marginal_cost(graph: AisleGraph, current: RouteSolution | Sequence[int], vertex: Vertex) -> int:
    """Extra budget needed to add ``vertex`` to ``current``, in O(1).

    ``current`` is a solution or a depth profile for ``graph``. The home
    vertex is always part of a route, so an empty route behaves like
    ``i_max = 1``.
    """
    i, j = _check_vertex(graph, vertex)
    depths = current.depths if isinstance(current, RouteSolution) else current
    i_max = current.i_max if isinstance(current, RouteSolution) else deepest_row(depths)
    return _marginal(depths, max(i_max, 1), i, j)


def _marginal(depths: Sequence[int], i_max: int, i: int, j: int) -> int:
    # i_max >= 1 here; i, j are 1-based
    if i > i_max:
        return 2 * (i - i_max) + 2 * (j - 1)
    d = depths[i - 1]
    if j <= d:
        return 0
    if d <= 1:
        return 2 * (j - 1)
    return 2 * (j - d)


def with_vertex(graph: AisleGraph, current: RouteSolution, vertex: Vertex) -> RouteSolution:
    """Return ``current`` extended to reach ``vertex``, collecting the row prefix."""
    i, j = _check_vertex(graph, vertex)
    d = list(current.depths)
    d[i - 1] = max(d[i - 1], j)
    return RouteSolution.from_depths(graph, d)

