from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterator, Optional

from ..aisle_graph import AisleGraph, RouteSolution, Vertex

ALGORITHMS = ("optsa", "gdyme", "gdymc", "apxmre", "apxmrc")


@dataclass(frozen=True)
class Step:
    """One accepted greedy selection."""

    vertex: Vertex
    key: float  # reward, cumulative reward or ratio, depending on the algorithm
    marginal_cost: int


@dataclass
class SolverResult:
    solution: RouteSolution
    algorithm: str
    budget: int
    best_single: Optional[RouteSolution] = None
    best_vertex: Optional[tuple[int, int, float]] = None
    steps: list[Step] = field(default_factory=list)
    runtime_ms: float = 0.0

    @property
    def reward(self) -> float:
        return self.solution.reward

    @property
    def cost(self) -> int:
        return self.solution.cost

    def to_dict(self) -> dict:
        out = {"algorithm": self.algorithm, "budget": self.budget}
        out.update(self.solution.to_dict())
        if self.best_single is not None:
            single = self.best_single.to_dict()
            if self.best_vertex is not None:
                i, j, r = self.best_vertex
                single["vertex"] = [i, j]
                single["vertex_reward"] = int(r) if float(r).is_integer() else r
            out["best_single"] = single
        return out


def even_budget(budget: float) -> int:
    """Floor ``budget`` to an even number of units. Only even costs exist."""
    if budget < 0:
        raise ValueError(f"budget must be non-negative, got {budget}")
    b = int(budget)
    return b - (b % 2)


@contextmanager
def stopwatch() -> Iterator[list[float]]:
    box = [0.0]
    start = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = (time.perf_counter() - start) * 1000.0


def check_graph(graph: AisleGraph) -> None:
    if not isinstance(graph, AisleGraph):
        raise TypeError(f"expected AisleGraph, got {type(graph).__name__}")
