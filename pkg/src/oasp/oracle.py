"""Randomized cross-check of the exact DP against exhaustive enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .aisle_graph import AisleGraph, new_graph, sweep_ceiling
from .instances import instance_to_dict
from .solvers import (
    APPROX_RATIO,
    brute_force_optima,
    enumeration_guard,
    optsa_tables,
    solve_apxmrc,
    solve_apxmre,
    solve_optsa,
)

BOUND_EPS = 1e-9


@dataclass
class OracleSummary:
    trials: int
    cells: int = 0
    optsa_mismatches: int = 0
    column_mismatches: int = 0
    bound_violations: int = 0
    worst_rho: dict[str, float] = field(default_factory=lambda: {"apxmre": 1.0, "apxmrc": 1.0})
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return not (self.optsa_mismatches or self.column_mismatches or self.bound_violations)

    def lines(self) -> list[str]:
        out = [
            f"trials={self.trials} cells={self.cells}",
            f"optsa_mismatches={self.optsa_mismatches} column_mismatches={self.column_mismatches}",
            f"bound_violations={self.bound_violations} bound={APPROX_RATIO:.9f}",
            "worst_rho " + " ".join(f"{k}={v:.6f}" for k, v in self.worst_rho.items()),
            "PASS" if self.passed else "FAIL",
        ]
        return out


def random_instance(rng: np.random.Generator, m_range: tuple[int, int], n_range: tuple[int, int],
                    max_reward: int = 20) -> AisleGraph:
    m = int(rng.integers(m_range[0], m_range[1] + 1))
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    rewards = rng.integers(0, max_reward + 1, size=(m, n)).astype(np.float64)
    rewards[:, 0] = 0
    return new_graph(m, n, rewards)


def check_instance(graph: AisleGraph, summary: OracleSummary) -> None:
    """Check every even budget up to ``2(mn + m)`` on one graph, updating ``summary``."""
    top = sweep_ceiling(graph)
    budgets = list(range(0, top + 1, 2))
    truth = brute_force_optima(graph, budgets)
    columns = optsa_tables(graph, top).column_optima()
    bad = False
    for b, best in zip(budgets, truth):
        summary.cells += 1
        if columns[b // 2] != best:
            summary.column_mismatches += 1
            bad = True
        if solve_optsa(graph, b)[0].reward != best:
            summary.optsa_mismatches += 1
            bad = True
        for solver in (solve_apxmre, solve_apxmrc):
            r = solver(graph, b)
            if best > 0:
                summary.worst_rho[r.algorithm] = min(summary.worst_rho[r.algorithm], r.reward / best)
            if r.reward < APPROX_RATIO * best - BOUND_EPS:
                summary.bound_violations += 1
                bad = True
    if bad and summary.counterexample is None:
        summary.counterexample = instance_to_dict(graph)


def oracle_check(m_max: int, n_max: int, trials: int, seed: int, max_reward: int = 20) -> OracleSummary:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if m_max < 1 or n_max < 1:
        raise ValueError("m-max and n-max must be >= 1")
    if not enumeration_guard(m_max, n_max):
        raise ValueError(f"A({m_max},{n_max}) exceeds the brute-force enumeration guard")
    rng = np.random.default_rng(seed)
    summary = OracleSummary(trials)
    for _ in range(trials):
        check_instance(random_instance(rng, (1, m_max), (1, n_max), max_reward), summary)
    return summary
