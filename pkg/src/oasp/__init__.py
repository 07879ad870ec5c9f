"""Orienteering on single-access aisle-graphs: exact and greedy route planners."""

from .aisle_graph import (
    AisleGraph,
    InstanceError,
    RouteSolution,
    full_visit_budget,
    marginal_cost,
    new_graph,
    route_cost,
    route_reward,
    sweep_ceiling,
)

__version__ = "0.1.0"

__all__ = [
    "AisleGraph",
    "InstanceError",
    "RouteSolution",
    "full_visit_budget",
    "marginal_cost",
    "new_graph",
    "route_cost",
    "route_reward",
    "sweep_ceiling",
]
