import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from oasp import RouteSolution, marginal_cost, new_graph, route_cost, route_reward
from oasp.aisle_graph import with_vertex
from oasp.solvers import solve_gdymc, solve_gdyme, solve_optsa


def test_gdyme_trace(example):
    res = solve_gdyme(example, 16)
    assert [s.vertex for s in res.steps] == [(2, 4), (3, 4)]
    assert res.reward == 30
    assert res.cost <= 16


def test_gdymc_trace(example):
    res = solve_gdymc(example, 16)
    assert [s.vertex for s in res.steps] == [(3, 5), (1, 3)]
    assert res.reward == 32
    assert res.solution.depths == (3, 1, 5, 0)


@pytest.mark.parametrize("solver", [solve_gdyme, solve_gdymc])
def test_zero_budget(example, solver):
    res = solver(example, 0)
    assert res.reward == 0 and res.steps == []


@pytest.mark.parametrize("solver", [solve_gdyme, solve_gdymc])
def test_full_budget(example, solver):
    res = solver(example, 38)
    assert res.reward == 58 and res.cost == 38


@given(graphs(max_m=1, max_n=8), st.integers(0, 20))
@settings(max_examples=150, deadline=None)
def test_gdymc_optimal_on_one_row(g, budget):
    assert solve_gdymc(g, budget).reward == solve_optsa(g, budget)[0].reward


@given(graphs(max_m=6, max_n=6), st.integers(0, 90))
@settings(max_examples=200, deadline=None)
def test_greedy_routes_are_feasible(g, budget):
    for solver in (solve_gdyme, solve_gdymc):
        res = solver(g, budget)
        assert res.cost == route_cost(g, res.solution.depths) <= budget
        assert res.reward == route_reward(g, res.solution.depths)
        assert res.reward <= solve_optsa(g, budget)[0].reward


@given(graphs(max_m=5, max_n=5), st.integers(0, 60))
@settings(max_examples=150, deadline=None)
def test_gdyme_replay(g, budget):
    # every accepted vertex is the most rewarding candidate not yet rejected
    res = solve_gdyme(g, budget)
    s = RouteSolution.empty(g)
    for step in res.steps:
        i, j = step.vertex
        assert step.marginal_cost == marginal_cost(g, s, step.vertex)
        assert step.key == g.reward(step.vertex)
        s = with_vertex(g, s, step.vertex)
    assert s == res.solution
    # no unvisited positive vertex still fits: adding it never got cheaper
    for i in range(1, g.m + 1):
        for j in range(1, g.n + 1):
            if g.reward((i, j)) > 0 and not s.visits((i, j)):
                assert s.cost + marginal_cost(g, s, (i, j)) > res.budget


def test_gdyme_skips_unaffordable_but_continues():
    g = new_graph(2, 4, [[0, 1, 0, 0], [0, 0, 0, 9]])
    res = solve_gdyme(g, 4)
    assert [s.vertex for s in res.steps] == [(1, 2)]
    assert res.reward == 1
