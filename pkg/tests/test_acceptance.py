"""End-to-end acceptance gate. Each test records one pass/fail line."""

import csv
import io
import itertools
import statistics
import time

import numpy as np
import pytest

from conftest import EXAMPLE_ROWS, walk
from oasp import RouteSolution, marginal_cost, new_graph, route_cost, sweep_ceiling
from oasp.aisle_graph import with_vertex
from oasp.bench import Instance, SweepConfig, default_budgets, run_sweep
from oasp.cli import main
from oasp.instances import ZipfConfig, generate_zipf, write_instance
from oasp.oracle import oracle_check
from oasp.solvers import (
    optsa_many,
    solve_apxmrc,
    solve_apxmre,
    solve_gdymc,
    solve_gdyme,
    solve_optsa,
)

THETAS = (0.0, 0.9, 1.8, 2.7)
NEG = float("-inf")


def test_criterion_1_worked_example_rewards(report_criterion):
    g = new_graph(4, 5, EXAMPLE_ROWS)
    start = time.perf_counter()
    got = {
        "optsa": solve_optsa(g, 16)[0].reward,
        "gdyme": solve_gdyme(g, 16).reward,
        "gdymc": solve_gdymc(g, 16).reward,
        "apxmre": solve_apxmre(g, 16).reward,
        "apxmrc": solve_apxmrc(g, 16).reward,
    }
    elapsed = time.perf_counter() - start
    expected = {"optsa": 32, "gdyme": 30, "gdymc": 32, "apxmre": 25, "apxmrc": 32}
    ok = got == expected and elapsed < 1.0
    report_criterion(1, ok, f"rewards {got} in {elapsed:.3f}s")
    assert got == expected
    assert elapsed < 1.0


def test_criterion_2_dp_tables(report_criterion):
    g = new_graph(4, 5, EXAMPLE_ROWS)
    start = time.perf_counter()
    _, t = solve_optsa(g, 16)
    elapsed = time.perf_counter() - start
    r_expected = [
        [0, 3, 4, 8, 9, 9, 9, 9, 9],
        [NEG, 0, 3, 4, 11, 17, 20, 21, 25],
        [NEG, NEG, 0, 3, 10, 19, 28, 31, 32],
        [NEG, NEG, NEG, 0, 3, 10, 19, 28, 31],
    ]
    q_expected = [
        [1, 2, 3, 4, 5, 5, 5, 5, 5],
        [None, 1, 1, 1, 4, 5, 5, 5, 5],
        [None, None, 1, 1, 3, 4, 5, 5, 5],
        [None, None, None, 1, 1, 1, 1, 1, 1],
    ]
    q = [[None if r == NEG else int(x) for x, r in zip(qr, rr)] for qr, rr in zip(t.q.tolist(), t.r.tolist())]
    ok = t.r.tolist() == r_expected and q == q_expected and elapsed < 1.0
    report_criterion(2, ok, f"R and Q 4x9 tables match: {ok} ({elapsed:.3f}s)")
    assert t.r.tolist() == r_expected
    assert q == q_expected
    assert elapsed < 1.0


def test_criterion_3_oracle_equivalence(report_criterion):
    start = time.perf_counter()
    summary = oracle_check(5, 5, 500, seed=2024, max_reward=20)
    elapsed = time.perf_counter() - start
    ok = summary.passed and elapsed < 60
    report_criterion(
        3, ok,
        f"{summary.trials} instances, {summary.cells} budgets, optsa mismatches {summary.optsa_mismatches}, "
        f"column mismatches {summary.column_mismatches} ({elapsed:.1f}s)",
    )
    assert summary.passed, summary.counterexample
    assert elapsed < 60


def test_criterion_4_approximation_bound(report_criterion):
    rng = np.random.default_rng(77)
    start = time.perf_counter()
    violations, checked, worst = 0, 0, 1.0
    for k in range(200):
        m, n = (int(x) for x in rng.integers(2, 13, size=2))
        theta = THETAS[k % len(THETAS)]
        g = generate_zipf(m, n, ZipfConfig(theta=theta, seed=int(rng.integers(2**32))))
        # 20 evenly spaced even budgets over [0, 2(mn+m)]; tiny grids repeat some
        budgets = (np.linspace(0, sweep_ceiling(g) // 2, 20).round().astype(int) * 2).tolist()
        opts = optsa_many(g, budgets)
        for b, opt in zip(budgets, opts):
            for solver in (solve_apxmre, solve_apxmrc):
                r = solver(g, b).reward
                checked += 1
                if opt.reward > 0:
                    worst = min(worst, r / opt.reward)
                if r < 0.3160 * opt.reward:
                    violations += 1
    elapsed = time.perf_counter() - start
    ok = violations == 0 and elapsed < 120
    report_criterion(4, ok, f"{checked} checks, {violations} below 0.3160, worst rho {worst:.4f} ({elapsed:.1f}s)")
    assert violations == 0
    assert elapsed < 120


def test_criterion_5_empirical_quality(report_criterion):
    # soft criterion: reported, never asserted
    medians = {}
    for theta in THETAS:
        batch = [
            Instance(f"i{k}", f"theta={theta:g}", generate_zipf(30, 15, ZipfConfig(theta=theta, seed=1000 + k)))
            for k in range(10)
        ]
        report = run_sweep(batch, SweepConfig(algorithms=("optsa", "apxmrc"), points=50))
        rhos = [r.rho for r in report.rows if r.algorithm == "apxmrc" and r.budget_pct >= 20]
        medians[theta] = statistics.median(rhos)
    ok = all(v >= 0.80 for v in medians.values())
    detail = ", ".join(f"theta={t:g}: {v:.3f}" for t, v in medians.items())
    report_criterion(5, ok, f"(soft) median apxmrc rho at budget >= 20%: {detail}")


def test_criterion_6_cost_model(report_criterion):
    rng = np.random.default_rng(6)
    start = time.perf_counter()
    pairs = 0
    mismatches = 0
    odd = 0
    for m, n in itertools.product(range(1, 5), repeat=2):
        rewards = rng.integers(0, 20, size=(m, n)).astype(float)
        rewards[:, 0] = 0
        g = new_graph(m, n, rewards)
        vertices = list(itertools.product(range(1, m + 1), range(1, n + 1)))
        for depths in itertools.product(range(n + 1), repeat=m):
            s = RouteSolution.from_depths(g, depths)
            odd += s.cost % 2
            for v in vertices:
                after = with_vertex(g, s, v)
                pairs += 1
                if marginal_cost(g, s, v) != after.cost - s.cost:
                    mismatches += 1
    walks = 0
    for _ in range(10_000):
        m, n = (int(x) for x in rng.integers(1, 9, size=2))
        depths = rng.integers(0, n + 1, size=m).tolist()
        g = new_graph(m, n, np.zeros((m, n)))
        cost = route_cost(g, depths)
        odd += cost % 2
        if cost != len(walk(depths)) - 1:
            mismatches += 1
        walks += 1
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and odd == 0 and elapsed < 10
    report_criterion(6, ok, f"{pairs} marginal pairs, {walks} walks, {mismatches} mismatches, {odd} odd ({elapsed:.1f}s)")
    assert mismatches == 0 and odd == 0
    assert elapsed < 10


def test_criterion_7_parallel_determinism(report_criterion, tmp_path, capsys):
    gen = tmp_path / "gen"
    assert main(["generate", "--m", "12", "--n", "10", "--theta", "0.9", "--seed", "5",
                 "--count", "8", "--out-dir", str(gen)]) == 0
    start = time.perf_counter()
    outs = []
    for jobs in ("1", "8"):
        target = tmp_path / f"jobs{jobs}.csv"
        assert main(["sweep", "--instances-dir", str(gen), "--no-timing", "--jobs", jobs, "--out", str(target)]) == 0
        outs.append(target.read_bytes())
    elapsed = time.perf_counter() - start
    capsys.readouterr()
    rows = len(list(csv.DictReader(io.StringIO(outs[0].decode()))))
    ok = outs[0] == outs[1] and elapsed < 30
    report_criterion(7, ok, f"jobs 1 vs 8: {rows} rows identical={outs[0] == outs[1]} ({elapsed:.1f}s)")
    assert outs[0] == outs[1]
    assert elapsed < 30


@pytest.mark.slow
def test_criterion_8_performance(report_criterion):
    g = generate_zipf(100, 50, ZipfConfig(theta=0.9, seed=8))
    top = sweep_ceiling(g)
    start = time.perf_counter()
    solve_optsa(g, top)
    optsa_s = time.perf_counter() - start
    greedy_s = {}
    for solver in (solve_gdyme, solve_gdymc, solve_apxmre, solve_apxmrc):
        start = time.perf_counter()
        solver(g, top)
        greedy_s[solver.__name__] = time.perf_counter() - start
    big = generate_zipf(274, 214, ZipfConfig(theta=0.9, seed=274))
    budgets = default_budgets(274, 214, 50)
    start = time.perf_counter()
    for solver in (solve_gdyme, solve_gdymc, solve_apxmre, solve_apxmrc):
        for b in budgets:
            solver(big, b)
    sweep_s = time.perf_counter() - start
    ok = optsa_s < 10 and max(greedy_s.values()) < 1 and sweep_s < 60
    detail = (f"optsa A(100,50) {optsa_s:.2f}s, slowest greedy {max(greedy_s.values()):.2f}s, "
              f"A(274,214) 4 greedy x {len(budgets)} budgets {sweep_s:.1f}s")
    report_criterion(8, ok, detail)
    assert optsa_s < 10
    assert max(greedy_s.values()) < 1
    assert sweep_s < 60
