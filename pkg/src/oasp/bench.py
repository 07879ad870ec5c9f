"""Budget sweeps over instance batches and their CSV/JSON reports."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from .aisle_graph import AisleGraph, sweep_ceiling
from .solvers import ALGORITHMS, SOLVERS, SolverResult, even_budget, optsa_many

CSV_COLUMNS = (
    "instance_id",
    "tag",
    "m",
    "n",
    "budget",
    "budget_pct",
    "algorithm",
    "reward",
    "reward_pct",
    "cost",
    "rho",
    "runtime_ms",
)
Z95 = 1.96
DEFAULT_POINTS = 50


class SweepError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Instance:
    instance_id: str
    tag: str
    graph: AisleGraph


@dataclass(frozen=True)
class SweepConfig:
    budgets: tuple[int, ...] | None = None  # None: default grid for the batch dimensions
    algorithms: tuple[str, ...] = ALGORITHMS
    repetitions: int = 30
    parallelism: int = 1
    points: int = DEFAULT_POINTS

    def __post_init__(self) -> None:
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown or not self.algorithms:
            raise SweepError(f"unknown or missing algorithms: {unknown}; choose from {', '.join(ALGORITHMS)}")
        if self.repetitions < 1:
            raise SweepError("repetitions must be >= 1")
        if self.parallelism < 1:
            raise SweepError("parallelism must be >= 1")
        if self.points < 1:
            raise SweepError("points must be >= 1")
        if self.budgets is not None:
            bad = [b for b in self.budgets if b < 0 or b % 2]
            if bad or not self.budgets:
                raise SweepError(f"budgets must be non-negative even integers, got {bad or 'none'}")


@dataclass
class SweepRow:
    instance_id: str
    tag: str
    m: int
    n: int
    budget: int
    budget_pct: float
    algorithm: str
    reward: float
    reward_pct: float
    cost: int
    rho: float | None
    runtime_ms: float


@dataclass
class Aggregate:
    tag: str
    m: int
    n: int
    budget: int
    budget_pct: float
    algorithm: str
    count: int
    reward_pct_mean: float
    reward_pct_ci95: float | None
    rho_mean: float | None
    rho_ci95: float | None


@dataclass
class SweepReport:
    rows: list[SweepRow]
    aggregates: list[Aggregate] = field(default_factory=list)


def default_budgets(m: int, n: int, points: int = DEFAULT_POINTS) -> list[int]:
    """Even budgets from ``2n`` to ``2(mn + m)``, thinned to ``points`` evenly spaced values."""
    lo, hi = 2 * n, 2 * (m * n + m)
    every = list(range(lo, hi + 1, 2))
    if len(every) <= points:
        return every
    picks = np.linspace(lo // 2, hi // 2, points).round().astype(int) * 2
    return sorted(set(picks.tolist()))


def parse_budget(token: str, graph_or_ceiling: AisleGraph | int) -> int:
    """Read ``"16"`` or ``"25%"`` (of ``2(mn + m)``), floored to even."""
    ceiling = graph_or_ceiling if isinstance(graph_or_ceiling, int) else sweep_ceiling(graph_or_ceiling)
    token = token.strip()
    try:
        if token.endswith("%"):
            value = float(token[:-1]) * ceiling / 100.0
        else:
            value = float(token)
    except ValueError:
        raise SweepError(f"bad budget {token!r}") from None
    if not math.isfinite(value) or value < 0:
        raise SweepError(f"budget must be a non-negative number, got {token!r}")
    return even_budget(value)


def rho(reward: float, optimum: float) -> float:
    """Reward ratio against the optimum; 1 when both are zero."""
    if optimum <= 0:
        return 1.0
    return reward / optimum


def _solve_instance(args: tuple[Instance, tuple[int, ...], tuple[str, ...]]) -> list[SweepRow]:
    inst, budgets, algorithms = args
    g = inst.graph
    ceiling = sweep_ceiling(g)
    total = g.total_reward
    results: dict[str, list[SolverResult]] = {}
    for alg in algorithms:
        if alg == "optsa":
            results[alg] = optsa_many(g, list(budgets))
        else:
            results[alg] = [SOLVERS[alg](g, b) for b in budgets]
    rows = []
    for k, b in enumerate(budgets):
        opt = results["optsa"][k].reward if "optsa" in results else None
        for alg in algorithms:
            r = results[alg][k]
            rows.append(
                SweepRow(
                    inst.instance_id,
                    inst.tag,
                    g.m,
                    g.n,
                    b,
                    100.0 * b / ceiling,
                    alg,
                    r.reward,
                    100.0 * r.reward / total if total > 0 else 100.0,
                    r.cost,
                    None if opt is None else rho(r.reward, opt),
                    r.runtime_ms,
                )
            )
    return rows


def _order(row: SweepRow) -> tuple:
    return row.instance_id, row.budget, ALGORITHMS.index(row.algorithm)


def _mean_ci(values: Sequence[float]) -> tuple[float, float | None]:
    arr = np.asarray(values, dtype=np.float64)
    mean = float(arr.mean())
    if arr.size < 2:
        return mean, None
    return mean, float(Z95 * arr.std(ddof=1) / math.sqrt(arr.size))


def aggregate(rows: Iterable[SweepRow]) -> list[Aggregate]:
    """Mean and normal-approximation 95% half-width per (tag, budget, algorithm)."""
    groups: dict[tuple, list[SweepRow]] = {}
    for r in rows:
        groups.setdefault((r.tag, r.m, r.n, r.budget, r.algorithm), []).append(r)
    out = []
    for (tag, m, n, budget, alg), rs in sorted(
        groups.items(), key=lambda kv: (kv[0][0], kv[0][3], ALGORITHMS.index(kv[0][4]))
    ):
        pct_mean, pct_ci = _mean_ci([r.reward_pct for r in rs])
        rhos = [r.rho for r in rs if r.rho is not None]
        rho_mean, rho_ci = _mean_ci(rhos) if rhos else (None, None)
        out.append(
            Aggregate(tag, m, n, budget, rs[0].budget_pct, alg, len(rs), pct_mean, pct_ci, rho_mean, rho_ci)
        )
    return out


def run_sweep(batch: Sequence[Instance], config: SweepConfig) -> SweepReport:
    """Solve every (instance, budget, algorithm) cell of the batch.

    Instances are the work units. With ``parallelism > 1`` they go to a
    process pool. Rows are sorted afterwards, so the report does not depend
    on scheduling except for ``runtime_ms``.
    """
    if not batch:
        raise SweepError("empty instance batch")
    dims = {(inst.graph.m, inst.graph.n) for inst in batch}
    if len(dims) != 1:
        raise SweepError(f"instances in a batch must share dimensions, got {sorted(dims)}")
    ids = [inst.instance_id for inst in batch]
    if len(set(ids)) != len(ids):
        raise SweepError("instance ids must be unique within a batch")
    (m, n), = dims
    budgets = config.budgets if config.budgets is not None else tuple(default_budgets(m, n, config.points))
    ceiling = 2 * (m * n + m)
    if max(budgets) > ceiling:
        raise SweepError(f"budgets must not exceed 2(mn+m) = {ceiling}")
    algorithms = tuple(a for a in ALGORITHMS if a in config.algorithms)
    jobs = [(inst, tuple(budgets), algorithms) for inst in batch]
    if config.parallelism == 1 or len(jobs) == 1:
        chunks = [_solve_instance(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=min(config.parallelism, len(jobs))) as pool:
            chunks = list(pool.map(_solve_instance, jobs))
    rows = sorted((r for chunk in chunks for r in chunk), key=_order)
    return SweepReport(rows, aggregate(rows))


def _num(x: float | int | None) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _reward(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def _csv_line(row: SweepRow, timing: bool) -> list[str]:
    cells = [
        row.instance_id,
        row.tag,
        str(row.m),
        str(row.n),
        str(row.budget),
        _num(row.budget_pct),
        row.algorithm,
        _reward(row.reward),
        _num(row.reward_pct),
        str(row.cost),
        _num(row.rho),
    ]
    if timing:
        cells.append(f"{row.runtime_ms:.3f}")
    return cells


def write_csv(report: SweepReport, stream: TextIO, timing: bool = True) -> None:
    if not report.rows:
        raise SweepError("nothing to emit: empty report")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS if timing else CSV_COLUMNS[:-1])
    for row in sorted(report.rows, key=_order):
        writer.writerow(_csv_line(row, timing))


def csv_text(report: SweepReport, timing: bool = True) -> str:
    buf = io.StringIO()
    write_csv(report, buf, timing)
    return buf.getvalue()


def emit_csv(report: SweepReport, path: str | Path, timing: bool = True) -> None:
    Path(path).write_text(csv_text(report, timing))


def report_dict(report: SweepReport, timing: bool = True) -> dict:
    rows = []
    for r in sorted(report.rows, key=_order):
        d = asdict(r)
        if not timing:
            del d["runtime_ms"]
        rows.append(d)
    return {"columns": list(CSV_COLUMNS if timing else CSV_COLUMNS[:-1]), "rows": rows,
            "aggregates": [asdict(a) for a in report.aggregates]}


def emit_json(report: SweepReport, path: str | Path, timing: bool = True) -> None:
    if not report.rows:
        raise SweepError("nothing to emit: empty report")
    Path(path).write_text(json.dumps(report_dict(report, timing), indent=1) + "\n")
