"""Command-line entry point: ``oasp {generate,solve,sweep,oracle-check,info}``.

Exit codes: 0 success, 1 validation error, 2 I/O error, 3 failed internal
check. Errors go to stderr as one line starting with ``error:``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .aisle_graph import (
    InstanceError,
    full_visit_budget,
    sweep_ceiling,
    whole_graph_budget_bound,
)
from .bench import Instance, SweepConfig, SweepError, csv_text, emit_json, parse_budget, run_sweep
from .instances import (
    ZipfConfig,
    from_moisture,
    generate_zipf,
    meta_path,
    read_instance,
    read_moisture_csv,
    write_instance,
)
from .oracle import oracle_check
from .solvers import ALGORITHMS, solve

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2, which means I/O here
        raise UsageError(message)


def _fail(code: int, message: str) -> int:
    print("error: " + " ".join(str(message).split()), file=sys.stderr)
    return code


def _theta_tag(theta: float) -> str:
    return f"theta={theta:g}"


def cmd_generate(args) -> int:
    if args.m < 1 or args.n < 1:
        raise UsageError("--m and --n must be >= 1")
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    ZipfConfig(args.theta, args.max_reward, args.seed)  # validates before touching the disk
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for k in range(args.count):
        config = ZipfConfig(args.theta, args.max_reward, args.seed + k)
        graph = generate_zipf(args.m, args.n, config)
        name = f"zipf-m{args.m}-n{args.n}-theta{args.theta:g}-seed{config.seed}.json"
        meta = config.metadata()
        meta.update({"m": args.m, "n": args.n, "base_seed": args.seed, "index": k,
                     "seed_rule": "seed = base_seed + index"})
        write_instance(graph, out / name, meta)
        print(out / name)
    return EXIT_OK


def cmd_solve(args) -> int:
    algorithms = ALGORITHMS if args.algorithm == "all" else (args.algorithm,)
    if args.algorithm != "all" and args.algorithm not in ALGORITHMS:
        raise UsageError(f"unknown algorithm {args.algorithm!r}; choose from all, {', '.join(ALGORITHMS)}")
    graph = read_instance(args.instance)
    budget = parse_budget(args.budget, graph)
    lines = [json.dumps(solve(graph, budget, alg).to_dict()) for alg in algorithms]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _load_batch(args) -> list[Instance]:
    if bool(args.instances_dir) == bool(args.moisture):
        raise UsageError("give exactly one of --instances-dir or --moisture")
    batch = []
    if args.instances_dir:
        root = Path(args.instances_dir)
        if not root.is_dir():
            raise FileNotFoundError(f"no such directory: {root}")
        for path in sorted(root.glob("*.json")):
            if path.name.endswith(".meta.json"):
                continue
            tag = "file"
            mp = meta_path(path)
            if mp.exists():
                meta = json.loads(mp.read_text())
                if "theta" in meta:
                    tag = _theta_tag(meta["theta"])
            batch.append(Instance(path.stem, tag, read_instance(path)))
    else:
        if args.target is None:
            raise UsageError("--moisture needs --target")
        for p in args.moisture:
            mm = read_moisture_csv(p, args.target, transpose=args.transpose)
            stem = Path(p).stem + ("-T" if args.transpose else "")
            batch.append(Instance(stem, "moisture-T" if args.transpose else "moisture", from_moisture(mm)))
    if not batch:
        raise UsageError("no instances found")
    return batch


def cmd_sweep(args) -> int:
    batch = _load_batch(args)
    algorithms = tuple(a.strip() for a in args.algorithms.split(",") if a.strip())
    budgets = None
    if args.budget_grid != "auto":
        g = batch[0].graph
        budgets = tuple(sorted({parse_budget(tok, g) for tok in args.budget_grid.split(",") if tok.strip()}))
    config = SweepConfig(budgets=budgets, algorithms=algorithms, repetitions=len(batch),
                         parallelism=args.jobs, points=args.points)
    report = run_sweep(batch, config)
    text = csv_text(report, timing=not args.no_timing)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.json:
        emit_json(report, args.json, timing=not args.no_timing)
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    summary = oracle_check(args.m_max, args.n_max, args.trials, args.seed, args.max_reward)
    for line in summary.lines():
        print(line)
    if not summary.passed:
        print("counterexample " + json.dumps(summary.counterexample, separators=(",", ":")))
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_info(args) -> int:
    g = read_instance(args.instance)
    info = {
        "m": g.m,
        "n": g.n,
        "total_reward": g.total_reward,
        "full_visit_budget": full_visit_budget(g),
        "whole_graph_budget_bound": whole_graph_budget_bound(g),
        "sweep_ceiling": sweep_ceiling(g),
        "positive_vertices": int((g.rewards > 0).sum()),
        "max_reward": float(g.rewards.max()),
    }
    print(json.dumps(info, indent=1))
    return EXIT_OK


def _default_jobs() -> int:
    raw = os.environ.get("OASP_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="oasp", description="Reward-maximizing routes on single-access aisle-graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="write Zipf-reward instances")
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--theta", type=float, default=0.0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--count", type=int, default=1)
    gen.add_argument("--max-reward", type=int, default=100)
    gen.add_argument("--out-dir", required=True)
    gen.set_defaults(func=cmd_generate)

    sol = sub.add_parser("solve", help="solve one instance at one budget")
    sol.add_argument("--instance", required=True)
    sol.add_argument("--budget", required=True, help="even integer, or percentage of 2(mn+m) like 25%%")
    sol.add_argument("--algorithm", default="optsa", help="one of " + ", ".join(ALGORITHMS) + ", or all")
    sol.add_argument("--out")
    sol.set_defaults(func=cmd_solve)

    sw = sub.add_parser("sweep", help="budget sweep over a batch of instances")
    sw.add_argument("--instances-dir")
    sw.add_argument("--moisture", action="append", help="moisture CSV; repeat for several maps")
    sw.add_argument("--target", type=float)
    sw.add_argument("--transpose", action="store_true")
    sw.add_argument("--algorithms", default=",".join(ALGORITHMS))
    sw.add_argument("--budget-grid", default="auto", help="comma list of budgets or percentages, or auto")
    sw.add_argument("--points", type=int, default=50, help="budget count for the auto grid")
    sw.add_argument("--out")
    sw.add_argument("--json")
    sw.add_argument("--no-timing", action="store_true")
    sw.add_argument("--jobs", type=int, default=_default_jobs())
    sw.set_defaults(func=cmd_sweep)

    oc = sub.add_parser("oracle-check", help="compare the DP against brute force on random instances")
    oc.add_argument("--m-max", type=int, default=5)
    oc.add_argument("--n-max", type=int, default=5)
    oc.add_argument("--trials", type=int, default=200)
    oc.add_argument("--seed", type=int, default=0)
    oc.add_argument("--max-reward", type=int, default=20)
    oc.set_defaults(func=cmd_oracle_check)

    inf = sub.add_parser("info", help="summarize an instance file")
    inf.add_argument("--instance", required=True)
    inf.set_defaults(func=cmd_info)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, InstanceError, SweepError, ValueError) as exc:
        return _fail(EXIT_INVALID, exc)
    except OSError as exc:
        return _fail(EXIT_IO, exc)
    except AssertionError as exc:
        return _fail(EXIT_INTERNAL, f"internal check failed: {exc}")


if __name__ == "__main__":
    sys.exit(main())
