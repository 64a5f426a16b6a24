"""Command line front end: ``bkp generate | solve | oracle | bench``.

Exit codes: 0 proven optimum (or plain success), 2 usage or input error,
3 time limit reached before optimality was proven.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from pathlib import Path

from .generator import GenerationError, GenSpec, generate
from .instance import InstanceFormatError, load, save
from .oracle import OracleRefused, brute_force
from .solver import PRESETS, SolverError, SolverParams, solve

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_TIME_LIMIT = 3

_NAME = re.compile(r"bkp_n(\d+)_ins(\d+)_s(\d+)\.txt$")


class UsageError(Exception):
    pass


@dataclass
class BenchRow:
    n: int
    ins: int
    seed: int
    value: int | None
    time: float
    subproblems: int
    crit2: int
    optimal: int
    status: str


CSV_COLUMNS = ["kind", "n", "ins", "seed", "count", "optimal", "status", "value",
               "time", "time_max", "subproblems", "subproblems_max", "crit2", "crit2_max"]


# -- argument handling ------------------------------------------------------------
def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bkp", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def instance_set(p, many):
        nargs = "+" if many else None
        p.add_argument("--n", type=int, nargs=nargs, help="item count")
        p.add_argument("--ins", type=int, nargs=nargs, help="capacity class 1..10")
        p.add_argument("--seed", type=int, nargs=nargs, help="generator seed")

    def solver_flags(p):
        p.add_argument("--preset", choices=sorted(PRESETS), default="small")
        for name in ("alpha", "beta", "delta", "mu", "gamma"):
            p.add_argument(f"--{name}", type=int)
        p.add_argument("--time-limit", type=float, dest="time_limit")
        p.add_argument("--engine", choices=["bundled", "highs"], default="bundled")
        p.add_argument("--no-fixing", action="store_true", help="disable reduced-cost fixing")

    g = sub.add_parser("generate", help="write generated instances")
    instance_set(g, many=True)
    g.add_argument("--out", help="file (single instance) or directory")

    s = sub.add_parser("solve", help="solve one instance exactly")
    s.add_argument("path", nargs="?", help="instance file (or use --n/--ins/--seed)")
    instance_set(s, many=False)
    solver_flags(s)
    s.add_argument("--json", action="store_true")

    o = sub.add_parser("oracle", help="brute-force optimum for n <= 20")
    o.add_argument("path", nargs="?")
    instance_set(o, many=False)
    o.add_argument("--json", action="store_true")

    b = sub.add_parser("bench", help="solve a set of instances and write a CSV")
    b.add_argument("directory", nargs="?", help="directory of instance files")
    instance_set(b, many=True)
    solver_flags(b)
    b.add_argument("--csv", help="output path (default: standard output)")
    b.add_argument("--jobs", type=int, help="worker processes (default: $BKP_JOBS or 1)")
    b.add_argument("--json", action="store_true", help="also print rows and aggregates as JSON")
    return ap


def _params(args) -> SolverParams:
    try:
        return SolverParams.preset(args.preset, alpha=args.alpha, beta=args.beta,
                                   delta=args.delta, mu=args.mu, gamma=args.gamma,
                                   time_limit=args.time_limit, engine=args.engine,
                                   fixing=not args.no_fixing)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _spec(n, ins, seed) -> GenSpec:
    try:
        return GenSpec(n, ins, seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _single_instance(args):
    given = [a is not None for a in (args.n, args.ins, args.seed)]
    if args.path is not None:
        if any(given):
            raise UsageError("give either an instance file or --n/--ins/--seed, not both")
        try:
            return load(args.path)
        except (OSError, InstanceFormatError) as exc:
            raise UsageError(f"{args.path}: {exc}") from None
    if not all(given):
        raise UsageError("need an instance file or all of --n, --ins and --seed")
    return _generate(_spec(args.n, args.ins, args.seed))


def _generate(spec: GenSpec):
    try:
        return generate(spec)
    except GenerationError as exc:
        raise UsageError(str(exc)) from None


def _grid(args) -> list[GenSpec]:
    if args.n is None or args.ins is None:
        raise UsageError("need --n and --ins")
    seeds = args.seed if args.seed is not None else [0]
    return [_spec(n, ins, seed) for n in args.n for ins in args.ins for seed in seeds]


def _jobs(args) -> int:
    jobs = args.jobs
    if jobs is None:
        env = os.environ.get("BKP_JOBS", "1")
        try:
            jobs = int(env)
        except ValueError:
            raise UsageError(f"BKP_JOBS must be an integer, got {env!r}") from None
    if jobs < 1:
        raise UsageError("--jobs must be at least 1")
    return jobs


# -- commands -----------------------------------------------------------------------
def cmd_generate(args) -> int:
    specs = _grid(args)
    if len(specs) == 1 and args.out and not Path(args.out).is_dir():
        targets = [(specs[0], Path(args.out))]
    else:
        folder = Path(args.out or ".")
        folder.mkdir(parents=True, exist_ok=True)
        targets = [(s, folder / s.filename) for s in specs]
    for spec, path in targets:
        try:
            save(_generate(spec), path)
        except OSError as exc:
            raise UsageError(f"{path}: {exc}") from None
        print(path)
    return EXIT_OK


def _format_solution(report) -> str:
    st = report["stats"]
    lines = [
        f"value              {report['value']}",
        f"proven optimal     {'yes' if report['optimal'] else 'no (time limit)'}",
        f"interdicted items  {[i + 1 for i, a in enumerate(report['x']) if a]}",
        f"follower items     {[i + 1 for i, b in enumerate(report['y']) if b]}",
        f"cpu time (s)       {st['cpu_time']:.3f}",
        f"critical range     {st['critical_range']}",
        f"step-2 subproblems {st['subproblems_step2']}",
        f"CRIT2 solved       {st['crit2_solved']}",
        f"cut iterations     {st['cut_iterations']}",
    ]
    return "\n".join(lines)


def cmd_solve(args) -> int:
    inst = _single_instance(args)
    params = _params(args)
    try:
        sol = solve(inst, params)
    except SolverError as exc:
        raise UsageError(str(exc)) from None
    report = sol.report()
    print(json.dumps(report) if args.json else _format_solution(report))
    return EXIT_OK if sol.optimal else EXIT_TIME_LIMIT


def cmd_oracle(args) -> int:
    inst = _single_instance(args)
    try:
        res = brute_force(inst)
    except OracleRefused as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        print(json.dumps({"value": res.value, "x": list(res.x), "y": list(res.y),
                          "enumerated": res.enumerated}))
    else:
        print(f"value {res.value}")
    return EXIT_OK


def _bench_one(job):
    """Solve one bench entry; never raises, failures become an ``error`` row."""
    (n, ins, seed), source, params = job
    start = time.perf_counter()
    try:
        inst = generate(source) if isinstance(source, GenSpec) else load(source)
        n = inst.n
        sol = solve(inst, params)
    except (OSError, ValueError, SolverError, GenerationError):
        return BenchRow(n, ins, seed, None, time.perf_counter() - start, 0, 0, 0, "error")
    st = sol.stats
    return BenchRow(n, ins, seed, sol.value, st.wall_time, st.subproblems_step2,
                    st.crit2_solves, int(sol.optimal), "optimal" if sol.optimal else "time-limit")


def _bench_jobs(args, params):
    if args.directory is not None:
        if any(a is not None for a in (args.n, args.ins, args.seed)):
            raise UsageError("give either a directory or --n/--ins/--seed, not both")
        folder = Path(args.directory)
        if not folder.is_dir():
            raise UsageError(f"{folder}: not a directory")
        jobs = []
        for path in sorted(folder.glob("*.txt")):
            m = _NAME.search(path.name)
            key = tuple(int(g) for g in m.groups()) if m else (-1, -1, -1)
            jobs.append((key, str(path), params))
    else:
        jobs = [((s.n, s.ins, s.seed), s, params) for s in _grid(args)]
    return sorted(jobs, key=lambda j: (j[0], str(j[1])))


def run_bench(jobs, workers=1) -> list[BenchRow]:
    if workers == 1 or len(jobs) <= 1:
        return [_bench_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map keeps input order, so rows come back sorted whatever finishes first
        return list(pool.map(_bench_one, jobs))


def aggregate(rows) -> list[dict]:
    groups: dict = {}
    for r in rows:
        groups.setdefault((r.n, r.ins), []).append(r)
    out = []
    for (n, ins), rs in sorted(groups.items()):
        out.append({
            "kind": "aggregate", "n": n, "ins": ins, "seed": "", "count": len(rs),
            "optimal": sum(r.optimal for r in rs), "status": "", "value": "",
            "time": sum(r.time for r in rs) / len(rs), "time_max": max(r.time for r in rs),
            "subproblems": sum(r.subproblems for r in rs) / len(rs),
            "subproblems_max": max(r.subproblems for r in rs),
            "crit2": sum(r.crit2 for r in rs) / len(rs), "crit2_max": max(r.crit2 for r in rs),
        })
    return out


def bench_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({
            "kind": "instance", "n": r.n, "ins": r.ins, "seed": r.seed, "count": 1,
            "optimal": r.optimal, "status": r.status, "value": "" if r.value is None else r.value,
            "time": f"{r.time:.4f}", "time_max": f"{r.time:.4f}",
            "subproblems": r.subproblems, "subproblems_max": r.subproblems,
            "crit2": r.crit2, "crit2_max": r.crit2,
        })
    for a in aggregate(rows):
        for key in ("time", "time_max"):
            a[key] = f"{a[key]:.4f}"
        for key in ("subproblems", "crit2"):
            a[key] = f"{a[key]:.2f}"
        writer.writerow(a)
    return buf.getvalue()


def cmd_bench(args) -> int:
    params = _params(args)
    workers = _jobs(args)
    rows = run_bench(_bench_jobs(args, params), workers)
    table = bench_csv(rows)
    if args.csv:
        try:
            Path(args.csv).write_text(table, encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"{args.csv}: {exc}") from None
    if args.json:
        names = [f.name for f in fields(BenchRow)]
        print(json.dumps({"rows": [dict(zip(names, astuple(r))) for r in rows],
                          "aggregates": aggregate(rows)}))
    elif not args.csv:
        sys.stdout.write(table)
    statuses = {r.status for r in rows}
    if "error" in statuses:
        return EXIT_USAGE
    return EXIT_TIME_LIMIT if "time-limit" in statuses else EXIT_OK


COMMANDS = {"generate": cmd_generate, "solve": cmd_solve, "oracle": cmd_oracle,
            "bench": cmd_bench}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"bkp {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
