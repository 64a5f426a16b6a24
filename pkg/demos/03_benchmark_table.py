"""Reproduce the shape of the per-class results table on regenerated instances.

Solves n in {35, 45} for every INS with two seeds and prints average and
maximum time, Step-2 subproblems and CRIT2 solves per class. Pass a worker
count as the first argument to spread instances over processes.
"""
import sys

from bkp.cli import aggregate, run_bench
from bkp.generator import GenSpec
from bkp.solver import SolverParams

workers = int(sys.argv[1]) if len(sys.argv) > 1 else 1
params = SolverParams.preset("small")
jobs = [((n, ins, seed), GenSpec(n, ins, seed), params)
        for n in (35, 45) for ins in range(1, 11) for seed in (0, 1)]
rows = run_bench(jobs, workers)

print("   n INS  opt   avg s   max s  avg sub  max sub  avg crit2  max crit2")
for a in aggregate(rows):
    print(f"{a['n']:4d} {a['ins']:3d} {a['optimal']:2d}/{a['count']:<2d}"
          f" {a['time']:7.2f} {a['time_max']:7.2f} {a['subproblems']:8.2f} {a['subproblems_max']:8d}"
          f" {a['crit2']:10.2f} {a['crit2_max']:10d}")
