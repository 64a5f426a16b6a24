"""The solver talks to its MILP engine through a small contract.

Here the bundled dense simplex / branch-and-bound and the HiGHS backend solve
the same CRIT2 relaxations and the same full instances; values must agree.
"""
import time

from bkp import GenSpec, SolverParams, TupleGenParams, generate, solve
from bkp.bounds import build_crit2, compute_tuples, critical_range
from bkp.knapsack import kp_dp
from bkp.milp import get_engine

inst = generate(GenSpec(45, 2, 1))
l, r = critical_range(inst, kp_dp(inst.w, inst.v, inst.cap_leader)[0])
bundled, highs = get_engine("bundled"), get_engine("highs")
for c in range(l, min(r, l + 5) + 1):
    model = build_crit2(inst, c, compute_tuples(inst, c, TupleGenParams())).model
    a, b = bundled.solve_lp(model), highs.solve_lp(model)
    print(f"CRIT2({c + 1}) relaxation: bundled {a.objective:.4f}  highs {b.objective:.4f}")

for engine in ("bundled", "highs"):
    start = time.perf_counter()
    sol = solve(inst, SolverParams(engine=engine))
    print(f"{engine:>8}: z* = {sol.value} in {time.perf_counter() - start:.2f}s")
