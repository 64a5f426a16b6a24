"""How tight are the lower bounds on a mid-sized generated instance?

For every candidate critical item the script prints the LP and integer values
of CRIT1 and CRIT2 next to the true optimum, which shows why ranking by the
CRIT2 relaxation finds the right subproblem early.
"""
import sys

from bkp import GenSpec, TupleGenParams, generate, solve
from bkp.bounds import build_crit1, build_crit2, compute_tuples, critical_range
from bkp.knapsack import kp_dp
from bkp.milp import OPTIMAL, solve_lp, solve_mip

n, ins, seed = (int(a) for a in sys.argv[1:4]) if len(sys.argv) > 3 else (30, 3, 0)
inst = generate(GenSpec(n, ins, seed))
z_star = solve(inst).value
l, r = critical_range(inst, kp_dp(inst.w, inst.v, inst.cap_leader)[0])
print(f"n={n} INS={ins} seed={seed}: C_u={inst.cap_leader} C_l={inst.cap_follower} z*={z_star}")
print(f"candidate critical items {l + 1}..{r + 1}\n")


def show(res):
    return f"{res.objective:8.2f}" if res.status == OPTIMAL else f"{res.status:>8}"


print("   c   w_c  tuples   CRIT1 LP  CRIT1 IP   CRIT2 LP  CRIT2 IP")
for c in range(l, r + 1):
    one = build_crit1(inst, c).model
    two = build_crit2(inst, c, compute_tuples(inst, c, TupleGenParams()))
    print(f"{c + 1:4d} {inst.w[c]:5d} {len(two.tuples):7d}  {show(solve_lp(one))}  {show(solve_mip(one))}"
          f"   {show(solve_lp(two.model))}  {show(solve_mip(two.model))}")
