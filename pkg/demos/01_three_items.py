"""Walk through the three-item instance by hand, then let the solver confirm it.

Items (p, w, v): (4,3,2) (5,4,2) (3,3,2); the leader can afford one item
(C_u = 3), the follower packs up to C_l = 6.
"""
from bkp import Instance, brute_force, follower_response, solve, validate
from bkp.bounds import build_crit1, build_ncr, critical_range
from bkp.knapsack import kp_dp
from bkp.milp import solve_mip

inst = Instance([4, 5, 3], [3, 4, 3], [2, 2, 2], 3, 6)
print("validation report:", validate(inst) or "clean")

print("\nevery leader move and the follower's best reply:")
for x in [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]:
    reply = follower_response(inst, x)
    print(f"  x={x}  follower takes items {[i + 1 for i in reply.selection]}  profit {reply.value}")

oracle = brute_force(inst)
print(f"\nbrute force: z* = {oracle.value} with x = {oracle.x}")

ncr = solve_mip(build_ncr(inst))
print(f"no-critical-item model: z = {ncr.objective:g} (an upper bound, leader strategy x = {ncr.values.tolist()})")

z_lw = kp_dp(inst.w, inst.v, inst.cap_leader)[0]
l, r = critical_range(inst, z_lw)
print(f"largest interdictable weight {z_lw}; items {l + 1}..{r + 1} may be critical")
for c in range(l, r + 1):
    print(f"  CRIT1 with item {c + 1} critical: lower bound {solve_mip(build_crit1(inst, c).model).objective:g}")

sol = solve(inst)
print(f"\nexact solver: z* = {sol.value}, interdict {[i + 1 for i, a in enumerate(sol.x) if a]}, "
      f"follower keeps {[i + 1 for i, b in enumerate(sol.y) if b]}")
