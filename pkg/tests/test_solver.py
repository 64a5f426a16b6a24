import math

import numpy as np
import pytest

from bkp.bounds import build_crit1
from bkp.generator import GenerationError, GenSpec, generate, generate_raw
from bkp.instance import Instance, sort_by_efficiency
from bkp.knapsack import follower_response
from bkp.milp import AT_LOWER, BASIC, INFEASIBLE, LinearModel, LpSolution, OPTIMAL, solve_lp, solve_mip
from bkp.oracle import brute_force
from bkp.solver import (MAX_CUT_ITERATIONS, BilevelSolution, SolverError, SolverParams,
                        SubproblemRecord, add_cuts, fix_by_reduced_costs, lp_bound, solve, step1)


def small_suite(count=40):
    out = []
    for seed in range(10):
        for n in (7, 9, 11):
            for ins in range(1, 11):
                try:
                    out.append(generate(GenSpec(n, ins, seed)))
                except GenerationError:
                    continue
                if len(out) == count:
                    return out
    return out


SUITE = small_suite()


def test_example_value(tiny):
    sol = solve(tiny)
    assert sol.value == 5 and sol.optimal
    assert sol.check(tiny) == []
    assert sum(sol.x) == 1


def test_ncr_zero_certifies_in_step1():
    # blanking the follower needs sum(v) <= C_u, outside the validity rules,
    # so this path is exercised through step1, which does not validate
    inst = Instance([3, 3], [2, 2], [1, 1], 2, 3)
    inc, L = step1(inst)
    assert inc.value == 0 and L == []
    assert inc.stats.certified_in_step1 and inc.stats.subproblems_step2 == 0


def test_solution_in_original_order():
    for seed in range(3):
        raw = generate_raw(GenSpec(25, 4, seed))
        sol = solve(raw)
        assert sol.check(raw) == []
        assert follower_response(raw, sol.x).value == sol.value
        assert sol.value == solve(sort_by_efficiency(raw)[0]).value


@pytest.mark.parametrize("inst", SUITE[:20])
def test_matches_oracle(inst):
    sol = solve(inst)
    assert sol.value == brute_force(inst).value
    assert sol.check(inst) == []


def test_monotone_incumbent_and_cut_bound():
    improved = 0
    for inst in SUITE:
        sol = solve(inst, SolverParams(gamma=0))
        trace = sol.stats.incumbent_trace
        assert all(a > b for a, b in zip(trace, trace[1:]))
        assert trace[-1] == sol.value
        assert sol.stats.max_cut_iterations < MAX_CUT_ITERATIONS
        improved += len(trace) > 1
    # some runs must improve on their first incumbent inside the cut loop
    assert improved > 0


def test_prune_soundness():
    pruned = 0
    for inst in SUITE:
        sol = solve(inst)
        for rec in sol.records:
            if rec.status != "pruned":
                continue
            pruned += 1
            res = solve_mip(rec.model)
            assert res.status == INFEASIBLE or res.objective >= sol.value
            assert lp_bound(rec.lp_value) >= sol.value
    assert pruned > 0


def test_subproblem_statuses_and_lp_bounds():
    for inst in SUITE[:10]:
        sol = solve(inst, SolverParams(fixing=False))
        for rec in sol.records:
            assert rec.status in ("pruned", "exhausted")


def test_neutrality_small():
    for inst in SUITE[:15]:
        base = solve(inst).value
        assert solve(inst, SolverParams(fixing=False)).value == base
        assert solve(inst, SolverParams(gamma=0)).value == base


def test_highs_backend_agrees():
    for inst in SUITE[:8]:
        assert solve(inst, SolverParams(engine="highs")).value == solve(inst).value


def test_step1_ranks_candidates(tiny):
    inc, L = step1(tiny, SolverParams(gamma=0))
    assert inc.value == 7  # NCR: interdict item 2, follower takes items 1 and 3
    assert {rec.c for rec in L} == {1, 2}
    assert [(r.lp_value, r.c) for r in L] == sorted((r.lp_value, r.c) for r in L)
    for rec in L:
        assert rec.lp_value == pytest.approx(solve_lp(rec.model).objective)


def test_step1_without_ncr_incumbent():
    inst = Instance([4, 5, 3], [3, 4, 3], [2, 2, 2], 3, 5)
    inc, L = step1(inst, SolverParams(gamma=0))
    assert inc is None and L


def test_step1_single_candidate():
    # only the last item can reach C_l, so l = r = n - 1
    inst = Instance([3, 2, 4], [1, 1, 5], [1, 1, 1], 2, 6)
    inc, L = step1(inst, SolverParams(gamma=0))
    assert inc.stats.critical_range == (2, 2)
    assert [rec.c for rec in inc.records] == [2]
    assert len(L) <= 1


def test_step1_requires_sorted_input():
    with pytest.raises(SolverError):
        step1(Instance([1, 5], [5, 1], [1, 1], 1, 3))


def test_invalid_instance_rejected():
    with pytest.raises(SolverError):
        solve(Instance([1, 1], [1, 1], [5, 1], 2, 1))


def test_time_limit_returns_best_known():
    inst = generate(GenSpec(300, 5, 0))
    sol = solve(inst, SolverParams(time_limit=1e-4))
    assert not sol.optimal
    assert sol.check(inst) == []


def test_gamma_and_params_validation():
    with pytest.raises(ValueError):
        SolverParams(gamma=-1)
    with pytest.raises(ValueError):
        SolverParams(mu=0)
    assert SolverParams.preset("large").mu == 1000
    assert SolverParams.preset("small", gamma=0).gamma == 0
    with pytest.raises(ValueError):
        SolverParams.preset("huge")


def test_add_cuts_example():
    m = LinearModel()
    for i in range(3):
        m.add_variable(f"x{i}")
    add_cuts(m, (1, 0, 0), (0, 1, 1))
    nogood, interdict = m.rows
    assert (nogood.sense, nogood.rhs) == (">=", 0)
    assert nogood.coefs == {0: -1, 1: 1, 2: 1}
    assert interdict.coefs == {1: 1, 2: 1} and interdict.rhs == 1
    assert nogood.violation([1, 0, 0]) == 1
    for x in ([0, 0, 0], [1, 1, 0], [0, 0, 1], [1, 1, 1]):
        assert nogood.violation(x) == 0


def test_add_cuts_empty_follower_set():
    m = LinearModel()
    m.add_variable("x0")
    add_cuts(m, (1,), (0,))
    assert solve_mip(m).status == INFEASIBLE


def record_with(crit, status, d, lp_value):
    n = crit.model.n_vars
    lp = LpSolution(OPTIMAL, objective=lp_value, values=np.zeros(n), reduced_costs=np.array(d, float),
                    var_status=np.array(status, dtype=np.int8))
    return SubproblemRecord(crit.c, crit, lp, lp_value)


def test_fixing_rule_instances():
    inst = Instance([9, 8, 7, 6, 5, 4, 3], [1, 1, 1, 1, 1, 1, 2], [1] * 7, 3, 5)
    crit = build_crit1(inst, 6)
    n = crit.model.n_vars
    status = [BASIC] * n
    d = [0.0] * n
    status[5], d[5] = AT_LOWER, 4.0   # nonbasic x5, reduced cost 4
    status[0], d[0] = BASIC, 50.0     # basic: never fixed
    rec = record_with(crit, status, d, 10.0)
    assert fix_by_reduced_costs(rec, 13) == 1
    assert crit.model.variables[5].fixed == 0
    assert crit.model.variables[0].fixed is None


def test_fixing_gap_extremes(tiny):
    crit = build_crit1(tiny, 2)
    lp = solve_lp(crit.model)
    rec = SubproblemRecord(2, crit, lp, lp.objective)
    assert fix_by_reduced_costs(rec, math.inf) == 0
    fixed = fix_by_reduced_costs(rec, lp.objective)
    assert fixed == int(np.sum(np.isin(lp.var_status, (1, 2))))


def test_report_shape(tiny):
    rep = solve(tiny).report()
    assert rep["value"] == 5 and rep["optimal"] is True
    for key in ("cpu_time", "subproblems_step2", "crit2_solved"):
        assert key in rep["stats"]


def test_check_flags_violations(tiny):
    bad = BilevelSolution((1, 1, 0), (1, 1, 1), 3)
    problems = bad.check(tiny)
    assert len(problems) == 4
