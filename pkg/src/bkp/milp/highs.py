"""Engine backed by HiGHS through scipy, honouring the same result contract."""
from __future__ import annotations


import numpy as np
from scipy.optimize import Bounds, LinearConstraint, linprog, milp

from .model import LinearModel, ModelError
from .result import (AT_LOWER, AT_UPPER, BASIC, CUTOFF, FIXED, INFEASIBLE, NUMERICAL_FAILURE,
                     OPTIMAL, TIME_LIMIT, UNBOUNDED, LpSolution, MipResult)

_LP_STATUS = {0: OPTIMAL, 2: INFEASIBLE, 3: UNBOUNDED}


class HighsEngine:
    name = "highs"

    def solve_lp(self, model: LinearModel) -> LpSolution:
        if model.n_vars == 0:
            raise ModelError("model has no variables")
        c, A, lo, hi, lb, ub = model.arrays()
        A_ub, b_ub, A_eq, b_eq = [], [], [], []
        for i in range(model.n_rows):
            if lo[i] == hi[i]:
                A_eq.append(A[i]), b_eq.append(hi[i])
                continue
            if np.isfinite(hi[i]):
                A_ub.append(A[i]), b_ub.append(hi[i])
            if np.isfinite(lo[i]):
                A_ub.append(-A[i]), b_ub.append(-lo[i])
        res = linprog(c, A_ub=np.array(A_ub) if A_ub else None, b_ub=b_ub or None,
                      A_eq=np.array(A_eq) if A_eq else None, b_eq=b_eq or None,
                      bounds=list(zip(lb, ub)), method="highs")
        status = _LP_STATUS.get(res.status, NUMERICAL_FAILURE)
        if status != OPTIMAL:
            return LpSolution(status)
        x = res.x
        d = res.lower.marginals + res.upper.marginals
        # HiGHS does not expose the basis here; a variable sitting on a bound
        # with a dual-feasible reduced cost is reported nonbasic.
        vs = np.full(model.n_vars, BASIC, dtype=np.int8)
        for j in range(model.n_vars):
            if lb[j] == ub[j]:
                vs[j] = FIXED
            elif abs(x[j] - lb[j]) <= 1e-9 and d[j] >= -1e-9:
                vs[j] = AT_LOWER
            elif abs(x[j] - ub[j]) <= 1e-9 and d[j] <= 1e-9:
                vs[j] = AT_UPPER
        return LpSolution(OPTIMAL, objective=model.objective_constant + float(res.fun),
                          values=x, reduced_costs=d, var_status=vs,
                          iterations=int(getattr(res, "nit", 0)))

    def solve_mip(self, model: LinearModel, cutoff=None, node_limit=None,
                  deadline=None) -> MipResult:
        if model.n_vars == 0:
            raise ModelError("model has no variables")
        c, A, lo, hi, lb, ub = model.arrays()
        integrality = np.array([1 if v.kind == "binary" else 0 for v in model.variables])
        constraints = [LinearConstraint(A, lo, hi)] if model.n_rows else []
        b = model.binaries
        for presolve in (True, False):
            res = milp(c, integrality=integrality, bounds=Bounds(lb, ub), constraints=constraints,
                       options={"presolve": presolve})
            if res.status == 2:
                return MipResult(INFEASIBLE)
            if res.status == 1:
                return MipResult(TIME_LIMIT)
            if res.x is None:
                return MipResult(NUMERICAL_FAILURE)
            values = np.array(res.x, dtype=float)
            values[b] = np.round(values[b])
            # some HiGHS builds return presolve-corrupted points; trust only checked ones
            if model.max_violation(values) <= 1e-6:
                break
        else:
            return MipResult(NUMERICAL_FAILURE)
        value = model.evaluate(values)
        if model.has_integral_objective():
            value = round(value)
        if cutoff is not None and value >= cutoff:
            return MipResult(CUTOFF, nodes=1)
        return MipResult(OPTIMAL, objective=value, values=values, nodes=1)
