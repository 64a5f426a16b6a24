"""Bundled engine: dense dual simplex for LPs, depth-first branch-and-bound for 0-1 MIPs."""
from __future__ import annotations

import math
import time

import numpy as np

from .model import LinearModel, ModelError
from .result import (CUTOFF, INFEASIBLE, NUMERICAL_FAILURE, OPTIMAL, RESOURCE_EXHAUSTED,
                     TIME_LIMIT, UNBOUNDED, LpSolution, MipResult)
from .simplex import DualSimplex

INTEGRALITY_TOL = 1e-6
BOUND_TOL = 1e-6
NODE_LIMIT = 10**6


def _simplex_for(model: LinearModel) -> DualSimplex:
    if model.n_vars == 0:
        raise ModelError("model has no variables")
    c, A, lo, hi, lb, ub = model.arrays()
    return DualSimplex(c, A, lo, hi, lb, ub)


class BundledEngine:
    name = "bundled"

    def solve_lp(self, model: LinearModel) -> LpSolution:
        sx = _simplex_for(model)
        status = sx.solve()
        if status != OPTIMAL:
            return LpSolution(status, iterations=sx.iterations)
        return LpSolution(
            OPTIMAL,
            objective=model.objective_constant + sx.objective(),
            values=sx.structural_values(),
            reduced_costs=sx.reduced_costs(),
            var_status=sx.structural_status(),
            iterations=sx.iterations,
        )

    def solve_mip(self, model: LinearModel, cutoff=None, node_limit=NODE_LIMIT,
                  deadline=None) -> MipResult:
        """Exact optimum below ``cutoff``; status ``cutoff`` if none exists.

        Depth-first, branching on the most fractional binary with the 0-child
        first. When the objective is integral on integer points a node is
        pruned as soon as ``ceil(bound - tol)`` cannot beat the incumbent.
        """
        sx = _simplex_for(model)
        binaries = np.array(model.binaries, dtype=int)
        integral = model.has_integral_objective()
        const = model.objective_constant
        best = math.inf if cutoff is None else float(cutoff)
        best_values = None
        nodes = 0
        root_bound = math.nan
        stack = []

        def bound_of(obj):
            return math.ceil(obj - BOUND_TOL) if integral else obj

        status = sx.solve()
        if status == UNBOUNDED:
            return MipResult(UNBOUNDED, lp_iterations=sx.iterations)
        while True:
            nodes += 1
            if status == NUMERICAL_FAILURE:
                return MipResult(NUMERICAL_FAILURE, nodes=nodes, lp_iterations=sx.iterations)
            branch_var = None
            if status == OPTIMAL:
                obj = const + sx.objective()
                if nodes == 1:
                    root_bound = obj
                if bound_of(obj) < best - (0 if integral else 1e-9):
                    if math.isfinite(best):
                        # no completion flipping these columns can beat the incumbent
                        gap = best - 1 + BOUND_TOL - obj if integral else best - 1e-9 - obj
                        sx.fix_nonbasic(binaries, gap)
                    vals = sx.x[binaries]
                    frac = np.abs(vals - np.round(vals))
                    if binaries.size == 0 or frac.max() <= INTEGRALITY_TOL:
                        values = sx.structural_values()
                        values[binaries] = np.round(values[binaries])
                        value = model.evaluate(values)
                        if integral:
                            value = round(value)
                        if value < best - (0 if integral else 1e-9):
                            best, best_values = value, values
                    else:
                        k = int(np.argmin(np.where(frac > INTEGRALITY_TOL, np.abs(vals - 0.5), 2.0)))
                        branch_var = int(binaries[k])
            if branch_var is not None:
                stack.append((sx.save(), branch_var))
                sx.set_bounds(branch_var, 0.0, 0.0)
            elif stack:
                state, j = stack.pop()
                sx.restore(state)
                sx.set_bounds(j, 1.0, 1.0)
            else:
                break
            if nodes >= node_limit:
                return self._finish(RESOURCE_EXHAUSTED, best, best_values, nodes, sx, root_bound)
            if deadline is not None and time.perf_counter() > deadline:
                return self._finish(TIME_LIMIT, best, best_values, nodes, sx, root_bound)
            status = sx.solve()
        if best_values is None:
            final = INFEASIBLE if cutoff is None else CUTOFF
        else:
            final = OPTIMAL
        return self._finish(final, best, best_values, nodes, sx, root_bound)

    @staticmethod
    def _finish(status, best, values, nodes, sx, root_bound):
        return MipResult(status, objective=best if values is not None else math.nan,
                         values=values, nodes=nodes, lp_iterations=sx.iterations,
                         root_bound=root_bound)
