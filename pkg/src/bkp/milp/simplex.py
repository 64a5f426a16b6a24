"""Dense bounded dual simplex with an explicit basis inverse.

The LP ``min c.x  s.t.  row_lo <= A x <= row_hi,  lb <= x <= ub`` is put in
computational form ``[A, -I] (x, s) = 0`` where the logical ``s`` carries the
row bounds. Starting from the all-logical basis, every structural column is
placed at the bound its cost sign prefers, which makes the start dual
feasible; columns with a negative cost and no finite upper bound get a large
artificial bound, and ending on one means the LP is unbounded. Bound changes
(branching, fixing) keep the basis dual feasible, so the same object can be
re-solved warm.
"""
from __future__ import annotations

import numpy as np

from .result import (AT_LOWER, AT_UPPER, BASIC, FIXED, INFEASIBLE, NUMERICAL_FAILURE,
                     OPTIMAL, UNBOUNDED)

PRIMAL_TOL = 1e-9
DUAL_TOL = 1e-9
PIVOT_TOL = 1e-9
ARTIFICIAL_BOUND = 1e9
REFACTOR_EVERY = 64
VERIFY_REFACTOR = 16


class DualSimplex:
    def __init__(self, c, A, row_lo, row_hi, lb, ub):
        A = np.asarray(A, dtype=float)
        m, n = A.shape
        self.m, self.n = m, n
        self.M = np.hstack([A, -np.eye(m)])
        self.cost = np.concatenate([np.asarray(c, dtype=float), np.zeros(m)])
        self.lower = np.concatenate([np.asarray(lb, dtype=float), np.asarray(row_lo, dtype=float)])
        self.upper = np.concatenate([np.asarray(ub, dtype=float), np.asarray(row_hi, dtype=float)])
        self.artificial = np.zeros(n + m, dtype=bool)
        self.basis = np.arange(n, n + m)
        self.status = np.full(n + m, BASIC, dtype=np.int8)
        self.x = np.zeros(n + m)
        self.Binv = -np.eye(m)
        self.d = self.cost.copy()
        for j in range(n):
            self._place_nonbasic(j)
        self.iterations = 0
        self._since_refactor = 0
        self._recompute_primal()

    # -- bookkeeping ------------------------------------------------------------
    def _place_nonbasic(self, j):
        lo, hi = self.lower[j], self.upper[j]
        if lo == hi:
            self.status[j], self.x[j] = FIXED, lo
        elif self.d[j] >= 0 and np.isfinite(lo):
            self.status[j], self.x[j] = AT_LOWER, lo
        elif np.isfinite(hi):
            self.status[j], self.x[j] = AT_UPPER, hi
        elif self.d[j] < 0:
            self.upper[j] = ARTIFICIAL_BOUND
            self.artificial[j] = True
            self.status[j], self.x[j] = AT_UPPER, ARTIFICIAL_BOUND
        else:
            self.status[j], self.x[j] = AT_LOWER, lo

    def _recompute_primal(self):
        xn = self.x.copy()
        xn[self.basis] = 0.0
        self.x[self.basis] = -self.Binv @ (self.M @ xn)

    def _recompute_dual(self):
        y = self.cost[self.basis] @ self.Binv
        self.d = self.cost - y @ self.M
        self.d[self.basis] = 0.0

    def refactor(self):
        self.Binv = np.linalg.inv(self.M[:, self.basis])
        self._since_refactor = 0
        self._recompute_primal()
        self._recompute_dual()

    def save(self):
        return (self.basis.copy(), self.status.copy(), self.x.copy(), self.d.copy(),
                self.Binv.copy(), self.lower.copy(), self.upper.copy(),
                self.artificial.copy(), self._since_refactor)

    def restore(self, state):
        (basis, status, x, d, Binv, lower, upper, art, since) = state
        self.basis, self.status, self.x, self.d = basis.copy(), status.copy(), x.copy(), d.copy()
        self.Binv, self.lower, self.upper = Binv.copy(), lower.copy(), upper.copy()
        self.artificial, self._since_refactor = art.copy(), since

    def set_bounds(self, j, lo, hi):
        """Change the bounds of structural ``j``; the basis stays dual feasible."""
        self.lower[j], self.upper[j] = lo, hi
        self.artificial[j] = False
        if self.status[j] != BASIC:
            self._place_nonbasic(j)
        self._recompute_primal()

    def fix_nonbasic(self, cols, threshold):
        """Fix nonbasic columns of ``cols`` whose |reduced cost| exceeds ``threshold``."""
        st = self.status[cols]
        hit = cols[((st == AT_LOWER) | (st == AT_UPPER)) & (np.abs(self.d[cols]) > threshold)]
        self.lower[hit] = self.upper[hit] = self.x[hit]
        self.status[hit] = FIXED
        return hit.size

    # -- algorithm --------------------------------------------------------------
    def solve(self, max_iter=None):
        if max_iter is None:
            max_iter = 50 * (self.m + self.n) + 1000
        bland = False
        flips = 0
        it = 0
        while True:
            status = self._iterate(max_iter, bland)
            it += 1
            if status == "limit":
                if bland:
                    return NUMERICAL_FAILURE
                bland = True
                continue
            if status == INFEASIBLE:
                return INFEASIBLE
            # optimal on the working basis: verify with recomputed primal and
            # dual values, refactoring first if the inverse has aged
            if self._since_refactor >= VERIFY_REFACTOR or it > 1:
                self.refactor()
            else:
                self._recompute_primal()
                self._recompute_dual()
            wrong = self._dual_infeasible()
            if wrong.size:
                boxed = wrong[np.isfinite(self.lower[wrong]) & np.isfinite(self.upper[wrong])]
                if boxed.size != wrong.size or flips > 10:
                    if bland:
                        return NUMERICAL_FAILURE
                    bland = True
                for j in boxed:
                    self.status[j] = AT_UPPER if self.status[j] == AT_LOWER else AT_LOWER
                    self.x[j] = self.upper[j] if self.status[j] == AT_UPPER else self.lower[j]
                flips += 1
                self._recompute_primal()
                continue
            if self._max_primal_violation() > 1e-7:
                if it > 3:
                    return NUMERICAL_FAILURE
                continue
            if np.any(self.artificial & (self.x > 0.5 * ARTIFICIAL_BOUND)):
                return UNBOUNDED
            return OPTIMAL

    def _dual_infeasible(self):
        st, d = self.status, self.d
        bad = ((st == AT_LOWER) & (d < -1e-7)) | ((st == AT_UPPER) & (d > 1e-7))
        return np.flatnonzero(bad)

    def _max_primal_violation(self):
        if self.m == 0:
            return 0.0
        xb = self.x[self.basis]
        return float(max(0.0, np.max(self.lower[self.basis] - xb),
                         np.max(xb - self.upper[self.basis])))

    def _row_is_exact(self, r):
        """Whether row ``r`` of the updated inverse still proves infeasibility."""
        rho = self.Binv[r]
        resid = rho @ self.M[:, self.basis]
        resid[r] -= 1.0
        if np.abs(resid).max() > 1e-9:
            return False
        xn = self.x.copy()
        xn[self.basis] = 0.0
        xr = -rho @ (self.M @ xn)
        j = self.basis[r]
        return xr < self.lower[j] - PRIMAL_TOL or xr > self.upper[j] + PRIMAL_TOL

    def _iterate(self, max_iter, bland):
        M, basis, status, x = self.M, self.basis, self.status, self.x
        lower, upper = self.lower, self.upper
        done = 0
        while True:
            if self.m == 0:
                return OPTIMAL
            if done >= max_iter:
                return "limit"
            if self._since_refactor >= REFACTOR_EVERY:
                self.refactor()
            xb = x[basis]
            lo_b, hi_b = lower[basis], upper[basis]
            viol = np.maximum(lo_b - xb, xb - hi_b)
            if bland:
                cand = np.flatnonzero(viol > PRIMAL_TOL)
                if cand.size == 0:
                    return OPTIMAL
                r = int(cand[np.argmin(basis[cand])])
            else:
                if viol.max() <= PRIMAL_TOL:
                    return OPTIMAL
                norms = np.einsum("ij,ij->i", self.Binv, self.Binv)
                score = np.where(viol > PRIMAL_TOL, viol * viol / norms, -1.0)
                r = int(np.argmax(score))
            to_lower = xb[r] < lo_b[r]
            rho = self.Binv[r]
            alpha = rho @ M
            sa = alpha if to_lower else -alpha
            elig = ((status == AT_LOWER) & (sa < -PIVOT_TOL)) | ((status == AT_UPPER) & (sa > PIVOT_TOL))
            cand = np.flatnonzero(elig)
            if cand.size == 0:
                if self._since_refactor > 0 and not self._row_is_exact(r):
                    self.refactor()
                    continue
                return INFEASIBLE
            a_abs = np.abs(alpha[cand])
            ratios = np.abs(self.d[cand]) / a_abs
            best = ratios.min()
            ties = np.flatnonzero(ratios <= best + 1e-12 * (1.0 + best))
            if bland:
                q = int(cand[ties].min())
            else:
                q = int(cand[ties[np.argmax(a_abs[ties])]])
            alpha_q = self.Binv @ M[:, q]
            piv = alpha_q[r]
            if abs(piv - alpha[q]) > 1e-7 * (1.0 + abs(piv)) and self._since_refactor > 0:
                self.refactor()
                continue
            leaving = basis[r]
            theta = self.d[q] / piv
            self.d -= theta * alpha
            self.d[basis] = 0.0
            self.d[leaving] = -theta
            self.d[q] = 0.0
            target = lo_b[r] if to_lower else hi_b[r]
            delta = (xb[r] - target) / piv
            x[basis] -= delta * alpha_q
            x[q] += delta
            x[leaving] = target
            if lower[leaving] == upper[leaving]:
                status[leaving] = FIXED
            else:
                status[leaving] = AT_LOWER if to_lower else AT_UPPER
            basis[r] = q
            status[q] = BASIC
            pivot_row = self.Binv[r] / piv
            alpha_q[r] = 0.0
            self.Binv -= np.outer(alpha_q, pivot_row)
            self.Binv[r] = pivot_row
            self.iterations += 1
            self._since_refactor += 1
            done += 1

    # -- results ----------------------------------------------------------------
    def structural_values(self):
        return self.x[: self.n].copy()

    def objective(self):
        return float(self.cost[: self.n] @ self.x[: self.n])

    def structural_status(self):
        return self.status[: self.n].copy()

    def reduced_costs(self):
        return self.d[: self.n].copy()
