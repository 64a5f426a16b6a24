"""Two-step exact algorithm for the bilevel knapsack with interdiction constraints.

Step 1 seeds the incumbent with the no-critical-item model, bounds the range
of items that can be critical, builds and LP-ranks one CRIT_2 subproblem per
candidate and runs a short heuristic pass over the most promising ones.
Step 2 walks the ranked subproblems, applies reduced-cost fixing and closes
each one with a no-good / interdiction cut loop.
"""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field


from .bounds import (CritModel, TupleGenParams, build_crit2, build_ncr, compute_tuples,
                     critical_range)
from .instance import Instance, Permutation, sort_by_efficiency, validate
from .knapsack import follower_response, kp_dp
from .milp import (AT_LOWER, AT_UPPER, OPTIMAL, TIME_LIMIT, LinearModel, LpSolution,
                   get_engine)

BOUND_TOL = 1e-6
FIX_TOL = 1e-9
MAX_CUT_ITERATIONS = 1000

PRESETS = {
    "small": dict(alpha=100, beta=100, delta=10, mu=150, gamma=2),
    "large": dict(alpha=500, beta=500, delta=20, mu=1000, gamma=5),
}


class SolverError(RuntimeError):
    pass


class _Timeout(Exception):
    pass


@dataclass(frozen=True)
class SolverParams:
    alpha: int = 100
    beta: int = 100
    delta: int = 10
    mu: int = 150
    gamma: int = 2
    time_limit: float | None = None
    fixing: bool = True
    engine: str = "bundled"

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")
        self.tuple_params  # validates alpha..mu

    @classmethod
    def preset(cls, name: str, **overrides) -> "SolverParams":
        try:
            base = dict(PRESETS[name])
        except KeyError:
            raise ValueError(f"unknown preset {name!r}") from None
        base.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**base)

    @property
    def tuple_params(self) -> TupleGenParams:
        return TupleGenParams(self.alpha, self.beta, self.delta, self.mu)


@dataclass
class SolveStats:
    wall_time: float = 0.0
    subproblems_step2: int = 0
    crit2_solves: int = 0
    cut_iterations: int = 0
    max_cut_iterations: int = 0
    lp_solves: int = 0
    mip_nodes: int = 0
    fixed_variables: int = 0
    candidates: int = 0
    critical_range: tuple[int, int] | None = None
    z_ncr: int | None = None
    z_lw: int | None = None
    certified_in_step1: bool = False
    incumbent_trace: list = field(default_factory=list)


@dataclass
class SubproblemRecord:
    c: int
    crit: CritModel
    lp: LpSolution
    lp_value: float
    status: str = "open"
    fixed: int = 0
    cut_iterations: int = 0

    @property
    def model(self) -> LinearModel:
        return self.crit.model


@dataclass
class BilevelSolution:
    x: tuple[int, ...]
    y: tuple[int, ...]
    value: int
    optimal: bool = True
    stats: SolveStats = field(default_factory=SolveStats)
    records: list = field(default_factory=list, repr=False)

    def check(self, inst: Instance) -> list[str]:
        """Constraint violations of (x, y) on ``inst`` (empty when feasible)."""
        problems = []
        if sum(v * a for v, a in zip(inst.v, self.x)) > inst.cap_leader:
            problems.append("leader capacity exceeded")
        if sum(w * b for w, b in zip(inst.w, self.y)) > inst.cap_follower:
            problems.append("follower capacity exceeded")
        if any(a + b > 1 for a, b in zip(self.x, self.y)):
            problems.append("follower packs an interdicted item")
        if sum(p * b for p, b in zip(inst.p, self.y)) != self.value:
            problems.append("value does not match the follower selection")
        return problems

    def report(self) -> dict:
        s = self.stats
        return {
            "value": self.value,
            "optimal": self.optimal,
            "x": list(self.x),
            "y": list(self.y),
            "stats": {
                "cpu_time": round(s.wall_time, 6),
                "subproblems_step2": s.subproblems_step2,
                "crit2_solved": s.crit2_solves,
                "cut_iterations": s.cut_iterations,
                "max_cut_iterations": s.max_cut_iterations,
                "candidates": s.candidates,
                "critical_range": list(s.critical_range) if s.critical_range else None,
                "z_ncr": s.z_ncr,
                "z_lw": s.z_lw,
                "lp_solves": s.lp_solves,
                "mip_nodes": s.mip_nodes,
                "fixed_variables": s.fixed_variables,
                "certified_in_step1": s.certified_in_step1,
            },
        }


def lp_bound(value: float) -> float:
    """Smallest integer objective an integral solution of a relaxation can reach."""
    return math.ceil(value - BOUND_TOL) if math.isfinite(value) else value


def fix_by_reduced_costs(record: SubproblemRecord, z_star: float) -> int:
    """Fix every nonbasic x/k variable whose |reduced cost| reaches the gap."""
    gap = z_star - record.lp_value
    if not math.isfinite(gap) or record.lp.status != OPTIMAL:
        return 0
    model = record.model
    lp = record.lp
    count = 0
    for j, var in enumerate(model.variables):
        if var.name == "pi" or var.fixed is not None:
            continue
        if lp.var_status[j] not in (AT_LOWER, AT_UPPER):
            continue
        if abs(lp.reduced_costs[j]) >= gap - FIX_TOL:
            model.fix_variable(j, int(round(lp.values[j])))
            count += 1
    record.fixed += count
    return count


def add_cuts(model: LinearModel, x_bar, y_bar) -> LinearModel:
    """Exclude ``x_bar`` and require interdicting one item of ``y_bar``."""
    ones = [i for i, a in enumerate(x_bar) if a]
    nogood = {f"x{i}": (-1 if x_bar[i] else 1) for i in range(len(x_bar))}
    model.add_row(nogood, ">=", 1 - len(ones), f"nogood{model.n_rows}")
    model.add_row({f"x{i}": 1 for i, b in enumerate(y_bar) if b}, ">=", 1,
                  f"interdict{model.n_rows}")
    return model


class _Run:
    """Mutable state of one solve on an efficiency-sorted instance."""

    def __init__(self, inst: Instance, params: SolverParams):
        self.inst = inst
        self.params = params
        self.engine = get_engine(params.engine)
        self.start = time.perf_counter()
        self.deadline = None if params.time_limit is None else self.start + params.time_limit
        self.z = math.inf
        self.x = self.y = None
        self.stats = SolveStats()
        self.records: list[SubproblemRecord] = []

    # -- helpers ----------------------------------------------------------------
    def check_time(self):
        if self.deadline is not None and time.perf_counter() > self.deadline:
            raise _Timeout

    def offer(self, value, x, y) -> bool:
        if value < self.z:
            self.z, self.x, self.y = value, tuple(int(a) for a in x), tuple(int(b) for b in y)
            self.stats.incumbent_trace.append(value)
            return True
        return False

    def evaluate_leader(self, x):
        reply = follower_response(self.inst, x)
        y = [0] * self.inst.n
        for i in reply.selection:
            y[i] = 1
        self.offer(reply.value, x, y)
        return reply.value, y

    def solve_lp(self, model):
        self.check_time()
        self.stats.lp_solves += 1
        return self.engine.solve_lp(model)

    def solve_mip(self, model, cutoff=None):
        self.check_time()
        res = self.engine.solve_mip(model, cutoff=cutoff, deadline=self.deadline)
        self.stats.mip_nodes += res.nodes
        if res.status == TIME_LIMIT:
            raise _Timeout
        return res

    def solve_crit2(self, record):
        self.stats.crit2_solves += 1
        cutoff = self.z if math.isfinite(self.z) else None
        res = self.solve_mip(record.model, cutoff=cutoff)
        if res.status != OPTIMAL:
            return None
        x_bar = [int(round(a)) for a in res.values[: self.inst.n]]
        return res.objective, x_bar

    # -- step 1 -----------------------------------------------------------------
    def step1(self):
        inst = self.inst
        ncr = self.solve_mip(build_ncr(inst))
        if ncr.status == OPTIMAL:
            x = [int(round(a)) for a in ncr.values]
            self.stats.z_ncr = int(ncr.objective)
            self.offer(int(ncr.objective), x, [1 - a for a in x])
        # LW is a 0-1 knapsack over leader weights: exact by DP
        z_lw, _ = kp_dp(inst.w, inst.v, inst.cap_leader)
        self.stats.z_lw = z_lw
        l, r = critical_range(inst, z_lw)
        self.stats.critical_range = (l, r)
        self.stats.candidates = r - l + 1
        tparams = self.params.tuple_params
        for c in range(l, r + 1):
            crit = build_crit2(inst, c, compute_tuples(inst, c, tparams))
            lp = self.solve_lp(crit.model)
            lp_value = lp.objective if lp.status == OPTIMAL else math.inf
            rec = SubproblemRecord(c, crit, lp, lp_value)
            if lp.status != OPTIMAL:
                rec.status = "pruned"
            self.records.append(rec)
        self.records.sort(key=lambda rec: (rec.lp_value, rec.c))
        if not self.records or lp_bound(self.records[0].lp_value) >= self.z:
            self.stats.certified_in_step1 = True
            for rec in self.records:
                rec.status = "pruned"
            return
        for rec in self.records[: self.params.gamma]:
            if lp_bound(rec.lp_value) >= self.z:
                continue
            found = self.solve_crit2(rec)
            if found is not None and found[0] < self.z:
                self.evaluate_leader(found[1])

    # -- step 2 -----------------------------------------------------------------
    def step2(self):
        if self.stats.certified_in_step1:
            return
        for pos, rec in enumerate(self.records):
            if lp_bound(rec.lp_value) >= self.z:
                for later in self.records[pos:]:
                    later.status = "pruned"
                return
            self.stats.subproblems_step2 += 1
            if self.params.fixing:
                self.stats.fixed_variables += fix_by_reduced_costs(rec, self.z)
            self.solve_subproblem(rec)

    def solve_subproblem(self, rec: SubproblemRecord):
        while True:
            found = self.solve_crit2(rec)
            if found is None or found[0] >= self.z:
                break
            rec.cut_iterations += 1
            self.stats.cut_iterations += 1
            if rec.cut_iterations > MAX_CUT_ITERATIONS:
                raise SolverError(f"cut loop on item {rec.c} exceeded {MAX_CUT_ITERATIONS} rounds")
            x_bar = found[1]
            _, y_bar = self.evaluate_leader(x_bar)
            add_cuts(rec.model, x_bar, y_bar)
        rec.status = "exhausted"
        self.stats.max_cut_iterations = max(self.stats.max_cut_iterations, rec.cut_iterations)

    def fallback(self):
        """Greedy maximal interdiction, used only when time runs out with no incumbent."""
        inst = self.inst
        room = inst.cap_leader
        x = [0] * inst.n
        for i in sorted(range(inst.n), key=lambda i: (-inst.p[i], i)):
            if inst.v[i] <= room:
                x[i] = 1
                room -= inst.v[i]
        self.evaluate_leader(x)

    def incumbent(self, optimal=True) -> BilevelSolution | None:
        if self.x is None:
            return None
        self.stats.wall_time = time.perf_counter() - self.start
        return BilevelSolution(self.x, self.y, int(self.z), optimal, self.stats, self.records)


def _sorted_or_raise(inst: Instance) -> tuple[Instance, Permutation]:
    problems = validate(inst)
    if problems:
        raise SolverError("invalid instance: " + "; ".join(problems))
    return sort_by_efficiency(inst)


def step1(inst: Instance, params: SolverParams | None = None):
    """Run Step 1 only on an efficiency-sorted instance.

    Returns ``(incumbent or None, L)`` where ``L`` is the list of subproblem
    records ranked by LP value (empty when Step 1 already certifies optimality).
    """
    params = params or SolverParams()
    if not inst.is_sorted():
        raise SolverError("step1 expects an efficiency-sorted instance")
    run = _Run(inst, params)
    run.step1()
    L = [] if run.stats.certified_in_step1 else run.records
    return run.incumbent(), L


def solve(inst: Instance, params: SolverParams | None = None) -> BilevelSolution:
    """Optimal leader strategy and follower reply, in the caller's item order."""
    params = params or SolverParams()
    sorted_inst, perm = _sorted_or_raise(inst)
    run = _Run(sorted_inst, params)
    optimal = True
    try:
        run.step1()
        run.step2()
    except _Timeout:
        optimal = False
        if run.x is None:
            run.fallback()
    sol = run.incumbent(optimal)
    if sol is None:
        raise SolverError("no feasible leader strategy found")
    sol.x = tuple(perm.to_original(list(sol.x)))
    sol.y = tuple(perm.to_original(list(sol.y)))
    return sol


def stats_dict(stats: SolveStats) -> dict:
    return asdict(stats)
