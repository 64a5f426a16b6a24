"""Lower-bound models for the bilevel knapsack and the tuple-constraint generator.

All builders expect an instance in efficiency order and use 0-based item
indices. Variables are named ``x{i}`` (interdiction of item i), ``k{j}``
(residual follower capacity exactly j when the guessed critical item is
reached, j = 1..w_c) and ``pi`` (profit the follower can add on top of the
split solution).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .instance import Instance
from .milp import BINARY, CONTINUOUS, LinearModel


@dataclass(frozen=True)
class TupleGenParams:
    alpha: int = 100
    beta: int = 100
    delta: int = 10
    mu: int = 150

    def __post_init__(self):
        for name in ("alpha", "beta", "delta", "mu"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


@dataclass(frozen=True)
class TupleConstraint:
    """Items removed from (index < c) or added to (index >= c) the split solution."""

    members: tuple[int, ...]
    profit: int
    weight: int

    @classmethod
    def of(cls, inst: Instance, c: int, members) -> "TupleConstraint":
        members = tuple(sorted(members))
        sign = [-1 if i < c else 1 for i in members]
        return cls(members,
                   sum(s * inst.p[i] for s, i in zip(sign, members)),
                   sum(s * inst.w[i] for s, i in zip(sign, members)))

    def row(self, wc: int):
        """Coefficients of ``pi - p(sum k_j, j >= max(1, w)) + p sum x_i >= 0``."""
        coefs = {"pi": 1}
        for j in range(max(1, self.weight), wc + 1):
            coefs[f"k{j}"] = -self.profit
        for i in self.members:
            coefs[f"x{i}"] = self.profit
        return coefs, ">=", 0


@dataclass
class CritModel:
    c: int
    model: LinearModel
    n_items: int
    tuples: list[TupleConstraint] = field(default_factory=list)

    @property
    def x_names(self):
        return [f"x{i}" for i in range(self.n_items)]


def _x_model(inst: Instance, name: str) -> LinearModel:
    model = LinearModel(name)
    for i in range(inst.n):
        model.add_variable(f"x{i}", BINARY)
    return model


def _leader_row(inst: Instance):
    return {f"x{i}": inst.v[i] for i in range(inst.n)}, "<=", inst.cap_leader, "leader_cap"


def build_ncr(inst: Instance) -> LinearModel:
    """No critical item: the follower packs every item left free."""
    model = _x_model(inst, "NCR")
    for i in range(inst.n):
        model.set_cost(f"x{i}", -inst.p[i])
    model.objective_constant = sum(inst.p)
    model.add_row(*_leader_row(inst))
    model.add_row({f"x{i}": inst.w[i] for i in range(inst.n)}, ">=",
                  sum(inst.w) - inst.cap_follower, "follower_fits")
    return model


def build_lw(inst: Instance) -> LinearModel:
    """Largest follower weight the leader can interdict, as ``min -sum w_i x_i``."""
    model = _x_model(inst, "LW")
    for i in range(inst.n):
        model.set_cost(f"x{i}", -inst.w[i])
    model.add_row(*_leader_row(inst))
    return model


def critical_range(inst: Instance, z_lw: int) -> tuple[int, int]:
    """First and last items that can be critical for some leader strategy."""
    prefix = 0
    l = r = None
    for j, wj in enumerate(inst.w):
        prefix += wj
        if l is None and prefix >= inst.cap_follower:
            l = j
        if prefix >= inst.cap_follower + z_lw:
            r = j
            break
    if l is None:
        raise ValueError("total follower weight does not exceed the follower capacity")
    return l, (inst.n - 1 if r is None else r)


def build_crit1(inst: Instance, c: int) -> CritModel:
    """Cheapest split solution when item ``c`` is forced to be critical."""
    wc = inst.w[c]
    model = _x_model(inst, f"CRIT1({c})")
    for j in range(1, wc + 1):
        model.add_variable(f"k{j}", BINARY)
    for i in range(c):
        model.set_cost(f"x{i}", -inst.p[i])
    model.objective_constant = sum(inst.p[:c])
    model.add_row(*_leader_row(inst))
    coefs = {f"x{i}": -inst.w[i] for i in range(c)}
    coefs.update({f"k{j}": j for j in range(1, wc + 1)})
    model.add_row(coefs, "==", inst.cap_follower - sum(inst.w[:c]), "critical_weight")
    model.add_row({f"k{j}": 1 for j in range(1, wc + 1)}, "==", 1, "one_residual")
    model.add_row({f"x{c}": 1}, "==", 0, "critical_free")
    model.integral_objective = True
    return CritModel(c, model, inst.n, [])


def _enumerate(pool, inst: Instance, cap: int, max_weight=None):
    """Subsets of ``pool`` by increasing size (combinations order), at most ``cap`` kept."""
    out = []
    for size in range(len(pool) + 1):
        for subset in combinations(pool, size):
            wt = sum(inst.w[i] for i in subset)
            if max_weight is not None and wt > max_weight:
                continue
            out.append((subset, sum(inst.p[i] for i in subset), wt))
            if len(out) >= cap:
                return out
    return out


def compute_tuples(inst: Instance, c: int, params: TupleGenParams) -> list[TupleConstraint]:
    a = max(0, c - params.delta)
    b = min(c + params.delta, inst.n - 1)
    backward = _enumerate(list(range(c - 1, a - 1, -1)), inst, params.alpha)
    w_max = max(wt for _, _, wt in backward)
    forward = _enumerate(list(range(c, b + 1)), inst, params.beta, max_weight=w_max)
    backward.sort(key=lambda s: s[1])
    forward.sort(key=lambda s: -s[1])
    wc = inst.w[c]
    top_forward = forward[0][1]
    tuples: list[TupleConstraint] = []
    seen = set()
    for bset, bp, bw in backward:
        if top_forward - bp <= 0:
            break
        for fset, fp, fw in forward:
            gain = fp - bp
            if gain <= 0:
                break
            if fw - bw > wc:
                continue
            members = tuple(sorted(bset + fset))
            if members in seen:
                continue
            seen.add(members)
            tuples.append(TupleConstraint(members, gain, fw - bw))
            if len(tuples) >= params.mu:
                break
        if len(tuples) >= params.mu:
            break
    if (c,) not in seen:
        tuples.append(TupleConstraint((c,), inst.p[c], wc))
    return tuples


def build_crit2(inst: Instance, c: int, tuples) -> CritModel:
    """CRIT_1 rows plus ``pi`` bounded below by every tuple improvement."""
    crit = build_crit1(inst, c)
    model = crit.model
    model.name = f"CRIT2({c})"
    model.add_variable("pi", CONTINUOUS, cost=1)
    wc = inst.w[c]
    kept = []
    seen = set()
    for t in tuples:
        if t.members in seen:
            continue
        seen.add(t.members)
        kept.append(t)
        model.add_row(*t.row(wc), f"tuple{len(kept)}")
    # pi is then the max of integral terms, so integer points have integral value
    model.integral_objective = True
    crit.tuples = kept
    return crit
