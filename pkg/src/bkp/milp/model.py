"""Linear model container for 0-1 minimization problems."""
from __future__ import annotations

import copy
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

BINARY = "binary"
CONTINUOUS = "continuous"
SENSES = ("<=", "==", ">=")


class ModelError(ValueError):
    """Unknown variable, bad sense or out-of-range fixing value."""


@dataclass
class Variable:
    name: str
    kind: str
    cost: float = 0
    upper: float = math.inf
    fixed: float | None = None

    @property
    def lb(self) -> float:
        return 0.0 if self.fixed is None else float(self.fixed)

    @property
    def ub(self) -> float:
        return float(self.upper) if self.fixed is None else float(self.fixed)


@dataclass
class Row:
    coefs: dict[int, float]
    sense: str
    rhs: float
    name: str = ""

    def activity(self, values) -> float:
        return sum(a * values[j] for j, a in self.coefs.items())

    def violation(self, values) -> float:
        act = self.activity(values)
        if self.sense == "<=":
            return max(0.0, act - self.rhs)
        if self.sense == ">=":
            return max(0.0, self.rhs - act)
        return abs(act - self.rhs)


class LinearModel:
    """Minimize ``objective_constant + sum(cost_j x_j)`` over linear rows.

    Binary variables live in [0, 1]; continuous ones in [0, upper]. Integer
    coefficients are kept as Python ints so the model stays exact until it is
    handed to a floating point engine.
    """

    def __init__(self, name: str = "model"):
        self.name = name
        self.variables: list[Variable] = []
        self.rows: list[Row] = []
        self.objective_constant = 0
        self.integral_objective: bool | None = None
        self._index: dict[str, int] = {}
        self._version = 0
        self._cache = None

    # -- construction --------------------------------------------------------
    def add_variable(self, name: str, kind: str = BINARY, cost=0, upper=None) -> int:
        if name in self._index:
            raise ModelError(f"duplicate variable {name!r}")
        if kind not in (BINARY, CONTINUOUS):
            raise ModelError(f"unknown variable kind {kind!r}")
        ub = 1 if kind == BINARY else (math.inf if upper is None else upper)
        self.variables.append(Variable(name, kind, cost, ub))
        self._index[name] = len(self.variables) - 1
        self._touch()
        return len(self.variables) - 1

    def index(self, var) -> int:
        if isinstance(var, (int, np.integer)):
            if not 0 <= var < len(self.variables):
                raise ModelError(f"no variable with index {var}")
            return int(var)
        try:
            return self._index[var]
        except KeyError:
            raise ModelError(f"unknown variable {var!r}") from None

    def set_cost(self, var, cost) -> None:
        self.variables[self.index(var)].cost = cost
        self._touch()

    def add_row(self, coefs: Mapping, sense: str, rhs, name: str = "") -> int:
        if sense not in SENSES:
            raise ModelError(f"unknown sense {sense!r}")
        merged: dict[int, float] = {}
        for var, a in coefs.items():
            j = self.index(var)
            merged[j] = merged.get(j, 0) + a
        self.rows.append(Row({j: a for j, a in merged.items() if a != 0}, sense, rhs,
                             name or f"r{len(self.rows)}"))
        self._touch()
        return len(self.rows) - 1

    def add_rows(self, rows: Iterable) -> "LinearModel":
        """Append ``(coefs, sense, rhs)`` or ``(coefs, sense, rhs, name)`` tuples."""
        for row in rows:
            self.add_row(*row)
        return self

    def fix_variable(self, var, value) -> "LinearModel":
        j = self.index(var)
        v = self.variables[j]
        if v.kind == BINARY and value not in (0, 1):
            raise ModelError(f"binary {v.name} can only be fixed to 0 or 1, got {value}")
        if not 0 <= value <= v.upper:
            raise ModelError(f"value {value} outside the bounds of {v.name}")
        v.fixed = value
        self._touch()
        return self

    def unfix_variable(self, var) -> "LinearModel":
        self.variables[self.index(var)].fixed = None
        self._touch()
        return self

    def copy(self) -> "LinearModel":
        dup = copy.deepcopy(self)
        dup._cache = None
        return dup

    def _touch(self):
        self._version += 1
        self._cache = None

    # -- queries --------------------------------------------------------------
    @property
    def n_vars(self) -> int:
        return len(self.variables)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def names(self) -> list[str]:
        return [v.name for v in self.variables]

    @property
    def binaries(self) -> list[int]:
        return [j for j, v in enumerate(self.variables) if v.kind == BINARY]

    def has_integral_objective(self) -> bool:
        """Whether every integer-feasible point has an integral objective value.

        Builders may assert this through ``integral_objective`` (e.g. when a
        continuous variable is pinned to an integral max); otherwise it is
        inferred from integral costs on binaries and zero costs elsewhere.
        """
        if self.integral_objective is not None:
            return self.integral_objective
        if not float(self.objective_constant).is_integer():
            return False
        for v in self.variables:
            if v.cost == 0:
                continue
            if v.kind != BINARY or not float(v.cost).is_integer():
                return False
        return True

    def arrays(self):
        """Dense ``(c, A, row_lo, row_hi, lb, ub)`` float arrays (cached until mutated)."""
        if self._cache is None:
            n, m = self.n_vars, self.n_rows
            c = np.array([float(v.cost) for v in self.variables])
            A = np.zeros((m, n))
            lo = np.full(m, -np.inf)
            hi = np.full(m, np.inf)
            for i, row in enumerate(self.rows):
                for j, a in row.coefs.items():
                    A[i, j] = a
                if row.sense in ("<=", "=="):
                    hi[i] = row.rhs
                if row.sense in (">=", "=="):
                    lo[i] = row.rhs
            lb = np.array([v.lb for v in self.variables])
            ub = np.array([v.ub for v in self.variables])
            self._cache = (c, A, lo, hi, lb, ub)
        return self._cache

    def evaluate(self, values) -> float:
        return self.objective_constant + sum(v.cost * values[j]
                                             for j, v in enumerate(self.variables) if v.cost)

    def max_violation(self, values) -> float:
        worst = 0.0
        for j, v in enumerate(self.variables):
            worst = max(worst, v.lb - values[j], values[j] - v.ub)
        for row in self.rows:
            worst = max(worst, row.violation(values))
        return worst

    def values_by_name(self, values) -> dict[str, float]:
        return {v.name: values[j] for j, v in enumerate(self.variables)}

    # -- export ---------------------------------------------------------------
    def to_lp_format(self) -> str:
        """CPLEX LP text, for cross-checking with external solvers."""

        def expr(items):
            out = []
            for j, a in items:
                if a == 0:
                    continue
                sign = "-" if a < 0 else "+"
                mag = abs(a)
                coef = "" if mag == 1 else f"{mag:g} "
                out.append(f"{sign} {coef}{self.variables[j].name}")
            if not out:
                return "0 " + (self.variables[0].name if self.variables else "")
            text = " ".join(out)
            return text[2:] if text.startswith("+ ") else text

        lines = [f"\\ {self.name}"]
        if self.objective_constant:
            lines.append(f"\\ objective constant {self.objective_constant:g}")
        lines.append("Minimize")
        lines.append(" obj: " + expr((j, v.cost) for j, v in enumerate(self.variables)))
        lines.append("Subject To")
        for row in self.rows:
            op = {"<=": "<=", ">=": ">=", "==": "="}[row.sense]
            lines.append(f" {row.name}: {expr(sorted(row.coefs.items()))} {op} {row.rhs:g}")
        lines.append("Bounds")
        for v in self.variables:
            if v.fixed is not None:
                lines.append(f" {v.name} = {v.fixed:g}")
            elif v.kind == CONTINUOUS:
                ub = "+inf" if math.isinf(v.upper) else f"{v.upper:g}"
                lines.append(f" 0 <= {v.name} <= {ub}")
        bins = [v.name for v in self.variables if v.kind == BINARY]
        if bins:
            lines.append("Binaries")
            lines.append(" " + " ".join(bins))
        lines.append("End")
        return "\n".join(lines) + "\n"
