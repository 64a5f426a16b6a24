from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
NUMERICAL_FAILURE = "numerical-failure"
CUTOFF = "cutoff"
RESOURCE_EXHAUSTED = "resource-exhausted"
TIME_LIMIT = "time-limit"

# nonbasic status codes reported per structural variable
BASIC, AT_LOWER, AT_UPPER, FIXED = 0, 1, 2, 3


@dataclass
class LpSolution:
    """LP relaxation result.

    ``reduced_costs`` follow the minimization convention: a variable at its
    lower bound has a non-negative reduced cost, one at its upper bound a
    non-positive one, and basic variables have zero.
    """

    status: str
    objective: float = float("nan")
    values: np.ndarray = field(default_factory=lambda: np.zeros(0))
    reduced_costs: np.ndarray = field(default_factory=lambda: np.zeros(0))
    var_status: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int8))
    iterations: int = 0

    @property
    def nonbasic(self) -> np.ndarray:
        return self.var_status != BASIC


@dataclass
class MipResult:
    status: str
    objective: float = float("nan")
    values: np.ndarray | None = None
    nodes: int = 0
    lp_iterations: int = 0
    root_bound: float = float("nan")

    @property
    def has_solution(self) -> bool:
        return self.values is not None
