"""Brute-force bilevel optimum for small instances (ground truth for tests)."""
from __future__ import annotations

from dataclasses import dataclass

from .instance import Instance
from .knapsack import kp_dp

HARD_LIMIT_N = 20


class OracleRefused(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    value: int
    x: tuple[int, ...]
    y: tuple[int, ...]
    enumerated: int
    evaluated: int


def brute_force(inst: Instance, hard_limit_n: int = HARD_LIMIT_N) -> OracleResult:
    """Enumerate leader vectors depth-first, trying ``x_i = 1`` before ``x_i = 0``.

    Interdicting more never helps the follower, so only maximal leader vectors
    need a knapsack solve; among optimal vectors the first one reached (the
    lexicographically greatest) is returned, and that one is always maximal.
    """
    n = inst.n
    if n > hard_limit_n:
        raise OracleRefused(f"oracle refuses n={n} > {hard_limit_n}")
    p, w, v, cap = inst.p, inst.w, inst.v, inst.cap_leader
    best = [None, None, None]
    counts = [0, 0]
    x = [0] * n

    def visit(i, room, skipped_min):
        if i == n:
            counts[0] += 1
            if skipped_min <= room:
                return
            counts[1] += 1
            free = [j for j in range(n) if not x[j]]
            value, chosen = kp_dp([p[j] for j in free], [w[j] for j in free], inst.cap_follower)
            if best[0] is None or value < best[0]:
                y = [0] * n
                for k in chosen:
                    y[free[k]] = 1
                best[:] = [value, tuple(x), tuple(y)]
            return
        if v[i] <= room:
            x[i] = 1
            visit(i + 1, room - v[i], skipped_min)
            x[i] = 0
        visit(i + 1, room, min(skipped_min, v[i]))

    visit(0, cap, float("inf"))
    return OracleResult(best[0], best[1], best[2], counts[0], counts[1])
