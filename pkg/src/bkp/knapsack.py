"""The follower's 0-1 knapsack KP(x): exact DP with traceback, and the LP split item."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .instance import Instance


@dataclass(frozen=True)
class ItemSet:
    """Non-interdicted items of ``instance``, increasing (efficiency) order."""

    instance: Instance
    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        if any(a >= b for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError("item indices must be strictly increasing")

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    @property
    def profits(self):
        return [self.instance.p[i] for i in self.indices]

    @property
    def weights(self):
        return [self.instance.w[i] for i in self.indices]


@dataclass(frozen=True)
class SplitInfo:
    critical: int | None
    split_profit: int
    split_weight: int
    residual: int


@dataclass(frozen=True)
class KpResult:
    value: int
    selection: tuple[int, ...]


def kp_dp(profits, weights, capacity: int) -> tuple[int, list[int]]:
    """Exact 0-1 knapsack by DP over capacities; returns (value, chosen positions)."""
    capacity = int(capacity)
    if capacity < 0:
        raise ValueError("capacity must be non-negative")
    best = np.zeros(capacity + 1, dtype=np.int64)
    n = len(profits)
    take = np.zeros((n, capacity + 1), dtype=bool)
    for k in range(n):
        wk, pk = int(weights[k]), int(profits[k])
        if wk > capacity:
            continue
        cand = best[: capacity + 1 - wk] + pk
        better = cand > best[wk:]
        take[k, wk:] = better
        best[wk:] = np.where(better, cand, best[wk:])
    chosen = []
    cap = capacity
    for k in range(n - 1, -1, -1):
        if take[k, cap]:
            chosen.append(k)
            cap -= int(weights[k])
    chosen.reverse()
    return int(best[capacity]), chosen


def follower_set(inst: Instance, x) -> ItemSet:
    if len(x) != inst.n:
        raise ValueError(f"leader vector has length {len(x)}, expected {inst.n}")
    return ItemSet(inst, [i for i in range(inst.n) if round(x[i]) == 0])


def solve_kp(items: ItemSet, capacity: int) -> KpResult:
    value, chosen = kp_dp(items.profits, items.weights, capacity)
    return KpResult(value, tuple(items.indices[k] for k in chosen))


def split_info(items: ItemSet, capacity: int) -> SplitInfo:
    """Greedy LP fill in efficiency order.

    The critical item is the last one with a positive LP value, i.e. the first
    item whose cumulative weight reaches ``capacity``; absent when every item fits.
    """
    inst = items.instance
    total_p = sum(inst.p[j] for j in items.indices)
    total_w = sum(inst.w[j] for j in items.indices)
    if total_w <= capacity:
        return SplitInfo(None, total_p, total_w, capacity - total_w)
    profit = weight = 0
    for i in items.indices:
        if weight + inst.w[i] >= capacity:
            return SplitInfo(i, profit, weight, capacity - weight)
        profit += inst.p[i]
        weight += inst.w[i]
    raise AssertionError("unreachable: total weight exceeds capacity")


def follower_response(inst: Instance, x) -> KpResult:
    """Optimal follower reply to leader vector ``x``."""
    return solve_kp(follower_set(inst, x), inst.cap_follower)
