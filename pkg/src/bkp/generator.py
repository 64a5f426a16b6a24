"""Reproducible random BKP instances.

Profits and both weights are uniform on [1, 100]; the follower capacity is
``ceil(INS * sum(w) / 11)`` and the leader capacity is uniform on
``[C_l - 10, C_l + 10]``. The random stream is SplitMix64 so that an instance
is fully identified by ``(n, ins, seed)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .instance import Instance, sort_by_efficiency, validate

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
# Offsets the seed of retry attempt k; odd, so distinct k give distinct states.
SUBSTREAM_STRIDE = 0xD1B54A32D192ED03
MAX_RETRIES = 100


class GenerationError(RuntimeError):
    pass


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def next_uniform(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], Lemire's multiply-high with rejection."""
        if lo > hi:
            raise ValueError(f"empty range [{lo}, {hi}]")
        span = hi - lo + 1
        if span > MASK64:
            raise ValueError("range wider than 2**64")
        prod = self.next_u64() * span
        low = prod & MASK64
        if low < span:
            threshold = ((1 << 64) - span) % span
            while low < threshold:
                prod = self.next_u64() * span
                low = prod & MASK64
        return lo + (prod >> 64)


def next_uniform(state: SplitMix64, lo: int, hi: int) -> int:
    return state.next_uniform(lo, hi)


@dataclass(frozen=True)
class GenSpec:
    n: int
    ins: int
    seed: int

    def __post_init__(self):
        if not 1 <= self.ins <= 10:
            raise ValueError(f"ins must be in 1..10, got {self.ins}")
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    @property
    def filename(self) -> str:
        return f"bkp_n{self.n}_ins{self.ins}_s{self.seed}.txt"


def follower_capacity(total_weight: int, ins: int) -> int:
    return -(-ins * total_weight // 11)


def draw_raw(spec: GenSpec, substream: int = 0) -> Instance:
    """One draw in original item order, without validation."""
    rng = SplitMix64(spec.seed + substream * SUBSTREAM_STRIDE)
    p, w, v = [], [], []
    for _ in range(spec.n):
        p.append(rng.next_uniform(1, 100))
        w.append(rng.next_uniform(1, 100))
        v.append(rng.next_uniform(1, 100))
    cap_follower = follower_capacity(sum(w), spec.ins)
    cap_leader = rng.next_uniform(cap_follower - 10, cap_follower + 10)
    return Instance(p, w, v, cap_leader, cap_follower)


def generate_raw(spec: GenSpec) -> Instance:
    """First valid draw in original item order; ``meta['substream']`` records the retry."""
    for k in range(MAX_RETRIES + 1):
        inst = draw_raw(spec, k)
        if not validate(inst):
            inst.meta.update(substream=k, spec=spec)
            return inst
    raise GenerationError(f"no valid instance for {spec} after {MAX_RETRIES} retries")


def generate(spec: GenSpec) -> Instance:
    """Valid instance in efficiency order; ``meta['permutation']`` maps back to draw order."""
    raw = generate_raw(spec)
    inst, _ = sort_by_efficiency(raw)
    inst.meta.update(substream=raw.meta["substream"], spec=spec)
    return inst
