"""BKP instance datum: validation, efficiency ordering and the text file format."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key

import numpy as np


class InstanceFormatError(ValueError):
    """Raised when an instance file cannot be parsed."""


@dataclass(frozen=True)
class Instance:
    """Items with follower profit ``p``, follower weight ``w`` and leader weight ``v``.

    Indices are 0-based. ``cap_leader`` is the leader capacity C_u and
    ``cap_follower`` the follower capacity C_l.
    """

    p: tuple[int, ...]
    w: tuple[int, ...]
    v: tuple[int, ...]
    cap_leader: int
    cap_follower: int
    meta: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        for name in ("p", "w", "v"):
            object.__setattr__(self, name, tuple(int(a) for a in getattr(self, name)))
        if not len(self.p) == len(self.w) == len(self.v):
            raise ValueError("p, w and v must have the same length")
        object.__setattr__(self, "cap_leader", int(self.cap_leader))
        object.__setattr__(self, "cap_follower", int(self.cap_follower))

    @property
    def n(self) -> int:
        return len(self.p)

    def arrays(self):
        return (np.array(self.p, dtype=np.int64), np.array(self.w, dtype=np.int64),
                np.array(self.v, dtype=np.int64))

    def is_sorted(self) -> bool:
        return all(self.p[i] * self.w[i + 1] >= self.p[i + 1] * self.w[i]
                   for i in range(self.n - 1))


@dataclass(frozen=True)
class Permutation:
    """``forward[i]`` is the sorted position of original item i; ``backward`` is its inverse."""

    forward: tuple[int, ...]
    backward: tuple[int, ...]

    @classmethod
    def from_order(cls, order) -> "Permutation":
        """Build from ``order[k]`` = original index of the item placed at position k."""
        backward = tuple(int(i) for i in order)
        forward = [0] * len(backward)
        for pos, orig in enumerate(backward):
            forward[orig] = pos
        return cls(tuple(forward), backward)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)), tuple(range(n)))

    def to_original(self, values):
        """Map a per-item vector in sorted order back to original item order."""
        out = [None] * len(values)
        for pos, orig in enumerate(self.backward):
            out[orig] = values[pos]
        return out

    def to_sorted(self, values):
        return [values[orig] for orig in self.backward]


def validate(inst: Instance) -> list[str]:
    """Return the list of violated instance assumptions (1-based item labels)."""
    report = []
    for name, seq in (("p", inst.p), ("w", inst.w), ("v", inst.v)):
        for i, a in enumerate(seq):
            if a < 1:
                report.append(f"{name}_{i + 1} >= 1 violated")
    for i, vi in enumerate(inst.v):
        if not vi < inst.cap_leader:
            report.append(f"v_{i + 1} < C_u violated")
    for i, wi in enumerate(inst.w):
        if not wi < inst.cap_follower:
            report.append(f"w_{i + 1} < C_l violated")
    if not sum(inst.v) > inst.cap_leader:
        report.append("Σv_i > C_u violated")
    if not sum(inst.w) > inst.cap_follower:
        report.append("Σw_i > C_l violated")
    return report


def sort_by_efficiency(inst: Instance) -> tuple[Instance, Permutation]:
    """Reorder items by non-increasing p/w; ties keep the original index order."""

    def cmp(i, j):
        lhs, rhs = inst.p[i] * inst.w[j], inst.p[j] * inst.w[i]
        if lhs != rhs:
            return -1 if lhs > rhs else 1
        return i - j

    order = sorted(range(inst.n), key=cmp_to_key(cmp))
    perm = Permutation.from_order(order)
    sorted_inst = Instance(
        p=[inst.p[i] for i in order],
        w=[inst.w[i] for i in order],
        v=[inst.v[i] for i in order],
        cap_leader=inst.cap_leader,
        cap_follower=inst.cap_follower,
        meta=dict(inst.meta, permutation=perm),
    )
    return sorted_inst, perm


def read_instance(text: str) -> Instance:
    lines = [ln.strip() for ln in text.splitlines()]
    while lines and not lines[-1]:
        lines.pop()

    def ints(k, expected, what):
        if k >= len(lines):
            raise InstanceFormatError(f"{what}: missing line")
        parts = lines[k].split()
        if len(parts) != expected:
            raise InstanceFormatError(f"{what}: expected {expected} fields, got {len(parts)}")
        try:
            return [int(a) for a in parts]
        except ValueError:
            raise InstanceFormatError(f"{what}: non-integer field in {lines[k]!r}") from None

    (n,) = ints(0, 1, "line 1")
    if n < 1:
        raise InstanceFormatError("line 1: item count must be positive")
    cap_leader, cap_follower = ints(1, 2, "line 2")
    p, w, v = [], [], []
    for i in range(n):
        pi, wi, vi = ints(2 + i, 3, f"row {i + 1}")
        if min(pi, wi, vi) < 1:
            raise InstanceFormatError(f"row {i + 1}: profits and weights must be positive")
        p.append(pi)
        w.append(wi)
        v.append(vi)
    if len(lines) - 2 != n:
        raise InstanceFormatError(f"expected {n} item rows, got {len(lines) - 2}")
    return Instance(p, w, v, cap_leader, cap_follower)


def write_instance(inst: Instance) -> str:
    rows = [str(inst.n), f"{inst.cap_leader} {inst.cap_follower}"]
    rows += [f"{a} {b} {c}" for a, b, c in zip(inst.p, inst.w, inst.v)]
    return "\n".join(rows) + "\n"


def load(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return read_instance(fh.read())


def save(inst: Instance, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(write_instance(inst))
