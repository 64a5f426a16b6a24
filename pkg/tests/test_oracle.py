import itertools

import pytest

from bkp.bounds import build_ncr
from bkp.generator import GenerationError, GenSpec, generate, generate_raw
from bkp.instance import Instance, sort_by_efficiency
from bkp.knapsack import follower_response
from bkp.milp import OPTIMAL, solve_mip
from bkp.oracle import OracleRefused, brute_force


def naive(inst):
    """Every leader vector, feasible ones only, lexicographically greatest optimum."""
    best = None
    for x in itertools.product((1, 0), repeat=inst.n):
        if sum(a * v for a, v in zip(x, inst.v)) > inst.cap_leader:
            continue
        val = follower_response(inst, x).value
        if best is None or val < best[0]:
            best = (val, x)
    return best


def test_example(tiny):
    res = brute_force(tiny)
    assert res.value == 5 and res.x == (1, 0, 0) and res.y == (0, 1, 0)
    assert res.enumerated == 4


def test_full_interdiction(tiny):
    inst = Instance(tiny.p, tiny.w, tiny.v, 6, tiny.cap_follower)
    assert brute_force(inst).value == 0


@pytest.mark.parametrize("v, cu, w, cl, expected", [(1, 1, 2, 5, 0), (3, 2, 2, 5, 7), (3, 2, 9, 5, 0)])
def test_single_item(v, cu, w, cl, expected):
    assert brute_force(Instance([7], [w], [v], cu, cl)).value == expected


def test_refuses_large_n():
    inst = Instance([1] * 21, [1] * 21, [1] * 21, 5, 5)
    with pytest.raises(OracleRefused):
        brute_force(inst)
    assert brute_force(Instance([1] * 3, [1] * 3, [1] * 3, 1, 1), hard_limit_n=3).value == 1


def test_against_naive_enumeration():
    for seed in range(6):
        for ins in (2, 5, 8):
            try:
                inst = generate(GenSpec(9, ins, seed))
            except GenerationError:
                continue
            res = brute_force(inst)
            value, x = naive(inst)
            assert (res.value, res.x) == (value, x)
            assert follower_response(inst, res.x).value == res.value
            assert sum(p for p, b in zip(inst.p, res.y) if b) == res.value
            assert all(a + b <= 1 for a, b in zip(res.x, res.y))


def test_invariant_under_sorting_and_below_ncr():
    for seed in range(8):
        raw = generate_raw(GenSpec(12, 3 + seed, seed))
        s, _ = sort_by_efficiency(raw)
        value = brute_force(raw).value
        assert brute_force(s).value == value
        ncr = solve_mip(build_ncr(s))
        if ncr.status == OPTIMAL:
            assert value <= ncr.objective
