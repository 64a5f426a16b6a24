"""Generic 0-1 MILP layer.

Every engine exposes ``solve_lp(model)`` and ``solve_mip(model, cutoff=None,
node_limit=..., deadline=None)`` returning :class:`LpSolution` and
:class:`MipResult`. The bundled engine is the default; ``"highs"`` wraps
scipy's HiGHS bindings behind the same contract.
"""
from .engine import BundledEngine
from .model import BINARY, CONTINUOUS, LinearModel, ModelError, Row, Variable
from .result import (AT_LOWER, AT_UPPER, BASIC, CUTOFF, FIXED, INFEASIBLE, NUMERICAL_FAILURE,
                     OPTIMAL, RESOURCE_EXHAUSTED, TIME_LIMIT, UNBOUNDED, LpSolution, MipResult)

_ENGINES = {"bundled": BundledEngine}


def get_engine(name_or_engine=None):
    if name_or_engine is None:
        return BundledEngine()
    if not isinstance(name_or_engine, str):
        return name_or_engine
    if name_or_engine == "highs":
        from .highs import HighsEngine
        return HighsEngine()
    try:
        return _ENGINES[name_or_engine]()
    except KeyError:
        raise ValueError(f"unknown engine {name_or_engine!r}") from None


def solve_lp(model: LinearModel, engine=None) -> LpSolution:
    return get_engine(engine).solve_lp(model)


def solve_mip(model: LinearModel, cutoff=None, engine=None, **kwargs) -> MipResult:
    return get_engine(engine).solve_mip(model, cutoff=cutoff, **kwargs)


def add_rows(model: LinearModel, rows) -> LinearModel:
    return model.add_rows(rows)


def fix_variable(model: LinearModel, var, value) -> LinearModel:
    return model.fix_variable(var, value)


__all__ = [
    "AT_LOWER", "AT_UPPER", "BASIC", "BINARY", "CONTINUOUS", "CUTOFF", "FIXED", "INFEASIBLE",
    "NUMERICAL_FAILURE", "OPTIMAL", "RESOURCE_EXHAUSTED", "TIME_LIMIT", "UNBOUNDED",
    "BundledEngine", "LinearModel", "LpSolution", "MipResult", "ModelError", "Row", "Variable",
    "add_rows", "fix_variable", "get_engine", "solve_lp", "solve_mip",
]
