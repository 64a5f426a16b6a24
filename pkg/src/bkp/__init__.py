"""Exact solver for the bilevel knapsack with interdiction constraints."""
from .bounds import (CritModel, TupleConstraint, TupleGenParams, build_crit1, build_crit2,
                     build_lw, build_ncr, compute_tuples, critical_range)
from .generator import GenerationError, GenSpec, SplitMix64, generate, generate_raw
from .instance import (Instance, InstanceFormatError, Permutation, load, read_instance, save,
                       sort_by_efficiency, validate, write_instance)
from .knapsack import follower_response, kp_dp, solve_kp, split_info
from .oracle import OracleRefused, OracleResult, brute_force
from .solver import (BilevelSolution, SolverError, SolverParams, SubproblemRecord, add_cuts,
                     fix_by_reduced_costs, solve, step1)

__version__ = "0.1.0"

__all__ = [
    "BilevelSolution", "CritModel", "GenSpec", "GenerationError", "Instance",
    "InstanceFormatError", "OracleRefused", "OracleResult", "Permutation", "SolverError",
    "SolverParams", "SplitMix64", "SubproblemRecord", "TupleConstraint", "TupleGenParams",
    "add_cuts", "brute_force", "build_crit1", "build_crit2", "build_lw", "build_ncr",
    "compute_tuples", "critical_range", "fix_by_reduced_costs", "follower_response", "generate",
    "generate_raw", "kp_dp", "load", "read_instance", "save", "solve", "solve_kp",
    "sort_by_efficiency", "split_info", "step1", "validate", "write_instance",
]
