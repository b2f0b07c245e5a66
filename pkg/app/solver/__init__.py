"""
Complete sequential flexibility: problem setup, the two solving flows and
solution checks
"""
from .csf import Csf, CsfStats
from .monolithic import solve_monolithic
from .partitioned import Routing, solve_partitioned, trim_on_violation
from .problem import Problem, build_problem
from .verify import (
    VerificationContext,
    VerificationResult,
    add_edge_to_universal,
    compose,
    find_maximality_violations,
    verify_solution,
)

FLOWS = ("partitioned", "monolithic")

__all__ = [
    "Csf",
    "CsfStats",
    "FLOWS",
    "Problem",
    "Routing",
    "VerificationContext",
    "VerificationResult",
    "add_edge_to_universal",
    "build_problem",
    "compose",
    "find_maximality_violations",
    "solve_monolithic",
    "solve_partitioned",
    "trim_on_violation",
    "verify_solution",
]
