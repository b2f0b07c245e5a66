"""
Decision-diagram engine
"""
from .manager import (
    Assignment,
    BINARY_OPS,
    DEFAULT_NODE_LIMIT,
    Func,
    Manager,
    VarId,
    VarSet,
    new_manager,
    varset,
)

__all__ = [
    "Assignment",
    "BINARY_OPS",
    "DEFAULT_NODE_LIMIT",
    "Func",
    "Manager",
    "VarId",
    "VarSet",
    "new_manager",
    "varset",
]
