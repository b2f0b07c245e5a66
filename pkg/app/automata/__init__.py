"""
Symbolic and explicit automata and the operations of the solving flows
"""
from .aut_format import emit_aut, parse_aut
from .containment import as_explicit, complement_det, contains, equivalent
from .determinize import SubsetIndex, SubsetState, determinize, determinize_explicit
from .dot import to_dot
from .explicit import (
    Edge,
    ExplicitAutomaton,
    ExplicitState,
    StateKind,
    complete_explicit,
    cube_string,
    cubes_to_func,
    empty_like,
    merge_edges,
    prefix_close,
    progressive,
)
from .symbolic import SymbolicAutomaton, complete, encode_explicit, expand_support, from_machine, hide, product

__all__ = [
    "Edge",
    "ExplicitAutomaton",
    "ExplicitState",
    "StateKind",
    "SubsetIndex",
    "SubsetState",
    "SymbolicAutomaton",
    "as_explicit",
    "complement_det",
    "complete",
    "complete_explicit",
    "contains",
    "cube_string",
    "cubes_to_func",
    "determinize",
    "determinize_explicit",
    "emit_aut",
    "empty_like",
    "encode_explicit",
    "equivalent",
    "expand_support",
    "from_machine",
    "hide",
    "merge_edges",
    "parse_aut",
    "prefix_close",
    "product",
    "progressive",
    "to_dot",
]
