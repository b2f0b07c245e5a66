"""
Explicit-state reference implementation of the automaton operations and the
solving flow, independent of the decision-diagram engine
"""
from .bridge import explicit_to_table, table_to_aut_text
from .solve import net_to_table, table_solve
from .table import (
    MAX_BITS,
    OracleSizeError,
    Sink,
    TableAutomaton,
    check_size,
    table_accepts,
    table_complement,
    table_complete,
    table_contains,
    table_determinize,
    table_equivalent,
    table_expand,
    table_hide,
    table_prefix_close,
    table_product,
    table_progressive,
)

__all__ = [
    "MAX_BITS",
    "OracleSizeError",
    "Sink",
    "TableAutomaton",
    "check_size",
    "explicit_to_table",
    "net_to_table",
    "table_accepts",
    "table_complement",
    "table_complete",
    "table_contains",
    "table_determinize",
    "table_equivalent",
    "table_expand",
    "table_hide",
    "table_prefix_close",
    "table_product",
    "table_progressive",
    "table_solve",
    "table_to_aut_text",
]
