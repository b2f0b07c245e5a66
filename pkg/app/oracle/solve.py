"""
Reference solving flow by exhaustive enumeration.
"""
import itertools
from typing import Iterable

from app.core.logging import logger
from app.netlist import Network, latch_split, simulate
from app.oracle.table import (
    TableAutomaton,
    check_size,
    table_complement,
    table_complete,
    table_determinize,
    table_expand,
    table_hide,
    table_prefix_close,
    table_product,
    table_progressive,
)


def net_to_table(n: Network) -> TableAutomaton:
    """Automaton over every latch valuation; letters are (inputs, outputs).

    Unreachable valuations are listed too; operations that explore from the
    initial state drop them.
    """
    check_size(len(n.inputs) + len(n.outputs), 1 << len(n.latches))
    order = n.gate_order()
    states = n.latch_names
    valuations = list(itertools.product((0, 1), repeat=len(states)))
    transitions = set()
    for cs in valuations:
        for bits in itertools.product((0, 1), repeat=len(n.inputs)):
            outputs, next_state = simulate(n, dict(zip(n.inputs, bits)), dict(zip(states, cs)), order)
            letter = bits + tuple(outputs[o] for o in n.outputs)
            transitions.add((cs, letter, tuple(next_state[s] for s in states)))
    labels = tuple(n.inputs) + tuple(n.output_labels())
    start = tuple(latch.init for latch in n.latches)
    return TableAutomaton(labels=labels, states=valuations, initial=start, accepting=set(valuations),
                          transitions=transitions)


def table_solve(network: Network, x_latches: Iterable[str]) -> TableAutomaton:
    """Largest prefix-closed u-progressive solution over the (v, u) labels"""
    split = latch_split(network, x_latches)
    inputs = tuple(network.inputs)
    outputs = tuple(network.output_labels())
    u, v = tuple(split.u_signals), tuple(split.v_signals)
    everything = inputs + v + u + outputs

    x = table_complement(table_determinize(table_complete(net_to_table(network))))
    x = table_expand(x, everything)
    f = table_expand(table_complete(net_to_table(split.fixed)), everything)
    x = table_product(f, x)
    x = table_hide(x, v + u)
    x = table_determinize(x)
    x = table_complete(x, kind="DCA", accepting=False)
    x = table_complement(x)
    x = table_prefix_close(x)
    x = table_progressive(x, u)
    logger.debug(f"[ORACLE] '{network.name}': {len(x.states)} states")
    return x
