from typing import List

from app.dd import Func
from app.netlist.elaborate import OutputFunction, PartitionedMachine


def _equivalences(pm: PartitionedMachine, functions: List[OutputFunction]) -> List[Func]:
    m = pm.manager
    return [m.var(out.var).iff(out.func) for out in functions]


def transition_parts(pm: PartitionedMachine) -> List[Func]:
    """[ns_k == T_k(i, cs)] per latch"""
    m = pm.manager
    return [m.var(ns).iff(t) for ns, t in zip(pm.ns_vars, pm.next_state)]


def output_parts(pm: PartitionedMachine) -> List[Func]:
    """[o_j == O_j(i, cs)] per primary output"""
    return _equivalences(pm, pm.outputs)


def internal_parts(pm: PartitionedMachine) -> List[Func]:
    """[u_j == U_j(i, v, cs)] per internal output"""
    return _equivalences(pm, pm.internal_outputs)
