from dataclasses import dataclass
from typing import List

from app.dd import Func, VarId, VarSet
from app.netlist.elaborate import PartitionedMachine
from app.relations.partitions import internal_parts, output_parts, transition_parts


@dataclass(frozen=True)
class MonolithicRelation:
    """TO(labels, cs, ns): conjunction of every transition and output part"""
    to: Func
    label_vars: VarSet
    cs_vars: List[VarId]
    ns_vars: List[VarId]


def build_monolithic(pm: PartitionedMachine) -> MonolithicRelation:
    m = pm.manager
    to = m.conjoin(transition_parts(pm) + output_parts(pm) + internal_parts(pm))
    return MonolithicRelation(to=to, label_vars=pm.label_vars, cs_vars=list(pm.cs_vars), ns_vars=list(pm.ns_vars))
