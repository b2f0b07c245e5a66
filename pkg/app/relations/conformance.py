"""
Output conformance between the fixed component F and the original circuit S.
"""
from typing import List

from app.core.errors import UsageError
from app.dd import Func, varset
from app.netlist.elaborate import PartitionedMachine
from app.relations.image import StateSet, image, make_schedule
from app.relations.partitions import internal_parts, output_parts


def conformance_parts(f: PartitionedMachine, s: PartitionedMachine) -> List[Func]:
    """C_j = [O^F_j == O^S_j] for each output, in S's output order"""
    if f.manager is not s.manager:
        raise UsageError("conformance needs both machines on one manager")
    f_names = sorted(out.name for out in f.outputs)
    s_names = sorted(out.name for out in s.outputs)
    if f_names != s_names:
        raise UsageError(f"output names differ: {f_names} vs {s_names}")
    return [f.output(out.name).func.iff(out.func) for out in s.outputs]


def conformance(f: PartitionedMachine, s: PartitionedMachine) -> Func:
    return f.manager.conjoin(conformance_parts(f, s))


def undefined_labels(pm: PartitionedMachine, zeta: StateSet) -> Func:
    """Labels (inputs and outputs) with no transition from any state of zeta"""
    parts = output_parts(pm) + internal_parts(pm)
    quantify = varset(pm.cs_vars)
    defined = image(parts, zeta, quantify, make_schedule(parts, quantify))
    return ~defined
