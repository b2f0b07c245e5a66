"""
Problem construction: one manager holding F, S and the shared labels.

Variable order: primary inputs, v, u, primary outputs, then interleaved
(cs, ns) pairs with F's latches before S's.
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from app.core.logging import logger
from app.core.metrics import metrics
from app.dd import DEFAULT_NODE_LIMIT, Manager, VarId, VarSet, varset
from app.netlist import Network, PartitionedMachine, SplitResult, cs_name, elaborate, latch_split, ns_name, output_label
from app.relations import transition_parts

F_PREFIX = "f."
S_PREFIX = "s."
XP_PREFIX = "x."


@dataclass
class Problem:
    manager: Manager
    network: Network
    split: SplitResult
    f: PartitionedMachine
    s: PartitionedMachine
    i_vars: List[VarId]
    v_vars: List[VarId]
    u_vars: List[VarId]
    o_vars: List[VarId]

    @property
    def name(self) -> str:
        return self.network.name

    @property
    def roles(self) -> Dict[str, VarSet]:
        return {
            "i": varset(self.i_vars),
            "v": varset(self.v_vars),
            "u": varset(self.u_vars),
            "o": varset(self.o_vars),
        }

    @property
    def solution_labels(self) -> VarSet:
        return varset(self.u_vars) | varset(self.v_vars)


def label_layout(network: Network, split: SplitResult) -> List[str]:
    return (list(network.inputs) + list(split.v_signals) + list(split.u_signals)
            + network.output_labels())


def state_layout(network: Network, prefix: str) -> List[str]:
    names = []
    for state in network.latch_names:
        names += [cs_name(prefix, state), ns_name(prefix, state)]
    return names


def elaborate_component(network: Network, m: Manager, prefix: str, inputs: Iterable[str],
                        outputs: Dict[str, str], internal: Iterable[str] = ()) -> PartitionedMachine:
    """Elaborate `network` on `m`; `outputs` maps output signals to label names"""
    var_map = {s: m.id_of(s) for s in inputs}
    var_map.update({s: m.id_of(cs_name(prefix, s)) for s in network.latch_names})
    ns_map = {s: m.id_of(ns_name(prefix, s)) for s in network.latch_names}
    output_map = {o: m.id_of(label) for o, label in outputs.items()}
    return elaborate(network, m, var_map, ns_map, output_map, internal)


def machines_on(m: Manager, network: Network, split: SplitResult) -> Tuple[PartitionedMachine, PartitionedMachine]:
    """(F, S) elaborated on a manager that already holds the problem layout"""
    out_labels = {o: output_label(network.inputs, o) for o in network.outputs}
    f_outputs = dict(out_labels)
    f_outputs.update({u: u for u in split.u_signals})
    f = elaborate_component(split.fixed, m, F_PREFIX, split.fixed.inputs, f_outputs, split.u_signals)
    s = elaborate_component(network, m, S_PREFIX, network.inputs, out_labels)
    return f, s


def build_problem(network: Network, x_latches: Iterable[str],
                  node_limit: Optional[int] = DEFAULT_NODE_LIMIT,
                  timeout_s: Optional[float] = None) -> Tuple[Problem, SplitResult]:
    """F and S elaborated on one fresh manager; `timeout_s` is armed before elaboration"""
    split = latch_split(network, x_latches)
    order = label_layout(network, split)
    order += state_layout(split.fixed, F_PREFIX) + state_layout(network, S_PREFIX)
    m = Manager(order, node_limit)
    m.set_deadline(timeout_s)
    f, s = machines_on(m, network, split)

    def ids(names: Iterable[str]) -> List[VarId]:
        return [m.id_of(name) for name in names]

    problem = Problem(
        manager=m,
        network=network,
        split=split,
        f=f,
        s=s,
        i_vars=ids(network.inputs),
        v_vars=ids(split.v_signals),
        u_vars=ids(split.u_signals),
        o_vars=ids(network.output_labels()),
    )
    partition_nodes = sum(m.dag_size(part) for part in transition_parts(f) + transition_parts(s))
    metrics.set_gauge("solver.partition_nodes", partition_nodes, {"name": network.name})
    logger.debug(
        f"[SOLVER] problem '{network.name}': i={len(problem.i_vars)} v={len(problem.v_vars)} "
        f"u={len(problem.u_vars)} o={len(problem.o_vars)} vars={m.var_count} partition_nodes={partition_nodes}"
    )
    return problem, split
