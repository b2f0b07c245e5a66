"""
Elaboration of a Network into per-latch and per-output functions.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional

from app.core.errors import UsageError
from app.dd import Assignment, Func, Manager, VarId, VarSet, varset
from app.netlist.network import Gate, Network


class OutputFunction(NamedTuple):
    name: str
    var: VarId
    func: Func


@dataclass
class PartitionedMachine:
    """Next-state and output functions of one network over a shared manager"""
    manager: Manager
    name: str
    input_vars: VarSet
    latch_names: List[str]
    cs_vars: List[VarId]
    ns_vars: List[VarId]
    next_state: List[Func]
    outputs: List[OutputFunction]
    internal_outputs: List[OutputFunction] = field(default_factory=list)
    init: Assignment = field(default_factory=dict)

    @property
    def output_vars(self) -> VarSet:
        return varset(out.var for out in self.outputs)

    @property
    def internal_vars(self) -> VarSet:
        return varset(out.var for out in self.internal_outputs)

    @property
    def label_vars(self) -> VarSet:
        return self.input_vars | self.output_vars | self.internal_vars

    @property
    def ns_to_cs(self) -> Dict[VarId, VarId]:
        return dict(zip(self.ns_vars, self.cs_vars))

    def output(self, name: str) -> OutputFunction:
        for out in self.outputs:
            if out.name == name:
                return out
        raise UsageError(f"machine '{self.name}' has no output '{name}'")


def gate_function(m: Manager, gate: Gate, signals: Mapping[str, Func]) -> Func:
    terms = []
    for row in gate.cover:
        literals = []
        for ch, source in zip(row, gate.inputs):
            if ch == "1":
                literals.append(signals[source])
            elif ch == "0":
                literals.append(~signals[source])
        terms.append(m.conjoin(literals))
    return m.disjoin(terms)


def elaborate(n: Network, m: Manager, var_map: Mapping[str, VarId],
              ns_map: Mapping[str, VarId], output_map: Mapping[str, VarId],
              internal: Iterable[str] = ()) -> PartitionedMachine:
    """Build T_k and O_j by composing gate covers in topological order.

    `var_map` must cover every primary input and latch state, `ns_map` every
    latch state and `output_map` every primary output. Outputs named in
    `internal` become internal outputs (the u wires of a fixed component).
    """
    missing = [s for s in list(n.inputs) + n.latch_names if s not in var_map]
    missing += [f"{s}'" for s in n.latch_names if s not in ns_map]
    missing += [o for o in n.outputs if o not in output_map]
    if missing:
        raise UsageError(f"variable map for '{n.name}' misses: {', '.join(missing)}")

    signals: Dict[str, Func] = {}
    for name in list(n.inputs) + n.latch_names:
        signals[name] = m.var(var_map[name])
    for gate in n.gate_order():
        signals[gate.output] = gate_function(m, gate, signals)

    internal = set(internal)
    outputs = [OutputFunction(o, output_map[o], signals[o]) for o in n.outputs if o not in internal]
    internal_outputs = [OutputFunction(o, output_map[o], signals[o]) for o in n.outputs if o in internal]
    return PartitionedMachine(
        manager=m,
        name=n.name,
        input_vars=varset(var_map[s] for s in n.inputs),
        latch_names=n.latch_names,
        cs_vars=[var_map[s] for s in n.latch_names],
        ns_vars=[ns_map[s] for s in n.latch_names],
        next_state=[signals[latch.data_in] for latch in n.latches],
        outputs=outputs,
        internal_outputs=internal_outputs,
        init={var_map[latch.state]: latch.init for latch in n.latches},
    )


def cs_name(prefix: str, state: str) -> str:
    return f"{prefix}cs.{state}"


def ns_name(prefix: str, state: str) -> str:
    return f"{prefix}ns.{state}"


def machine_layout(n: Network, prefix: str = "s.") -> List[str]:
    """Variable order for a standalone machine: inputs, outputs, then (cs, ns) pairs"""
    order = list(n.inputs) + n.output_labels()
    for state in n.latch_names:
        order += [cs_name(prefix, state), ns_name(prefix, state)]
    return order


def machine_from_network(n: Network, m: Optional[Manager] = None, prefix: str = "s.",
                         node_limit: Optional[int] = None) -> PartitionedMachine:
    """Elaborate a network on its own manager (or on `m` if the layout variables exist)"""
    if m is None:
        kwargs = {} if node_limit is None else {"node_limit": node_limit}
        m = Manager(machine_layout(n, prefix), **kwargs)
    var_map = {s: m.id_of(s) for s in n.inputs}
    var_map.update({s: m.id_of(cs_name(prefix, s)) for s in n.latch_names})
    ns_map = {s: m.id_of(ns_name(prefix, s)) for s in n.latch_names}
    output_map = {o: m.id_of(label) for o, label in zip(n.outputs, n.output_labels())}
    return elaborate(n, m, var_map, ns_map, output_map)
