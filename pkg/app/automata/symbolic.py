"""
Automata with symbolically encoded states and a monolithic transition relation.
"""
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

from app.core.errors import UsageError
from app.dd import Func, Manager, VarId, VarSet, varset
from app.netlist.elaborate import PartitionedMachine
from app.relations.image import fixpoint_reach, reachable
from app.relations.monolithic import build_monolithic


@dataclass(frozen=True)
class SymbolicAutomaton:
    manager: Manager
    label_vars: VarSet
    cs_vars: List[VarId]
    ns_vars: List[VarId]
    to: Func
    init: Func
    accepting: Func
    complete_flag: bool = False
    deterministic: bool = True
    name: str = ""

    @property
    def state_vars(self) -> VarSet:
        return varset(self.cs_vars) | varset(self.ns_vars)

    @property
    def ns_to_cs(self) -> Dict[VarId, VarId]:
        return dict(zip(self.ns_vars, self.cs_vars))

    def reachable_states(self) -> Func:
        return fixpoint_reach([self.to], self.init, self.label_vars | varset(self.cs_vars), self.ns_to_cs)

    def is_complete(self) -> bool:
        """Audit: every reachable state has a successor under every label"""
        m = self.manager
        defined = m.exists(self.to, self.ns_vars)
        total = m.forall(defined, self.label_vars)
        return (self.reachable_states() & ~total).is_false


def from_machine(pm: PartitionedMachine) -> SymbolicAutomaton:
    m = pm.manager
    rel = build_monolithic(pm)
    return SymbolicAutomaton(
        manager=m,
        label_vars=rel.label_vars,
        cs_vars=list(pm.cs_vars),
        ns_vars=list(pm.ns_vars),
        to=rel.to,
        init=m.cube(pm.init),
        accepting=reachable(pm).chi,
        name=pm.name,
    )


def _fresh_pair(m: Manager, base: str) -> Tuple[VarId, VarId]:
    name = base
    suffix = 1
    while m.has_var(name) or m.has_var(f"{name}'"):
        name = f"{base}{suffix}"
        suffix += 1
    return m.add_var(name), m.add_var(f"{name}'")


def complete(a: SymbolicAutomaton) -> SymbolicAutomaton:
    """Route every undefined (label, state) to a fresh non-accepting DC state.

    DC is encoded by a new state bit dc = 1 with all other state bits 0.
    """
    m = a.manager
    dc, dc_next = _fresh_pair(m, f"{a.name or 'a'}.dc")
    cs_zero = m.cube({v: 0 for v in a.cs_vars})
    ns_zero = m.cube({v: 0 for v in a.ns_vars})
    dc_cs = m.var(dc) & cs_zero
    dc_ns = m.var(dc_next) & ns_zero
    normal_cs = ~m.var(dc)
    undefined = ~m.exists(a.to, a.ns_vars)
    to = (a.to & normal_cs & ~m.var(dc_next)) | (undefined & normal_cs & dc_ns) | (dc_cs & dc_ns)
    return replace(
        a,
        cs_vars=a.cs_vars + [dc],
        ns_vars=a.ns_vars + [dc_next],
        to=to,
        init=a.init & normal_cs,
        accepting=a.accepting & normal_cs,
        complete_flag=True,
    )


def complement_det(a: SymbolicAutomaton) -> SymbolicAutomaton:
    if not (a.complete_flag and a.deterministic):
        raise UsageError("complementation needs a complete deterministic automaton")
    return replace(a, accepting=~a.accepting)


def product(a: SymbolicAutomaton, b: SymbolicAutomaton) -> SymbolicAutomaton:
    if a.manager is not b.manager:
        raise UsageError("product needs both automata on one manager")
    if a.state_vars & b.state_vars:
        raise UsageError("product operands share state variables")
    return SymbolicAutomaton(
        manager=a.manager,
        label_vars=a.label_vars | b.label_vars,
        cs_vars=a.cs_vars + b.cs_vars,
        ns_vars=a.ns_vars + b.ns_vars,
        to=a.to & b.to,
        init=a.init & b.init,
        accepting=a.accepting & b.accepting,
        complete_flag=a.complete_flag and b.complete_flag,
        deterministic=a.deterministic and b.deterministic,
        name=f"{a.name}*{b.name}",
    )


def expand_support(a: SymbolicAutomaton, labels: VarSet) -> SymbolicAutomaton:
    """Declare extra labels; the relation is independent of them"""
    if not a.label_vars <= labels:
        raise UsageError("support expansion must keep every existing label")
    if labels & a.state_vars:
        raise UsageError("labels overlap state variables")
    return replace(a, label_vars=varset(labels))


def hide(a: SymbolicAutomaton, keep: VarSet) -> SymbolicAutomaton:
    keep = varset(keep)
    if not keep <= a.label_vars:
        raise UsageError("hidden automaton must keep a subset of its labels")
    dropped = a.label_vars - keep
    if not dropped:
        return a
    return replace(
        a,
        label_vars=keep,
        to=a.manager.exists(a.to, dropped),
        deterministic=False,
    )


def encode_explicit(e, manager: Optional[Manager] = None, prefix: str = "x") -> SymbolicAutomaton:
    """Binary-encode an ExplicitAutomaton with fresh state bits appended to `manager`"""
    m = manager or e.manager
    source = e.transfer(m) if m is not e.manager else e
    count = max(1, source.num_states)
    width = max(1, (count - 1).bit_length())
    cs_vars: List[VarId] = []
    ns_vars: List[VarId] = []
    for bit in range(width):
        cs, ns = _fresh_pair(m, f"{prefix}.q{bit}")
        cs_vars.append(cs)
        ns_vars.append(ns)

    def code(index: int, vars: List[VarId]) -> Func:
        return m.cube({v: (index >> k) & 1 for k, v in enumerate(vars)})

    to = m.false
    for edge in source.edges:
        to = to | (code(edge.src, cs_vars) & edge.pred & code(edge.dst, ns_vars))
    accepting = m.disjoin(code(k, cs_vars) for k, state in enumerate(source.states) if state.accepting)
    init = m.false if source.initial is None else code(source.initial, cs_vars)
    return SymbolicAutomaton(
        manager=m,
        label_vars=source.label_vars,
        cs_vars=cs_vars,
        ns_vars=ns_vars,
        to=to,
        init=init,
        accepting=accepting,
        complete_flag=source.is_complete(),
        deterministic=source.is_deterministic(),
        name=source.name or prefix,
    )
