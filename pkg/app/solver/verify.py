"""
Solution checks: the particular solution is contained in the CSF, F composed
with the CSF stays within S, and F composed with the particular solution is
equivalent to S.

Checks run on a fresh manager so the solving manager's caches and limits do
not interfere; the CSF is re-encoded there with fresh state bits.
"""
from dataclasses import dataclass, replace
from typing import Iterable, List, Optional, Tuple, Union

from app.automata import (
    Edge,
    ExplicitAutomaton,
    ExplicitState,
    StateKind,
    SymbolicAutomaton,
    as_explicit,
    contains,
    encode_explicit,
    equivalent,
    from_machine,
    hide,
    product,
)
from app.core.logging import logger
from app.core.metrics import time_operation
from app.dd import Assignment, Manager, VarSet, varset
from app.solver.csf import Csf
from app.solver.problem import (
    F_PREFIX,
    S_PREFIX,
    XP_PREFIX,
    Problem,
    elaborate_component,
    label_layout,
    machines_on,
    state_layout,
)


@dataclass
class VerificationResult:
    xp_contained: bool
    composition_contained: bool
    particular_equivalent: bool

    @property
    def all_passed(self) -> bool:
        return self.xp_contained and self.composition_contained and self.particular_equivalent


def compose(f: SymbolicAutomaton, x: SymbolicAutomaton, keep: VarSet) -> SymbolicAutomaton:
    """F composed with X on the shared (u, v) wires, hidden to `keep`"""
    return hide(product(f, x), keep)


class VerificationContext:
    """F, S and X_p automata of a problem on their own manager"""

    def __init__(self, p: Problem):
        network, split = p.network, p.split
        order = label_layout(network, split)
        order += state_layout(split.fixed, F_PREFIX)
        order += state_layout(split.unknown, XP_PREFIX)
        order += state_layout(network, S_PREFIX)
        self.manager = Manager(order, p.manager.node_limit)
        m = self.manager
        f, s = machines_on(m, network, split)
        xp = elaborate_component(split.unknown, m, XP_PREFIX, split.unknown.inputs,
                                 {v: v for v in split.v_signals})
        self.f = from_machine(f)
        self.s = from_machine(s)
        self.xp = from_machine(xp)
        self.io = varset(m.id_of(name) for name in list(network.inputs) + network.output_labels())
        self.u = varset(m.id_of(name) for name in split.u_signals)
        self.name = p.name
        self._encoded = 0

    def particular(self) -> ExplicitAutomaton:
        """X_p as an explicit automaton with u marked as its inputs"""
        return replace(as_explicit(self.xp), input_vars=self.u, name=f"{self.name}_xp")

    def encode(self, x: ExplicitAutomaton) -> SymbolicAutomaton:
        self._encoded += 1
        return encode_explicit(x.transfer(self.manager), self.manager, prefix=f"csf{self._encoded}")

    def xp_contained(self, x: ExplicitAutomaton, xp: Optional[ExplicitAutomaton] = None) -> bool:
        particular = self.xp if xp is None else xp.transfer(self.manager)
        return contains(particular, x.transfer(self.manager))

    def composition_contained(self, x: ExplicitAutomaton) -> bool:
        return contains(compose(self.f, self.encode(x), self.io), self.s)

    def particular_equivalent(self, xp: Optional[ExplicitAutomaton] = None) -> bool:
        particular = self.xp if xp is None else self.encode(xp)
        return equivalent(self.s, compose(self.f, particular, self.io))


def _automaton(x: Union[Csf, ExplicitAutomaton]) -> ExplicitAutomaton:
    return x.automaton if isinstance(x, Csf) else x


@time_operation("solver.verify")
def verify_solution(p: Problem, x: Union[Csf, ExplicitAutomaton],
                    xp: Optional[ExplicitAutomaton] = None) -> VerificationResult:
    """Run the three checks; `xp` overrides the particular solution taken from the split"""
    ctx = VerificationContext(p)
    automaton = _automaton(x)
    result = VerificationResult(
        xp_contained=ctx.xp_contained(automaton, xp),
        composition_contained=ctx.composition_contained(automaton),
        particular_equivalent=ctx.particular_equivalent(xp),
    )
    logger.info(
        f"[VERIFY] '{p.name}': xp_contained={result.xp_contained} "
        f"composition_contained={result.composition_contained} "
        f"particular_equivalent={result.particular_equivalent}"
    )
    return result


def _minterms(m: Manager, labels: Iterable[int]) -> List[Assignment]:
    order = sorted(labels)
    return [{v: (bits >> k) & 1 for k, v in enumerate(order)} for bits in range(1 << len(order))]


def add_edge_to_universal(x: ExplicitAutomaton, state: int, minterm: Assignment) -> ExplicitAutomaton:
    """Copy of x with one more transition from `state` into the DCA sink"""
    m = x.manager
    states = list(x.states)
    edges = list(x.edges)
    sink = x.state_of_kind(StateKind.DCA)
    if sink is None:
        sink = len(states)
        states.append(ExplicitState(accepting=True, kind=StateKind.DCA))
        edges.append(Edge(sink, m.true, sink))
    edges.append(Edge(state, m.cube(minterm), sink))
    return replace(x, states=tuple(states), edges=tuple(edges))


def find_maximality_violations(p: Problem, csf: Csf) -> Tuple[int, List[Tuple[int, Assignment]]]:
    """Enlarge the CSF by every missing (state, label minterm) transition.

    Returns the number of mutants tried and the mutants that still satisfy the
    composition check (none, for a maximal solution).
    """
    x = csf.automaton
    ctx = VerificationContext(p)
    m = x.manager
    table = x.out_edges()
    tried = 0
    survivors = []
    for state, info in enumerate(x.states):
        if info.kind == StateKind.DCA:
            continue
        covered = m.disjoin(edge.pred for edge in table[state])
        for minterm in _minterms(m, x.label_vars):
            if m.eval(covered, minterm):
                continue
            tried += 1
            if ctx.composition_contained(add_edge_to_universal(x, state, minterm)):
                survivors.append((state, minterm))
    return tried, survivors
