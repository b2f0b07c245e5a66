"""
Automata with enumerated states and label predicates kept as decision diagrams.
"""
from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from app.core.errors import UsageError
from app.dd import Assignment, Func, Manager, VarId, VarSet, varset


class StateKind(str, Enum):
    NORMAL = "normal"
    DC = "DC"
    DCN = "DCN"
    DCA = "DCA"


SINK_KINDS = (StateKind.DC, StateKind.DCN, StateKind.DCA)


@dataclass(frozen=True)
class ExplicitState:
    accepting: bool
    kind: StateKind = StateKind.NORMAL


class Edge(NamedTuple):
    src: int
    pred: Func
    dst: int


# Manager-independent edge: (src, cube strings over the label order, dst)
CubeEdge = Tuple[int, Tuple[str, ...], int]


@dataclass(frozen=True)
class ExplicitAutomaton:
    manager: Manager
    label_vars: VarSet
    states: Tuple[ExplicitState, ...]
    initial: Optional[int]
    edges: Tuple[Edge, ...]
    input_vars: VarSet = field(default_factory=frozenset)
    name: str = ""

    @property
    def num_states(self) -> int:
        return len(self.states)

    @property
    def is_empty(self) -> bool:
        return self.initial is None

    @property
    def label_order(self) -> List[VarId]:
        return sorted(self.label_vars)

    @property
    def label_names(self) -> List[str]:
        return [self.manager.name_of(v) for v in self.label_order]

    def out_edges(self) -> Dict[int, List[Edge]]:
        table: Dict[int, List[Edge]] = {k: [] for k in range(len(self.states))}
        for edge in self.edges:
            table[edge.src].append(edge)
        return table

    def state_of_kind(self, kind: StateKind) -> Optional[int]:
        for k, state in enumerate(self.states):
            if state.kind == kind:
                return k
        return None

    def is_deterministic(self) -> bool:
        for edges in self.out_edges().values():
            seen = self.manager.false
            for edge in edges:
                if not (seen & edge.pred).is_false:
                    return False
                seen = seen | edge.pred
        return True

    def is_complete(self) -> bool:
        if self.initial is None:
            return False
        m = self.manager
        return all(m.disjoin(e.pred for e in edges).is_true for edges in self.out_edges().values())

    def is_u_progressive(self, u_vars: Iterable[VarId]) -> bool:
        v_vars = self.label_vars - varset(u_vars)
        m = self.manager
        for edges in self.out_edges().values():
            if not m.exists(m.disjoin(e.pred for e in edges), v_vars).is_true:
                return False
        return True

    def all_accepting(self) -> bool:
        return all(state.accepting for state in self.states)

    def accepts(self, word: Sequence[Assignment]) -> bool:
        """Membership of a finite word; each letter assigns every label variable"""
        if self.initial is None:
            return False
        table = self.out_edges()
        current = {self.initial}
        for letter in word:
            current = {e.dst for s in current for e in table[s] if self.manager.eval(e.pred, letter)}
            if not current:
                return False
        return any(self.states[s].accepting for s in current)

    def to_cubes(self) -> List[CubeEdge]:
        order = self.label_order
        result = []
        for edge in self.edges:
            cubes = tuple(sorted(cube_string(cube, order) for cube in self.manager.iter_paths(edge.pred)))
            result.append((edge.src, cubes, edge.dst))
        return result

    def transfer(self, manager: Manager) -> "ExplicitAutomaton":
        """Copy into another manager, matching label variables by name"""
        if manager is self.manager:
            return self
        names = self.label_names
        target = [manager.id_of(name) for name in names]
        edges = [
            Edge(src, cubes_to_func(manager, cubes, target), dst)
            for src, cubes, dst in self.to_cubes()
        ]
        inputs = varset(manager.id_of(self.manager.name_of(v)) for v in self.input_vars)
        return replace(self, manager=manager, label_vars=varset(target), edges=tuple(edges), input_vars=inputs)

    def restrict(self, keep: Iterable[int]) -> "ExplicitAutomaton":
        """Sub-automaton on `keep` (reachable part only), states renumbered"""
        keep = set(keep)
        if self.initial is None or self.initial not in keep:
            return empty_like(self)
        table = self.out_edges()
        index = {self.initial: 0}
        queue = deque([self.initial])
        while queue:
            self.manager.check_deadline()
            s = queue.popleft()
            for edge in table[s]:
                if edge.dst in keep and edge.dst not in index:
                    index[edge.dst] = len(index)
                    queue.append(edge.dst)
        states = [None] * len(index)
        for old, new in index.items():
            states[new] = self.states[old]
        edges = [
            Edge(index[e.src], e.pred, index[e.dst])
            for e in self.edges
            if e.src in index and e.dst in index
        ]
        return replace(self, states=tuple(states), initial=0, edges=tuple(edges))


def cube_string(cube: Assignment, order: Sequence[VarId]) -> str:
    return "".join(str(cube[v]) if v in cube else "-" for v in order)


def cubes_to_func(m: Manager, cubes: Iterable[str], order: Sequence[VarId]) -> Func:
    return m.disjoin(
        m.cube({v: int(ch) for v, ch in zip(order, cube) if ch != "-"})
        for cube in cubes
    )


def empty_like(e: ExplicitAutomaton) -> ExplicitAutomaton:
    return replace(e, states=(), initial=None, edges=())


def merge_edges(edges: Iterable[Edge]) -> List[Edge]:
    """One edge per (src, dst), predicates OR-ed, first-seen order kept"""
    merged: Dict[Tuple[int, int], Func] = {}
    for edge in edges:
        key = (edge.src, edge.dst)
        merged[key] = merged[key] | edge.pred if key in merged else edge.pred
    return [Edge(src, pred, dst) for (src, dst), pred in merged.items() if not pred.is_false]


def complete_explicit(e: ExplicitAutomaton, kind: StateKind = StateKind.DC,
                      accepting: bool = False) -> ExplicitAutomaton:
    """Add a sink of `kind` with a universal self-loop and route undefined labels to it"""
    if kind not in SINK_KINDS:
        raise UsageError(f"completion sink must be one of DC, DCN, DCA, not {kind}")
    m = e.manager
    states = list(e.states)
    sink = e.state_of_kind(kind)
    edges = list(e.edges)
    if sink is None:
        sink = len(states)
        states.append(ExplicitState(accepting=accepting, kind=kind))
        edges.append(Edge(sink, m.true, sink))
    table = e.out_edges()
    for s in range(len(e.states)):
        missing = ~m.disjoin(edge.pred for edge in table[s])
        if not missing.is_false:
            edges.append(Edge(s, missing, sink))
    initial = sink if e.initial is None else e.initial
    return replace(e, states=tuple(states), initial=initial, edges=tuple(merge_edges(edges)))


def complement_explicit(e: ExplicitAutomaton) -> ExplicitAutomaton:
    if not (e.is_complete() and e.is_deterministic()):
        raise UsageError("complementation needs a complete deterministic automaton")
    states = tuple(replace(state, accepting=not state.accepting) for state in e.states)
    return replace(e, states=states)


def prefix_close(e: ExplicitAutomaton) -> ExplicitAutomaton:
    return e.restrict(k for k, state in enumerate(e.states) if state.accepting)


def progressive(e: ExplicitAutomaton, u_vars: Iterable[VarId]) -> ExplicitAutomaton:
    """Greatest sub-automaton where every state has a move, for some v, under every u"""
    u_vars = varset(u_vars)
    if not u_vars <= e.label_vars:
        raise UsageError("progressive inputs must be labels of the automaton")
    m = e.manager
    v_vars = e.label_vars - u_vars
    table = e.out_edges()
    alive: Set[int] = set(range(len(e.states)))
    changed = True
    while changed:
        changed = False
        for s in sorted(alive):
            m.check_deadline()
            cover = m.disjoin(edge.pred for edge in table[s] if edge.dst in alive)
            if not m.exists(cover, v_vars).is_true:
                alive.discard(s)
                changed = True
    result = e.restrict(alive)
    return replace(result, input_vars=u_vars)
