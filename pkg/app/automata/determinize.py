"""
Subset construction.

Symbolic automata are determinized with subset states held as characteristic
functions over the current-state variables; two subsets are the same state
iff their functions share a root. Successor subsets are found by splitting
the image on the label variables, so the label space is never enumerated
minterm by minterm.
"""
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from app.core.errors import SubsetLimitExceeded
from app.core.logging import logger
from app.core.metrics import metrics
from app.dd import Func, varset
from app.automata.explicit import Edge, ExplicitAutomaton, ExplicitState, merge_edges
from app.automata.symbolic import SymbolicAutomaton

GC_INTERVAL = 512


@dataclass(frozen=True)
class SubsetState:
    chi: Func
    id: int


class SubsetIndex:
    """Canonical numbering of subset states by characteristic-function root"""

    def __init__(self, limit: Optional[int] = None):
        self.limit = limit
        self.states: List[SubsetState] = []
        self._by_root: Dict[int, int] = {}

    def __len__(self) -> int:
        return len(self.states)

    def lookup(self, chi: Func) -> Tuple[int, bool]:
        """(index, created)"""
        found = self._by_root.get(chi.root)
        if found is not None:
            return found, False
        if self.limit is not None and len(self.states) >= self.limit:
            raise SubsetLimitExceeded(self.limit)
        index = len(self.states)
        self.states.append(SubsetState(chi=chi, id=index))
        self._by_root[chi.root] = index
        return index, True


def determinize(a: SymbolicAutomaton, subset_limit: Optional[int] = None) -> ExplicitAutomaton:
    m = a.manager
    cs = varset(a.cs_vars)
    ns_to_cs = a.ns_to_cs
    if a.init.is_false:
        return ExplicitAutomaton(manager=m, label_vars=a.label_vars, states=(), initial=None,
                                 edges=(), name=a.name)

    index = SubsetIndex(subset_limit)
    index.lookup(a.init)
    queue = deque([0])
    edges: List[Edge] = []
    processed = 0
    while queue:
        m.check_deadline()
        k = queue.popleft()
        processed += 1
        image = m.and_exists(a.to, index.states[k].chi, cs)
        grouped: Dict[int, Func] = {}
        for cube, successor in m.split_cubes(image, a.label_vars):
            target, created = index.lookup(m.rename(successor, ns_to_cs))
            if created:
                queue.append(target)
            pred = m.cube(cube)
            grouped[target] = grouped[target] | pred if target in grouped else pred
        edges.extend(Edge(k, pred, dst) for dst, pred in grouped.items())
        if processed % GC_INTERVAL == 0:
            m.collect_garbage()

    states = tuple(
        ExplicitState(accepting=not (subset.chi & a.accepting).is_false)
        for subset in index.states
    )
    metrics.increment_counter("automata.subset_states", len(states))
    logger.debug(f"[AUTOMATA] determinized '{a.name}' into {len(states)} subset states")
    return ExplicitAutomaton(
        manager=m,
        label_vars=a.label_vars,
        states=states,
        initial=0,
        edges=tuple(edges),
        name=a.name,
    )


def determinize_explicit(e: ExplicitAutomaton, subset_limit: Optional[int] = None) -> ExplicitAutomaton:
    """Subset construction on an explicit automaton; label space split by predicates"""
    if e.initial is None or e.is_deterministic():
        return e
    m = e.manager
    table = e.out_edges()
    start: FrozenSet[int] = frozenset([e.initial])
    index: Dict[FrozenSet[int], int] = {start: 0}
    subsets: List[FrozenSet[int]] = [start]
    queue = deque([start])
    edges: List[Edge] = []
    while queue:
        m.check_deadline()
        subset = queue.popleft()
        regions: List[Tuple[Func, FrozenSet[int]]] = [(m.true, frozenset())]
        for s in sorted(subset):
            for edge in table[s]:
                split = []
                for region, targets in regions:
                    inside = region & edge.pred
                    outside = region & ~edge.pred
                    if not inside.is_false:
                        split.append((inside, targets | {edge.dst}))
                    if not outside.is_false:
                        split.append((outside, targets))
                regions = split
        for region, targets in regions:
            if not targets:
                continue
            if targets not in index:
                if subset_limit is not None and len(subsets) >= subset_limit:
                    raise SubsetLimitExceeded(subset_limit)
                index[targets] = len(subsets)
                subsets.append(targets)
                queue.append(targets)
            edges.append(Edge(index[subset], region, index[targets]))
    states = tuple(ExplicitState(accepting=any(e.states[s].accepting for s in subset)) for subset in subsets)
    return ExplicitAutomaton(
        manager=m,
        label_vars=e.label_vars,
        states=states,
        initial=0,
        edges=tuple(merge_edges(edges)),
        input_vars=e.input_vars,
        name=e.name,
    )
