"""
Explicit-state reference automata.

States and letters are enumerated outright; a letter is a tuple of bits in
the automaton's label order. Nothing here touches decision diagrams.
"""
import itertools
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Hashable, List, Optional, Sequence, Set, Tuple

from app.core.errors import UsageError

Letter = Tuple[int, ...]
State = Hashable
Transition = Tuple[State, Letter, State]

MAX_BITS = 20


class OracleSizeError(UsageError):
    def __init__(self, bits: int):
        self.bits = bits
        super().__init__(f"explicit-state reference limited to {MAX_BITS} state+label bits, needs {bits}")


def check_size(label_count: int, state_count: int) -> None:
    bits = label_count + max(1, (max(state_count, 1) - 1).bit_length())
    if bits > MAX_BITS:
        raise OracleSizeError(bits)


@dataclass(frozen=True)
class Sink:
    kind: str


@dataclass
class TableAutomaton:
    labels: Tuple[str, ...]
    states: List[State]
    initial: Optional[State]
    accepting: Set[State]
    transitions: Set[Transition]
    inputs: Tuple[str, ...] = ()
    kinds: Dict[State, str] = field(default_factory=dict)

    @property
    def alphabet(self) -> List[Letter]:
        return list(itertools.product((0, 1), repeat=len(self.labels)))

    def moves(self) -> Dict[Tuple[State, Letter], Set[State]]:
        table: Dict[Tuple[State, Letter], Set[State]] = {}
        for src, letter, dst in self.transitions:
            table.setdefault((src, letter), set()).add(dst)
        return table

    def is_deterministic(self) -> bool:
        return all(len(dsts) == 1 for dsts in self.moves().values())

    def is_complete(self) -> bool:
        if self.initial is None:
            return False
        defined = {(src, letter) for src, letter, _ in self.transitions}
        return all((s, a) in defined for s in self.states for a in self.alphabet)


def table_accepts(t: TableAutomaton, word: Sequence[Letter]) -> bool:
    if t.initial is None:
        return False
    moves = t.moves()
    current = {t.initial}
    for letter in word:
        current = {d for s in current for d in moves.get((s, tuple(letter)), ())}
    return bool(current & t.accepting)


def _reachable(t: TableAutomaton, keep: Optional[Set[State]] = None) -> TableAutomaton:
    if t.initial is None or (keep is not None and t.initial not in keep):
        return replace(t, states=[], initial=None, accepting=set(), transitions=set(), kinds={})
    allowed = set(t.states) if keep is None else keep
    successors: Dict[State, List[Tuple[Letter, State]]] = {}
    for src, letter, dst in t.transitions:
        successors.setdefault(src, []).append((letter, dst))
    seen = {t.initial}
    order = [t.initial]
    queue = deque([t.initial])
    while queue:
        s = queue.popleft()
        for _, d in successors.get(s, ()):
            if d in allowed and d not in seen:
                seen.add(d)
                order.append(d)
                queue.append(d)
    return replace(
        t,
        states=order,
        accepting={s for s in t.accepting if s in seen},
        transitions={(s, a, d) for s, a, d in t.transitions if s in seen and d in seen},
        kinds={s: k for s, k in t.kinds.items() if s in seen},
    )


def table_complete(t: TableAutomaton, kind: str = "DC", accepting: bool = False) -> TableAutomaton:
    sink = Sink(kind)
    states = list(t.states) + [sink]
    transitions = set(t.transitions)
    defined = {(src, letter) for src, letter, _ in t.transitions}
    for s in t.states:
        for a in t.alphabet:
            if (s, a) not in defined:
                transitions.add((s, a, sink))
    for a in t.alphabet:
        transitions.add((sink, a, sink))
    kinds = dict(t.kinds)
    kinds[sink] = kind
    acc = set(t.accepting) | ({sink} if accepting else set())
    initial = sink if t.initial is None else t.initial
    return replace(t, states=states, initial=initial, accepting=acc, transitions=transitions, kinds=kinds)


def table_complement(t: TableAutomaton) -> TableAutomaton:
    if not (t.is_deterministic() and t.is_complete()):
        raise UsageError("complementation needs a complete deterministic table")
    return replace(t, accepting={s for s in t.states if s not in t.accepting})


def table_expand(t: TableAutomaton, labels: Sequence[str]) -> TableAutomaton:
    """Re-express over `labels` (a superset of t's labels, any order)"""
    labels = tuple(labels)
    missing = set(t.labels) - set(labels)
    if missing:
        raise UsageError(f"expansion drops labels: {sorted(missing)}")
    check_size(len(labels), len(t.states))
    index = [labels.index(name) for name in t.labels]
    grouped = t.moves()
    transitions = set()
    for letter in itertools.product((0, 1), repeat=len(labels)):
        projected = tuple(letter[k] for k in index)
        for s in t.states:
            for d in grouped.get((s, projected), ()):
                transitions.add((s, letter, d))
    return replace(t, labels=labels, transitions=transitions)


def table_product(a: TableAutomaton, b: TableAutomaton) -> TableAutomaton:
    if set(a.labels) != set(b.labels):
        raise UsageError("product needs equal label sets")
    if a.labels != b.labels:
        b = table_expand(b, a.labels)
    check_size(len(a.labels), len(a.states) * max(1, len(b.states)))
    if a.initial is None or b.initial is None:
        return TableAutomaton(labels=a.labels, states=[], initial=None, accepting=set(), transitions=set())
    a_moves, b_moves = a.moves(), b.moves()
    start = (a.initial, b.initial)
    seen = {start}
    order = [start]
    queue = deque([start])
    transitions = set()
    alphabet = a.alphabet
    while queue:
        p, q = queue.popleft()
        for letter in alphabet:
            for p2 in a_moves.get((p, letter), ()):
                for q2 in b_moves.get((q, letter), ()):
                    pair = (p2, q2)
                    transitions.add(((p, q), letter, pair))
                    if pair not in seen:
                        seen.add(pair)
                        order.append(pair)
                        queue.append(pair)
    accepting = {s for s in order if s[0] in a.accepting and s[1] in b.accepting}
    return TableAutomaton(labels=a.labels, states=order, initial=start, accepting=accepting, transitions=transitions)


def table_hide(t: TableAutomaton, keep: Sequence[str]) -> TableAutomaton:
    keep = tuple(keep)
    if not set(keep) <= set(t.labels):
        raise UsageError("hiding must keep a subset of the labels")
    index = [t.labels.index(name) for name in keep]
    transitions = {(s, tuple(letter[k] for k in index), d) for s, letter, d in t.transitions}
    inputs = tuple(name for name in t.inputs if name in keep)
    return replace(t, labels=keep, transitions=transitions, inputs=inputs)


def table_determinize(t: TableAutomaton) -> TableAutomaton:
    if t.initial is None:
        return replace(t, states=[], accepting=set(), transitions=set(), kinds={})
    moves = t.moves()
    start: FrozenSet[State] = frozenset([t.initial])
    seen = {start}
    order = [start]
    queue = deque([start])
    transitions = set()
    alphabet = t.alphabet
    while queue:
        subset = queue.popleft()
        for letter in alphabet:
            target = frozenset(d for s in subset for d in moves.get((s, letter), ()))
            if not target:
                continue
            transitions.add((subset, letter, target))
            if target not in seen:
                seen.add(target)
                order.append(target)
                queue.append(target)
    check_size(len(t.labels), len(order))
    accepting = {subset for subset in order if subset & t.accepting}
    return TableAutomaton(labels=t.labels, states=order, initial=start, accepting=accepting,
                          transitions=transitions, inputs=t.inputs)


def table_prefix_close(t: TableAutomaton) -> TableAutomaton:
    return _reachable(t, set(t.accepting))


def table_progressive(t: TableAutomaton, inputs: Sequence[str]) -> TableAutomaton:
    inputs = tuple(inputs)
    index = [t.labels.index(name) for name in inputs]
    alive = set(t.states)
    successors: Dict[State, List[Tuple[Letter, State]]] = {}
    for src, letter, dst in t.transitions:
        successors.setdefault(src, []).append((letter, dst))
    changed = True
    while changed:
        changed = False
        for s in list(alive):
            offered = {tuple(letter[k] for k in index) for letter, d in successors.get(s, ()) if d in alive}
            if len(offered) < (1 << len(index)):
                alive.discard(s)
                changed = True
    return replace(_reachable(t, alive), inputs=inputs)


def table_contains(a: TableAutomaton, b: TableAutomaton) -> bool:
    """L(a) is a subset of L(b)"""
    if set(a.labels) != set(b.labels):
        raise UsageError("containment needs equal label sets")
    if a.initial is None:
        return True
    if a.labels != b.labels:
        b = table_expand(b, a.labels)
    negated = table_complement(table_complete(table_determinize(b)))
    both = table_product(a, negated)
    return not both.accepting


def table_equivalent(a: TableAutomaton, b: TableAutomaton) -> bool:
    return table_contains(a, b) and table_contains(b, a)

