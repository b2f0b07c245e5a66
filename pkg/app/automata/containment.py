"""
Language containment and equivalence.
"""
from collections import deque
from typing import Optional, Set, Tuple, Union

from app.core.errors import UsageError
from app.core.logging import logger
from app.automata.determinize import determinize, determinize_explicit
from app.automata.explicit import ExplicitAutomaton, complement_explicit
from app.automata.symbolic import SymbolicAutomaton, complement_det as complement_symbolic

Automaton = Union[SymbolicAutomaton, ExplicitAutomaton]
SINK = -1


def as_explicit(a: Automaton, subset_limit: Optional[int] = None) -> ExplicitAutomaton:
    if isinstance(a, SymbolicAutomaton):
        return determinize(a, subset_limit)
    return a


def complement_det(a: Automaton) -> Automaton:
    if isinstance(a, SymbolicAutomaton):
        return complement_symbolic(a)
    return complement_explicit(a)


def contains(a: Automaton, b: Automaton, subset_limit: Optional[int] = None) -> bool:
    """L(a) is a subset of L(b).

    Explores pairs of a-states and states of determinized b, with b's missing
    moves going to an implicit rejecting sink; a pair is a counterexample when
    a accepts and b does not.
    """
    left = as_explicit(a, subset_limit)
    right = as_explicit(b, subset_limit)
    if left.manager is not right.manager:
        right = right.transfer(left.manager)
    if set(left.label_names) != set(right.label_names):
        raise UsageError(f"containment needs equal label sets: {left.label_names} vs {right.label_names}")
    if left.initial is None:
        return True
    right = determinize_explicit(right, subset_limit)

    m = left.manager
    a_out = left.out_edges()
    b_out = right.out_edges()
    start = (left.initial, SINK if right.initial is None else right.initial)
    seen: Set[Tuple[int, int]] = {start}
    queue = deque([start])
    while queue:
        m.check_deadline()
        p, q = queue.popleft()
        if left.states[p].accepting and (q == SINK or not right.states[q].accepting):
            logger.debug(f"[AUTOMATA] containment fails at pair ({p}, {q})")
            return False
        for a_edge in a_out[p]:
            successors = []
            if q == SINK:
                successors.append(SINK)
            else:
                covered = m.false
                for b_edge in b_out[q]:
                    covered = covered | b_edge.pred
                    if not (a_edge.pred & b_edge.pred).is_false:
                        successors.append(b_edge.dst)
                if not (a_edge.pred & ~covered).is_false:
                    successors.append(SINK)
            for q_next in successors:
                pair = (a_edge.dst, q_next)
                if pair not in seen:
                    seen.add(pair)
                    queue.append(pair)
    return True


def equivalent(a: Automaton, b: Automaton, subset_limit: Optional[int] = None) -> bool:
    left = as_explicit(a, subset_limit)
    right = as_explicit(b, subset_limit)
    return contains(left, right, subset_limit) and contains(right, left, subset_limit)
