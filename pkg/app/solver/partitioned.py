"""
Partitioned flow.

Subset states range over the joint (F, S) current-state space. From each
subset the solver computes, without ever conjoining the partitions into one
relation:

  Q: the (u, v) labels for which some hidden input drives an output of F away
     from the matching output of S (one output at a time);
  P: the image of the subset through the u, F and S partitions, with the
     primary inputs quantified during the image.

Labels in Q go to the non-accepting sink DCN, labels with no successor go to
the accepting sink DCA, and the rest go to the successor subsets found by
splitting P on (u, v). The result is prefix-closed and made u-progressive.
"""
from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from app.automata import Edge, ExplicitAutomaton, ExplicitState, StateKind, prefix_close, progressive
from app.automata.determinize import SubsetState
from app.core.errors import SubsetLimitExceeded
from app.core.logging import logger
from app.core.metrics import TimingContext, metrics
from app.dd import Func, varset
from app.relations import (
    StateSet,
    conformance_parts,
    image,
    internal_parts,
    make_schedule,
    transition_parts,
)
from app.solver.csf import Csf, CsfStats
from app.solver.problem import Problem

GC_INTERVAL = 512


@dataclass(frozen=True)
class Routing:
    """Edge routing out of one subset state.

    `dcn` holds the violating labels; `live` is the image restricted to the
    remaining labels (over u, v and next-state variables).
    """
    dcn: Func
    live: Func


def trim_on_violation(zeta: SubsetState, q: Func, successors: Callable[[], Func]) -> Routing:
    """Route violating labels to DCN and never expand them.

    `successors` computes the unrestricted image and is not called when every
    label violates.
    """
    m = zeta.chi.manager
    if q.is_true:
        return Routing(dcn=q, live=m.false)
    p = successors()
    if q.is_false:
        return Routing(dcn=q, live=p)
    return Routing(dcn=q, live=p & ~q)


class _Subsets:
    """Subset states keyed by (characteristic-function root, violated flag)"""

    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.chis: List[Func] = []
        self.violated: List[bool] = []
        self._index: Dict[Tuple[int, bool], int] = {}

    def __len__(self) -> int:
        return len(self.chis)

    def lookup(self, chi: Func, violated: bool = False) -> Tuple[int, bool]:
        key = (chi.root, violated)
        found = self._index.get(key)
        if found is not None:
            return found, False
        if self.limit is not None and len(self.chis) >= self.limit:
            raise SubsetLimitExceeded(self.limit)
        self._index[key] = len(self.chis)
        self.chis.append(chi)
        self.violated.append(violated)
        return len(self.chis) - 1, True


def solve_partitioned(p: Problem, subset_limit: Optional[int] = None, trim: bool = True) -> Csf:
    """Fused subset construction over the partitioned relations of F and S.

    With `trim=False` the successors of violating labels are explored too, as
    non-accepting subset states; the resulting language is the same.
    """
    with TimingContext(metrics, "solver.flow", {"flow": "partitioned"}) as timing:
        automaton, stats = _explore(p, subset_limit, trim)
        result = progressive(prefix_close(automaton), p.roles["u"])
    stats.states = result.num_states
    stats.elapsed_s = timing.elapsed
    metrics.increment_counter("solver.subset_states", stats.explored)
    metrics.increment_counter("solver.dcn_edges", stats.dcn_edges)
    metrics.increment_counter("solver.dca_edges", stats.dca_edges)
    logger.info(
        f"[SOLVER] partitioned '{p.name}' (trim={trim}): explored={stats.explored} "
        f"states={stats.states} in {stats.elapsed_s:.3f}s"
    )
    return Csf(automaton=result, u_vars=p.roles["u"], stats=stats)


def _explore(p: Problem, subset_limit: Optional[int], trim: bool) -> Tuple[ExplicitAutomaton, CsfStats]:
    m = p.manager
    f, s = p.f, p.s
    cs_vars = f.cs_vars + s.cs_vars
    ns_to_cs = dict(zip(f.ns_vars + s.ns_vars, cs_vars))
    labels = p.solution_labels
    quantify = varset(p.i_vars) | varset(cs_vars)
    ns = varset(ns_to_cs)

    u_parts = internal_parts(f)
    step_parts = u_parts + transition_parts(f) + transition_parts(s)
    step_schedule = make_schedule(step_parts, quantify)
    violation_parts = [u_parts + [~c] for c in conformance_parts(f, s)]
    violation_schedules = [make_schedule(parts, quantify) for parts in violation_parts]

    subsets = _Subsets(subset_limit)
    subsets.lookup(m.cube({**f.init, **s.init}))
    queue = deque([0])
    edges: List[Edge] = []
    stats = CsfStats(flow="partitioned", deterministic_after_hiding=True)
    dcn_pred = {}
    dca_pred = {}
    processed = 0

    while queue:
        m.check_deadline()
        k = queue.popleft()
        processed += 1
        zeta = StateSet(subsets.chis[k])
        if stats.deterministic_after_hiding and m.sat_count(zeta.chi, cs_vars) != 1:
            stats.deterministic_after_hiding = False

        def successors() -> Func:
            return image(step_parts, zeta, quantify, step_schedule)

        if subsets.violated[k]:
            q = m.false
            routing = Routing(dcn=q, live=successors())
        else:
            q = m.false
            for parts, schedule in zip(violation_parts, violation_schedules):
                q = q | image(parts, zeta, quantify, schedule)
                if q.is_true:
                    break
            if trim:
                routing = trim_on_violation(SubsetState(chi=zeta.chi, id=k), q, successors)
            else:
                routing = Routing(dcn=q, live=successors())

        grouped: Dict[int, Func] = {}
        for cube, successor in m.split_cubes(routing.live, labels):
            pred = m.cube(cube)
            chi = m.rename(successor, ns_to_cs)
            if trim or subsets.violated[k]:
                parts = [(pred, subsets.violated[k])]
            else:
                parts = [(pred & ~q, False), (pred & q, True)]
            for part, violated in parts:
                if part.is_false:
                    continue
                target, created = subsets.lookup(chi, violated)
                if created:
                    queue.append(target)
                grouped[target] = grouped[target] | part if target in grouped else part
        edges.extend(Edge(k, pred, dst) for dst, pred in grouped.items())

        if not subsets.violated[k]:
            if trim and not routing.dcn.is_false:
                dcn_pred[k] = routing.dcn
            defined = m.exists(routing.live, ns)
            rest = ~q & ~defined
            if not rest.is_false:
                dca_pred[k] = rest

        if processed % GC_INTERVAL == 0:
            m.collect_garbage()

    stats.explored = len(subsets)
    states = [ExplicitState(accepting=not violated) for violated in subsets.violated]
    if dcn_pred:
        dcn = len(states)
        states.append(ExplicitState(accepting=False, kind=StateKind.DCN))
        edges.append(Edge(dcn, m.true, dcn))
        edges.extend(Edge(src, pred, dcn) for src, pred in dcn_pred.items())
    if dca_pred:
        dca = len(states)
        states.append(ExplicitState(accepting=True, kind=StateKind.DCA))
        edges.append(Edge(dca, m.true, dca))
        edges.extend(Edge(src, pred, dca) for src, pred in dca_pred.items())
    stats.dcn_edges = len(dcn_pred)
    stats.dca_edges = len(dca_pred)
    automaton = ExplicitAutomaton(
        manager=m,
        label_vars=labels,
        states=tuple(states),
        initial=0,
        edges=tuple(edges),
        input_vars=p.roles["u"],
        name=f"{p.name}_csf",
    )
    return automaton, stats
