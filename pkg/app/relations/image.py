"""
Image computation over a partitioned relation with early quantification.
"""
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from app.core.errors import UsageError
from app.core.logging import logger
from app.core.metrics import metrics
from app.dd import Func, Manager, VarId, VarSet, varset
from app.netlist.elaborate import PartitionedMachine
from app.relations.partitions import transition_parts


@dataclass(frozen=True)
class StateSet:
    chi: Func


@dataclass(frozen=True)
class Schedule:
    """Partition indices in conjunction order, each with the variables
    quantified right after that partition is conjoined"""
    steps: Tuple[Tuple[int, VarSet], ...]

    @property
    def quantified(self) -> VarSet:
        return varset(v for _, vs in self.steps for v in vs)


def make_schedule(parts: Sequence[Func], quantify: VarSet) -> Schedule:
    """Greedy linear schedule: smallest supports first, every variable
    quantified after the last partition that mentions it"""
    if not parts:
        return Schedule(steps=())
    m = parts[0].manager
    supports = [m.support(p) for p in parts]
    order = sorted(range(len(parts)), key=lambda k: (len(supports[k]), k))
    last_use: Dict[VarId, int] = {}
    for position, k in enumerate(order):
        for v in supports[k] & quantify:
            last_use[v] = position
    unused = quantify - set(last_use)
    steps = []
    for position, k in enumerate(order):
        vs = {v for v, p in last_use.items() if p == position}
        if position == 0:
            vs |= unused
        steps.append((k, varset(vs)))
    return Schedule(steps=tuple(steps))


def image(parts: Sequence[Func], zeta: StateSet, quantify: VarSet,
          sched: Optional[Schedule] = None) -> Func:
    """exists(quantify, zeta & AND(parts)) computed along `sched`"""
    m = zeta.chi.manager
    if sched is None:
        sched = make_schedule(parts, quantify)
    elif sorted(k for k, _ in sched.steps) != list(range(len(parts))):
        raise UsageError("schedule does not cover every partition exactly once")
    metrics.increment_counter("relations.image")
    acc = zeta.chi
    if acc.is_false:
        return acc
    if not sched.steps:
        return m.exists(acc, quantify)
    for k, vs in sched.steps:
        acc = m.and_exists(acc, parts[k], vs)
        if acc.is_false:
            break
    return acc


def fixpoint_reach(parts: Sequence[Func], init: Func, quantify: VarSet,
                   ns_to_cs: Mapping[VarId, VarId]) -> Func:
    """Least fixed point of the image from `init`, iterating on the frontier only"""
    m = init.manager
    sched = make_schedule(parts, quantify)
    reached = init
    frontier = init
    rounds = 0
    while not frontier.is_false:
        rounds += 1
        successors = m.rename(image(parts, StateSet(frontier), quantify, sched), ns_to_cs)
        frontier = successors & ~reached
        reached = reached | frontier
    logger.debug(f"[RELATIONS] reachability converged after {rounds} rounds")
    return reached


def reachable(pm: PartitionedMachine) -> StateSet:
    m: Manager = pm.manager
    quantify = pm.input_vars | varset(pm.cs_vars)
    init = m.cube(pm.init)
    return StateSet(fixpoint_reach(transition_parts(pm), init, quantify, pm.ns_to_cs))


def schedule_valid(parts: Sequence[Func], sched: Schedule) -> bool:
    """Structural audit: no variable is quantified before a later partition uses it"""
    m = parts[0].manager if parts else None
    seen: List[VarId] = []
    for position, (k, vs) in enumerate(sched.steps):
        later = [m.support(parts[j]) for j, _ in sched.steps[position + 1:]]
        if any(v in s for v in vs for s in later):
            return False
        seen.extend(vs)
    return len(seen) == len(set(seen))
