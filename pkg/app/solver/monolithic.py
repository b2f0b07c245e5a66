"""
Monolithic flow: the generic solution pipeline over full transition relations.
"""
from dataclasses import replace
from typing import Optional

from app.automata import from_machine
from app.core.logging import logger
from app.core.metrics import TimingContext, metrics
from app.solver.csf import Csf, CsfStats
from app.solver.problem import Problem
from app.workflow import MONOLITHIC_FLOW, STEP_REGISTRY
from app.workflow.base import FlowProcessor


def solve_monolithic(p: Problem, subset_limit: Optional[int] = None) -> Csf:
    processor = FlowProcessor(MONOLITHIC_FLOW, STEP_REGISTRY, {"limits": {"subset_limit": subset_limit}})
    with TimingContext(metrics, "solver.flow", {"flow": "monolithic"}) as timing:
        state = {
            "roles": p.roles,
            "f": from_machine(p.f),
            "s": from_machine(p.s),
        }
        state = processor.execute(state)
    result = replace(state["x"], name=f"{p.name}_csf")
    stats = CsfStats(
        flow="monolithic",
        explored=state.get("explored", result.num_states),
        states=result.num_states,
        elapsed_s=timing.elapsed,
    )
    logger.info(f"[SOLVER] monolithic '{p.name}': {stats.states} states in {stats.elapsed_s:.3f}s")
    return Csf(automaton=result, u_vars=p.roles["u"], stats=stats)
