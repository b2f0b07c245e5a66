"""
Steps operating on symbolic automata
"""
from typing import Any, Dict, Iterable

from app.automata import complement_det, complete, determinize, encode_explicit, expand_support, hide, product
from app.automata.symbolic import SymbolicAutomaton
from app.core.errors import UsageError
from app.core.logging import logger
from app.dd import VarSet, varset
from app.workflow.base import FlowStep


def role_vars(state: Dict[str, Any], roles: Iterable[str]) -> VarSet:
    table = state["roles"]
    try:
        return varset(v for role in roles for v in table[role])
    except KeyError as e:
        raise UsageError(f"unknown label role {e.args[0]!r}") from None


class CompleteStep(FlowStep):
    """Add the DC state to a symbolic automaton"""

    def process(self, state: Dict[str, Any]) -> Dict[str, Any]:
        state[self.target()] = complete(state[self.source()])
        return state


class DeterminizeStep(FlowStep):
    """
    Subset construction. In `symbolic` mode the result is re-encoded with
    fresh state bits (a deterministic input passes through unchanged); in
    `explicit` mode the explicit automaton is kept.
    """

    def __init__(self, step_id: str, config: Dict[str, Any] = None, limits: Dict[str, Any] = None):
        super().__init__(step_id, config)
        self.limits = limits or {}

    def process(self, state: Dict[str, Any]) -> Dict[str, Any]:
        a = state[self.source()]
        mode = self.config.get("mode", "explicit")
        if mode == "symbolic" and isinstance(a, SymbolicAutomaton) and a.deterministic:
            state[self.target()] = a
            return state
        explicit = determinize(a, self.limits.get("subset_limit"))
        logger.debug(f"[FLOW] {self.step_id} - {explicit.num_states} subset states")
        if mode == "symbolic":
            explicit = encode_explicit(explicit, a.manager, prefix=f"{a.name or 'd'}.det")
        else:
            state["explored"] = explicit.num_states
        state[self.target()] = explicit
        return state


class ComplementStep(FlowStep):
    def process(self, state: Dict[str, Any]) -> Dict[str, Any]:
        state[self.target()] = complement_det(state[self.source()])
        return state


class SupportStep(FlowStep):
    """Declare the automaton over a wider label set"""

    def process(self, state: Dict[str, Any]) -> Dict[str, Any]:
        labels = role_vars(state, self.config["labels"])
        state[self.target()] = expand_support(state[self.source()], labels)
        return state


class HideStep(FlowStep):
    """Quantify every label outside the kept roles"""

    def process(self, state: Dict[str, Any]) -> Dict[str, Any]:
        keep = role_vars(state, self.config["labels"])
        state[self.target()] = hide(state[self.source()], keep)
        return state


class ProductStep(FlowStep):
    def process(self, state: Dict[str, Any]) -> Dict[str, Any]:
        left = state[self.config["left"]]
        if self.config.get("complete_left"):
            left = complete(left)
        right = state[self.config["right"]]
        state[self.config.get("target", "x")] = product(left, right)
        return state
