"""
Steps operating on explicit automata
"""
from typing import Any, Dict

from app.automata import StateKind, complete_explicit, prefix_close, progressive
from app.workflow.base import FlowStep
from app.workflow.steps.symbolic_steps import role_vars


class CompleteExplicitStep(FlowStep):
    def process(self, state: Dict[str, Any]) -> Dict[str, Any]:
        kind = StateKind(self.config.get("kind", "DC"))
        accepting = bool(self.config.get("accepting", False))
        state[self.target()] = complete_explicit(state[self.source()], kind, accepting)
        return state


class PrefixCloseStep(FlowStep):
    def process(self, state: Dict[str, Any]) -> Dict[str, Any]:
        state[self.target()] = prefix_close(state[self.source()])
        return state


class ProgressiveStep(FlowStep):
    def process(self, state: Dict[str, Any]) -> Dict[str, Any]:
        inputs = role_vars(state, self.config.get("inputs", ["u"]))
        state[self.target()] = progressive(state[self.source()], inputs)
        return state
