from dataclasses import dataclass
from typing import List, Optional

from app.automata import ExplicitAutomaton, StateKind
from app.dd import VarSet


@dataclass
class CsfStats:
    flow: str
    explored: int = 0
    states: int = 0
    elapsed_s: float = 0.0
    dcn_edges: int = 0
    dca_edges: int = 0
    # true when every explored subset was a single state pair
    deterministic_after_hiding: Optional[bool] = None


@dataclass
class Csf:
    automaton: ExplicitAutomaton
    u_vars: VarSet
    stats: CsfStats

    @property
    def is_empty(self) -> bool:
        return self.automaton.is_empty

    def audit(self) -> List[str]:
        """Names of failed structural checks (empty when all pass)"""
        a = self.automaton
        failures = []
        if not a.is_deterministic():
            failures.append("deterministic")
        if not a.all_accepting():
            failures.append("all-accepting")
        if not a.is_u_progressive(self.u_vars):
            failures.append("u-progressive")
        if any(s.kind == StateKind.DCN for s in a.states):
            failures.append("no-DCN")
        return failures
