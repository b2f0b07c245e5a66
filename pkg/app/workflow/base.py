from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

from app.core.errors import CsfError
from app.core.logging import logger
from app.core.metrics import TimingContext, metrics


class FlowStep(ABC):
    """Abstract base class for all flow steps"""

    def __init__(self, step_id: str, config: Dict[str, Any] = None):
        self.step_id = step_id
        self.config = config or {}

    def source(self) -> str:
        return self.config.get("source", "x")

    def target(self) -> str:
        return self.config.get("target", self.source())

    @abstractmethod
    def process(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """Process the state and return updated state"""


class FlowProcessor:
    """
    Runs a flow definition step by step along its edges.

    Step registry entries use the format
    {"step_type": {"class": StepClass, "dependencies": ["service1", ...]}};
    each declared dependency is passed to the step constructor by name.
    """

    def __init__(self, definition: Dict[str, Any], registry: Dict[str, Dict[str, Any]],
                 services: Dict[str, Any] = None):
        self.definition = definition
        self.registry = registry
        self.services = services or {}
        self.steps: Dict[str, FlowStep] = {}
        self._build_steps()

    def _build_steps(self):
        for step_def in self.definition.get("nodes", []):
            step_type = step_def["type"]
            step_id = step_def["id"]
            if step_type not in self.registry:
                raise ValueError(f"Unknown step type: {step_type}")

            entry = self.registry[step_type]
            if not isinstance(entry, dict) or "class" not in entry:
                raise ValueError(
                    f"Invalid registry entry for step type '{step_type}'. "
                    "Expected format: {'class': StepClass, 'dependencies': [...]}"
                )
            kwargs = {"step_id": step_id, "config": dict(step_def.get("config", {}))}
            for dependency in entry.get("dependencies", []):
                if dependency not in self.services:
                    raise ValueError(f"Required service '{dependency}' not available for step type '{step_type}'")
                kwargs[dependency] = self.services[dependency]
            self.steps[step_id] = entry["class"](**kwargs)

    def _get_next_steps(self, step_id: str) -> List[str]:
        return [edge["target"] for edge in self.definition.get("edges", []) if edge["source"] == step_id]

    def _get_previous_steps(self, step_id: str) -> List[str]:
        return [edge["source"] for edge in self.definition.get("edges", []) if edge["target"] == step_id]

    def _start_step(self) -> Optional[str]:
        if "start_node" in self.definition:
            return self.definition["start_node"]
        for step_def in self.definition.get("nodes", []):
            if not self._get_previous_steps(step_def["id"]):
                return step_def["id"]
        return None

    def execute(self, initial_state: Dict[str, Any]) -> Dict[str, Any]:
        state = dict(initial_state)
        state.setdefault("trace", [])
        flow_name = self.definition.get("name", "flow")
        step_id = self._start_step()
        visited = set()
        while step_id is not None:
            if step_id in visited:
                raise ValueError(f"Flow '{flow_name}' revisits step {step_id}")
            visited.add(step_id)
            step = self.steps.get(step_id)
            if step is None:
                raise ValueError(f"Step not found: {step_id}")

            logger.debug(f"[FLOW] {flow_name} - running step {step_id} ({type(step).__name__})")
            try:
                with TimingContext(metrics, "flow.step", {"flow": flow_name, "step": step_id}):
                    state = step.process(state)
            except CsfError:
                raise
            except Exception as e:
                raise RuntimeError(f"Step {step_id} failed: {str(e)}") from e
            state["trace"].append(step_id)

            next_steps = self._get_next_steps(step_id)
            if len(next_steps) > 1:
                raise ValueError(f"Step {step_id} has {len(next_steps)} successors; flows are linear")
            step_id = next_steps[0] if next_steps else None
        return state

    def get_execution_plan(self) -> List[Dict[str, Any]]:
        """Step order with each step's type and configuration"""
        types = {d["id"]: d for d in self.definition.get("nodes", [])}
        plan = []
        step_id = self._start_step()
        while step_id is not None and len(plan) <= len(types):
            step_def = types[step_id]
            plan.append({"id": step_id, "type": step_def["type"], "config": step_def.get("config", {})})
            next_steps = self._get_next_steps(step_id)
            step_id = next_steps[0] if next_steps else None
        return plan
