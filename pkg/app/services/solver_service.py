"""
Solve orchestration: circuit loading, split resolution, flow runs and artifact
writing
"""
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from app.automata import ExplicitAutomaton, complete_explicit, emit_aut, to_dot
from app.core.config import Settings
from app.core.errors import UsageError
from app.core.logging import logger
from app.core.metrics import metrics, time_operation
from app.netlist import Network, parse_split_spec, read_blif_lite, write_blif_lite
from app.schemas import SolveRequest, SolveStats
from app.solver import Csf, Problem, VerificationContext, build_problem, solve_monolithic, solve_partitioned
from app.services.verification_service import load_aut


def flow_names(flow: str) -> List[str]:
    return ["partitioned", "monolithic"] if flow == "both" else [flow]


def flow_path(path: Optional[str], flow: str, both: bool) -> Optional[Path]:
    """`x.aut` for a single flow; `x.partitioned.aut` and `x.monolithic.aut` for both"""
    if path is None:
        return None
    target = Path(path)
    if not both:
        return target
    return target.with_name(f"{target.stem}.{flow}{target.suffix}")


def _write(path: Path, text: str) -> None:
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


class SolverService:
    """Runs the solving flows on BLIF-lite circuits"""

    def __init__(self, settings: Settings):
        self.settings = settings
        self._flows: Dict[str, Callable[..., Csf]] = {
            "partitioned": self._run_partitioned,
            "monolithic": self._run_monolithic,
        }

    def load_network(self, path: str) -> Network:
        network = read_blif_lite(path)
        logger.info(
            f"[SOLVER] loaded '{network.name}': {len(network.inputs)} inputs, "
            f"{len(network.outputs)} outputs, {len(network.latches)} latches, {len(network.gates)} gates"
        )
        return network

    def new_problem(self, network: Network, split_spec: str,
                    node_limit: Optional[int] = None, timeout_s: Optional[float] = None) -> Problem:
        """A problem on a fresh manager with the deadline armed"""
        x_latches = parse_split_spec(network, split_spec)
        problem, _ = build_problem(network, x_latches, node_limit or self.settings.node_limit,
                                   timeout_s or self.settings.timeout_s)
        return problem

    def _run_partitioned(self, p: Problem, subset_limit: Optional[int], trim: bool) -> Csf:
        return solve_partitioned(p, subset_limit, trim=trim)

    def _run_monolithic(self, p: Problem, subset_limit: Optional[int], trim: bool) -> Csf:
        return solve_monolithic(p, subset_limit)

    def run_flow(self, network: Network, split_spec: str, flow: str,
                 node_limit: Optional[int] = None, subset_limit: Optional[int] = None,
                 timeout_s: Optional[float] = None, trim: Optional[bool] = None) -> Tuple[Problem, Csf]:
        if flow not in self._flows:
            raise UsageError(f"unknown flow '{flow}'")
        problem = self.new_problem(network, split_spec, node_limit, timeout_s)
        trim = self.settings.trim_violations if trim is None else trim
        try:
            csf = self._flows[flow](problem, subset_limit or self.settings.subset_limit, trim)
        except Exception:
            metrics.increment_counter("solver_service.flow", 1, {"flow": flow, "status": "error"})
            raise
        finally:
            problem.manager.set_deadline(None)
        metrics.increment_counter("solver_service.flow", 1, {"flow": flow, "status": "ok"})
        return problem, csf

    @time_operation("solver_service.solve")
    def solve(self, request: SolveRequest) -> List[SolveStats]:
        network = self.load_network(request.circuit)
        flows = flow_names(request.flow)
        logger.debug(f"[SOLVER] flows={flows} seed={self.settings.seed} environment={self.settings.environment}")
        both = len(flows) > 1
        results = []
        for flow in flows:
            problem, csf = self.run_flow(
                network,
                request.split,
                flow,
                node_limit=request.node_limit,
                subset_limit=request.subset_limit,
                timeout_s=request.timeout_s,
                trim=request.trim,
            )
            out = flow_path(request.out, flow, both)
            if out is not None:
                _write(out, emit_aut(csf.automaton))
            dot = flow_path(request.dot, flow, both)
            if dot is not None:
                _write(dot, to_dot(csf.automaton))
            stats = SolveStats(
                name=network.name,
                flow=flow,
                states=csf.stats.states,
                explored=csf.stats.explored,
                time_s=csf.stats.elapsed_s,
                dcn_edges=csf.stats.dcn_edges,
                dca_edges=csf.stats.dca_edges,
                deterministic_after_hiding=csf.stats.deterministic_after_hiding,
                out=None if out is None else str(out),
            )
            logger.info(f"[SOLVER] {flow} '{network.name}': {stats.line()}")
            results.append(stats)

        if request.emit_split or request.xp_out:
            self.export_split(network, request.split, request.emit_split, request.xp_out)
        return results

    def export_split(self, network: Network, split_spec: str, directory: Optional[str],
                     xp_out: Optional[str]) -> None:
        """Write F and X_p as BLIF-lite and, optionally, X_p's automaton as AUT"""
        problem = self.new_problem(network, split_spec)
        problem.manager.set_deadline(None)
        split = problem.split
        if directory:
            target = Path(directory)
            _write(target / f"{network.name}_f.blif", write_blif_lite(split.fixed))
            _write(target / f"{network.name}_xp.blif", write_blif_lite(split.unknown))
            logger.info(f"[SOLVER] split components written to {target}")
        if xp_out:
            _write(Path(xp_out), emit_aut(VerificationContext(problem).particular()))

    @time_operation("solver_service.export")
    def export(self, source: str, dot: str, aut: Optional[str] = None, completed: bool = False) -> ExplicitAutomaton:
        """Render an AUT file as DOT, optionally rewriting it in canonical AUT form first"""
        automaton = load_aut(source)
        if aut:
            _write(Path(aut), emit_aut(automaton))
        if completed:
            automaton = complete_explicit(automaton)
        _write(Path(dot), to_dot(automaton))
        logger.info(f"[SOLVER] exported '{source}' ({automaton.num_states} states) to {dot}")
        return automaton
