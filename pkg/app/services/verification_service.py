from pathlib import Path
from typing import Optional

from app.automata import ExplicitAutomaton, parse_aut
from app.core.config import Settings
from app.core.errors import FormatError
from app.core.logging import logger
from app.core.metrics import metrics, time_operation
from app.netlist import parse_split_spec, read_blif_lite
from app.schemas import VerificationReport
from app.solver import build_problem, verify_solution


def load_aut(path: str) -> ExplicitAutomaton:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"cannot read automaton '{path}': {e.strerror}") from e
    return parse_aut(text)


class VerificationService:
    """Checks a CSF stored as AUT against the circuit and split it was solved for"""

    def __init__(self, settings: Settings):
        self.settings = settings

    @time_operation("verification_service.verify")
    def verify(self, circuit: str, split_spec: str, csf_path: str,
               xp_path: Optional[str] = None) -> VerificationReport:
        network = read_blif_lite(circuit)
        problem, _ = build_problem(network, parse_split_spec(network, split_spec), self.settings.node_limit)
        csf = load_aut(csf_path)
        xp = load_aut(xp_path) if xp_path else None
        result = verify_solution(problem, csf, xp)
        report = VerificationReport(
            name=network.name,
            xp_contained=result.xp_contained,
            composition_contained=result.composition_contained,
            particular_equivalent=result.particular_equivalent,
        )
        status = "passed" if report.all_passed else "failed"
        metrics.increment_counter("verification_service.verify", 1, {"status": status})
        logger.info(f"[VERIFY] '{network.name}' against {csf_path}: {status}")
        return report
