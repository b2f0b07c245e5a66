from .bench_service import BenchService, generate_family, run_bench_instance
from .solver_service import SolverService, flow_path
from .verification_service import VerificationService, load_aut

__all__ = [
    "BenchService",
    "SolverService",
    "VerificationService",
    "flow_path",
    "generate_family",
    "load_aut",
    "run_bench_instance",
]
