from .bench import CNC, CSV_HEADER, MISSING, BenchRow, ManifestEntry, bench_csv
from .report import SolveRequest, SolveStats, VerificationReport

__all__ = [
    "BenchRow",
    "CNC",
    "CSV_HEADER",
    "MISSING",
    "ManifestEntry",
    "SolveRequest",
    "SolveStats",
    "VerificationReport",
    "bench_csv",
]
