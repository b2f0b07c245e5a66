"""
Subcommand handlers; each returns a process exit code
"""
import argparse
import asyncio
import json
import sys
from pathlib import Path

from app.core.di_container import get_container
from app.core.logging import logger
from app.core.metrics import metrics
from app.netlist import parse_split_spec, read_blif_lite
from app.oracle import table_solve, table_to_aut_text
from app.schemas import SolveRequest
from app.services import generate_family

EXIT_OK = 0
EXIT_FORMAT = 1
EXIT_NO_SOLUTION = 2
EXIT_RESOURCE = 3


def cmd_solve(args: argparse.Namespace) -> int:
    request = SolveRequest(
        circuit=args.circuit,
        split=args.split,
        flow=args.flow,
        out=args.out,
        dot=args.dot,
        emit_split=args.emit_split,
        xp_out=args.xp_out,
        node_limit=args.node_limit,
        subset_limit=args.subset_limit,
        timeout_s=args.timeout_s,
        trim=args.trim,
    )
    service = get_container().solver_service
    try:
        results = service.solve(request)
    finally:
        if args.metrics:
            print(json.dumps(metrics.get_metrics(), indent=2, sort_keys=True, default=str), file=sys.stderr)
    for stats in results:
        print(stats.line())
    if any(stats.empty for stats in results):
        print(f"no solution: the CSF of '{results[0].name}' is empty", file=sys.stderr)
        return EXIT_NO_SOLUTION
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    service = get_container().verification_service
    report = service.verify(args.circuit, args.split, args.csf, args.xp)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.all_passed else EXIT_NO_SOLUTION


def cmd_bench(args: argparse.Namespace) -> int:
    manifest = args.manifest
    if manifest is None:
        if not args.generate:
            print("bench needs --manifest or --generate", file=sys.stderr)
            return EXIT_FORMAT
        manifest = str(generate_family(str(Path(args.csv).parent / "family"), args.generate))
    service = get_container().bench_service
    rows = asyncio.run(service.run(manifest, args.csv, args.timeout_s, args.jobs))
    logger.info(f"[BENCH] {sum(1 for row in rows if row.error is None)} of {len(rows)} instances loaded")
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    get_container().solver_service.export(args.input, args.dot, args.aut, args.completed)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    network = read_blif_lite(args.circuit)
    table = table_solve(network, parse_split_spec(network, args.split))
    Path(args.out).write_text(table_to_aut_text(table, f"{network.name}_oracle"), encoding="utf-8")
    print(f"states={len(table.states)}")
    return EXIT_OK if table.states else EXIT_NO_SOLUTION


COMMANDS = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "bench": cmd_bench,
    "export": cmd_export,
    "oracle": cmd_oracle,
}
