"""
Argument parsers for the csf command line
"""
import argparse
from typing import List

from app.solver import FLOWS


def _limits(s: argparse.ArgumentParser) -> None:
    s.add_argument("--node-limit", type=int, help="Abort when the decision diagram exceeds N nodes")
    s.add_argument("--subset-limit", type=int, help="Abort after N subset states")
    s.add_argument("--timeout-s", type=float, help="Abort a flow after N seconds")


def add_argparsers(subparsers: argparse._SubParsersAction) -> List[argparse.ArgumentParser]:
    result: List[argparse.ArgumentParser] = []

    s = subparsers.add_parser("solve", help="Compute the complete sequential flexibility of a latch split")
    s.add_argument("--circuit", required=True, help="BLIF-lite circuit")
    s.add_argument("--split", required=True, help="Comma-separated latch names, or k:N for the first N latches")
    s.add_argument("--flow", choices=list(FLOWS) + ["both"], default="partitioned")
    s.add_argument("--out", help="AUT output; with --flow both, one file per flow")
    s.add_argument("--dot", help="DOT output")
    s.add_argument("--seed", type=int, help="Seed recorded with the run")
    s.add_argument("--no-trim", dest="trim", action="store_false", default=None,
                   help="Explore successors of non-conforming labels instead of trimming them")
    s.add_argument("--emit-split", metavar="DIR", help="Write F and X_p as BLIF-lite into DIR")
    s.add_argument("--xp-out", help="Write X_p's automaton as AUT")
    s.add_argument("--metrics", action="store_true", help="Dump collected metrics to stderr as JSON")
    _limits(s)
    result.append(s)

    s = subparsers.add_parser("verify", help="Check a solution against its circuit and split")
    s.add_argument("--circuit", required=True)
    s.add_argument("--split", required=True)
    s.add_argument("--csf", required=True, help="Solution automaton (AUT)")
    s.add_argument("--xp", help="Particular solution (AUT); defaults to the split's own X_p")
    s.add_argument("--node-limit", type=int)
    result.append(s)

    s = subparsers.add_parser("bench", help="Compare the partitioned and monolithic flows")
    s.add_argument("--manifest", help="One '<name> <blif path> <split spec>' per line")
    s.add_argument("--csv", required=True)
    s.add_argument("--generate", type=int, metavar="N",
                   help="Write a growing counter family of N circuits next to the CSV and bench it")
    s.add_argument("--jobs", type=int, help="Instances solved in parallel")
    _limits(s)
    result.append(s)

    s = subparsers.add_parser("export", help="Render an AUT automaton as DOT")
    s.add_argument("--in", dest="input", required=True, help="AUT input")
    s.add_argument("--dot", required=True)
    s.add_argument("--aut", help="Also write the canonical AUT form")
    s.add_argument("--completed", action="store_true", help="Add the DC completion sink before rendering")
    result.append(s)

    s = subparsers.add_parser("oracle", help="Reference solution by exhaustive enumeration (small circuits only)")
    s.add_argument("--circuit", required=True)
    s.add_argument("--split", required=True)
    s.add_argument("--out", required=True)
    result.append(s)

    return result


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="csf", description="Complete sequential flexibility toolkit")
    parser.add_argument("--log-level", help="Console log level (default from CSF_LOG_LEVEL)")
    subparsers = parser.add_subparsers(dest="command", required=True)
    add_argparsers(subparsers)
    return parser
