"""
Command-line front end.

Exit codes: 0 success, 1 malformed input or usage error, 2 no solution (empty
CSF) or failed verification, 3 resource limit or timeout.
"""
import sys
from typing import List, Optional

from app.cli.commands import COMMANDS, EXIT_FORMAT, EXIT_NO_SOLUTION, EXIT_OK, EXIT_RESOURCE
from app.cli.parser import build_parser
from app.core.config import settings
from app.core.di_container import init_container
from app.core.errors import FormatError, ResourceError, UsageError
from app.core.logging import logger, setup_logging


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_level:
        setup_logging(log_level=args.log_level)

    overrides = {
        "node_limit": getattr(args, "node_limit", None),
        "subset_limit": getattr(args, "subset_limit", None),
        "timeout_s": getattr(args, "timeout_s", None),
        "seed": getattr(args, "seed", None),
        "bench_jobs": getattr(args, "jobs", None),
        "trim_violations": getattr(args, "trim", None),
    }
    init_container(settings.with_overrides(**overrides))
    logger.debug(f"[CLI] {args.command}: {vars(args)}")

    try:
        return COMMANDS[args.command](args)
    except (FormatError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FORMAT
    except ResourceError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE


__all__ = ["EXIT_FORMAT", "EXIT_NO_SOLUTION", "EXIT_OK", "EXIT_RESOURCE", "build_parser", "main"]
