"""
Dihedrant CLI
Command-line entry point: parse specs, run analyses and suites, emit reports.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error, 3 resource cap.
"""

import argparse
import logging
import sys
from typing import List, Optional

from . import __version__
from .commands import COMMAND_CLASS_MAPPINGS
from .commands.report_output import ReportOutput, render_report
from .config import DEFAULT_LIMITS, configure_logging
from .errors import (
    DihedrantError,
    DSLParseError,
    ResourceLimitError,
    VerificationFailure,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=ReportOutput.FORMATS, default="json",
                        help="report format (default: json)")
    common.add_argument("--out", default=None,
                        help="write the report here instead of stdout (scan: JSONL records file)")
    common.add_argument("--jobs", type=int, default=None,
                        help="scan worker processes (default: logical CPU count)")
    common.add_argument("--node-cap", type=int, default=None,
                        help=f"automorphism search node cap (default: {DEFAULT_LIMITS.node_cap})")
    common.add_argument("--arc-cap", type=int, default=None,
                        help=f"s-arc enumeration cap (default: {DEFAULT_LIMITS.arc_cap})")
    common.add_argument("--no-timings", action="store_true",
                        help="omit timings so reports compare byte for byte")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dihedrant",
        description="Inner-automorphic Cayley graphs on dihedral groups",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_options()
    for name, command in COMMAND_CLASS_MAPPINGS.items():
        sub = subparsers.add_parser(name, parents=[common], help=command.HELP, description=command.__doc__)
        command.add_arguments(sub)
    return parser


def _write(text: str, path: Optional[str]):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    configure_logging()
    args = build_parser().parse_args(argv)
    limits = DEFAULT_LIMITS.with_overrides(node_cap=args.node_cap, arc_cap=args.arc_cap)
    command = COMMAND_CLASS_MAPPINGS[args.command]()

    try:
        report, code = getattr(command, command.FUNCTION)(args, limits)
    except DSLParseError as e:
        print(f"error: {e}", file=sys.stderr)
        if e.text:
            print(e.pointer(), file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except VerificationFailure as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    except DihedrantError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    out = None if getattr(command, "WRITES_OUT", False) else args.out
    try:
        _write(render_report(report, args.format), out)
    except OSError as e:
        print(f"error: cannot write report to {out}: {e}", file=sys.stderr)
        return EXIT_USAGE
    return code


if __name__ == "__main__":
    sys.exit(main())
