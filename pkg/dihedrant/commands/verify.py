"""
Verify Command
Runs one named verification suite; exit status 1 when any check fails.
"""

from typing import Any, Dict, Tuple

from ..config import Limits
from ..verification import SUITES, SuiteParams, run_suite


class VerifyCommand:
    """Run a named suite and report every sub-check"""

    CATEGORY = "Verification"
    NAME = "verify"
    HELP = "run a named verification suite"
    FUNCTION = "run"

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument("theorem", help=f"one of: {', '.join(SUITES)}")
        parser.add_argument("--p", type=int, default=3, help="odd prime for the D_8p suites (default: 3)")
        parser.add_argument("--n", type=int, default=None, help="n, or the largest n for exhaustive suites")
        parser.add_argument("--pi", type=int, choices=(0, 1), default=1, help="reflection class parity (default: 1)")
        parser.add_argument("--exhaustive", action="store_true", help="enumerate every set instead of sampling")
        parser.add_argument("--samples", type=int, default=500, help="random samples for prop21 (default: 500)")
        parser.add_argument("--seed", type=int, default=0, help="random seed for prop21 (default: 0)")

    def run(self, args, limits: Limits) -> Tuple[Dict[str, Any], int]:
        params = SuiteParams(
            p=args.p,
            n=args.n,
            pi=args.pi,
            exhaustive=args.exhaustive,
            samples=args.samples,
            seed=args.seed,
            limits=limits,
        )
        report = run_suite(args.theorem, params)
        return report.to_json(), 0 if report.passed else 1


# Command mappings for registration
COMMAND_CLASS_MAPPINGS = {
    "verify": VerifyCommand,
}

COMMAND_DISPLAY_NAME_MAPPINGS = {
    "verify": "Verify Statement",
}
