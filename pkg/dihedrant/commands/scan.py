"""
Scan Command
Case (v) scan over one or more n, persisted as JSONL.
"""

from typing import Any, Dict, Tuple

from ..config import Limits
from ..errors import UsageError
from ..scan_manager import ScanConfig, default_jobs, get_scan_manager


class ScanCommand:
    """Evaluate every case (v) candidate for each n; resumable through --out"""

    CATEGORY = "Scan"
    NAME = "scan"
    HELP = "scan case (v) connection sets for arc-transitivity"
    FUNCTION = "run"
    # --out names the JSONL file rather than a copy of the report
    WRITES_OUT = True

    @classmethod
    def add_arguments(cls, parser):
        parser.add_argument("--n", type=int, action="append", required=True,
                            help="even n to scan; repeat for several")

    def run(self, args, limits: Limits) -> Tuple[Dict[str, Any], int]:
        config = ScanConfig(
            n_values=list(args.n),
            out_path=args.out,
            jobs=args.jobs or default_jobs(),
            limits=limits,
            timings=not args.no_timings,
        )
        manager = get_scan_manager()
        success, error = manager.run(config)
        if not success:
            raise UsageError(error)

        records = [r.to_record(config.timings) for r in manager.results]
        report = {
            "n": config.n_values,
            "out": config.out_path,
            "records": records,
            "evaluated": len(records),
            "skipped": manager.skipped,
            "arc_transitive": [r["delta"] for r in records if r["arc_transitive"]],
            "errors": sum(1 for r in records if r["error"]),
        }
        return report, 0


# Command mappings for registration
COMMAND_CLASS_MAPPINGS = {
    "scan": ScanCommand,
}

COMMAND_DISPLAY_NAME_MAPPINGS = {
    "scan": "Case (v) Scan",
}
