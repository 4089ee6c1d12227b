"""
Report Output
Renders command reports as key-sorted JSON or aligned plain text.
"""

import json
from typing import Any, Dict, List, Tuple


class ReportOutput:
    """
    Formats a report dictionary for stdout or a file.
    JSON output is stable: sorted keys, fixed indentation.
    """

    FORMATS = ("json", "text")

    def render(self, report: Dict[str, Any], fmt: str = "json") -> str:
        if fmt == "json":
            return json.dumps(report, sort_keys=True, indent=2) + "\n"
        if fmt == "text":
            return self._convert_to_text(report)
        raise ValueError(f"unknown format {fmt!r}")

    def _convert_to_text(self, report: Dict[str, Any]) -> str:
        lines: List[str] = []

        # Verification reports: one line per check
        checks = report.get("checks")
        if isinstance(checks, list):
            status = "PASS" if report.get("passed") else "FAIL"
            lines.append(f"{report.get('name', 'verify')}: {status}")
            for check in checks:
                mark = "ok  " if check["passed"] else "FAIL"
                detail = f"  ({check['detail']})" if check.get("detail") else ""
                lines.append(f"  {mark} {check['name']}{detail}")
            report = {"data": report.get("data", {})}

        # Scan reports: one line per record
        records = report.get("records")
        if isinstance(records, list):
            for record in records:
                delta = "|".join(record["delta"])
                flag = "arc-transitive" if record["arc_transitive"] else "-"
                error = f"  error: {record['error']}" if record.get("error") else ""
                lines.append(f"n={record['n']} pi={record['pi']} delta={delta}: {flag}{error}")
            report = {k: v for k, v in report.items() if k != "records"}

        pairs = self._flatten(report)
        if pairs:
            width = max(len(key) for key, _ in pairs)
            lines.extend(f"{key.ljust(width)}  {value}" for key, value in pairs)
        return "\n".join(lines) + "\n"

    def _flatten(self, value: Any, prefix: str = "") -> List[Tuple[str, str]]:
        """Nested dicts become dotted keys; orders print as 2^17 * 3^2 * 5"""
        if isinstance(value, dict) and value and self._is_factored(value):
            return [(prefix, self._format_factored(value))]
        if isinstance(value, dict):
            pairs = []
            for key in sorted(value):
                name = f"{prefix}.{key}" if prefix else str(key)
                pairs.extend(self._flatten(value[key], name))
            return pairs
        if value is None:
            return [(prefix, "-")]
        if isinstance(value, list):
            return [(prefix, ", ".join(str(x) for x in value) or "-")]
        return [(prefix, str(value))]

    @staticmethod
    def _is_factored(value: Dict[str, Any]) -> bool:
        return all(k.isdigit() and isinstance(v, int) for k, v in value.items())

    @staticmethod
    def _format_factored(value: Dict[str, int]) -> str:
        parts = []
        for base in sorted(value, key=int):
            exponent = value[base]
            parts.append(base if exponent == 1 else f"{base}^{exponent}")
        return " * ".join(parts)


def render_report(report: Dict[str, Any], fmt: str = "json") -> str:
    return ReportOutput().render(report, fmt)
