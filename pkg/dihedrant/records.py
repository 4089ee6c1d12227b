"""
Scan Records
JSONL persistence for case (v) scans: append, read back, resume keys.
"""

import json
import logging
import os
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, List, Optional, Set, Tuple

from .structure import CaseVScanResult

logger = logging.getLogger(__name__)

RecordKey = Tuple[int, int, Tuple[str, ...]]


@dataclass
class ScanRecord:
    """One JSONL line, as written or as read back"""
    data: Dict[str, Any]
    success: bool = True
    error_message: Optional[str] = None

    @classmethod
    def from_result(cls, result: CaseVScanResult, timings: bool = True) -> "ScanRecord":
        return cls(result.to_record(timings), success=result.error is None, error_message=result.error)

    @property
    def key(self) -> RecordKey:
        return record_key(self.data)

    def to_line(self) -> str:
        return json.dumps(self.data, sort_keys=True, separators=(",", ":")) + "\n"


def record_key(data: Dict[str, Any]) -> RecordKey:
    return int(data["n"]), int(data["pi"]), tuple(data["delta"])


def parse_record_line(line: str) -> Optional[ScanRecord]:
    """
    Parse one JSONL line.
    Returns None for blank lines; malformed lines come back as failed records.
    """
    line = line.strip()
    if not line:
        return None
    try:
        data = json.loads(line)
        record_key(data)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        return ScanRecord({}, success=False, error_message=f"unreadable record: {e}: {line[:100]}")
    return ScanRecord(data, success=data.get("error") is None, error_message=data.get("error"))


def read_records(path: str) -> List[ScanRecord]:
    """All readable records in the file; a missing file has none"""
    if not os.path.exists(path):
        return []
    records = []
    with open(path, "r", encoding="utf-8") as f:
        for number, line in enumerate(f, 1):
            record = parse_record_line(line)
            if record is None:
                continue
            if not record.data:
                # A crash mid-append leaves at most one torn trailing line
                logger.warning("%s:%d: %s", path, number, record.error_message)
                continue
            records.append(record)
    return records


def existing_keys(path: str) -> Set[RecordKey]:
    """Keys of completed records; failed ones are retried on resume"""
    return {record.key for record in read_records(path) if record.success}


def _ends_mid_line(path: str) -> bool:
    if not os.path.exists(path) or os.path.getsize(path) == 0:
        return False
    with open(path, "rb") as f:
        f.seek(-1, os.SEEK_END)
        return f.read(1) != b"\n"


def append_records(path: str, records: Iterable[ScanRecord]) -> int:
    """Append records one line at a time, flushing each; returns the count written"""
    written = 0
    torn = _ends_mid_line(path)
    with open(path, "a", encoding="utf-8") as f:
        if torn:
            # Keep a torn line from an interrupted run on its own line
            f.write("\n")
        for record in records:
            f.write(record.to_line())
            f.flush()
            written += 1
    return written


def iter_new_records(records: Iterable[ScanRecord], seen: Set[RecordKey]) -> Iterator[ScanRecord]:
    """Drop records whose key is already present, updating seen"""
    for record in records:
        if record.key in seen:
            continue
        seen.add(record.key)
        yield record


def validate_output_path(path: Optional[str]) -> Tuple[bool, Optional[str]]:
    """
    Validate that scan output can be appended to path.

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not path:
        return (False, "No output path specified")

    if os.path.isdir(path):
        return (False, f"Output path is a directory: {path}")

    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(directory):
        return (False, f"Output directory not found: {directory}")

    if os.path.exists(path) and not os.access(path, os.W_OK):
        return (False, f"Output file is not writable: {path}")
    if not os.path.exists(path) and not os.access(directory, os.W_OK):
        return (False, f"Output directory is not writable: {directory}")

    return (True, None)
