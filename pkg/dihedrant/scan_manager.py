"""
Scan Manager
Worker-pool lifecycle for case (v) scans.
"""

import atexit
import logging
import signal
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Optional, Set, Tuple

import psutil

from .config import DEFAULT_LIMITS, Limits
from .errors import DihedrantError
from .records import RecordKey, ScanRecord, append_records, existing_keys, validate_output_path
from .structure import CaseVScanResult, scan_case_v

logger = logging.getLogger(__name__)


class ScanStatus(Enum):
    """Scan status states"""
    IDLE = "idle"
    RUNNING = "running"
    FINISHED = "finished"
    ERROR = "error"


def default_jobs() -> int:
    return psutil.cpu_count(logical=True) or 1


@dataclass
class ScanConfig:
    """Configuration for one scan run"""
    n_values: List[int]
    out_path: Optional[str] = None
    jobs: int = field(default_factory=default_jobs)
    limits: Limits = DEFAULT_LIMITS
    timings: bool = True

    def to_command_args(self) -> List[str]:
        """Convert config to the CLI arguments that reproduce it"""
        args = ["scan"]
        for n in self.n_values:
            args.extend(["--n", str(n)])
        if self.out_path:
            args.extend(["--out", self.out_path])
        args.extend(["--jobs", str(self.jobs)])
        args.extend(self.limits.to_command_args())
        if not self.timings:
            args.append("--no-timings")
        return args

    def config_hash(self) -> str:
        """Generate a hash for config comparison"""
        values = ",".join(str(n) for n in self.n_values)
        return f"scan:{values}:{self.out_path}:{self.limits.config_hash()}"


class ScanManager:
    """
    Singleton manager for the scan worker pool.
    Handles running, stopping, and reporting on scans.
    """

    _instance: Optional["ScanManager"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if self._initialized:
            return

        self._initialized = True
        self._executor: Optional[ProcessPoolExecutor] = None
        self._config: Optional[ScanConfig] = None
        self._status: ScanStatus = ScanStatus.IDLE
        self._last_error: Optional[str] = None
        self._results: List[CaseVScanResult] = []
        self._skipped = 0
        self._worker_pids: Set[int] = set()

        # Setup cleanup handlers
        self._setup_cleanup_handlers()

        logger.debug("Scan manager initialized")

    def _setup_cleanup_handlers(self):
        """Setup handlers for clean shutdown"""
        atexit.register(self._cleanup)

        try:
            signal.signal(signal.SIGTERM, self._signal_handler)
        except Exception:
            pass  # Only the main thread may install handlers

    def _signal_handler(self, signum, frame):
        """Handle termination signals"""
        logger.warning("Signal %s received, cleaning up...", signum)
        self._cleanup()
        sys.exit(0)

    def _cleanup(self):
        """Cleanup worker pool"""
        self.stop()
        self._kill_orphaned_workers()

    def _kill_orphaned_workers(self):
        """Kill pool workers this manager started that are still alive"""
        try:
            children = {proc.pid: proc for proc in psutil.Process().children(recursive=True)}
            for pid in sorted(self._worker_pids):
                proc = children.get(pid)
                if proc is None:
                    continue
                try:
                    logger.warning("Killing orphaned scan worker (PID: %d)", pid)
                    proc.kill()
                except (psutil.NoSuchProcess, psutil.AccessDenied):
                    pass
        except Exception as e:
            logger.error("Error cleaning up orphaned workers: %s", e)
        finally:
            self._worker_pids.clear()

    def _track_workers(self):
        if self._executor is not None:
            # pid -> Process; filled as tasks are submitted
            self._worker_pids.update(getattr(self._executor, "_processes", None) or {})

    @property
    def status(self) -> ScanStatus:
        return self._status

    @property
    def is_running(self) -> bool:
        return self._status == ScanStatus.RUNNING

    @property
    def current_config(self) -> Optional[ScanConfig]:
        return self._config

    @property
    def last_error(self) -> Optional[str]:
        return self._last_error

    @property
    def results(self) -> List[CaseVScanResult]:
        """Results of the last run, in enumeration order"""
        return list(self._results)

    @property
    def skipped(self) -> int:
        """Candidates skipped in the last run because the output file already had them"""
        return self._skipped

    def _mapper(self, jobs: int) -> Callable[[Callable, Iterable], Iterable]:
        if jobs <= 1:
            return map
        if self._executor is None:
            self._executor = ProcessPoolExecutor(max_workers=jobs)
        executor = self._executor

        def mapped(fn: Callable, items: Iterable) -> Iterable:
            # Executor.map submits everything up front and yields in submission order
            results = executor.map(fn, items)
            self._track_workers()
            return results

        return mapped

    def run(self, config: ScanConfig) -> Tuple[bool, Optional[str]]:
        """
        Run a scan over every n in the configuration.

        Args:
            config: Scan configuration

        Returns:
            Tuple of (success, error_message)
        """
        self._last_error = None
        self._results = []
        self._skipped = 0

        # Validate n values
        for n in config.n_values:
            if n % 2 or n < 4:
                return self._fail(f"scan needs even n >= 4, got {n}")
            if n > config.limits.scan_max_n:
                return self._fail(f"n={n} exceeds the scan limit {config.limits.scan_max_n}")

        # Validate output path and collect keys already written
        seen: Set[RecordKey] = set()
        if config.out_path:
            valid, error = validate_output_path(config.out_path)
            if not valid:
                return self._fail(error)
            seen = existing_keys(config.out_path)
            if seen:
                logger.info("Resuming: %d records already in %s", len(seen), config.out_path)

        self._config = config
        self._status = ScanStatus.RUNNING
        logger.info("Starting scan over n=%s with %d job(s)", config.n_values, config.jobs)

        try:
            mapper = self._mapper(config.jobs)
            for n in config.n_values:
                results = scan_case_v(n, config.limits, mapper=mapper, skip=seen)
                self._skipped += sum(1 for key in seen if key[0] == n and key[1] == 1)
                if config.out_path:
                    append_records(config.out_path, (ScanRecord.from_result(r, config.timings) for r in results))
                seen |= {r.key for r in results}
                for r in results:
                    if r.error:
                        logger.warning("n=%d %s: %s", n, "|".join(r.key[2]), r.error)
                flagged = sum(1 for r in results if r.arc_transitive)
                logger.info("n=%d: %d evaluated, %d arc-transitive", n, len(results), flagged)
                self._results.extend(results)
        except (DihedrantError, OSError) as e:
            return self._fail(f"Scan failed: {e}")
        finally:
            self.stop()

        self._status = ScanStatus.FINISHED
        return (True, None)

    def _fail(self, error: str) -> Tuple[bool, Optional[str]]:
        self._status = ScanStatus.ERROR
        self._last_error = error
        return (False, error)

    def stop(self) -> Tuple[bool, Optional[str]]:
        """
        Shut down the worker pool.

        Returns:
            Tuple of (success, error_message)
        """
        if self._executor is None:
            return (True, None)
        self._track_workers()
        try:
            self._executor.shutdown(wait=True, cancel_futures=True)
            self._worker_pids.clear()
            return (True, None)
        except Exception as e:
            error = f"Error stopping workers: {e}"
            self._last_error = error
            self._kill_orphaned_workers()
            return (False, error)
        finally:
            self._executor = None

    def get_status_info(self) -> Dict[str, Any]:
        """Get detailed status information"""
        return {
            "status": self._status.value,
            "config": self._config.config_hash() if self._config else None,
            "jobs": self._config.jobs if self._config else None,
            "evaluated": len(self._results),
            "skipped": self._skipped,
            "errors": sum(1 for r in self._results if r.error),
            "last_error": self._last_error,
        }


# Global instance
_scan_manager: Optional[ScanManager] = None


def get_scan_manager() -> ScanManager:
    """Get the global scan manager instance"""
    global _scan_manager
    if _scan_manager is None:
        _scan_manager = ScanManager()
    return _scan_manager
