"""
Dihedrant Configuration
Resource limits and logging setup.
"""

import logging
import os
import sys
from dataclasses import dataclass, asdict
from typing import Any, Dict, List, Optional

LOG_ENV_VAR = "DIHEDRANT_LOG"
LOG_PREFIX = "[dihedrant]"

# Largest supported vertex count (2n)
MAX_VERTICES = 4096


@dataclass(frozen=True)
class Limits:
    """Caps applied to searches and enumerations"""
    node_cap: int = 10**7
    arc_cap: int = 10**7
    max_vertices: int = MAX_VERTICES
    scan_max_n: int = 128

    def to_command_args(self) -> List[str]:
        """Convert limits to the CLI flags that reproduce them"""
        args = []
        defaults = Limits()
        if self.node_cap != defaults.node_cap:
            args.extend(["--node-cap", str(self.node_cap)])
        if self.arc_cap != defaults.arc_cap:
            args.extend(["--arc-cap", str(self.arc_cap)])
        return args

    def config_hash(self) -> str:
        """Generate a hash for config comparison"""
        return f"limits:{self.node_cap}:{self.arc_cap}:{self.max_vertices}:{self.scan_max_n}"

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def with_overrides(self, node_cap: Optional[int] = None, arc_cap: Optional[int] = None) -> "Limits":
        return Limits(
            node_cap=self.node_cap if node_cap is None else node_cap,
            arc_cap=self.arc_cap if arc_cap is None else arc_cap,
            max_vertices=self.max_vertices,
            scan_max_n=self.scan_max_n,
        )


DEFAULT_LIMITS = Limits()


class _PrefixFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        message = super().format(record)
        if record.levelno >= logging.WARNING:
            return f"{LOG_PREFIX} {record.levelname.capitalize()}: {message}"
        return f"{LOG_PREFIX} {message}"


def configure_logging(level: Optional[str] = None) -> logging.Logger:
    """
    Attach a stderr handler to the package logger.

    Args:
        level: Level name; falls back to $DIHEDRANT_LOG, then WARNING

    Returns:
        The package logger
    """
    logger = logging.getLogger("dihedrant")
    name = (level or os.environ.get(LOG_ENV_VAR) or "WARNING").upper()
    numeric = logging.getLevelName(name)
    if not isinstance(numeric, int):
        numeric = logging.WARNING

    # Replace our own handler on repeated calls, leave foreign handlers alone
    for handler in list(logger.handlers):
        if getattr(handler, "_dihedrant", False):
            logger.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(_PrefixFormatter("%(message)s"))
    handler._dihedrant = True
    logger.addHandler(handler)
    logger.setLevel(numeric)
    logger.propagate = False
    return logger
