"""
Dihedrant Errors
Exception hierarchy and check-result records shared by every module.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional


class DihedrantError(Exception):
    """Base class for all library errors"""


class DegenerateGroupError(DihedrantError):
    """Raised for D_4 (n = 2) where the automorphism description does not apply"""

    def __init__(self, n: int, message: Optional[str] = None):
        self.n = n
        super().__init__(message or f"degenerate dihedral group: n={n} (D_4 is the Klein four-group)")


class ConnectionSetError(DihedrantError):
    """Invalid connection set: identity present, not inverse-closed, or out of range"""


class FamilyParameterError(ConnectionSetError):
    """A named family was given parameters outside its valid range"""

    def __init__(self, family: str, message: str):
        self.family = family
        super().__init__(f"{family}: {message}")


class DSLParseError(DihedrantError):
    """Connection-set spec string failed to parse"""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")

    def pointer(self) -> str:
        """Render the offending spec with a caret under the failing column"""
        if not self.text:
            return str(self)
        return f"{self.text}\n{' ' * self.position}^"


class DisconnectedGraphError(DihedrantError):
    """Operation requires a connected graph"""

    def __init__(self, unreached: Iterable[int]):
        self.unreached = sorted(unreached)
        preview = ", ".join(str(v) for v in self.unreached[:10])
        more = "" if len(self.unreached) <= 10 else f", ... ({len(self.unreached)} total)"
        super().__init__(f"graph is disconnected; unreached vertices: {preview}{more}")


class DegreeMismatchError(DihedrantError):
    """Permutations or groups of different degrees were combined"""

    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"degree mismatch: expected {expected}, got {got}")


class IntransitiveGroupError(DihedrantError):
    """A transitive action was required"""


class NonInvariantPartitionError(DihedrantError):
    """A partition was not preserved by the acting group"""


class RecognitionError(DihedrantError):
    """Structural recognition disagrees with the subgroup criterion"""


class ResourceLimitError(DihedrantError):
    """A configured search or enumeration cap was exceeded"""

    def __init__(self, kind: str, count: int, cap: int):
        self.kind = kind
        self.count = count
        self.cap = cap
        super().__init__(f"{kind} limit exceeded: {count} > cap {cap}")


class UsageError(DihedrantError):
    """Unknown verification name or invalid command parameters"""


@dataclass
class CheckResult:
    """Outcome of one verification sub-check"""
    name: str
    passed: bool
    detail: Optional[str] = None

    def to_json(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class VerificationReport:
    """Ordered list of sub-check results for one named verification"""
    name: str
    checks: List[CheckResult] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(self, name: str, passed: bool, detail: Optional[str] = None) -> bool:
        self.checks.append(CheckResult(name, bool(passed), detail))
        return bool(passed)

    def expect_equal(self, name: str, actual: Any, expected: Any) -> bool:
        """Record an equality check, with both values in the detail on failure"""
        passed = actual == expected
        detail = None if passed else f"expected {expected}, got {actual}"
        return self.add(name, passed, detail)

    def expect_same_set(self, name: str, actual: Iterable[Any], expected: Iterable[Any], fmt=str) -> bool:
        """Record a set equality, naming both differences on failure"""
        actual_set, expected_set = set(actual), set(expected)
        if actual_set == expected_set:
            return self.add(name, True)
        missing = sorted(expected_set - actual_set)
        extra = sorted(actual_set - expected_set)
        parts = []
        if missing:
            parts.append("missing {" + ", ".join(fmt(x) for x in missing) + "}")
        if extra:
            parts.append("unexpected {" + ", ".join(fmt(x) for x in extra) + "}")
        return self.add(name, False, "; ".join(parts))

    def extend(self, other: "VerificationReport", prefix: Optional[str] = None) -> None:
        for check in other.checks:
            name = f"{prefix}.{check.name}" if prefix else check.name
            self.checks.append(CheckResult(name, check.passed, check.detail))
        self.data.update(other.data)

    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def raise_for_failure(self) -> None:
        if not self.passed:
            raise VerificationFailure(self)

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [check.to_json() for check in self.checks],
            "data": self.data,
        }


class VerificationFailure(DihedrantError):
    """A verification report contained failed checks"""

    def __init__(self, report: VerificationReport):
        self.report = report
        names = ", ".join(check.name for check in report.failures())
        super().__init__(f"{report.name}: failed checks: {names}")
