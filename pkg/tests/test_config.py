import dataclasses
import logging

import pytest

from dihedrant.config import DEFAULT_LIMITS, LOG_ENV_VAR, configure_logging
from dihedrant.errors import (
    DihedrantError,
    DisconnectedGraphError,
    DSLParseError,
    FamilyParameterError,
    ResourceLimitError,
    VerificationFailure,
    VerificationReport,
)


def test_limits_overrides():
    limits = DEFAULT_LIMITS.with_overrides(node_cap=5)
    assert limits.node_cap == 5
    assert limits.arc_cap == DEFAULT_LIMITS.arc_cap
    assert DEFAULT_LIMITS.with_overrides() == DEFAULT_LIMITS
    assert limits.to_command_args() == ["--node-cap", "5"]
    assert DEFAULT_LIMITS.to_command_args() == []
    assert limits.config_hash() != DEFAULT_LIMITS.config_hash()
    assert limits.as_dict()["scan_max_n"] == 128
    with pytest.raises(dataclasses.FrozenInstanceError):
        limits.node_cap = 7


def test_configure_logging(monkeypatch):
    monkeypatch.setenv(LOG_ENV_VAR, "debug")
    logger = configure_logging()
    assert logger.level == logging.DEBUG
    ours = [h for h in logger.handlers if getattr(h, "_dihedrant", False)]
    assert len(ours) == 1

    configure_logging("error")
    assert logger.level == logging.ERROR
    assert len([h for h in logger.handlers if getattr(h, "_dihedrant", False)]) == 1

    monkeypatch.delenv(LOG_ENV_VAR)
    assert configure_logging().level == logging.WARNING
    assert configure_logging("nonsense").level == logging.WARNING


def test_log_prefix():
    handler = next(h for h in configure_logging().handlers if getattr(h, "_dihedrant", False))
    warning = logging.LogRecord("dihedrant.x", logging.WARNING, __file__, 1, "cap hit", None, None)
    info = logging.LogRecord("dihedrant.x", logging.INFO, __file__, 1, "started", None, None)
    assert handler.format(warning) == "[dihedrant] Warning: cap hit"
    assert handler.format(info) == "[dihedrant] started"


def test_error_hierarchy():
    for error in (
        DSLParseError("bad", 3, "n=6"),
        FamilyParameterError("thm14", "bad p"),
        ResourceLimitError("search node", 2, 1),
        DisconnectedGraphError([7, 6]),
    ):
        assert isinstance(error, DihedrantError)
    assert str(FamilyParameterError("thm14", "bad p")) == "thm14: bad p"
    assert DisconnectedGraphError([7, 6]).unreached == [6, 7]
    assert "(12 total)" in str(DisconnectedGraphError(range(12)))


def test_dsl_pointer():
    error = DSLParseError("unexpected token", 4, "n=6; S=x")
    assert error.pointer() == "n=6; S=x\n    ^"
    assert DSLParseError("empty", 0).pointer() == "empty at position 0"


def test_verification_report():
    report = VerificationReport("demo")
    assert report.passed
    assert report.expect_equal("order", 24, 24)
    assert not report.expect_same_set("set", [1, 2, 4], [1, 2, 3])
    assert report.failures()[0].detail == "missing {3}; unexpected {4}"
    assert not report.passed

    outer = VerificationReport("outer")
    outer.extend(report, prefix="inner")
    assert [c.name for c in outer.checks] == ["inner.order", "inner.set"]
    assert outer.to_json()["passed"] is False

    with pytest.raises(VerificationFailure) as excinfo:
        report.raise_for_failure()
    assert "set" in str(excinfo.value)
