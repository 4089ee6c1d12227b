import json
import logging

from dihedrant.dihedral_core import DihedralElement
from dihedrant.records import (
    ScanRecord,
    append_records,
    existing_keys,
    iter_new_records,
    parse_record_line,
    read_records,
    validate_output_path,
)
from dihedrant.structure import CaseVScanResult


def record(n, delta, **extra):
    data = {"n": n, "pi": 1, "delta": list(delta), "arc_transitive": False, "error": None}
    data.update(extra)
    return ScanRecord(data)


def test_to_line_is_compact_sorted_json():
    line = record(6, ["r3"]).to_line()
    assert line.endswith("\n")
    assert line.count("\n") == 1
    assert " " not in line
    assert list(json.loads(line)) == sorted(json.loads(line))


def test_from_result():
    result = CaseVScanResult(n=6, pi=1, delta=(DihedralElement(3, 0),), connected=True, error="search node count 2 exceeds cap 1")
    rec = ScanRecord.from_result(result, timings=False)
    assert not rec.success
    assert rec.error_message == result.error
    assert rec.key == (6, 1, ("r3",))
    assert rec.data["elapsed"] is None


def test_parse_record_line():
    parsed = parse_record_line(record(8, ["r1", "r7"]).to_line())
    assert parsed.success
    assert parsed.key == (8, 1, ("r1", "r7"))

    assert parse_record_line("   \n") is None

    torn = parse_record_line('{"n": 8, "pi": 1, "del')
    assert not torn.success and torn.data == {}
    assert "unreadable record" in torn.error_message

    missing_key = parse_record_line('{"n": 8}')
    assert not missing_key.success

    failed = parse_record_line(record(8, ["r1", "r7"], error="boom").to_line())
    assert failed.data and not failed.success
    assert failed.error_message == "boom"


def test_read_records_skips_torn_lines(tmp_path, caplog, monkeypatch):
    # configure_logging() in other tests stops propagation to the capture handler
    monkeypatch.setattr(logging.getLogger("dihedrant"), "propagate", True)
    path = tmp_path / "scan.jsonl"
    path.write_text(record(6, ["r3"]).to_line() + "\n" + '{"n": 8, "pi"')
    with caplog.at_level(logging.WARNING, logger="dihedrant.records"):
        records = read_records(str(path))
    assert [r.key for r in records] == [(6, 1, ("r3",))]
    assert "scan.jsonl:3" in caplog.text


def test_missing_file_has_no_records(tmp_path):
    assert read_records(str(tmp_path / "absent.jsonl")) == []
    assert existing_keys(str(tmp_path / "absent.jsonl")) == set()


def test_append_and_existing_keys(tmp_path):
    path = str(tmp_path / "scan.jsonl")
    assert append_records(path, [record(8, ["r1", "r7"]), record(8, ["r3", "r5"])]) == 2
    assert append_records(path, iter([record(10, ["r5"])])) == 1
    assert existing_keys(path) == {(8, 1, ("r1", "r7")), (8, 1, ("r3", "r5")), (10, 1, ("r5",))}


def test_failed_records_are_not_done(tmp_path):
    path = str(tmp_path / "scan.jsonl")
    append_records(path, [record(8, ["r1", "r7"]), record(8, ["r3", "r5"], error="search node count 2 exceeds cap 1")])
    assert len(read_records(path)) == 2
    assert existing_keys(path) == {(8, 1, ("r1", "r7"))}

    append_records(path, [record(8, ["r3", "r5"])])
    assert existing_keys(path) == {(8, 1, ("r1", "r7")), (8, 1, ("r3", "r5"))}


def test_iter_new_records():
    seen = {(8, 1, ("r1", "r7"))}
    fresh = list(iter_new_records([record(8, ["r1", "r7"]), record(8, ["r3", "r5"]), record(8, ["r3", "r5"])], seen))
    assert [r.key for r in fresh] == [(8, 1, ("r3", "r5"))]
    assert (8, 1, ("r3", "r5")) in seen


def test_validate_output_path(tmp_path):
    assert validate_output_path(None) == (False, "No output path specified")
    assert validate_output_path(str(tmp_path))[0] is False
    assert validate_output_path(str(tmp_path / "missing" / "scan.jsonl"))[0] is False
    assert validate_output_path(str(tmp_path / "scan.jsonl")) == (True, None)
