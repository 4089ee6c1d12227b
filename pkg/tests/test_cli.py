import json

import pytest

from dihedrant import __version__, verification
from dihedrant.cli import EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, EXIT_VERIFICATION_FAILED, main
from dihedrant.errors import VerificationReport

THM14 = "n=12; S=family(thm14, p=3, pi=1)"


def run_json(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, json.loads(captured.out) if captured.out else None, captured.err


def test_classify_thm14(capsys):
    code, report, _ = run_json(capsys, "classify", THM14, "--no-timings")
    assert code == EXIT_OK
    assert report["classification"]["kind"] == "CaseV"
    assert report["classification"]["delta"] == ["r1", "r5", "r7", "r11"]
    assert report["aut_order"] == {"2": 17, "3": 2, "5": 1}
    assert report["arc_transitive"] is True
    assert report["2_arc_transitive"] is False
    assert report["2_distance_transitive"] is False
    assert (report["girth"], report["diameter"], report["valency"]) == (4, 3, 10)
    assert report["timings"] is None


def test_reports_are_deterministic_without_timings(capsys):
    main(["classify", THM14, "--no-timings"])
    first = capsys.readouterr().out
    main(["classify", THM14, "--no-timings"])
    assert capsys.readouterr().out == first


def test_classify_disconnected(capsys):
    code, report, _ = run_json(capsys, "classify", "n=6; S=raw(r1)", "--no-timings")
    assert code == EXIT_OK
    assert report["classification"]["kind"] == "Disconnected"
    assert report["connected"] is False
    assert report["diameter"] is None


def test_invariants_skip_the_search(capsys):
    code, report, _ = run_json(capsys, "invariants", "n=5; S=classes(f0)")
    assert code == EXIT_OK
    assert report["aut_order"] is None
    assert report["classification"] is None
    assert report["bipartite"] is True
    assert set(report["timings"]) == {"invariants", "total"}


def test_parse_error(capsys):
    code = main(["classify", "n=6; S=raw(r7)"])
    err = capsys.readouterr().err
    assert code == EXIT_USAGE
    assert "position 11" in err
    assert "n=6; S=raw(r7)\n" + " " * 11 + "^" in err


def test_family_parameter_error(capsys):
    assert main(["classify", "n=12; S=family(thm14, p=4)"]) == EXIT_USAGE
    assert "thm14" in capsys.readouterr().err


def test_unknown_theorem(capsys):
    assert main(["verify", "nope"]) == EXIT_USAGE
    assert "unknown verification" in capsys.readouterr().err


def test_verify_thm14(capsys):
    code, report, _ = run_json(capsys, "verify", "thm14", "--p", "3")
    assert code == EXIT_OK
    assert report["passed"] is True
    assert report["name"] == "thm14"


def test_failing_suite_exits_1(capsys, monkeypatch):
    def broken(params):
        report = VerificationReport("cor12")
        report.add("always_fails", False, "forced")
        return report

    monkeypatch.setitem(verification.SUITES, "cor12", broken)
    code, report, _ = run_json(capsys, "verify", "cor12")
    assert code == EXIT_VERIFICATION_FAILED
    assert report["passed"] is False


def test_node_cap(capsys):
    assert main(["aut", THM14, "--node-cap", "1"]) == EXIT_RESOURCE
    assert "limit exceeded" in capsys.readouterr().err


def test_missing_spec():
    with pytest.raises(SystemExit) as excinfo:
        main(["classify"])
    assert excinfo.value.code == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_text_format(capsys):
    assert main(["aut", THM14, "--format", "text", "--no-timings"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "2^17 * 3^2 * 5" in out
    assert "arc_transitive" in out


def test_out_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    assert main(["invariants", THM14, "--out", str(path), "--no-timings"]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(path.read_text())["girth"] == 4


def test_quotient(capsys):
    code, report, _ = run_json(capsys, "quotient", THM14)
    assert code == EXIT_OK
    assert report["r"] == 2
    assert report["thm14_p"] == 3
    assert report["kernel_order"] == {"2": 12}
    assert report["quotient_family"]["name"] == "K_{6,6}-6K_2"
    assert len(report["kernel_generators"]) == 12


def test_quotient_of_a_non_thm14_graph(capsys):
    code, report, _ = run_json(capsys, "quotient", "n=6; S=family(knn_v2)")
    assert code == EXIT_OK
    assert report["thm14_p"] is None
    assert report["kernel_order"] is None


def test_quotient_needs_even_n(capsys):
    assert main(["quotient", "n=5; S=classes(f0)"]) == EXIT_USAGE


def test_scan(capsys, tmp_path):
    out = tmp_path / "scan.jsonl"
    code, report, _ = run_json(capsys, "scan", "--n", "8", "--jobs", "1", "--out", str(out), "--no-timings")
    assert code == EXIT_OK
    assert report["evaluated"] == 2
    assert report["skipped"] == 0
    assert len(out.read_text().splitlines()) == 2

    code, report, _ = run_json(capsys, "scan", "--n", "8", "--jobs", "1", "--out", str(out))
    assert code == EXIT_OK
    assert (report["evaluated"], report["skipped"]) == (0, 2)


def test_scan_rejects_odd_n(capsys):
    assert main(["scan", "--n", "9", "--jobs", "1"]) == EXIT_USAGE


@pytest.mark.slow
def test_scan_30(capsys, tmp_path):
    out = tmp_path / "scan.jsonl"
    code, report, _ = run_json(capsys, "scan", "--n", "30", "--out", str(out), "--no-timings")
    assert code == EXIT_OK
    assert report["errors"] == 0
    assert sorted(map(sorted, report["arc_transitive"])) == sorted([
        sorted(["r1", "r5", "r7", "r11", "r13", "r17", "r19", "r23", "r25", "r29"]),
        sorted(["r1", "r3", "r7", "r9", "r11", "r13", "r17", "r19", "r21", "r23", "r27", "r29"]),
    ])
    assert len(out.read_text().splitlines()) == report["evaluated"] == 253
