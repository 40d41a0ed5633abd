import io
import subprocess
import sys
from pathlib import Path

import pytest

from locekr.cli import EXIT_BUDGET, EXIT_FAILED, EXIT_OK, EXIT_USAGE, main

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "phi_jt_5_3_1": ["phi", "--family", "jt:5,3,1"],
    "thresholds_k3": ["thresholds", "--k", "3", "--D", "0"],
    "scan_k3_t1": ["scan", "--k", "3", "--t", "1", "--n", "4:8"],
    "search_4_2": ["search", "--n", "4", "--k", "2"],
    "search_5_3_naive": ["search", "--n", "5", "--k", "3", "--mode", "naive"],
    "conjecture_5_2": ["conjecture", "--n", "5", "--k", "2"],
    "construct_h2_6_3_1": ["construct", "--spec", "h2:6,3,1"],
    "hilton_three_stars": ["hilton", "--file", str(GOLDEN / "three_stars.hilton")],
}


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_output(name):
    code, text = run(CASES[name])
    assert code == EXIT_OK
    assert text == (GOLDEN / f"{name}.out").read_text(encoding="utf-8")


def test_module_entry_point_matches_golden():
    proc = subprocess.run([sys.executable, "-m", "locekr", *CASES["phi_jt_5_3_1"]],
                          capture_output=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "phi_jt_5_3_1.out").read_bytes()


def test_phi_from_file_agrees_with_constructor(tmp_path):
    path = tmp_path / "j.fam"
    assert run(["construct", "--spec", "jt:7,4,2", "--out", str(path)])[0] == EXIT_OK
    assert run(["phi", "--family", str(path)]) == run(["phi", "--family", "jt:7,4,2"])


@pytest.mark.parametrize("argv", [
    [],
    ["phi"],
    ["phi", "--family", "nope:1,2"],
    ["phi", "--family", "jt:5,3"],
    ["phi", "--family", "jt:5,3,3"],
    ["scan", "--k", "2", "--t", "1", "--n", "3:6"],
    ["scan", "--k", "3", "--t", "1", "--n", "8:4"],
    ["scan", "--k", "3", "--t", "1", "--n", "2:4"],
    ["search", "--n", "7", "--k", "3", "--mode", "naive"],
    ["search", "--n", "3", "--k", "4"],
    ["search", "--n", "0", "--k", "1"],
    ["thresholds", "--k", "3", "--D", "-1"],
    ["hilton", "--file", "/nonexistent/file"],
])
def test_usage_errors_exit_1(argv, capsys):
    assert run(argv)[0] == EXIT_USAGE
    assert capsys.readouterr().err


def test_malformed_family_file_reports_line(tmp_path, capsys):
    path = tmp_path / "bad.fam"
    path.write_text("n=5 k=2\n1 2\n2 1\n")
    assert run(["phi", "--family", str(path)])[0] == EXIT_USAGE
    assert "line 3" in capsys.readouterr().err


def test_budget_exhaustion_exits_2():
    code, text = run(["search", "--n", "7", "--k", "3", "--budget", "5"])
    assert code == EXIT_BUDGET
    assert "complete\tno" in text
    code, text = run(["conjecture", "--n", "7", "--k", "3", "--budget", "5"])
    assert code == EXIT_BUDGET and "INCONCLUSIVE" in text


def test_hilton_counting_failure_exits_3(monkeypatch, tmp_path):
    # a corrupted bound computation must surface as a FAILED verdict
    import locekr.hilton as H
    monkeypatch.setattr(H, "hilton_bound", lambda inst: 0)
    path = GOLDEN / "three_stars.hilton"
    assert run(["hilton", "--file", str(path)])[0] == EXIT_FAILED


def test_phi_above_cubic_threshold_exits_3(monkeypatch):
    import locekr.cli as cli
    monkeypatch.setattr(cli.bounds, "cubic_threshold", lambda k: 0)
    code, text = run(["phi", "--family", "jt:5,3,1"])
    assert code == EXIT_FAILED and "FAILED" in text


def test_threads_note_and_same_result():
    c1, one = run(["search", "--n", "5", "--k", "3"])
    c2, two = run(["search", "--n", "5", "--k", "3", "--threads", "2"])
    assert c1 == c2 == EXIT_OK
    assert two.startswith("# note:")
    # node counts depend on scheduling; everything else must match
    def body(text):
        lines = text[text.index("# search result"):].splitlines()
        return [l for l in lines if not l.startswith("nodes\t")]
    body_one, body_two = body(one), body(two)
    assert body_one == body_two


def test_construct_size_mismatch_exits_3(monkeypatch):
    import locekr.constructions as C
    monkeypatch.setattr(C, "j_size", lambda n, k, t: -1)
    assert run(["construct", "--spec", "jt:5,3,1"])[0] == EXIT_FAILED
