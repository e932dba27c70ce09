import json
import subprocess
import sys

import pytest

from engelrad.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json", "--reproducible")
    return code, [json.loads(line) for line in out.splitlines() if line.strip()]


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "usage" in out


def test_console_script_help():
    proc = subprocess.run([sys.executable, "-m", "engelrad.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "noun" in proc.stdout


def test_lie_identity_sl2_fails_with_witness(capsys):
    code, reports = run_json(capsys, "lie", "identity", "--builtin", "sl2", "--seq", "v", "--n", "4")
    assert code == 1
    (r,) = reports
    assert r["verdict"] == "fails"
    assert (r["witness"]["x"], r["witness"]["y"]) == ("e_+", "e_-")
    assert set(r) >= {"claim", "inputs", "verdict", "witness", "iterations", "millis", "config"}
    assert r["config"]["seed"] == 0 and r["millis"] == 0


def test_group_engel_set_compare_fitting(capsys):
    code, reports = run_json(capsys, "group", "engel-set", "--builtin", "sym:4", "--seq", "e", "--compare", "fitting")
    assert code == 0 and reports[0]["details"]["equal"]


@pytest.mark.parametrize("argv", [
    ["lie", "identity", "--seq", "v", "--n", "4"],
    ["lie", "identity", "--builtin", "sl2", "--n", "4"],
    ["lie", "identity", "--builtin", "nope", "--seq", "v", "--n", "2"],
    ["group", "info", "--builtin", "sym:x"],
    ["group", "info", "--file", "/nonexistent.json"],
    ["frobnicate"],
    ["group"],
    ["group", "aut-engel", "--builtin", "alt:5", "--seq", "e", "--aut", "bogus"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_bad_file_exit_two(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"representation": "permutation", "generators": ["(1 9)"], "degree": 3}')
    code, _, err = run(capsys, "group", "info", "--file", str(path))
    assert code == 2 and "generators[0]" in err


def test_text_output(capsys):
    code, out, _ = run(capsys, "group", "info", "--builtin", "sym:4")
    assert code == 0 and "verdict:    holds" in out and "fitting: 4" in out


def test_word_commands(capsys):
    code, reports = run_json(capsys, "word", "generate", "--seq", "u", "--n", "1")
    assert code == 0 and reports[0]["details"]["word"] == "x^-2 y^-1 x"
    code, reports = run_json(capsys, "word", "generate", "--seq", "v", "--n", "2")
    assert reports[0]["details"]["word"] == "[x,[x,y]]"
    code, reports = run_json(capsys, "word", "check", "--seq", "u", "--n", "3")
    assert code == 1 and [r["verdict"] for r in reports] == ["holds", "fails"]
    code, reports = run_json(capsys, "word", "check", "--seq", "s", "--n", "10")
    assert code == 0


def test_lie_commands(capsys):
    code, reports = run_json(capsys, "lie", "info", "--builtin", "gl2")
    assert code == 0 and reports[0]["details"]["radical"] == [["0", "0", "0", "1"]]
    code, reports = run_json(capsys, "lie", "engel", "--builtin", "jacobson:5", "--y", "e+e_2")
    assert code == 1 and reports[0]["verdict"] == "not-engel"
    code, reports = run_json(capsys, "lie", "engel", "--builtin", "b2", "--y", "e", "--kind", "strict")
    assert code == 0
    code, reports = run_json(capsys, "lie", "engel-set", "--builtin", "sl2", "--field", "GF(3)", "--kind", "e")
    assert code == 0 and reports[0]["details"]["size"] >= 1


def test_group_commands(capsys):
    code, reports = run_json(capsys, "group", "identity", "--builtin", "sym:4", "--seq", "s", "--n", "4")
    assert code == 0
    code, reports = run_json(capsys, "group", "identity", "--builtin", "alt:5", "--seq", "s", "--n", "3")
    assert code == 1 and reports[0]["witness"] is not None
    code, reports = run_json(capsys, "group", "cr", "--builtin", "a5wr2")
    assert code == 0 and reports[0]["details"]["order"] == 3600
    code, reports = run_json(capsys, "group", "aut-engel", "--builtin", "alt:5", "--seq", "e", "--aut", "conj:(1 2)")
    assert code == 1 and reports[0]["verdict"] == "not-engel"
    code, _ = run_json(capsys, "group", "cr", "--builtin", "sym:4")
    assert code == 2


def test_catalog_export_then_ingest(capsys, tmp_path):
    path = tmp_path / "w.json"
    code, _, _ = run(capsys, "catalog", "export", "--builtin", "witt:5", "--out", str(path))
    assert code == 0
    code, reports = run_json(capsys, "lie", "info", "--file", str(path))
    assert code == 0 and reports[0]["details"]["dim"] == 5
    code, out, _ = run(capsys, "catalog", "export", "--builtin", "sym:4")
    assert json.loads(out)["generators"] == ["(1 2)", "(1 2 3 4)"]
    code, reports = run_json(capsys, "catalog", "list")
    assert "witt:p" in reports[0]["details"]["lie"]


def test_verify_baer(capsys):
    code, reports = run_json(capsys, "verify", "baer")
    assert code == 0 and reports[0]["verdict"] == "holds"


def test_conjugation_convention_flag(capsys):
    _, right = run_json(capsys, "word", "generate", "--seq", "s", "--n", "2")
    _, left = run_json(capsys, "word", "generate", "--seq", "s", "--n", "2", "--conj-convention", "left")
    assert right[0]["details"]["word"] != left[0]["details"]["word"]


def test_reports_identical_across_threads(capsys):
    argv = ["group", "identity", "--builtin", "psl2:7", "--seq", "s", "--n", "10"]
    _, one, _ = run(capsys, *argv, "--threads", "1", "--format", "json", "--reproducible")
    _, eight, _ = run(capsys, *argv, "--threads", "8", "--format", "json", "--reproducible")
    assert one == eight
