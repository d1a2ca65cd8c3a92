import json
import subprocess
import sys

import pytest

from hassecheck import cli
from hassecheck.poly import DegenerateElimination

STD = ["--d", "-1", "--tuple", "17,13,53,41,3,13"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_primes_search(capsys):
    code, out, err = run(capsys, "primes", "--d", "-1", "--bound", "300")
    assert code == 0
    rep = json.loads(out)
    assert rep["schema"] == "1" and rep["command"] == "primes"
    assert [rep["tuple"][f"p{i}"] for i in range(1, 7)] == [17, 13, 53, 41, 3, 7]
    assert all(rep["tuple"]["conditions"][k] for k in rep["tuple"]["conditions"] if k != "p6 not in {p1,p2,p3}")
    assert "trying prefix" in err  # progress goes to stderr only


def test_primes_invalid_field(capsys):
    code, out, err = run(capsys, "primes", "--d", "1")
    assert code == 1 and out == ""
    assert "d must be squarefree and != 1" in err


def test_primes_exhausted(capsys):
    code, _, err = run(capsys, "primes", "--d", "-1", "--bound", "5")
    assert code == 2 and "raise the bound" in err


def test_verify_example(capsys):
    code, out, _ = run(capsys, "verify", *STD)
    rep = json.loads(out)
    assert code == 0 and rep["overall"]
    assert rep["Zf"]["overall"] and rep["Zg"]["overall"]
    assert rep["Zg"]["obstructed"]["place"] == "41"


def test_verify_bad_tuple_names_condition(capsys):
    code, out, err = run(capsys, "verify", "--d", "-1", "--tuple", "17,5,53,41,3,13")
    assert code == 3
    assert not json.loads(out)["overall"]
    assert "(p1,p2)_{v_p1}=1" in err


def test_verify_without_field_is_usage_error(capsys):
    code, out, err = run(capsys, "verify")
    assert code == 1 and out == "" and "--d" in err


def test_branch_wa(capsys):
    code, out, _ = run(capsys, "branch", "--variant", "wa")
    rep = json.loads(out)
    assert code == 0
    assert rep["wa"]["R_points_rational"] == ["(-1:1)", "(0:1)", "(1:1)"]
    assert rep["wa"]["routes_agree"]


def test_branch_single_chart(capsys):
    code, out, _ = run(capsys, "branch", "--variant", "hasse", "--charts", "x1y1")
    rep = json.loads(out)
    assert code == 0
    (chart,) = rep["hasse"]["charts"]
    assert chart["chart"] == "X1Y1"
    assert {"(0:1)", "(-10553413:620289)"} <= set(chart["rational_roots"])


def test_degenerate_elimination_exit_code(capsys, monkeypatch):
    def boom(*a, **k):
        raise DegenerateElimination("all resultant chains vanish identically")

    monkeypatch.setattr(cli, "branch_report", boom)
    code, out, err = run(capsys, "branch", "--variant", "wa")
    assert code == 4 and out == "" and "degenerate" in err


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# example\nd = -1\nbound = 5\nsample-primes = 10\n")
    code, _, _ = run(capsys, "primes", "--config", str(cfg))
    assert code == 2
    code, out, _ = run(capsys, "primes", "--config", str(cfg), "--bound", "300")
    assert code == 0 and json.loads(out)["config"]["sample_primes"] == 10


def test_config_file_errors(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    code, _, err = run(capsys, "primes", "--config", str(cfg))
    assert code == 1 and "unknown key" in err


def test_out_and_markdown(capsys, tmp_path):
    target = tmp_path / "r.md"
    code, out, _ = run(capsys, "verify", *STD, "--format", "markdown", "--out", str(target))
    assert code == 0 and out == ""
    text = target.read_text()
    assert text.startswith("# verify (schema 1)") and "**Overall:** PASS" in text


def test_surface_command(capsys):
    code, out, _ = run(capsys, "surface", *STD, "--variant", "both")
    rep = json.loads(out)
    assert code == 0
    assert rep["wa"]["f"] == "x0^2 - x1^2"
    assert rep["hasse"]["tuple"]["p4"] == 41


def test_byte_identical_output(capsys):
    first = run(capsys, "verify", *STD)
    second = run(capsys, "verify", *STD)
    assert first[:2] == second[:2]


def test_verify_plus_branch_equals_report(capsys):
    _, v_out, _ = run(capsys, "verify", *STD)
    # One chart keeps this fast; the full chart set is covered elsewhere.
    _, b_out, _ = run(capsys, "branch", *STD, "--variant", "both", "--charts", "x1y1")
    code, r_out, _ = run(capsys, "report", *STD, "--variant", "both", "--charts", "x1y1")
    v, b, r = json.loads(v_out), json.loads(b_out), json.loads(r_out)
    assert code == 0
    for key in ("tuple", "surface", "Zf", "Zg", "torsion", "failed"):
        assert r[key] == v[key]
    for key in ("hasse", "wa", "overall"):
        assert r["branch"][key] == b[key]
    assert r["overall"] == (v["overall"] and b["overall"])


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hassecheck.cli", "primes", "--d", "-1", "--bound", "5"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2 and proc.stdout == ""


def test_argparse_rejects_unknown_variant(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["branch", "--variant", "bogus"])
    assert info.value.code == 1
