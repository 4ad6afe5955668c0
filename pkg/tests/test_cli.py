"""Command-line driver behaviour and machine-readable output."""

import json
import subprocess
import sys

BASE = [sys.executable, "-m", "spincheck.cli"]


def run_cli(*args):
    return subprocess.run(BASE + list(args), capture_output=True, text=True)


def test_derive_order3_lists_thirteen_equations():
    res = run_cli("derive", "--order", "3")
    assert res.returncode == 0
    lines = [l for l in res.stdout.splitlines() if l.strip()]
    assert len(lines) == 13
    assert all("V4" in l for l in lines)
    assert "# 13 equations" in res.stderr


def test_derive_with_binding_empties_order3():
    res = run_cli("derive", "--order", "3", "--set", "V4=0")
    assert res.returncode == 0
    assert not res.stdout.strip()
    assert "# 0 equations" in res.stderr


def test_derive_rejects_bad_binding():
    res = run_cli("derive", "--set", "W9=0")
    assert res.returncode == 3


def test_verify_case_nineteen_six_zero_verdicts():
    res = run_cli("verify", "--case", "19", "--mode", "symbolic",
                  "--report", "json")
    assert res.returncode == 0
    payloads = [json.loads(l) for l in res.stdout.splitlines()]
    assert len(payloads) == 6
    assert {p["integral"] for p in payloads} == \
        {"Y1", "Y2", "Y3", "Y5", "Y6", "Y15"}
    assert all(p["verdict"] == "zero" for p in payloads)


def test_verify_known_discrepancy_exit_code():
    res = run_cli("verify", "--case", "16", "--mode", "symbolic",
                  "--report", "json")
    assert res.returncode == 2
    payloads = [json.loads(l) for l in res.stdout.splitlines()]
    assert payloads[0]["verdict"] == "discrepancy"
    assert payloads[0]["residual_terms"]


def test_verify_case_range():
    res = run_cli("verify", "--case", "24-25", "--mode", "symbolic")
    assert res.returncode == 0
    assert "24" in res.stdout and "25" in res.stdout


def test_verify_unknown_case_is_usage_error():
    res = run_cli("verify", "--case", "99", "--mode", "symbolic")
    assert res.returncode == 3


def test_json_output_is_deterministic():
    a = run_cli("verify", "--case", "G1", "--mode", "symbolic",
                "--report", "json")
    b = run_cli("verify", "--case", "G1", "--mode", "symbolic",
                "--report", "json")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_symmetrize_weight_file(tmp_path):
    path = tmp_path / "weights.txt"
    path.write_text("f2 = 1/r\n", encoding="utf-8")
    res = run_cli("symmetrize", "--weights", str(path))
    assert res.returncode == 0
    assert "-i*hbar*x*r^-1" in res.stdout
    assert "-i*hbar*r^-1" in res.stdout


def test_symmetrize_parse_failure():
    res = run_cli("symmetrize", "--set", "f2=1/(")
    assert res.returncode == 3


def test_gauge_check_passes():
    res = run_cli("gauge-check")
    assert res.returncode == 0
    assert "unitarity U+U = I: pass" in res.stdout
    assert "induced V1 = 2*hbar*r^-2" in res.stdout


def test_dump_targets():
    res = run_cli("dump", "integral:Y6")
    assert res.returncode == 0
    assert "s1x*s2x" in res.stdout
    res = run_cli("dump", "gauge-matrix")
    assert res.returncode == 0
    res = run_cli("dump", "nonsense")
    assert res.returncode == 3
