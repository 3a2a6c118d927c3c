"""Command-line contract: exact output, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

CMD = [sys.executable, "-m", "fowler4"]


def run_cli(*args, check=False):
    out = subprocess.run(CMD + list(args), capture_output=True, text=True)
    if check and out.returncode != 0:
        raise AssertionError(f"exit {out.returncode}: {out.stderr}")
    return out


def test_coeffs_exact_rational_output():
    out = run_cli("coeffs", "--n", "5", "--s", "9/1", check=True)
    assert "5,9,K0,25/16,25/16," in out.stdout
    assert "MATCH" in out.stdout


def test_coeffs_zero_row_at_lower_exponent():
    out = run_cli("coeffs", "--n", "5", "--s", "5", check=True)
    row = [l for l in out.stdout.splitlines() if l.startswith("5,5,K0")][0]
    assert row.split(",")[3] == "0"


def test_malformed_s_exits_2_without_output(tmp_path):
    target = tmp_path / "out.csv"
    out = run_cli("coeffs", "--n", "5", "--s", "junk", "--out", str(target))
    assert out.returncode == 2
    assert not target.exists()


def test_missing_subcommand_is_usage_error():
    out = run_cli()
    assert out.returncode == 2


def test_classify_reports_regime_and_amplitude():
    out = run_cli("classify", "--n", "5", "--s", "7", "--format", "json", check=True)
    doc = json.loads(out.stdout)
    rec = doc["results"][0]
    assert rec["regime"] == "GIDAS_SPRUCK"
    assert rec["K0"] == "112/81"
    assert set(doc) == {"config", "results", "ledger"}


def test_determinism_byte_identical():
    a = run_cli("signs", "--n", "5:7", "--s-grid", "16", check=True).stdout
    b = run_cli("signs", "--n", "5:7", "--s-grid", "16", check=True).stdout
    assert a == b


def test_headers_echo_config():
    out = run_cli("coeffs", "--n", "6", "--s", "2", "--sigma", "-1", check=True).stdout
    assert "# sigma: -1" in out and "# c_mode: measured" in out
    assert "# build: fowler4" in out


def test_integrate_writes_trajectory_and_energy(tmp_path):
    traj = tmp_path / "traj.csv"
    energy = tmp_path / "energy.csv"
    run_cli("integrate", "--n", "5", "--s", "7", "--init", "1,0,0,0",
            "--t-end", "2", "--out", str(traj), "--energy-out", str(energy),
            check=True)
    head = traj.read_text().splitlines()
    cols = [l for l in head if l.startswith("t,")][0]
    assert cols == "t,y0,y1,y2,y3,step"
    assert energy.exists()
    ecols = [l for l in energy.read_text().splitlines() if l.startswith("t,")][0]
    assert ecols == "t,H,dH_formula,dH_numeric"


def test_gnuplot_companion(tmp_path):
    target = tmp_path / "signs.csv"
    run_cli("signs", "--n", "5", "--s-grid", "8", "--out", str(target),
            "--gnuplot", check=True)
    gp = (tmp_path / "signs.csv.gp").read_text()
    assert gp.startswith("#") and "plot" in gp


def test_fit_power_json():
    out = run_cli("fit", "--n", "5", "--s", "7", "--profile", "power", check=True)
    doc = json.loads(out.stdout)
    assert doc["results"]["exponent"] == pytest.approx(2.0 / 3.0, abs=1e-9)


def test_pohozaev_levels_json():
    out = run_cli("pohozaev", "--n", "5", "--s", "7", check=True)
    doc = json.loads(out.stdout)
    assert doc["results"][0]["verdict"] == "MISMATCH"


def test_verify_subset_suite_exits_zero(tmp_path):
    ledger_path = tmp_path / "ledger.json"
    out = run_cli("verify", "--suite", "asymptotics", "--format", "json",
                  "--out", str(ledger_path))
    assert out.returncode == 0, out.stdout + out.stderr
    assert "C09 PASS" in out.stdout
    assert "verify: OK" in out.stdout
    doc = json.loads(ledger_path.read_text())
    assert any(e["symbol"] == "J40(n,s) appendix formula" for e in doc)


def test_verify_unknown_suite_is_usage_error():
    assert run_cli("verify", "--suite", "nope").returncode == 2
