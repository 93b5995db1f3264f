import io
import math
import subprocess
import sys

import pytest

from cavsim import cli
from cavsim.errors import InvariantViolation


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_scheme_report_new(capsys):
    code, out, _ = run_cli(capsys, "scheme", "--scheme", "new", "--lambda-tau", "0.7854")
    assert code == 0
    assert "closed form     F = 1.0000  P = 0.7500" in out
    assert "exact state     F = 0.9714  P = 0.7500" in out


def test_scheme_report_bp(capsys):
    code, out, _ = run_cli(capsys, "scheme", "--scheme", "bp", "--lambda-tau", "0.7854")
    assert code == 0
    assert "F = 0.9714  P = 0.7500" in out


def test_scheme_report_thermal(capsys):
    code, out, _ = run_cli(capsys, "scheme", "--scheme", "new", "--lambda-tau", "0.9", "--temperature", "1")
    assert code == 0
    assert "T_over_omega0   1" in out


def test_missing_required_flag(capsys):
    code, _, err = run_cli(capsys, "scheme", "--lambda-tau", "0.5")
    assert code == 2
    assert "usage:" in err and "--scheme" in err


def test_no_command(capsys):
    code, _, err = run_cli(capsys)
    assert code == 2 and "usage:" in err


@pytest.mark.parametrize("argv", [
    ["inversion", "--points", "1"],
    ["inversion", "--nbar", "nan"],
    ["inversion", "--points", "many"],
    ["reproduce-figure", "--id", "7"],
    ["teleport", "--a-squared", "1.5"],
    ["thermal-negativity", "--scheme", "bp", "--temperature-min", "0"],
    ["scheme", "--scheme", "ghz", "--lambda-tau", "0.3"],
    ["scheme", "--scheme", "bp", "--lambda-tau", "0.3", "--epsilon", "1.0"],
    ["inversion", "--nbar", "4", "--alpha", "1"],
])
def test_config_errors_exit_2(capsys, argv):
    code, _, err = run_cli(capsys, *argv)
    assert code == 2
    assert err


def test_invariant_violation_exit_3(capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise InvariantViolation("negative eigenvalue -1e-3")

    monkeypatch.setattr(cli.sweeps, "inversion_sweep", broken)
    code, _, err = run_cli(capsys, "inversion", "--points", "5")
    assert code == 3
    assert "invariant violation" in err


def test_csv_output_file_is_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert cli.main(["reproduce-figure", "--id", "5b", "--output", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    text = paths[0].read_text()
    assert "# config.id = 5b" in text
    assert "T_over_omega0,log_negativity" in text


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# inversion run\ncommand = inversion\nnbar = 4\npoints = 5  # short\nlambda_t_max = 10\n",
                   encoding="utf-8")
    code, out, _ = run_cli(capsys, "--config", str(cfg))
    assert code == 0
    body = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert len(body) == 1 + 5
    code, out, _ = run_cli(capsys, "inversion", "--config", str(cfg), "--points", "3")
    body = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert len(body) == 1 + 3
    assert body[-1].startswith("10.0,")
    assert "# config.nbar = 4.0" in out


def test_config_file_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("nbar 4\n")
    assert run_cli(capsys, "inversion", "--config", str(bad))[0] == 2
    unknown = tmp_path / "unknown.cfg"
    unknown.write_text("colour = red\n")
    assert run_cli(capsys, "inversion", "--config", str(unknown))[0] == 2
    assert run_cli(capsys, "inversion", "--config", str(tmp_path / "missing.cfg"))[0] == 2


def test_env_truncation_override(monkeypatch, capsys):
    monkeypatch.setenv(cli.N_MAX_ENV, "40")
    code, out, _ = run_cli(capsys, "inversion", "--points", "3", "--nbar", "2")
    assert code == 0 and "# n_max = 40" in out
    code, out, _ = run_cli(capsys, "inversion", "--points", "3", "--nbar", "2", "--n-max", "30")
    assert "# n_max = 30" in out
    monkeypatch.setenv(cli.N_MAX_ENV, "lots")
    assert run_cli(capsys, "inversion", "--points", "3")[0] == 2


def test_default_truncation(monkeypatch, capsys):
    monkeypatch.delenv(cli.N_MAX_ENV, raising=False)
    code, out, _ = run_cli(capsys, "entropy-resonant", "--points", "3")
    assert code == 0 and "# n_max = 100" in out


@pytest.mark.parametrize("argv, header", [
    (["entropy-dispersive", "--points", "4", "--phi", "0.5"], "chi_t,entropy"),
    (["scheme", "--scheme", "bp", "--points", "4"], "lambda_tau,fidelity,probability"),
    (["scheme-contour", "--scheme", "new", "--points", "3"], "lambda_tau,epsilon,fidelity"),
    (["thermal-negativity", "--scheme", "new", "--points", "4"], "T_over_omega0,log_negativity"),
    (["teleport", "--points", "3", "--a-squared", "0.3"], "T_over_omega0,F_a,F_b"),
])
def test_sweep_commands(capsys, argv, header):
    code, out, _ = run_cli(capsys, *argv)
    assert code == 0
    assert header in out


def test_teleport_report(capsys):
    code, out, _ = run_cli(capsys, "teleport", "--temperature", "2", "--a-squared", "0.36", "--pairs", "10")
    assert code == 0
    assert "a        0.999621" in out
    assert "N_min for M = 10" in out


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "cavsim", "scheme", "--scheme", "bp", "--lambda-tau", "0.7854"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "0.9714" in out.stdout
    missing = subprocess.run([sys.executable, "-m", "cavsim", "reproduce-figure"], capture_output=True, text=True)
    assert missing.returncode == 2
    assert "usage:" in missing.stderr
