import json
import subprocess
import sys

import pytest

from bdris.cli import main


def test_run_writes_outputs(tmp_path, capsys):
    cfg = tmp_path / "c.toml"
    cfg.write_text("sweep_points = 5\n")
    assert main(["run", "fig6", "--config", str(cfg), "--out", str(tmp_path), "--format", "csv"]) == 0
    assert (tmp_path / "fig6.csv").read_text().count("\n") == 11
    assert capsys.readouterr().out.strip().endswith("fig6.csv")


def test_config_error_reported(tmp_path, capsys):
    cfg = tmp_path / "c.toml"
    cfg.write_text("phi_bi = 4.0\n")
    code = main(["run", "fig6", "--config", str(cfg), "--out", str(tmp_path)])
    err = capsys.readouterr().err
    assert code != 0
    assert err.startswith("bdris: error[config]:") and "phi_bi" in err


def test_io_error_reported(tmp_path, capsys):
    blocker = tmp_path / "f"
    blocker.write_text("")
    cfg = tmp_path / "c.toml"
    cfg.write_text("sweep_points = 2\n")
    code = main(["run", "fig6", "--config", str(cfg), "--out", str(blocker / "sub"), "--format", "csv"])
    assert code != 0
    assert "error[io]" in capsys.readouterr().err


def test_oracle_budget_error(capsys):
    assert main(["oracle", "phase-grid", "--n-i", "4", "--trials", "10"]) != 0
    assert "error[argument]" in capsys.readouterr().err


@pytest.mark.parametrize("name", ["random-unitary", "phase-grid", "model-consistency"])
def test_oracle_json(name, capsys):
    assert main(["oracle", name, "--seed", "3", "--trials", "50"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["oracle"] == name


def test_check_passes(capsys):
    assert main(["check"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and out.count("PASS") >= 5


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bdris", "run", "nope"], capture_output=True, text=True)
    assert proc.returncode != 0
