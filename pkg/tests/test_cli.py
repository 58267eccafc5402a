import subprocess
import sys

import pytest

from axmu.cli import main
from axmu.experiments import CSV_COLUMNS, PRESETS


def test_analyze_prints_throughput(capsys):
    assert main(["analyze", "--set", "n=4"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("S_d = ") and "S_u = " in out and "V_u = 4" in out


def test_simulate_runs(capsys):
    assert main(["simulate", "--set", "n=2", "--reps", "2", "--sim-time", "0.2"]) == 0
    assert "events:" in capsys.readouterr().out


def test_config_error_exit_code(capsys):
    assert main(["analyze", "--set", "bogus=1"]) == 2
    assert "bogus" in capsys.readouterr().err
    assert main(["analyze", "--set", "n=64", "--set", "lambda_csi=500"]) == 2
    assert main(["sweep", "--param", "nope", "--values", "1,2"]) == 2
    assert main(["presets", "run", "fig99"]) == 2


def test_config_file(tmp_path, capsys):
    path = tmp_path / "c.conf"
    path.write_text("n = 8\nb = 80\n")
    assert main(["analyze", "--config", str(path)]) == 0
    assert "V_u = 8" in capsys.readouterr().out


def test_validate_exit_codes(capsys):
    args = ["validate", "--set", "n=4", "--reps", "2", "--sim-time", "0.5"]
    assert main(args + ["--tolerance", "1.0"]) == 0
    assert "PASS" in capsys.readouterr().out
    assert main(args + ["--tolerance", "0"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_sweep_csv_is_byte_stable(tmp_path):
    outs = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        assert main(["sweep", "--param", "n", "--values", "2,4", "--engine", "both",
                     "--reps", "2", "--sim-time", "0.3", "--seed", "9", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    lines = outs[0].decode().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert [l.split(",")[2] for l in lines[1:]] == ["analysis", "sim", "analysis", "sim"]


def test_presets_list(capsys):
    assert main(["presets", "list"]) == 0
    out = capsys.readouterr().out
    assert all(name in out for name in PRESETS)


def test_presets_run_writes_series(tmp_path):
    assert main(["presets", "run", "fig7", "--out", str(tmp_path)]) == 0
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["fig7_ampdu256.csv", "fig7_ampdu64.csv"]
    rows = (tmp_path / "fig7_ampdu64.csv").read_text().splitlines()
    assert len(rows) == 5


def test_presets_run_stdout(capsys):
    assert main(["presets", "run", "fig3b"]) == 0
    out = capsys.readouterr().out
    assert out.count("# fig3b") == 6


@pytest.mark.parametrize("preset", sorted(PRESETS))
def test_every_preset_runs_analytically(preset):
    from axmu.experiments import run_preset
    results = run_preset(preset)
    assert results and all(rows for rows in results.values())


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "axmu", "analyze", "--set", "n=1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "S_d" in proc.stdout
