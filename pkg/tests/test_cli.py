import subprocess
import sys

import pytest

GOOD = """
[physical]
trap_length = 1 um
sound_speed = 10 mm_per_s
temperature = 0 nK

[probe]
r = 2

[channel]
rate_per_strain_hz = 11110.026496461896

[sweep]
axis = time
grid = 1e-3:1e-2:4 log
with_bulk = true
"""


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "becgw.cli", *args],
                          capture_output=True, text=True)


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(GOOD)
    return str(path)


def test_validate_ok(config_path):
    proc = run_cli("validate", "--config", config_path)
    assert proc.returncode == 0, proc.stderr
    assert "ok" in proc.stdout.lower() or "pass" in proc.stdout.lower()


def test_state(config_path):
    proc = run_cli("state", "--config", config_path)
    assert proc.returncode == 0, proc.stderr
    assert "purity" in proc.stdout


def test_channel(config_path):
    proc = run_cli("channel", "--config", config_path, "--time", "1e-2")
    assert proc.returncode == 0, proc.stderr


def test_qfi(config_path):
    proc = run_cli("qfi", "--config", config_path, "--time", "1e-2")
    assert proc.returncode == 0, proc.stderr
    assert "qfi" in proc.stdout.lower()


def test_cfi(config_path):
    proc = run_cli("cfi", "--config", config_path, "--time", "1e-2")
    assert proc.returncode == 0, proc.stderr


def test_bulk(config_path):
    proc = run_cli("bulk", "--config", config_path, "--time", "1e-2")
    assert proc.returncode == 0, proc.stderr


def test_scan_writes_csv(config_path, tmp_path):
    out = tmp_path / "table.csv"
    proc = run_cli("scan", "--config", config_path, "--output", str(out))
    assert proc.returncode == 0, proc.stderr
    lines = [l for l in out.read_text().splitlines()
             if l and not l.startswith("#")]
    assert lines[0].startswith("axis_value,")
    assert len(lines) == 5  # header + 4 grid points


def test_bad_config_exits_2(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("[physical]\nnonsense_key = 7\n")
    proc = run_cli("validate", "--config", str(path))
    assert proc.returncode == 2
    assert proc.stderr.strip()


def test_missing_file_exits_2(tmp_path):
    proc = run_cli("validate", "--config", str(tmp_path / "absent.cfg"))
    assert proc.returncode == 2


def test_regime_violation_exits_4(tmp_path):
    path = tmp_path / "hot.cfg"
    path.write_text(GOOD.replace("temperature = 0 nK",
                                 "temperature = 1 mK"))
    proc = run_cli("qfi", "--config", str(path), "--time", "1e-2")
    assert proc.returncode == 4
