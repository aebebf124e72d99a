"""Command-line harness: outputs, exit codes, config precedence,
report files."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from wdyn.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_traj_prints_orbit_and_ind(capsys):
    code, out, _ = run(capsys, "traj", "98")
    assert code == 0
    assert "98 -> 63 -> 75 -> 20" in out
    assert "ind = 3" in out


def test_traj_at_twenty(capsys):
    code, out, _ = run(capsys, "traj", "20")
    assert code == 0
    assert "ind = 0" in out


def test_traj_rejects_non_a3(capsys):
    code, _, err = run(capsys, "traj", "16")
    assert code == 1
    assert "not in A3" in err


def test_traj_cap_exceeded_exit_code(capsys):
    code, out, _ = run(capsys, "traj", "98", "--cap", "2")
    assert code == 2
    assert "did not reach 20" in out


def test_traj_json(capsys):
    code, out, _ = run(capsys, "traj", "98", "--json")
    assert code == 0
    assert json.loads(out) == {
        "start": 98,
        "steps": [98, 63, 75, 20],
        "terminal": {"reached_twenty": 3},
    }


def test_ind_command(capsys):
    code, out, _ = run(capsys, "ind", "75")
    assert code == 0
    assert "ind(75) = 1" in out
    code, _, err = run(capsys, "ind", "98", "--cap", "2")
    assert code == 2
    assert "cap 2" in err


def test_classify_command(capsys):
    code, out, _ = run(capsys, "classify", "30")
    assert code == 0
    assert "30 = 2*3*5 (c3)" in out
    code, out, _ = run(capsys, "classify", "16")
    assert code == 0
    assert "not a product of three primes" in out


def test_sieve_command(capsys, tmp_path):
    code, out, _ = run(capsys, "sieve", "--limit", "1000", "--cache-dir", str(tmp_path))
    assert code == 0
    assert "primes=168" in out
    assert (tmp_path / "sieve-1000.wdynsieve").exists()


def test_parents_count_equals_listing(capsys):
    code, out, _ = run(capsys, "parents", "1547", "--x", "100", "--list")
    assert code == 0
    lines = out.splitlines()
    count = int(next(l for l in lines if "count=" in l).split("count=")[1])
    listed = [l for l in lines if l.startswith("  ")]
    assert count == len(listed) == 10


def test_parents_oracle_flag_gives_identical_output(capsys):
    code_a, out_a, _ = run(capsys, "parents", "1547", "--x", "100", "--list")
    code_b, out_b, _ = run(capsys, "parents", "1547", "--x", "100", "--list", "--oracle")
    assert code_a == code_b == 0
    assert out_a == out_b


def test_parents_b3_class_on_c3_target_is_empty(capsys):
    code, out, _ = run(capsys, "parents", "1547", "--x", "100", "--class", "b3")
    assert code == 0
    assert "count=0" in out


def test_parents_b3_target(capsys):
    code, out, _ = run(capsys, "parents", "29767", "--x", "100", "--class", "b3", "--list")
    assert code == 0
    assert "count=1" in out
    assert "101*103*103" in out


def test_parents_rejects_non_a3_target(capsys):
    code, _, err = run(capsys, "parents", "16", "--x", "100")
    assert code == 1
    assert "not in A3" in err


@pytest.mark.parametrize(
    "golden, argv",
    [
        ("census_thm3_x300.json", ["census", "--mode", "thm3", "--x-grid", "300"]),
        ("census_thm1_x300.json", ["census", "--mode", "thm1", "--x-grid", "300"]),
        ("lemma3_x100.json", ["lemma3", "--x-grid", "100"]),
    ],
)
def test_golden_reports(capsys, tmp_path, golden, argv):
    out_path = tmp_path / "report.json"
    code, out, _ = run(capsys, *argv, "--output", str(out_path))
    assert code == 0
    assert out_path.read_bytes() == (GOLDEN / golden).read_bytes()


def test_census_byte_identical_across_workers(capsys, tmp_path):
    payloads = {}
    for workers in (1, 2):
        out_path = tmp_path / f"census-{workers}.json"
        code, _, _ = run(
            capsys,
            "census", "--mode", "thm3", "--x-grid", "100,300",
            "--workers", str(workers), "--output", str(out_path),
        )
        assert code == 0
        payloads[workers] = out_path.read_bytes()
    assert payloads[1] == payloads[2]


def test_census_stdout_table_shape(capsys):
    code, out, _ = run(capsys, "census", "--mode", "thm3", "--x-grid", "100,300")
    assert code == 0
    lines = [l for l in out.splitlines() if l.strip()]
    assert len(lines) == 3  # header + one row per x
    assert lines[0].split() == ["x", "target", "count", "bound", "ratio"]
    for row in lines[1:]:
        assert float(row.split()[-1]) > 0  # ratio column


def test_census_csv_report(capsys, tmp_path):
    out_path = tmp_path / "census.csv"
    code, _, _ = run(capsys, "census", "--mode", "thm3", "--x-grid", "100", "--output", str(out_path))
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "x,target,count"
    assert all(line.startswith("100,") for line in lines[1:])
    assert len(lines) > 1


def test_census_triple_mode_x_cap(capsys):
    code, _, err = run(capsys, "census", "--mode", "thm1", "--x-grid", "300,5000")
    assert code == 1
    assert "--allow-large" in err


def test_census_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["census", "--x-grid", "100"])  # missing required --mode
    assert exc.value.code == 1


def test_lemma2_command(capsys, tmp_path):
    vals = tmp_path / "vals.txt"
    vals.write_text("\n".join(str(v) for v in range(1, 12)) + "\n")
    code, out, _ = run(capsys, "lemma2", "--file", str(vals), "--X", "3")
    assert code == 0
    assert "lhs=3" in out
    assert "Z=11" in out


def test_lemma2_missing_file(capsys):
    code, _, err = run(capsys, "lemma2", "--file", "/does/not/exist.txt", "--X", "3")
    assert code == 3
    assert "cannot read" in err


def test_lemma3_command(capsys, tmp_path):
    out_path = tmp_path / "var.json"
    code, out, _ = run(capsys, "lemma3", "--x-grid", "100", "--output", str(out_path))
    assert code == 0
    payload = json.loads(out_path.read_text())
    (entry,) = payload["results"]
    assert entry["x_or_X"] == 100
    assert "/" in entry["lhs"]
    assert entry["window"] == [46, 92]


def test_lemma3_csv_report(capsys, tmp_path):
    out_path = tmp_path / "var.csv"
    code, _, _ = run(capsys, "lemma3", "--x-grid", "100,300", "--output", str(out_path))
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "x,lhs,bound,ratio"
    assert len(lines) == 3


def test_cache_dir_flag_beats_env(capsys, tmp_path, monkeypatch):
    env_dir = tmp_path / "env"
    flag_dir = tmp_path / "flag"
    env_dir.mkdir()
    flag_dir.mkdir()
    monkeypatch.setenv("WDYN_CACHE_DIR", str(env_dir))
    code, _, _ = run(capsys, "sieve", "--limit", "500", "--cache-dir", str(flag_dir))
    assert code == 0
    assert (flag_dir / "sieve-500.wdynsieve").exists()
    assert not (env_dir / "sieve-500.wdynsieve").exists()
    code, _, _ = run(capsys, "sieve", "--limit", "500")
    assert code == 0
    assert (env_dir / "sieve-500.wdynsieve").exists()


def test_workers_env_var(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("WDYN_WORKERS", "2")
    out_env = tmp_path / "env.json"
    code, _, _ = run(capsys, "census", "--mode", "thm3", "--x-grid", "100", "--output", str(out_env))
    assert code == 0
    monkeypatch.delenv("WDYN_WORKERS")
    out_one = tmp_path / "one.json"
    code, _, _ = run(capsys, "census", "--mode", "thm3", "--x-grid", "100", "--output", str(out_one))
    assert code == 0
    assert out_env.read_bytes() == out_one.read_bytes()


def test_module_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "wdyn.cli", "ind", "98"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "ind(98) = 3" in proc.stdout
