from unittest.mock import patch

import numpy as np
import pytest

from adiasweep.exceptions import DegenerateGroundStateError
from main import main, parse_args, parse_grid


def peaked_fidelity(model, schedule, n_steps):
    return 0.9 - 0.01 * (schedule.alpha - 3.0) ** 2


def data_lines(path):
    return [line for line in path.read_text(encoding="utf-8").splitlines() if line[0] != "#"]


def test_gap_command(tmp_path):
    """Test gap CSV starts at the 2 omega_x gap and ends with the s_c summary"""
    out = tmp_path / "gap.csv"
    code = main(["gap", "--model", "aqc1", "--wx", "18", "--wz", "30", "--points", "201",
                 "--out", str(out)])
    assert code == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "s,e0,e1,gap"
    assert lines[1] == "0,-18,18,36"
    assert len(data_lines(out)) == 202
    assert lines[-1].startswith("# s_c=0.2647")
    for line in data_lines(out)[1:]:
        s, e0, e1, gap = map(float, line.split(","))
        assert gap == pytest.approx(e1 - e0, abs=1e-9)


def test_evolve_command_prints_fidelity(tmp_path, capsys):
    """Test a sudden sweep prints F = 0.5 and keeps unit norm in every row"""
    out = tmp_path / "evolve.csv"
    code = main(["evolve", "--model", "aqc1", "--T", "1e-6", "--n-steps", "200",
                 "--record-every", "50", "--out", str(out)])
    assert code == 0
    stdout = capsys.readouterr().out.strip()
    assert stdout.startswith("F=")
    assert float(stdout[2:]) == pytest.approx(0.5, abs=1e-3)

    rows = data_lines(out)
    assert rows[0] == "t,s_or_wz,fidelity_to_instantaneous_ground,norm"
    assert len(rows) == 6
    norms = np.array([float(row.split(",")[3]) for row in rows[1:]])
    assert np.all(np.abs(norms - 1.0) <= 1e-10)


def test_scan_command_sorted_rows(tmp_path):
    out = tmp_path / "scan.csv"
    code = main(["scan", "--model", "aqc1", "--schedule", "quadratic", "--schedule", "linear",
                 "--T-grid", "0.1:0.2:2", "--n-steps", "500", "--out", str(out)])
    assert code == 0
    rows = data_lines(out)
    assert rows[0] == "model,schedule,T,alpha,fidelity"
    assert [row.split(",")[1:3] for row in rows[1:]] == [
        ["linear", "0.1"],
        ["linear", "0.2"],
        ["quadratic", "0.1"],
        ["quadratic", "0.2"],
    ]
    assert all(row.split(",")[3] == "" for row in rows[1:])


def test_scan_is_byte_stable(tmp_path):
    """Test identical runs produce identical files"""
    argv = ["scan", "--model", "lz", "--schedule", "linear-lz", "--T-grid", "2:4:2",
            "--n-steps", "500"]
    assert main(argv + ["--out", str(tmp_path / "a.csv")]) == 0
    assert main(argv + ["--out", str(tmp_path / "b.csv")]) == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_optimize_alpha_command(tmp_path):
    out = tmp_path / "alpha.csv"
    with patch("adiasweep.services.analysis.final_fidelity", side_effect=peaked_fidelity):
        code = main(["optimize-alpha", "--model", "aqc1", "--T", "0.2",
                     "--alpha-grid", "0.5:8:5", "--out", str(out)])
    assert code == 0
    rows = data_lines(out)
    assert rows[0] == "T,alpha_best,fidelity_best"
    T, alpha_best, F_best = map(float, rows[1].split(","))
    assert T == 0.2
    assert alpha_best == pytest.approx(3.0, abs=2e-3)


def test_bad_arguments_exit_one():
    """Test usage errors exit with 1, not argparse's default 2"""
    with pytest.raises(SystemExit) as exc_info:
        main(["gap", "--model", "ising"])
    assert exc_info.value.code == 1
    with pytest.raises(SystemExit) as exc_info:
        main(["scan", "--T-grid", "1:2"])
    assert exc_info.value.code == 1
    with pytest.raises(SystemExit) as exc_info:
        main(["evolve", "--T", "-1"])
    assert exc_info.value.code == 1


def test_invalid_combinations_exit_one(tmp_path):
    out = str(tmp_path / "evolve.csv")
    assert main(["evolve", "--model", "aqc1", "--schedule", "exp-like", "--alpha", "500",
                 "--out", out]) == 1
    assert main(["evolve", "--model", "aqc1", "--schedule", "linear-lz", "--out", out]) == 1
    assert main(["evolve", "--model", "aqc1", "--record-every", "-5", "--out", out]) == 1


def test_numerical_failure_exits_two(tmp_path):
    with patch("main.evolve", side_effect=DegenerateGroundStateError(0.0, 1e-9)):
        code = main(["evolve", "--model", "aqc1", "--out", str(tmp_path / "evolve.csv")])
    assert code == 2


def test_unwritable_output_exits_one(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code = main(["gap", "--model", "aqc1", "--points", "51", "--out", str(blocker / "gap.csv")])
    assert code == 1


def test_config_file_with_flag_override(tmp_path):
    """Test key=value files supply defaults and command-line flags win"""
    config = tmp_path / "run.env"
    config.write_text(
        "model=lz\nw0=10\nT=10\nschedule=quadratic-lz\nn_steps=500\nT_grid=2:20:10\n"
    )
    args = parse_args(["evolve", "--config", str(config), "--T", "2"])
    assert args.model == "lz"
    assert args.w0 == 10.0
    assert args.T == 2.0
    assert args.schedule == ["quadratic-lz"]
    assert args.n_steps == 500
    assert len(args.T_grid) == 10

    args = parse_args(["scan", "--config", str(config), "--schedule", "linear-lz"])
    assert args.schedule == ["linear-lz"]


def test_missing_config_file_exits_one(tmp_path):
    with pytest.raises(SystemExit) as exc_info:
        parse_args(["gap", "--config", str(tmp_path / "missing.env")])
    assert exc_info.value.code == 1


def test_parse_grid():
    assert parse_grid("0:1:3") == [0.0, 0.5, 1.0]
    assert parse_grid("1:100:3", log=True) == pytest.approx([1.0, 10.0, 100.0])


def schedule_speed_fidelity(model, schedule, n_steps):
    """Stand-in evolution: exp-like twice as fast as linear, quadratic half as fast."""
    speed = {"exp-like": 2.0, "linear": 1.0, "quadratic": 0.5}[schedule.kind.value]
    return min(1.0, speed * schedule.T)


def test_scan_target_prints_crossing_order(tmp_path, capsys):
    out = tmp_path / "scan.csv"
    with patch("adiasweep.services.analysis.final_fidelity", side_effect=schedule_speed_fidelity):
        code = main(["scan", "--model", "aqc1", "--T-grid", "0.2:1:5", "--alpha-grid", "1:4:3",
                     "--target", "0.5", "--out", str(out)])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    crossings = dict(line.split(" T_cross=") for line in lines[:-1])
    assert float(crossings["exp-like-opt"]) == pytest.approx(0.25)
    assert float(crossings["linear"]) == pytest.approx(0.5)
    assert float(crossings["quadratic"]) == pytest.approx(1.0)
    assert lines[-1] == "crossing_order=holds"
