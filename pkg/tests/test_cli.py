import json
import subprocess
import sys

import numpy as np
import pytest

from gid.cli import main
from gid.experiment import from_csv, from_json
from gid.instances import read_instance, read_solution
from gid.minsat import read_affsat
from gid.solvers import verify_solution


@pytest.fixture
def planted(tmp_path):
    inst = tmp_path / "inst.gid"
    err = tmp_path / "e.txt"
    assert main(["gen", "--n", "24", "--k", "12", "--t", "2", "--seed", "1", "--out", str(inst), "--error-out", str(err)]) == 0
    return inst, err


def test_solve_and_verify(planted, tmp_path):
    inst, err = planted
    sol = tmp_path / "sol.txt"
    assert main(["solve-cwp", "--strategy", "prange", "--seed", "7", str(inst), "--out", str(sol)]) == 0
    x, w = read_solution(sol)
    assert verify_solution(read_instance(inst), x) and w == np.count_nonzero(x)
    assert main(["verify", str(inst), str(sol)]) == 0
    assert main(["verify", str(inst), str(err)]) == 0


def test_tampered_solution_fails(planted, tmp_path, capsys):
    inst, err = planted
    x, _ = read_solution(err)
    x[np.flatnonzero(x)[0]] = 0
    bad = tmp_path / "bad.txt"
    bad.write_text(" ".join(map(str, x)) + f"\nweight: {np.count_nonzero(x)}\n")
    assert main(["verify", str(inst), str(bad)]) == 2
    assert "invalid" in capsys.readouterr().out


def test_budget_exhausted_exit_code(tmp_path):
    inst = tmp_path / "r.gid"
    assert main(["gen", "--n", "40", "--k", "20", "--t", "1", "--mode", "random", "--seed", "3", "--out", str(inst)]) == 0
    assert main(["solve-cwp", "--seed", "1", "--budget-decomps", "3", str(inst)]) == 2


def test_usage_errors(planted, capsys):
    inst, _ = planted
    assert main(["solve-cwp", str(inst)]) == 1  # --seed missing
    assert "--seed" in capsys.readouterr().err
    assert main(["gen", "--n", "8", "--k", "4", "--t", "1"]) == 1
    assert main(["bogus"]) == 1
    assert main(["verify", "missing.gid", "missing.txt"]) == 1
    assert main(["solve-cwp", "--seed", "1", "--strategy", "stern", "--p", "9", str(inst)]) == 1


def test_wrong_problem_kind(planted):
    inst, _ = planted
    assert main(["solve-swp", "--strategy", "lee_brickell", "--seed", "1", str(inst)]) == 1


def test_swp_and_minsat(tmp_path, capsys):
    inst = tmp_path / "l.gid"
    assert main(["gen", "--problem", "lwp", "--n", "12", "--k", "6", "--t", "5", "--seed", "2", "--out", str(inst)]) == 0
    sol = tmp_path / "s.txt"
    assert main(["solve-swp", "--strategy", "stern", "--seed", "1", str(inst), "--out", str(sol)]) == 0
    assert main(["verify", str(inst), str(sol)]) == 0
    sat = tmp_path / "l.affsat"
    assert main(["to-minsat", "--seed", "0", str(inst), "--out", str(sat)]) == 0
    assert read_affsat(sat).n_vars == 6
    capsys.readouterr()
    assert main(["brute-minsat", str(sat)]) == 0
    assert capsys.readouterr().out.strip() == "000000"


def test_to_minsat_needs_f2(tmp_path):
    inst = tmp_path / "q3.gid"
    assert main(["gen", "--q", "3", "--n", "8", "--k", "4", "--t", "1", "--seed", "0", "--out", str(inst)]) == 0
    assert main(["to-minsat", "--seed", "0", str(inst)]) == 1


def test_experiment_outputs(tmp_path):
    csv_path, json_path = tmp_path / "r.csv", tmp_path / "r.json"
    args = ["experiment", "easy-weights", "--n", "40", "--k", "20", "--q", "3", "--iters", "2", "--decomps", "2", "--seed", "5"]
    assert main(args + ["--out", str(csv_path)]) == 0
    assert main(args + ["--format", "json", "--out", str(json_path)]) == 0
    a, b = from_csv(csv_path.read_text()), from_json(json_path.read_text())
    assert a.reached == b.reached and a.decompositions == 2
    assert main(["experiment", "easy-weights", "--n", "40", "--k", "20"]) == 1


def test_gv(capsys):
    assert main(["gv", "--n", "500", "--k", "250", "--q", "3"]) == 0
    assert abs(int(capsys.readouterr().out.strip()) - 123) <= 5
    assert main(["gv", "--n", "500", "--k", "250", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["threshold"] == 57


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "gid.cli", "gv", "--n", "1000", "--k", "500", "--q", "3"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "242"
