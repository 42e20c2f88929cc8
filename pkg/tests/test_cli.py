import json
import subprocess
import sys

import pytest

from hcpsolve.cli import main
from hcpsolve.instance import read_instance


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_grid_stdout(capsys):
    code, out, _ = run(capsys, "generate", "grid", 3, 3)
    assert code == 0
    assert "p edge 9 12" in out


def test_generate_file_and_metadata(tmp_path, capsys):
    out = tmp_path / "c.col"
    assert run(capsys, "generate", "circulant", 500, 3, "-o", out)[0] == 0
    assert read_instance(out).graph().m == 1500
    meta = json.loads((tmp_path / "c.col.meta.json").read_text())
    assert meta["generator"] == "circulant" and meta["m"] == 1500


def test_generate_er_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.col", tmp_path / "b.col"
    run(capsys, "generate", "er", 256, "--avg-degree", 4, "--seed", 7, "-o", a)
    run(capsys, "generate", "er", 256, "--avg-degree", 4, "--seed", 7, "-o", b)
    assert a.read_text() == b.read_text()


def test_generate_bad_params(capsys):
    code, _, err = run(capsys, "generate", "circulant", 6, 3)
    assert code == 1 and "error" in err


def test_generate_suite(tmp_path, capsys):
    assert run(capsys, "generate", "--suite", "paper", "--max-edges", 2000, "-o", tmp_path)[0] == 0
    assert (tmp_path / "grid_15_20.col").exists()
    assert (tmp_path / "grid_15_20.col.meta.json").exists()


@pytest.fixture
def grid_file(tmp_path, capsys):
    path = tmp_path / "g.col"
    run(capsys, "generate", "grid", 3, 3, "-o", path)
    return path


def test_solve_text(grid_file, capsys):
    code, out, _ = run(capsys, "solve", grid_file, "--seed", 1)
    assert code == 0
    assert out.split()[:2] == ["g", "1"]
    assert "MSLS_25_10_3000" in out


def test_solve_overrides(grid_file, capsys):
    code, out, _ = run(
        capsys, "solve", grid_file, "--preferred-ratio", 5, "--restarts", 1, "--bad-perturbations", 100,
        "--format", "machine",
    )
    rec = json.loads(out)
    assert rec["params"]["label"] == "MSLS_5_1_100"
    assert rec["hcn_estimate"] == 1 and len(rec["added_edges"]) == 1
    assert "elapsed" not in rec


def test_solve_timing_flag(grid_file, capsys):
    rec = json.loads(run(capsys, "solve", grid_file, "--format", "machine", "--timing")[1])
    assert rec["elapsed"] >= 0 and rec["first_found"] >= 0


def test_solve_machine_output_deterministic(grid_file, capsys):
    outs = {run(capsys, "solve", grid_file, "--format", "machine", "--seed", 3)[1] for _ in range(3)}
    assert len(outs) == 1


def test_solve_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.col"
    bad.write_text("p edge 3 2\ne 1 2\ne 1 x\n")
    code, _, err = run(capsys, "solve", bad)
    assert code == 2 and "line 3" in err


def test_solve_disconnected_notice(tmp_path, capsys):
    f = tmp_path / "d.col"
    f.write_text("p edge 6 4\ne 1 2\ne 2 3\ne 1 3\ne 4 5\n")
    code, out, err = run(capsys, "solve", f, "--format", "machine")
    assert code == 0
    assert json.loads(out)["hcn_estimate"] == 3
    assert "disconnected (3 components)" in err


def test_solve_tiny_graph(tmp_path, capsys):
    f = tmp_path / "t.col"
    f.write_text("p edge 2 1\ne 1 2\n")
    code, out, _ = run(capsys, "solve", f)
    assert code == 0 and "path partition number 1" in out


def test_bottleneck(tmp_path, capsys):
    p3 = tmp_path / "p3.txt"
    p3.write_text("1 2 5\n2 3 9\n")
    code, out, _ = run(capsys, "bottleneck", p3, 1, "--format", "machine")
    rec = json.loads(out)
    assert code == 0 and rec["threshold"] == 9 and rec["upper_bound"]
    k3 = tmp_path / "k3.txt"
    k3.write_text("1 2 1\n2 3 2\n1 3 3\n")
    code, out, _ = run(capsys, "bottleneck", k3, 1, "--exact")
    assert code == 0 and "threshold=2 (exact)" in out
    assert json.loads(run(capsys, "bottleneck", k3, 3, "--format", "machine")[1])["threshold"] == 1


def test_bottleneck_infeasible(tmp_path, capsys):
    f = tmp_path / "s.txt"
    f.write_text("1 2 1\n1 3 1\n1 4 1\n")
    assert run(capsys, "bottleneck", f, 1, "--exact")[0] == 1


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--trees", 50, "--max-n", 12, "--seed", 3)
    assert code == 0 and "PASS tree optimality: 50/50" in out
    assert run(capsys, "verify", "--trees", 50, "--max-n", 12, "--seed", 3)[1] == out
    code, out, _ = run(capsys, "verify", "--lemma5", "--max-n", 8, "--spanning-tree-count", 10)
    assert code == 0 and "PASS spanning tree bound: 10/10" in out


def test_module_entry_point(grid_file):
    proc = subprocess.run(
        [sys.executable, "-m", "hcpsolve", "solve", str(grid_file), "--format", "machine"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["hcn_estimate"] == 1
