import csv
import io
import json

import numpy as np
import pytest

from walklocal.cli import main
from walklocal.correspondence import WalkSpace, full_swap
from walklocal.ensembles import hadamard_hamiltonian
from walklocal.spectral import matrix_to_json


@pytest.fixture
def files(tmp_path):
    def write(name, content):
        p = tmp_path / name
        p.write_text(content if isinstance(content, str) else json.dumps(content))
        return str(p)
    return write


PATH_H = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex)
TRI_H = np.array([[0.4, 1.0, 0.5j], [1.0, 0.1, -0.7], [-0.5j, -0.7, 0.3]])


def test_check_identity_passes(files, capsys):
    g = files("g.txt", "N=3\n1 2\n2 3\n")
    m = files("u.json", matrix_to_json(np.eye(3)))
    assert main(["check", "--graph", g, "--matrix", m]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [v["kind"] for v in doc["verdicts"]] == ["Z", "C", "H"]
    assert all(v["pass"] for v in doc["verdicts"])


def test_check_swap_fails(files, capsys):
    g = files("g.txt", "N=3; 1 2; 2 3")
    m = files("s.json", matrix_to_json(full_swap(WalkSpace(3))))
    assert main(["check", "--graph", g, "--matrix", m]) == 1
    captured = capsys.readouterr()
    doc = json.loads(captured.out)
    assert doc["verdicts"][0]["pass"] is False
    assert "Z-local: FAIL" in captured.err


def test_compile_tree_warns_and_exits_zero(files, tmp_path, capsys):
    g = files("g.txt", "N=3; 1 2; 2 3")
    m = files("h.json", matrix_to_json(PATH_H))
    out = tmp_path / "plan.json"
    assert main(["compile", "--graph", g, "--matrix", m, "--t", "1", "--delta", "0.05",
                 "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["no_lazy"] and doc["warnings"]
    assert "no_lazy" in capsys.readouterr().err
    assert main(["compile", "--graph", g, "--matrix", m, "--t", "1", "--delta", "0.05",
                 "--out", str(out), "--no-lazy-ok"]) == 0
    assert capsys.readouterr().err == ""


def test_simulate_is_reproducible(files, tmp_path):
    g = files("g.json", {"n": 3, "edges": [[1, 2], [2, 3], [1, 3]]})
    m = files("h.json", matrix_to_json(TRI_H))
    outs = []
    for i in range(2):
        out = tmp_path / f"r{i}.json"
        assert main(["simulate", "--graph", g, "--matrix", m, "--t", "1", "--delta", "0.05",
                     "--seed", "3", "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["error"] <= 0.05


def test_simulate_odd_tau_flag(files, capsys):
    g = files("g.txt", "N=3; 1 2; 2 3; 1 3")
    m = files("h.json", matrix_to_json(TRI_H))
    base = ["simulate", "--graph", g, "--matrix", m, "--t", "1", "--tau", "3"]
    assert main(base) == 2
    assert "odd" in capsys.readouterr().err
    assert main(base + ["--allow-odd-tau"]) in (0, 1)


def test_lemmas_command(files, capsys):
    g = files("g.txt", "N=3; 1 2; 2 3")
    m = files("h.json", matrix_to_json(PATH_H))
    assert main(["lemmas", "--graph", g, "--matrix", m, "--tau", "1", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["v2_minus_w2"] <= 1e-10


def test_sweep_csv(files, tmp_path, capsys):
    g = files("g.txt", "N=3; 1 2; 2 3; 1 3")
    m = files("h.json", matrix_to_json(TRI_H))
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--graph", g, "--matrix", m, "--t", "1",
                 "--delta", "0.1", "0.01", "0.001", "--seed", "0", "1", "--out", str(out)]) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len(rows) == 6
    assert list(rows[0]) == ["n", "delta", "tau", "eps", "measured_error", "bound",
                             "success_prob", "wall_ms"]
    assert all(float(r["measured_error"]) <= float(r["bound"]) for r in rows)
    assert "slope" in capsys.readouterr().err


def test_sweep_single_delta_has_no_fit(files, capsys):
    g = files("g.txt", "N=3; 1 2; 2 3; 1 3")
    m = files("h.json", matrix_to_json(TRI_H))
    assert main(["sweep", "--graph", g, "--matrix", m, "--t", "1", "--delta", "0.1",
                 "--seed", "0", "1", "2", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["slope"] is None and len(doc["rows"]) == 3


def test_sweep_hadamard_tau_matches_scalar_formula(files, capsys):
    import math
    k4 = "N=4\n" + "\n".join(f"{j} {k}" for j in range(1, 5) for k in range(j + 1, 5))
    g = files("k4.txt", k4)
    had = hadamard_hamiltonian(4)
    m = files("had.json", matrix_to_json(had))
    assert main(["sweep", "--graph", g, "--matrix", m, "--t", "1", "--delta", "100",
                 "--format", "json"]) == 0
    row = json.loads(capsys.readouterr().out)["rows"][0]
    # shifted generator H + I/2 has ||abs|| = sqrt(N) * 1 + 1/2 on this matrix
    hw = had + row["shift"] * np.eye(4)
    na = np.linalg.norm(np.abs(hw), 2)
    nh = np.linalg.norm(hw, 2)
    first = nh * math.sqrt((1 + (math.pi / 2 - 1) * nh) / 100)
    assert na > first
    assert row["tau"] == 2 * math.ceil(na / 2)


@pytest.mark.parametrize("argv", [
    ["check", "--graph", "/nonexistent", "--matrix", "/nonexistent"],
])
def test_input_errors_exit_2(argv):
    assert main(argv) == 2


def test_malformed_graph_exit_2(files):
    g = files("g.txt", "N=2\n1 5\n")
    m = files("u.json", matrix_to_json(np.eye(2)))
    assert main(["check", "--graph", g, "--matrix", m]) == 2


def test_csv_rejected_outside_sweep(files):
    g = files("g.txt", "N=2; 1 2")
    m = files("u.json", matrix_to_json(np.eye(2)))
    assert main(["check", "--graph", g, "--matrix", m, "--format", "csv"]) == 2
