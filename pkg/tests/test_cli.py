import json

import numpy as np
import pytest

from kuramoto_landscape import read_edge_list
from kuramoto_landscape.cli import main, parse_graph_spec


def run(*argv):
    return main(list(argv))


def test_parse_graph_spec():
    g = parse_graph_spec("circulant:10,3")
    assert g.n == 10 and np.all(g.degrees == 6)
    g2 = parse_graph_spec("random:20,0.8,3")
    assert g2.degrees.min() >= np.ceil(0.8 * 19)


def test_bad_graph_spec_exit_code(capsys):
    assert run("gen-graph", "--graph", "banana:3", "--out", "/tmp/x.edges") == 1
    assert "bad graph spec" in capsys.readouterr().err


def test_gen_graph_round_trip(tmp_path, capsys):
    edges = tmp_path / "g.edges"
    assert run("gen-graph", "--graph", "random:30,0.8,5", "--out", str(edges)) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["schema_version"] == 1
    assert summary["result"]["n"] == 30
    g = read_edge_list(edges)
    assert g.edge_count == summary["result"]["edges"]
    # regenerating and loading gives the identical edge set
    edges2 = tmp_path / "g2.edges"
    run("gen-graph", "--graph", "random:30,0.8,5", "--out", str(edges2))
    assert edges.read_bytes() == edges2.read_bytes()


def test_simulate_with_trajectory(tmp_path):
    out = tmp_path / "sim.json"
    traj = tmp_path / "traj.csv"
    code = run(
        "simulate",
        "--graph", "complete:6",
        "--init", "random:3",
        "--dt", "0.05",
        "--trajectory", str(traj),
        "--out", str(out),
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["result"]["converged"]
    assert payload["result"]["order_magnitude"] > 1 - 1e-6
    lines = traj.read_text().strip().split("\n")
    assert lines[0] == "t,energy,order_magnitude"
    assert len(lines) > 2


def test_simulate_loaded_edge_list(tmp_path):
    edges = tmp_path / "g.edges"
    run("gen-graph", "--graph", "circulant:12,5", "--out", str(edges))
    out = tmp_path / "sim.json"
    assert run("simulate", "--edges", str(edges), "--init", "constant:1.0", "--out", str(out)) == 0
    payload = json.loads(out.read_text())
    assert payload["result"]["steps"] == 0


def test_classify_twisted(tmp_path):
    out = tmp_path / "cls.json"
    code = run(
        "classify",
        "--graph", "circulant:100,30",
        "--init", "twisted:1",
        "--out", str(out),
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["result"]["classification"] == "spurious-local-max"


def test_classify_non_equilibrium_is_numerical_failure(tmp_path):
    assert run("classify", "--graph", "complete:5", "--init", "random:1") == 3


def test_census_deterministic_output(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    args = ["census", "--graph", "complete:6", "--trials", "8", "--seed", "4"]
    assert run(*args, "--out", str(a)) == 0
    assert run(*args, "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()
    payload = json.loads(a.read_text())
    assert payload["result"]["classes"] == ["global-max"]
    assert sum(e["hit_count"] for e in payload["result"]["equilibria"]) == 8


def test_verify_certificate_exit_codes(tmp_path, capsys):
    assert run("verify-certificate", "--mu", "0.7889", "--alpha", "0.0537") == 0
    out = json.loads(capsys.readouterr().out)
    assert out["result"]["passed"]

    # regime boundary: numerical failure
    assert run("verify-certificate", "--mu", "0.75", "--alpha", "0.0") == 3
    assert "not positive" in capsys.readouterr().err

    # invalid ordering: validation failure
    assert run("verify-certificate", "--mu", "0.79", "--alpha", "0.6") == 1


def test_sweep_command(tmp_path):
    out = tmp_path / "sweep.json"
    csv = tmp_path / "sweep.csv"
    code = run(
        "sweep",
        "--grid", "40",
        "--csv", str(csv),
        "--out", str(out),
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["result"]["all_pass"]
    assert payload["result"]["margins_ok"] == {"cond1": True, "cond2": True, "cond3_margin": True}
    assert csv.exists()


def test_sweep_hardened_and_plot(tmp_path):
    out = tmp_path / "sweep.json"
    png = tmp_path / "sweep.png"
    code = run("sweep", "--grid", "10", "--hardened", "--plot", str(png), "--out", str(out))
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["result"]["hardened"]["conclusive_pass"]
    assert png.stat().st_size > 0


def test_sweep_failing_range_exit_code(tmp_path):
    assert run("sweep", "--mu-min", "0.78", "--grid", "30", "--out", str(tmp_path / "s.json")) == 2


def test_census_plot(tmp_path):
    png = tmp_path / "census.png"
    code = run(
        "census",
        "--graph", "complete:5",
        "--trials", "5",
        "--plot", str(png),
        "--out", str(tmp_path / "c.json"),
    )
    assert code == 0
    assert png.stat().st_size > 0


def test_optimize_command(tmp_path):
    out = tmp_path / "opt.json"
    assert run("optimize", "--mu", "0.792", "--out", str(out)) == 0
    payload = json.loads(out.read_text())
    assert payload["result"]["best_objective"] > 0

    assert run("optimize", "--mu", "0.75", "--out", str(out)) == 3


def test_outdir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("KURAMOTO_LANDSCAPE_OUTDIR", str(tmp_path))
    assert run("gen-graph", "--graph", "complete:4", "--out", "rel.edges") == 0
    assert (tmp_path / "rel.edges").exists()


def test_missing_graph_source(capsys):
    assert run("simulate", "--init", "constant:0") == 1
    assert "one of --graph or --edges" in capsys.readouterr().err
