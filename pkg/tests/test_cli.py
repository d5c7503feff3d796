import csv
import subprocess
import sys

import pytest

from hmnet.cli import main
from hmnet.degrees import read_ndl, validate_ndl
from hmnet.graph import read_edge_list, write_edge_list, Graph
from hmnet.metrics import read_report
from helpers import N1


def _rows(path):
    with open(path) as fh:
        return list(csv.DictReader(line for line in fh if not line.startswith("#")))


def test_ndl_command(tmp_path, capsys):
    out = tmp_path / "pl.ndl"
    assert main(["ndl", "--dist", "powerlaw:2.6", "--n", "200", "--degmin", "3", "--seed", "7",
                 "--out", str(out)]) == 0
    ndl, fields = read_ndl(out)
    validate_ndl(ndl, 200)
    assert fields["seed"] == "7"
    header, row = capsys.readouterr().out.splitlines()
    assert header.split("\t") == ["min", "max", "mean", "stddev", "mode", "median", "M"]
    assert int(row.split("\t")[-1]) * 2 == sum(ndl)


def test_ndl_normal_mean(capsys):
    assert main(["ndl", "--dist", "normal:6,1.1", "--n", "200", "--seed", "3"]) == 0
    mean = float(capsys.readouterr().out.splitlines()[1].split("\t")[2])
    assert 5.7 <= mean <= 6.4


def test_ndl_missing_n_is_usage_error():
    with pytest.raises(SystemExit) as err:
        main(["ndl", "--dist", "normal:6,1.1"])
    assert err.value.code == 2


def test_bad_distribution_is_usage_error(capsys):
    assert main(["ndl", "--dist", "zipf:2", "--n", "20"]) == 2
    assert "error" in capsys.readouterr().err


def _pipeline(prefix, *extra):
    return main(["pipeline", "--dist", "normal:6,1.1", "--n", "200", "--seed", "11",
                 "--out-prefix", str(prefix), *extra])


def _artifacts(prefix):
    d = prefix.parent
    return {p.name: p.read_bytes() for p in sorted(d.iterdir()) if p.name.startswith(prefix.name)}


def test_pipeline_is_bit_identical(tmp_path):
    a, b, c = tmp_path / "a" / "run", tmp_path / "b" / "run", tmp_path / "c" / "run"
    assert _pipeline(a) == 0
    assert _pipeline(b) == 0
    assert _pipeline(c, "--jobs", "2") == 0
    fa = _artifacts(a)
    assert set(fa) >= {"run.g0.edges", "run.gr.edges", "run.gm.edges", "run.gr.report", "run.gm.report",
                       "run.gm.report.ccdf.csv", "run.gm.report.edhist.csv"}
    assert fa == _artifacts(b) == _artifacts(c)
    for name in ("run.g0.edges", "run.gm.report"):
        assert b"seed=11" in fa[name]
        assert b"pg=0.8" in fa[name]


def test_pipeline_reference_defaults(tmp_path):
    prefix = tmp_path / "run"
    assert _pipeline(prefix) == 0
    gr = read_report(f"{prefix}.gr.report")
    gm = read_report(f"{prefix}.gm.report")
    assert float(gm["aed"]) / float(gr["aed"]) >= 3.5
    assert 0.70 <= float(gm["q2"]) <= 0.85


def test_pipeline_zero_pg(tmp_path):
    prefix = tmp_path / "run"
    assert _pipeline(prefix, "--pg", "0") == 0
    gr, _, _ = read_edge_list(f"{prefix}.gr.edges")
    gm, _, _ = read_edge_list(f"{prefix}.gm.edges")
    assert gr == gm
    assert float(read_report(f"{prefix}.gm.report")["q2"]) == 0.0


def test_analyze_reproduces_pipeline_report(tmp_path):
    prefix = tmp_path / "run"
    assert main(["pipeline", "--dist", "powerlaw:2.6", "--n", "120", "--seed", "5", "--retries", "5",
                 "--out-prefix", str(prefix)]) == 0
    out = tmp_path / "again.report"
    assert main(["analyze", "--graph", f"{prefix}.gm.edges", "--topology", "120:4",
                 "--reference", f"{prefix}.gr.edges", "--report", str(out)]) == 0
    assert read_report(out) == read_report(f"{prefix}.gm.report")
    for name in ("ccdf", "ck", "knn", "edhist"):
        pipe = (tmp_path / f"run.gm.report.{name}.csv").read_text().splitlines()
        again = (tmp_path / f"again.report.{name}.csv").read_text().splitlines()
        assert [l for l in pipe if not l.startswith("#")] == [l for l in again if not l.startswith("#")]


def test_analyze_n1(tmp_path, capsys):
    path = tmp_path / "n1.edges"
    write_edge_list(path, Graph.from_edges(8, N1))
    assert main(["analyze", "--graph", str(path), "--topology", "8:2"]) == 0
    rep = dict(line.split("=", 1) for line in capsys.readouterr().out.splitlines() if "=" in line)
    assert float(rep["aed"]) == pytest.approx(8 / 7)
    assert round(float(rep["q[0:0-8]"]), 4) == 0.7143
    assert rep["q2"] == "undefined"


def test_analyze_triangle(tmp_path, capsys):
    path = tmp_path / "tri.edges"
    write_edge_list(path, Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]))
    assert main(["analyze", "--graph", str(path)]) == 0
    rep = dict(line.split("=", 1) for line in capsys.readouterr().out.splitlines() if "=" in line)
    assert float(rep["clustering_c"]) == 1.0
    assert float(rep["h"]) == 1.0
    assert int(rep["diameter"]) == 1


def test_analyze_disconnected(tmp_path, capsys):
    path = tmp_path / "two.edges"
    write_edge_list(path, Graph.from_edges(5, [(0, 1), (2, 3), (3, 4)]))
    assert main(["analyze", "--graph", str(path)]) == 0
    captured = capsys.readouterr()
    assert "disconnected" in captured.err
    rep = dict(line.split("=", 1) for line in captured.out.splitlines() if "=" in line)
    assert rep["connected"] == "false"
    assert int(rep["diameter"]) == 2


def test_analyze_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.edges"
    path.write_text("# n=4 m=2 seed=0\n0 1\n2 x\n")
    assert main(["analyze", "--graph", str(path)]) == 4
    assert "bad.edges:3" in capsys.readouterr().err


def test_missing_file_is_io_error(tmp_path):
    assert main(["analyze", "--graph", str(tmp_path / "nope.edges")]) == 4


def test_construction_failure_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.ndl"
    # even sum and degrees below n, yet no simple graph realizes it
    path.write_text("# n=4 dist=manual seed=0\n3\n3\n1\n1\n")
    assert main(["pipeline", "--ndl", str(path), "--out-prefix", str(tmp_path / "x")]) == 3
    assert "construction failed" in capsys.readouterr().err


def test_experiment_single_seed(tmp_path):
    assert main(["experiment", "--suite", "table2", "--seeds", "1", "--out", str(tmp_path)]) == 0
    runs = _rows(tmp_path / "table2_runs.csv")
    assert len(runs) == 16  # eight classes, m0 and m8
    summary = _rows(tmp_path / "table2_summary.csv")
    assert len(summary) == 16
    assert all(r["runs"] == "1" for r in summary)
    assert all(r["q2_sd"] == "" for r in summary)
    assert {f"q{i}_mean" for i in range(1, 8)} <= set(summary[0])
    assert (tmp_path / "table2_runs.csv").read_text().startswith("# suite=table2")


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "hmnet", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip()


def test_analyze_strict_hierarchy(tmp_path, capsys):
    path = tmp_path / "chord.edges"
    write_edge_list(path, Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 3)]))
    assert main(["analyze", "--graph", str(path)]) == 0
    loose = dict(l.split("=", 1) for l in capsys.readouterr().out.splitlines() if "=" in l)
    assert main(["analyze", "--graph", str(path), "--strict-h"]) == 0
    strict = dict(l.split("=", 1) for l in capsys.readouterr().out.splitlines() if "=" in l)
    assert float(loose["h"]) == 1.0 > float(strict["h"])
