"""
Test the command line
"""
import csv
import json

import pytest

from muxbench import __version__
from muxbench.cli import main
from muxbench.models.reports import CSV_COLUMNS
from muxbench.processors.benchgen import qft
from muxbench.processors.qasm import emit_qasm, load_qasm
from muxbench.services.hardware import resolve_spec
from muxbench.services.manifest import load_manifest
from muxbench.services.storage import write_csv


def run(*args):
    return main([str(a) for a in args])


def read_rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


@pytest.fixture
def qft_file(tmp_path):
    path = tmp_path / "qft5.qasm"
    path.write_text(emit_qasm(qft(5)))
    return path


class TestBenchmarks:
    """Test the benchmark subcommands."""

    def test_bench_random(self, out_dir, capsys):
        code = run("bench-random", "--gates", "50,100", "--ks", "1,2", "--seeds", "2", "--out", out_dir)
        assert code == 0

        rows = read_rows(out_dir / "bench-random.csv")
        assert list(rows[0]) == CSV_COLUMNS
        assert len(rows) == 8
        assert all(row["abs_overhead_ns"] == "0" for row in rows if row["k"] == "1")
        assert (out_dir / "bench-random.summary.csv").exists()
        assert (out_dir / "bench-random.breakdown.csv").exists()

        manifest = load_manifest(out_dir / "bench-random.manifest.json")
        assert len(manifest.seeds) == 2
        assert str(out_dir / "bench-random.csv") in capsys.readouterr().out

    def test_bench_algo(self, out_dir, qft_file):
        code = run("bench-algo", "ghz", qft_file, "--n", "4", "--ks", "1,2", "--seeds", "1", "--out", out_dir)
        assert code == 0
        rows = read_rows(out_dir / "bench-algo.csv")
        assert {row["circuit"] for row in rows} == {"ghz4", "qft5"}
        manifest = load_manifest(out_dir / "bench-algo.manifest.json")
        assert str(qft_file) in manifest.inputs

    def test_unknown_algorithm(self, out_dir):
        assert run("bench-algo", "grover", "--out", out_dir) == 2


class TestStudies:
    """Test the parameter studies."""

    def test_ratio(self, out_dir):
        code = run("ratio", "--ratios", "1,10", "--ks", "2", "--gates", "80", "--seeds", "2", "--out", out_dir)
        assert code == 0
        rows = read_rows(out_dir / "ratio.csv")
        assert [row["ratio"] for row in rows] == ["1.0", "10.0"]

    def test_optimize(self, out_dir):
        code = run("optimize", "--gates", "80", "--ks", "5", "--seeds", "2", "--out", out_dir)
        assert code == 0
        rows = read_rows(out_dir / "optimize.csv")
        assert len(rows) == 4
        assert {row["hide_delays"] for row in rows} == {"on", "off"}


class TestModels:
    """Test the scaling-model subcommands."""

    def test_toy(self, out_dir):
        code = run("toy", "--ks", "1,2,4,8", "--trials", "5", "--depth", "20", "--out", out_dir)
        assert code == 0
        rows = read_rows(out_dir / "toy.csv")
        assert rows[0]["k"] == "1" and float(rows[0]["mean_factor"]) == 1.0
        assert "p" in json.loads((out_dir / "toy.fit.json").read_text())

    def test_toy_default_ks(self, out_dir):
        assert run("toy", "--trials", "2", "--depth", "10", "--out", out_dir) == 0
        ks = [row["k"] for row in read_rows(out_dir / "toy.csv")]
        assert ks == ["1", "2", "3", "4", "5", "7", "9", "13", "25"]

    def test_queue(self, out_dir):
        assert run("queue", "--ks", "1,2", "--trials", "200", "--out", out_dir) == 0
        rows = read_rows(out_dir / "queue.csv")
        assert [row["k"] for row in rows] == ["1", "2"]
        assert float(rows[1]["analytic"]) == pytest.approx(1.5)


class TestReports:
    """Test fit and plot on benchmark tables."""

    @pytest.fixture
    def bench_csv(self, tmp_path, reports):
        rows = [reports.make(k, int(300 * k ** 0.5) + seed, seed=seed) for k in [2, 4, 8] for seed in range(3)]
        return write_csv(tmp_path / "bench.csv", CSV_COLUMNS, [r.csv_row() for r in rows])

    def test_fit(self, out_dir, bench_csv):
        assert run("fit", bench_csv, "--spec", "grid5", "--out", out_dir) == 0
        document = json.loads((out_dir / "fit.json").read_text())
        assert set(document) == {"p", "stderr", "residual_log", "residual_linear", "log_base"}
        assert document["p"] > 0

    def test_fit_without_rows(self, out_dir, tmp_path):
        empty = write_csv(tmp_path / "empty.csv", CSV_COLUMNS, [])
        assert run("fit", empty, "--out", out_dir) == 2

    @pytest.mark.parametrize("kind", ["lines", "hist", "breakdown"])
    def test_plot(self, out_dir, bench_csv, kind):
        assert run("plot", bench_csv, "--kind", kind, "--out", out_dir) == 0
        assert (out_dir / f"plot-{kind}.svg").exists()
        assert (out_dir / f"plot-{kind}.manifest.json").exists()
        assert list(load_manifest(out_dir / f"plot-{kind}.manifest.json").inputs) == [str(bench_csv)]

    def test_plot_records_source_manifest(self, out_dir):
        bench = out_dir / "bench"
        assert run("bench-random", "--gates", "50,100", "--ks", "1,2", "--seeds", "1", "--out", bench) == 0
        assert run("plot", bench / "bench-random.csv", "--out", out_dir / "plots") == 0
        inputs = load_manifest(out_dir / "plots" / "plot-lines.manifest.json").inputs
        assert set(inputs) == {str(bench / "bench-random.csv"), str(bench / "bench-random.manifest.json")}


class TestDevice:
    """Test the hardware subcommands."""

    def test_couplers(self, out_dir, capsys):
        assert run("couplers", "--spec", "grid5", "--out", out_dir) == 0
        groups = json.loads((out_dir / "couplers.json").read_text())["groups"]
        assert len(groups) == 12
        assert "40 couplers in 12 groups" in capsys.readouterr().err

    def test_serialize(self, out_dir, qft_file):
        assert run("serialize", qft_file, "--spec", "grid5", "--k", "3", "--out", out_dir) == 0
        document = json.loads((out_dir / "serialize.report.json").read_text())
        assert document["couplers_conflict_free"] is True
        assert document["switch_exclusive"] is True
        assert document["coupler_conflict"] is None
        assert document["report"]["k"] == 3
        assert document["grouping"]["switches"] == 9
        groups = json.loads((out_dir / "serialize.grouping.json").read_text())["groups"]
        assert len(groups) == 9 and all(len(g) <= 3 for g in groups)

        serialized = load_qasm(out_dir / "serialize.qasm")
        assert sum(1 for g in serialized.gates if g.name == "SW") == document["inserted_sw"]

    def test_missing_qasm(self, out_dir, tmp_path):
        assert run("serialize", tmp_path / "none.qasm", "--k", "2", "--out", out_dir) == 4

    def test_export_spec(self, out_dir):
        assert run("export-spec", "--spec", "grid5", "--tsw-ns", "15", "--out", out_dir) == 0
        path = out_dir / "grid5x5.json"
        document = json.loads(path.read_text())
        assert document["t_sw_ns"] == 15
        assert len(document["edges"]) == 40
        assert resolve_spec(str(path)).t_2q == 200
        assert (out_dir / "export-spec.manifest.json").exists()


class TestExitCodes:
    """Test error mapping."""

    def test_version(self, capsys):
        assert run("--version") == 0
        assert __version__ in capsys.readouterr().out

    def test_unknown_option(self):
        assert run("bench-random", "--colour", "red") == 2

    def test_switch_time_breaks_hierarchy(self, out_dir):
        assert run("bench-random", "--tsw-ns", "20", "--seeds", "1", "--out", out_dir) == 2

    def test_no_seeds(self, out_dir):
        assert run("bench-random", "--seeds", "0", "--out", out_dir) == 2

    def test_bad_list(self, out_dir):
        assert run("bench-random", "--ks", "two", "--seeds", "1", "--out", out_dir) == 2
