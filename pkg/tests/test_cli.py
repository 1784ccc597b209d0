import subprocess
import sys

import numpy as np
import pytest

from edgewave.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, EXIT_STABILITY, main
from edgewave.graph import build_graph
from edgewave.signals import load_graph_csv, load_mask_csv


@pytest.fixture
def sf_files(tmp_path):
    g, b = tmp_path / "g.csv", tmp_path / "b.csv"
    assert main(["sioux-falls", "--graph-out", str(g), "--base-out", str(b)]) == EXIT_OK
    return g, b


def run_args(g, b, out, *extra):
    return ["run", "--graph", str(g), "--synth-base", str(b), "--horizon", "20", "--runs", "2",
            "--out", str(out), *extra]


def test_run_writes_all_series(sf_files, tmp_path):
    g, b = sf_files
    out = tmp_path / "r.csv"
    code = main(run_args(g, b, out, "--filter", "lowpass,bandlimited", "--mask", "random",
                         "--fraction", "2/3", "--alpha", "0.5", "--noise-sigma", "10", "--seed", "3",
                         "--algos", "lglms,spectral,sc"))
    assert code == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "t,algorithm,nmse"
    assert len(lines) == 1 + 6 * 20
    assert {l.split(",")[1] for l in lines[1:]} == {"lglms_lp", "lglms_bl", "spectral_lp", "spectral_bl", "sc_lp", "sc_bl"}


def test_run_is_byte_identical(sf_files, tmp_path):
    g, b = sf_files
    a, c = tmp_path / "a.csv", tmp_path / "c.csv"
    assert main(run_args(g, b, a, "--runs", "3")) == EXIT_OK
    assert main(run_args(g, b, c, "--runs", "3")) == EXIT_OK
    assert a.read_bytes() == c.read_bytes()


def test_run_series_and_greedy(sf_files, tmp_path):
    g, _ = sf_files
    series = tmp_path / "x.csv"
    series.write_text("\n".join(",".join(["5.0"] * 38) for _ in range(6)) + "\n")
    out = tmp_path / "r.csv"
    assert main(["run", "--graph", str(g), "--series", str(series), "--mask", "greedy",
                 "--bandwidth", "5", "--runs", "1", "--out", str(out)]) == EXIT_OK
    assert len(out.read_text().splitlines()) == 1 + 3 * 6


def test_run_node_series(sf_files, tmp_path):
    g, _ = sf_files
    nodes = tmp_path / "n.csv"
    nodes.write_text("\n".join(",".join(str(1.0 + i + 0.1 * t) for i in range(24)) for t in range(5)) + "\n")
    out = tmp_path / "r.csv"
    args = ["run", "--graph", str(g), "--node-series", str(nodes), "--runs", "1", "--algos", "lglms",
            "--out", str(out)]
    assert main(args) == EXIT_CONFIG
    assert main(args + ["--project"]) == EXIT_OK


@pytest.mark.parametrize(
    "extra, expected",
    [
        (["--alpha", "1.5"], EXIT_STABILITY),
        (["--filter", "highpass"], EXIT_CONFIG),
        (["--mask", "other"], EXIT_CONFIG),
        (["--bandwidth", "100"], EXIT_CONFIG),
        (["--runs", "0"], EXIT_CONFIG),
        (["--fraction", "0"], EXIT_CONFIG),
    ],
)
def test_run_exit_codes(sf_files, tmp_path, extra, expected):
    g, b = sf_files
    assert main(run_args(g, b, tmp_path / "r.csv", *extra)) == expected


def test_missing_horizon(sf_files, tmp_path):
    g, b = sf_files
    assert main(["run", "--graph", str(g), "--synth-base", str(b), "--out", str(tmp_path / "r.csv")]) == EXIT_CONFIG


def test_io_errors(sf_files, tmp_path):
    g, b = sf_files
    assert main(run_args(tmp_path / "nope.csv", b, tmp_path / "r.csv")) == EXIT_IO
    assert main(run_args(g, b, tmp_path / "no" / "dir" / "r.csv")) == EXIT_IO
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2,3\n")
    assert main(run_args(g, bad, tmp_path / "r.csv")) == EXIT_IO


def test_linegraph(tmp_path):
    src = tmp_path / "g.csv"
    src.write_text("u,v\n0,1\n0,2\n0,3\n")
    out = tmp_path / "lg.csv"
    assert main(["linegraph", "--graph", str(src), "--out", str(out)]) == EXIT_OK
    assert load_graph_csv(out) == build_graph(3, [(0, 1), (0, 2), (1, 2)])


def test_sample_greedy_and_random(sf_files, tmp_path):
    g, _ = sf_files
    out = tmp_path / "m.csv"
    assert main(["sample", "--graph", str(g), "--mask", "greedy", "--fraction", "2/3",
                 "--bandwidth", "1", "--out", str(out)]) == EXIT_OK
    np.testing.assert_array_equal(np.flatnonzero(load_mask_csv(out, 38)), np.arange(25))
    assert main(["sample", "--graph", str(g), "--mask", "random", "--seed", "4", "--out", str(out)]) == EXIT_OK
    assert load_mask_csv(out, 38).sum() == 25


def test_bad_graph_file_is_config_error(tmp_path):
    src = tmp_path / "g.csv"
    src.write_text("u,v\n0,1\n1,0\n")
    assert main(["linegraph", "--graph", str(src), "--out", str(tmp_path / "o.csv")]) == EXIT_CONFIG


def test_argparse_errors_exit_2():
    assert main(["run", "--graph", "g.csv"]) == EXIT_CONFIG
    assert main(["--help"]) == EXIT_OK


def test_module_entry_point(tmp_path):
    src = tmp_path / "g.csv"
    src.write_text("u,v\n0,1\n1,2\n")
    proc = subprocess.run([sys.executable, "-m", "edgewave", "linegraph", "--graph", str(src),
                           "--out", str(tmp_path / "o.csv")], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "o.csv").read_text() == "u,v\n0,1\n"
