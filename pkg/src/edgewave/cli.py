"""Command line entry point: ``edgewave run | linegraph | sample | sioux-falls``.

Exit codes: 0 success, 2 configuration error, 3 stability failure,
4 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .datasets import sioux_falls_graph, smooth_edge_signal
from .exceptions import ConfigError, DataFormatError, GraphError, StabilityError
from .experiment import ExperimentConfig, run_experiment
from .graph import line_graph
from .sampling import SamplingSpec, greedy_lowfreq_mask, random_mask
from .signals import load_graph_csv, save_graph_csv, save_mask_csv, save_series_csv
from .spectral import gft_basis

logger = logging.getLogger("edgewave")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_STABILITY = 3
EXIT_IO = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _fraction(text):
    if "/" in text:
        num, den = text.split("/", 1)
        return float(num) / float(den)
    return float(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="edgewave", description="Adaptive estimation of edge signals on the line graph.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", parents=[common], help="Monte Carlo NMSE experiment")
    run.add_argument("--graph", required=True, help="edge list CSV with header u,v")
    run.add_argument("--num-nodes", type=int, default=None, help="override node count (default: max index + 1)")
    src = run.add_mutually_exclusive_group(required=True)
    src.add_argument("--series", help="ground-truth series CSV (T rows x N_e columns)")
    src.add_argument("--synth-base", help="static edge signal CSV (one row), modulated over --horizon")
    src.add_argument("--node-series", help="node series CSV (T rows x N_n columns); needs --project")
    run.add_argument("--horizon", type=int, default=None, help="number of time steps for --synth-base")
    run.add_argument("--project", action="store_true", help="average node signals onto edges")
    run.add_argument("--mask", choices=("random", "greedy"), default="random")
    run.add_argument("--fraction", type=_fraction, default=2 / 3, help="observed fraction of edges (e.g. 2/3)")
    run.add_argument("--filter", default="bandlimited",
                     help="lowpass, bandlimited, or a comma-separated list of both")
    run.add_argument("--bandwidth", type=int, default=None, help="passed bins (default ceil(N_e/4))")
    run.add_argument("--alpha", type=float, default=0.5, help="LGLMS step size")
    run.add_argument("--noise-sigma", type=float, default=None, help="noise std (default 0.1 x RMS of truth)")
    run.add_argument("--runs", type=int, default=10)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--algos", default="lglms,spectral,sc")
    run.add_argument("--out", required=True, help="output CSV (t,algorithm,nmse)")

    lg = sub.add_parser("linegraph", parents=[common], help="write the line graph as an edge list")
    lg.add_argument("--graph", required=True)
    lg.add_argument("--num-nodes", type=int, default=None)
    lg.add_argument("--out", required=True)

    smp = sub.add_parser("sample", parents=[common], help="write an observation mask")
    smp.add_argument("--graph", required=True)
    smp.add_argument("--num-nodes", type=int, default=None)
    smp.add_argument("--mask", choices=("random", "greedy"), default="greedy")
    smp.add_argument("--fraction", type=_fraction, default=2 / 3)
    smp.add_argument("--bandwidth", type=int, default=None)
    smp.add_argument("--seed", type=int, default=0)
    smp.add_argument("--out", required=True)

    sf = sub.add_parser("sioux-falls", parents=[common], help="write the Sioux Falls graph and a synthetic base flow")
    sf.add_argument("--graph-out", required=True)
    sf.add_argument("--base-out", required=True)
    sf.add_argument("--seed", type=int, default=0)
    return parser


def _cmd_run(args):
    if args.node_series is not None and not args.project:
        raise ConfigError("--node-series requires --project")
    if args.project and args.node_series is None:
        raise ConfigError("--project only applies to --node-series")
    if args.synth_base is not None and args.horizon is None:
        raise ConfigError("--synth-base requires --horizon")
    cfg = ExperimentConfig(
        graph_path=args.graph,
        series_path=args.series,
        synth_base_path=args.synth_base,
        horizon=args.horizon,
        node_series_path=args.node_series,
        project=args.project,
        num_nodes=args.num_nodes,
        mask=args.mask,
        fraction=args.fraction,
        filters=args.filter,
        bandwidth=args.bandwidth,
        alpha=args.alpha,
        noise_sigma=args.noise_sigma,
        runs=args.runs,
        seed=args.seed,
        algos=args.algos,
        out=args.out,
    )
    table = run_experiment(cfg)
    for label in table.labels:
        logger.info("%s: final NMSE %.6g", label, table.curves[label][-1])


def _cmd_linegraph(args):
    g = load_graph_csv(args.graph, args.num_nodes)
    save_graph_csv(line_graph(g).graph, args.out)


def _cmd_sample(args):
    from .estimators import default_bandwidth

    g = load_graph_csv(args.graph, args.num_nodes)
    n = g.num_edges
    if args.mask == "random":
        mask = random_mask(n, SamplingSpec("random", args.fraction, seed=args.seed))
    else:
        k = default_bandwidth(n) if args.bandwidth is None else args.bandwidth
        basis = gft_basis(line_graph(g).laplacian())
        mask = greedy_lowfreq_mask(basis, SamplingSpec("greedy-lowfreq", args.fraction, bandwidth=k))
    save_mask_csv(mask, args.out)


def _cmd_sioux_falls(args):
    g = sioux_falls_graph()
    save_graph_csv(g, args.graph_out)
    save_series_csv(smooth_edge_signal(g, seed=args.seed), args.base_out)


COMMANDS = {
    "run": _cmd_run,
    "linegraph": _cmd_linegraph,
    "sample": _cmd_sample,
    "sioux-falls": _cmd_sioux_falls,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except StabilityError as exc:
        print(f"edgewave: {exc}", file=sys.stderr)
        return EXIT_STABILITY
    except (OSError, DataFormatError) as exc:
        print(f"edgewave: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, GraphError, ValueError) as exc:
        print(f"edgewave: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
