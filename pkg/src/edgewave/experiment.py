"""Monte Carlo comparison of LGLMS against the spectral and simplicial baselines.

A run draws (or reuses) an observation mask, corrupts the ground truth with
Gaussian noise, feeds the masked observations to every configured
estimator and scores each time step with NMSE.  Run ``r`` uses the seed
``seed + r`` so runs are independent and reproducible.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .adaptive import is_stable, stability_margin
from .estimators import LGLMS, SimplicialConvolution, SpectralFilter, default_bandwidth
from .exceptions import ConfigError, StabilityError
from .graph import Graph, line_graph
from .sampling import SamplingSpec, greedy_lowfreq_mask, random_mask
from .signals import (
    SinusoidSpec,
    load_graph_csv,
    load_matrix_csv,
    load_series_csv,
    node_to_edge_projection,
    rms,
    synth_timevarying,
)
from .spectral import gft_basis

logger = logging.getLogger(__name__)

__all__ = [
    "ALGORITHMS",
    "FILTERS",
    "ExperimentConfig",
    "ResultTable",
    "nmse",
    "nmse_series",
    "reference_window",
    "load_truth",
    "simulate",
    "run_experiment",
    "emit_results",
]

ALGORITHMS = ("lglms", "spectral", "sc")
FILTERS = {"lowpass": "lp", "bandlimited": "bl"}
MASKS = {"random": "random", "greedy": "greedy-lowfreq"}
ZERO_TRUTH_EPS = 1e-12
REFERENCE_ROWS = 10


def nmse(truth, estimates, eps: float = ZERO_TRUTH_EPS) -> float:
    """Run-averaged normalized squared error at one time step.

    ``sum_i (x_i - x_hat_i)^2 / x_i^2`` summed over edges (not averaged)
    for each run, then averaged over runs.  Edges with ``|x_i| <= eps``
    are left out.

    Parameters
    ----------
    truth : array_like, shape (N_e,)
    estimates : array_like, shape (N_r, N_e) or (N_e,)

    Examples
    --------
    >>> nmse([2.0], [[1.0], [3.0]])
    0.25
    """
    x = np.asarray(truth, dtype=float)
    xh = np.atleast_2d(np.asarray(estimates, dtype=float))
    if x.ndim != 1 or xh.shape[1] != x.shape[0]:
        raise ValueError(f"estimates shape {xh.shape} does not match truth shape {x.shape}")
    keep = np.abs(x) > eps
    if not keep.any():
        raise ValueError("every ground-truth entry is zero; NMSE is undefined")
    per_run = np.sum((x[keep] - xh[:, keep]) ** 2 / x[keep] ** 2, axis=1)
    return float(np.mean(per_run))


def nmse_series(truth, estimates, eps: float = ZERO_TRUTH_EPS) -> np.ndarray:
    """Vectorized :func:`nmse` over time: ``truth`` is ``T x N``, ``estimates`` ``R x T x N``."""
    x = np.asarray(truth, dtype=float)
    xh = np.asarray(estimates, dtype=float)
    keep = np.abs(x) > eps
    if not keep.any(axis=1).all():
        bad = int(np.flatnonzero(~keep.any(axis=1))[0])
        raise ValueError(f"every ground-truth entry is zero at t={bad}; NMSE is undefined")
    safe = np.where(keep, x, 1.0)
    terms = np.where(keep, (x - xh) ** 2 / safe**2, 0.0)
    return terms.sum(axis=2).mean(axis=0)


@dataclass
class ResultTable:
    """NMSE per time step and per algorithm label (e.g. ``lglms_bl``)."""

    curves: dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def labels(self) -> list[str]:
        return sorted(self.curves)

    def rows(self):
        horizon = max((c.shape[0] for c in self.curves.values()), default=0)
        for t in range(horizon):
            for label in self.labels:
                curve = self.curves[label]
                if t < curve.shape[0]:
                    yield t, label, float(curve[t])

    def steady_state(self, label: str, last: int = 50) -> float:
        """Mean NMSE over the final ``last`` steps."""
        return float(np.mean(self.curves[label][-last:]))

    def __len__(self):
        return sum(c.shape[0] for c in self.curves.values())


def emit_results(table: ResultTable, path) -> None:
    """Write ``t,algorithm,nmse`` rows sorted by ``(t, algorithm)``."""
    rows = list(table.rows())
    if not rows:
        raise ValueError("result table is empty")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "algorithm", "nmse"])
        for t, label, value in rows:
            w.writerow([t, label, f"{value:.17g}"])


def reference_window(truth, rows: int = REFERENCE_ROWS) -> np.ndarray:
    """First ``min(rows, T)`` clean snapshots, the stand-in for historical data."""
    truth = np.asarray(truth, dtype=float)
    return truth[: min(rows, truth.shape[0])]


def _parse_list(value, allowed, what):
    if isinstance(value, str):
        value = [v.strip() for v in value.split(",") if v.strip()]
    value = tuple(value)
    if not value:
        raise ConfigError(f"no {what} given")
    for v in value:
        if v not in allowed:
            raise ConfigError(f"unknown {what} {v!r}; expected one of {tuple(allowed)}")
    if len(set(value)) != len(value):
        raise ConfigError(f"duplicate {what} in {value}")
    return value


@dataclass
class ExperimentConfig:
    """Everything needed to reproduce one experiment.

    Exactly one truth source is used: ``series_path``, ``synth_base_path``
    (with ``horizon``) or ``node_series_path`` (with ``project=True``).
    """

    graph_path: str
    series_path: str | None = None
    synth_base_path: str | None = None
    horizon: int | None = None
    node_series_path: str | None = None
    project: bool = False
    num_nodes: int | None = None
    mask: str = "random"
    fraction: float = 2 / 3
    filters: Sequence[str] = ("bandlimited",)
    bandwidth: int | None = None
    alpha: float = 0.5
    noise_sigma: float | None = None
    runs: int = 10
    seed: int = 0
    algos: Sequence[str] = ALGORITHMS
    out: str | None = None
    sinusoids: SinusoidSpec = field(default_factory=SinusoidSpec)

    def validate(self) -> None:
        sources = [self.series_path, self.synth_base_path, self.node_series_path]
        if sum(s is not None for s in sources) != 1:
            raise ConfigError("give exactly one of series, synthetic base or node series")
        if self.synth_base_path is not None and (self.horizon is None or self.horizon < 1):
            raise ConfigError("synthetic signals need a horizon T >= 1")
        if self.node_series_path is not None and not self.project:
            raise ConfigError("node series input requires the projection flag")
        if self.mask not in MASKS:
            raise ConfigError(f"mask must be one of {tuple(MASKS)}, got {self.mask!r}")
        if not 0 < self.fraction <= 1:
            raise ConfigError(f"fraction must lie in (0, 1], got {self.fraction}")
        if not self.alpha > 0:
            raise ConfigError(f"alpha must be positive, got {self.alpha}")
        if self.noise_sigma is not None and self.noise_sigma < 0:
            raise ConfigError("noise sigma must be >= 0")
        if self.runs < 1:
            raise ConfigError(f"runs must be >= 1, got {self.runs}")
        self.filters = _parse_list(self.filters, FILTERS, "filter")
        self.algos = _parse_list(self.algos, ALGORITHMS, "algorithm")


def load_truth(cfg: ExperimentConfig) -> tuple[Graph, np.ndarray]:
    """Read the graph and build the ``T x N_e`` ground-truth series."""
    g = load_graph_csv(cfg.graph_path, cfg.num_nodes)
    if cfg.series_path is not None:
        truth = load_series_csv(cfg.series_path, g).values
    elif cfg.synth_base_path is not None:
        base = load_matrix_csv(cfg.synth_base_path, g.num_edges)[0]
        truth = synth_timevarying(base, cfg.sinusoids, cfg.horizon, seed=cfg.seed)
    else:
        nodes = load_matrix_csv(cfg.node_series_path, g.num_nodes)
        truth = node_to_edge_projection(g, nodes)
    return g, np.asarray(truth, dtype=float)


def _build_estimators(g, basis, reference, filters, algos, bandwidth, alpha):
    estimators = {}
    for algo in algos:
        for filt in filters:
            label = f"{algo}_{FILTERS[filt]}"
            if algo == "lglms":
                est = LGLMS(graph=g, alpha=alpha, filter_type=filt, bandwidth=bandwidth, basis=basis)
            elif algo == "spectral":
                est = SpectralFilter(graph=g, filter_type=filt, bandwidth=bandwidth, basis=basis)
            else:
                est = SimplicialConvolution(graph=g, filter_type=filt, bandwidth=bandwidth, basis=basis)
            estimators[label] = est.fit(reference)
    return estimators


def simulate(
    g: Graph,
    truth,
    *,
    mask: str = "random",
    fraction: float = 2 / 3,
    filters: Sequence[str] = ("bandlimited",),
    bandwidth: int | None = None,
    alpha: float = 0.5,
    noise_sigma: float | None = None,
    runs: int = 10,
    seed: int = 0,
    algos: Sequence[str] = ALGORITHMS,
    basis=None,
) -> ResultTable:
    """Run the Monte Carlo comparison on an in-memory graph and truth series."""
    filters = _parse_list(filters, FILTERS, "filter")
    algos = _parse_list(algos, ALGORITHMS, "algorithm")
    if mask not in MASKS:
        raise ConfigError(f"mask must be one of {tuple(MASKS)}, got {mask!r}")
    truth = np.asarray(truth, dtype=float)
    T, n = truth.shape
    if n != g.num_edges:
        raise ConfigError(f"truth has {n} columns, graph has {g.num_edges} edges")
    k = default_bandwidth(n) if bandwidth is None else int(bandwidth)
    if not 1 <= k <= n:
        raise ConfigError(f"bandwidth must lie in [1, {n}], got {k}")
    sigma = 0.1 * rms(truth) if noise_sigma is None else float(noise_sigma)

    if basis is None:
        basis = gft_basis(line_graph(g).laplacian())
    reference = reference_window(truth)
    estimators = _build_estimators(g, basis, reference, filters, algos, k, alpha)

    shared_mask = None
    if mask == "greedy":
        shared_mask = greedy_lowfreq_mask(basis, SamplingSpec("greedy-lowfreq", fraction, bandwidth=k))
    # the all-observed margin bounds every masked one
    for label, est in estimators.items():
        if isinstance(est, LGLMS):
            probe = shared_mask if shared_mask is not None else np.ones(n, dtype=bool)
            margin = stability_margin(est.alpha, probe, est.basis_, est.filter_)
            if not is_stable(margin):
                raise StabilityError(margin, f"{label}: stability margin {margin:.6g} > 1")

    estimates = {label: np.empty((runs, T, n)) for label in estimators}
    for r in range(runs):
        rng = np.random.default_rng(seed + r)
        if shared_mask is None:
            m = random_mask(n, SamplingSpec("random", fraction), rng=rng)
        else:
            m = shared_mask
        noise = rng.normal(0.0, sigma, size=truth.shape) if sigma > 0 else 0.0
        Y = np.where(m, truth + noise, 0.0)
        for label, est in estimators.items():
            estimates[label][r] = est.transform(Y, m)
        logger.debug("run %d/%d done", r + 1, runs)

    return ResultTable({label: nmse_series(truth, est) for label, est in estimates.items()})


def run_experiment(cfg: ExperimentConfig) -> ResultTable:
    """Load inputs, simulate, and write the CSV when ``cfg.out`` is set."""
    cfg.validate()
    g, truth = load_truth(cfg)
    table = simulate(
        g,
        truth,
        mask=cfg.mask,
        fraction=cfg.fraction,
        filters=cfg.filters,
        bandwidth=cfg.bandwidth,
        alpha=cfg.alpha,
        noise_sigma=cfg.noise_sigma,
        runs=cfg.runs,
        seed=cfg.seed,
        algos=cfg.algos,
    )
    if cfg.out is not None:
        emit_results(table, cfg.out)
    return table
