"""Observation masks: uniform random subsets and greedy low-frequency sets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigError
from .spectral import GftBasis

__all__ = [
    "SamplingSpec",
    "observed_budget",
    "random_mask",
    "greedy_lowfreq_mask",
    "sampled_frame",
]

STRATEGIES = ("random", "greedy-lowfreq")
# eigenvalue differences below this count as ties in the greedy score
_TIE_TOL = 1e-10


@dataclass(frozen=True)
class SamplingSpec:
    strategy: str = "random"
    fraction: float = 2 / 3
    bandwidth: int | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ConfigError(f"unknown sampling strategy {self.strategy!r}; expected one of {STRATEGIES}")
        if not 0 < self.fraction <= 1:
            raise ConfigError(f"fraction must lie in (0, 1], got {self.fraction}")
        if self.strategy == "greedy-lowfreq" and self.bandwidth is None:
            raise ConfigError("greedy sampling needs a bandwidth")


def observed_budget(n_edges: int, fraction: float) -> int:
    """Number of observed edges, ``round(fraction * n_edges)``."""
    budget = int(round(fraction * n_edges))
    if budget < 1:
        raise ConfigError(f"fraction {fraction} of {n_edges} edges leaves nothing observed")
    return min(budget, n_edges)


def random_mask(n_edges: int, spec: SamplingSpec, rng=None) -> np.ndarray:
    """Uniform mask with exactly ``round(fraction * n_edges)`` observed entries.

    ``rng`` may be a :class:`numpy.random.Generator` shared with the caller's
    run; otherwise one is seeded from ``spec.seed``.
    """
    if spec.strategy != "random":
        raise ConfigError(f"random_mask called with strategy {spec.strategy!r}")
    budget = observed_budget(n_edges, spec.fraction)
    if rng is None:
        rng = np.random.default_rng(spec.seed)
    mask = np.zeros(n_edges, dtype=bool)
    mask[rng.choice(n_edges, size=budget, replace=False)] = True
    return mask


def sampled_frame(basis: GftBasis, bandwidth: int, mask) -> np.ndarray:
    """``U_K^T M U_K`` for the first ``bandwidth`` eigenvectors."""
    UK = basis.U[:, :bandwidth]
    rows = UK[np.asarray(mask, dtype=bool)]
    return rows.T @ rows


def _lex_greater(a: np.ndarray, b: np.ndarray) -> bool:
    diff = np.flatnonzero(np.abs(a - b) > _TIE_TOL)
    return bool(diff.size) and a[diff[0]] > b[diff[0]]


def greedy_lowfreq_mask(basis: GftBasis, spec: SamplingSpec) -> np.ndarray:
    """Greedy E-optimal sampling of the low-frequency subspace.

    Starting from an empty set, repeatedly add the edge that maximizes the
    smallest eigenvalue of ``U_K^T M U_K``.  While the frame is still rank
    deficient every candidate scores zero, so candidates are compared on
    their full ascending eigenvalue list; this keeps the smallest eigenvalue
    as the primary criterion but always prefers a rank increase, so a
    full-rank frame is reached after ``K`` picks.  Remaining ties go to the
    lowest edge index.
    """
    if spec.strategy != "greedy-lowfreq":
        raise ConfigError(f"greedy_lowfreq_mask called with strategy {spec.strategy!r}")
    n = basis.size
    budget = observed_budget(n, spec.fraction)
    k = int(spec.bandwidth)
    if not 1 <= k <= n:
        raise ConfigError(f"bandwidth must lie in [1, {n}], got {k}")
    if k > budget:
        raise ConfigError(f"bandwidth {k} exceeds the observation budget {budget}")
    UK = basis.U[:, :k]
    frame = np.zeros((k, k))
    mask = np.zeros(n, dtype=bool)
    for _ in range(budget):
        best, best_score = -1, None
        for i in np.flatnonzero(~mask):
            u = UK[i]
            score = np.linalg.eigvalsh(frame + np.outer(u, u))
            if best_score is None or _lex_greater(score, best_score):
                best, best_score = i, score
        mask[best] = True
        frame += np.outer(UK[best], UK[best])
    return mask
