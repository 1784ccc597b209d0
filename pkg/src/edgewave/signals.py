"""Edge signal containers, CSV ingestion and synthetic signal generation.

File formats
------------
graph CSV
    Header ``u,v``; one edge per line with 0-based node indices.  Line order
    fixes the edge indices.
series CSV
    No header; ``T`` rows by ``N`` comma-separated decimal columns.
mask CSV
    Header ``edge_index,observed`` with ``observed`` in ``{0, 1}``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from os import PathLike
from typing import Union

import numpy as np

from ._validation import as_mask, as_matrix, as_vector
from .exceptions import DataFormatError
from .graph import Graph, build_graph

__all__ = [
    "EdgeSignalSeries",
    "SinusoidSpec",
    "load_graph_csv",
    "save_graph_csv",
    "load_series_csv",
    "load_matrix_csv",
    "save_series_csv",
    "load_mask_csv",
    "save_mask_csv",
    "synth_timevarying",
    "node_to_edge_projection",
    "add_noise",
    "observe",
    "rms",
]

PathType = Union[str, PathLike]


@dataclass(frozen=True)
class EdgeSignalSeries:
    """``T x N_e`` edge signal bound to the edge order of ``graph``."""

    values: np.ndarray
    graph: Graph = field(repr=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.ndim == 1:
            vals = vals[None, :]
        if vals.ndim != 2 or vals.shape[0] < 1:
            raise ValueError(f"series must be T x N_e with T >= 1, got shape {vals.shape}")
        if vals.shape[1] != self.graph.num_edges:
            raise ValueError(
                f"series has {vals.shape[1]} columns, graph has {self.graph.num_edges} edges"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("series contains non-finite values")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def horizon(self) -> int:
        return self.values.shape[0]

    @property
    def num_edges(self) -> int:
        return self.values.shape[1]

    def __len__(self):
        return self.horizon

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)


def _read_rows(path: PathType):
    with open(path, newline="") as fh:
        return [row for row in csv.reader(fh)]


def load_graph_csv(path: PathType, num_nodes: int | None = None) -> Graph:
    """Read a ``u,v`` edge list; node count defaults to max index + 1."""
    rows = _read_rows(path)
    if not rows or [c.strip() for c in rows[0]] != ["u", "v"]:
        raise DataFormatError(f"{path}: expected header 'u,v'")
    pairs = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise DataFormatError(f"{path}:{lineno}: expected 2 columns, got {len(row)}")
        try:
            pairs.append((int(row[0]), int(row[1])))
        except ValueError:
            raise DataFormatError(f"{path}:{lineno}: node indices must be integers, got {row}") from None
    if num_nodes is None:
        num_nodes = 1 + max((max(p) for p in pairs), default=-1)
    return build_graph(num_nodes, pairs)


def save_graph_csv(g: Graph, path: PathType) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["u", "v"])
        w.writerows(g.edges)


def load_matrix_csv(path: PathType, n_cols: int | None = None) -> np.ndarray:
    """Headerless numeric CSV as a float matrix with row/column diagnostics."""
    rows = [r for r in _read_rows(path) if r and any(c.strip() for c in r)]
    if not rows:
        raise DataFormatError(f"{path}: no data rows")
    width = len(rows[0]) if n_cols is None else n_cols
    out = np.empty((len(rows), width))
    for i, row in enumerate(rows):
        if len(row) != width:
            raise DataFormatError(f"{path}: row {i + 1} has {len(row)} columns, expected {width}")
        for j, cell in enumerate(row):
            try:
                val = float(cell)
            except ValueError:
                raise DataFormatError(
                    f"{path}: row {i + 1}, column {j + 1}: not a number: {cell!r}"
                ) from None
            if not math.isfinite(val):
                raise DataFormatError(f"{path}: row {i + 1}, column {j + 1}: non-finite value")
            out[i, j] = val
    return out


def load_series_csv(path: PathType, graph: Graph) -> EdgeSignalSeries:
    return EdgeSignalSeries(load_matrix_csv(path, graph.num_edges), graph)


def save_series_csv(values, path: PathType) -> None:
    arr = np.atleast_2d(np.asarray(values, dtype=float))
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        for row in arr:
            w.writerow([repr(float(v)) for v in row])


def load_mask_csv(path: PathType, n_edges: int) -> np.ndarray:
    rows = _read_rows(path)
    if not rows or [c.strip() for c in rows[0]] != ["edge_index", "observed"]:
        raise DataFormatError(f"{path}: expected header 'edge_index,observed'")
    mask = np.zeros(n_edges, dtype=bool)
    seen = set()
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        try:
            k, obs = int(row[0]), int(row[1])
        except (ValueError, IndexError):
            raise DataFormatError(f"{path}:{lineno}: malformed row {row}") from None
        if not 0 <= k < n_edges or obs not in (0, 1) or k in seen:
            raise DataFormatError(f"{path}:{lineno}: invalid entry {row}")
        seen.add(k)
        mask[k] = bool(obs)
    return mask


def save_mask_csv(mask, path: PathType) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["edge_index", "observed"])
        for k, obs in enumerate(np.asarray(mask, dtype=bool)):
            w.writerow([k, int(obs)])


@dataclass(frozen=True)
class SinusoidSpec:
    """Multiplicative modulation ``1 + sum_k a_k sin(2 pi f_k t / T + phase)``.

    Frequencies are in cycles per horizon ``T``.
    """

    amplitudes: tuple[float, ...] = (0.3, 0.15, 0.1)
    frequencies: tuple[float, ...] = (1.0, 3.0, 5.0)

    def __post_init__(self):
        if len(self.amplitudes) != len(self.frequencies):
            raise ValueError("amplitudes and frequencies must have equal length")
        if sum(abs(a) for a in self.amplitudes) >= 1:
            raise ValueError("sum of |amplitudes| must be < 1 so the modulation stays positive")


def synth_timevarying(base, spec: SinusoidSpec, T: int, seed=None, n_steps: int | None = None) -> np.ndarray:
    """Modulate a static edge signal into a ``T x N_e`` time series.

    Each edge gets its own phase per component, drawn once uniformly on
    ``[0, 2 pi)``.  ``n_steps`` generates more (or fewer) rows than the
    period ``T``.
    """
    if T < 1:
        raise ValueError(f"T must be >= 1, got {T}")
    base = as_vector(base, name="base")
    rng = np.random.default_rng(seed)
    amps = np.asarray(spec.amplitudes, dtype=float)
    freqs = np.asarray(spec.frequencies, dtype=float)
    phases = rng.uniform(0.0, 2 * np.pi, size=(amps.size, base.size))
    t = np.arange(T if n_steps is None else n_steps, dtype=float)
    arg = 2 * np.pi * freqs[None, :, None] * t[:, None, None] / T + phases[None, :, :]
    modulation = 1.0 + np.einsum("k,tkn->tn", amps, np.sin(arg))
    return base[None, :] * modulation


def node_to_edge_projection(g: Graph, node_series) -> np.ndarray:
    """Edge value = mean of its two endpoint values, per time step."""
    X = np.asarray(node_series, dtype=float)
    squeeze = X.ndim == 1
    X = as_matrix(np.atleast_2d(X), g.num_nodes, name="node_series")
    if g.num_edges == 0:
        out = np.zeros((X.shape[0], 0))
    else:
        u, v = np.asarray(g.edges).T
        out = 0.5 * (X[:, u] + X[:, v])
    return out[0] if squeeze else out


def add_noise(series, sigma: float, seed=None):
    """Add i.i.d. ``N(0, sigma^2)`` noise to every entry.

    ``seed`` may be an int, ``None`` or a :class:`numpy.random.Generator`.
    An :class:`EdgeSignalSeries` input returns an :class:`EdgeSignalSeries`.
    """
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    values = np.asarray(series, dtype=float)
    if sigma == 0:
        noisy = values.copy()
    else:
        rng = np.random.default_rng(seed)
        noisy = values + rng.normal(0.0, sigma, size=values.shape)
    if isinstance(series, EdgeSignalSeries):
        return EdgeSignalSeries(noisy, series.graph)
    return noisy


def observe(x, m, sigma: float = 0.0, seed=None) -> np.ndarray:
    """Noisy masked observation ``M (x + w)``; works row-wise on 2-D input."""
    x = np.asarray(x, dtype=float)
    m = as_mask(m, x.shape[-1])
    return np.where(m, add_noise(x, sigma, seed), 0.0)


def rms(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.sqrt(np.mean(x**2)))
