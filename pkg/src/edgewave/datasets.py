"""Built-in graphs and synthetic static signals for experiments and tests."""

from __future__ import annotations

import numpy as np

from .graph import Graph, build_graph, laplacian
from .signals import node_to_edge_projection
from .spectral import gft_basis

__all__ = [
    "SIOUX_FALLS_EDGES",
    "sioux_falls_graph",
    "smooth_edge_signal",
    "nearest_pairs_graph",
    "random_graph",
]

# Road topology of the Sioux Falls test network (1-based node labels).
SIOUX_FALLS_EDGES = (
    (1, 2), (1, 3), (2, 6), (3, 4), (3, 12), (4, 5), (4, 11), (5, 6), (5, 9),
    (6, 8), (7, 8), (7, 18), (8, 9), (8, 16), (9, 10), (10, 11), (10, 15),
    (10, 16), (10, 17), (11, 12), (11, 14), (12, 13), (13, 24), (14, 15),
    (14, 23), (15, 19), (15, 22), (16, 17), (16, 18), (17, 19), (18, 20),
    (19, 20), (20, 21), (20, 22), (21, 22), (21, 24), (22, 23), (23, 24),
)


def sioux_falls_graph() -> Graph:
    """24 nodes, 38 undirected roads, 0-based."""
    return build_graph(24, [(u - 1, v - 1) for u, v in SIOUX_FALLS_EDGES])


def smooth_edge_signal(g: Graph, n_modes: int = 4, offset: float = 3.0, scale: float = 1000.0, seed=None) -> np.ndarray:
    """Positive static edge signal averaged from a smooth node field.

    The node field is ``offset`` plus a random combination of the
    ``n_modes`` lowest non-constant node Laplacian eigenvectors (normalized
    to unit peak), and each edge takes the mean of its endpoints.
    """
    rng = np.random.default_rng(seed)
    basis = gft_basis(laplacian(g))
    modes = basis.U[:, 1 : 1 + n_modes]
    field = modes @ rng.normal(size=modes.shape[1])
    peak = np.max(np.abs(field))
    if peak > 0:
        field = field / peak
    return scale * node_to_edge_projection(g, offset + field)


def nearest_pairs_graph(n_nodes: int, n_edges: int, seed=None) -> Graph:
    """Random geometric graph on the unit square keeping the ``n_edges`` closest pairs."""
    rng = np.random.default_rng(seed)
    pts = rng.uniform(size=(n_nodes, 2))
    iu, ju = np.triu_indices(n_nodes, k=1)
    d = np.linalg.norm(pts[iu] - pts[ju], axis=1)
    keep = np.sort(np.argsort(d, kind="stable")[:n_edges])
    return build_graph(n_nodes, zip(iu[keep].tolist(), ju[keep].tolist()))


def random_graph(n_nodes: int, p: float = 0.5, seed=None) -> Graph:
    """Erdos-Renyi graph with edges listed in row-major order of ``(u, v)``."""
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n_nodes, k=1)
    keep = rng.random(iu.size) < p
    return build_graph(n_nodes, zip(iu[keep].tolist(), ju[keep].tolist()))
