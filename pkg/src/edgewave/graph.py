"""Graph containers and the matrices derived from them.

Every edge-indexed matrix in the package follows the edge order of the
:class:`Graph` it was built from: edge ``k`` is column ``k`` of the
incidence matrix and row/column ``k`` of the line-graph adjacency and of
both Hodge Laplacians.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .exceptions import GraphError

__all__ = [
    "Graph",
    "LineGraph",
    "HodgePair",
    "build_graph",
    "incidence",
    "adjacency",
    "laplacian",
    "line_graph",
    "triangles",
    "triangle_incidence",
    "hodge_laplacians",
]


@dataclass(frozen=True)
class Graph:
    """Undirected, unweighted simple graph stored as an ordered edge list.

    Use :func:`build_graph` to construct one from raw pairs; the constructor
    itself only checks invariants and expects edges already normalized to
    ``u < v``.
    """

    num_nodes: int
    edges: tuple[tuple[int, int], ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.num_nodes < 0:
            raise GraphError(f"num_nodes must be >= 0, got {self.num_nodes}")
        index = {}
        for k, (u, v) in enumerate(self.edges):
            if u == v:
                raise GraphError(f"edge {k} is a self-loop on node {u}")
            if not u < v:
                raise GraphError(f"edge {k} = ({u}, {v}) is not normalized to u < v")
            if u < 0 or v >= self.num_nodes:
                raise GraphError(
                    f"edge {k} = ({u}, {v}) references a node outside [0, {self.num_nodes})"
                )
            if (u, v) in index:
                raise GraphError(f"edge {k} = ({u}, {v}) duplicates edge {index[(u, v)]}")
            index[(u, v)] = k
        object.__setattr__(self, "_index", index)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge_index(self, u: int, v: int) -> int:
        """Return the index of the edge joining ``u`` and ``v`` (either order)."""
        key = (u, v) if u < v else (v, u)
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"no edge between {u} and {v}") from None

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in self._index

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.num_nodes, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def neighbors(self) -> list[set[int]]:
        nbrs: list[set[int]] = [set() for _ in range(self.num_nodes)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return nbrs


def build_graph(num_nodes: int, edge_pairs: Iterable[Sequence[int]]) -> Graph:
    """Build a :class:`Graph`, normalizing each pair to ``u < v``.

    Input order is preserved, so the ``k``-th pair becomes edge ``k``.
    Self-loops, duplicates (in either orientation) and out-of-range node
    indices raise :class:`~edgewave.exceptions.GraphError`.

    Examples
    --------
    >>> build_graph(3, [(1, 0)]).edges
    ((0, 1),)
    """
    num_nodes = int(num_nodes)
    edges = []
    seen: dict[tuple[int, int], int] = {}
    for k, pair in enumerate(edge_pairs):
        if len(pair) != 2:
            raise GraphError(f"edge {k} must have two endpoints, got {pair!r}")
        u, v = int(pair[0]), int(pair[1])
        if u == v:
            raise GraphError(f"edge {k} is a self-loop on node {u}")
        for node in (u, v):
            if node < 0 or node >= num_nodes:
                raise GraphError(
                    f"edge {k} = ({pair[0]}, {pair[1]}): node {node} outside [0, {num_nodes})"
                )
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphError(f"edge {k} = ({pair[0]}, {pair[1]}) duplicates edge {seen[key]}")
        seen[key] = k
        edges.append(key)
    return Graph(num_nodes, tuple(edges))


def incidence(g: Graph) -> np.ndarray:
    """Signed node-by-edge incidence matrix.

    Edge ``k = (u, v)`` with ``u < v`` is oriented from ``u`` to ``v``:
    ``B[u, k] = -1`` and ``B[v, k] = +1``.
    """
    B = np.zeros((g.num_nodes, g.num_edges), dtype=np.int64)
    for k, (u, v) in enumerate(g.edges):
        B[u, k] = -1
        B[v, k] = 1
    return B


def adjacency(g: Graph) -> np.ndarray:
    A = np.zeros((g.num_nodes, g.num_nodes), dtype=np.int64)
    for u, v in g.edges:
        A[u, v] = 1
        A[v, u] = 1
    return A


def laplacian(g: Graph) -> np.ndarray:
    """Combinatorial node Laplacian ``D - A`` in integer arithmetic."""
    A = adjacency(g)
    return np.diag(A.sum(axis=1)) - A


@dataclass(frozen=True)
class LineGraph:
    """Edge-to-vertex dual of a graph.

    Node ``k`` of :attr:`graph` is edge ``k`` of the original graph, so the
    edge index map is the identity.
    """

    graph: Graph
    adjacency: np.ndarray
    source: Graph

    @property
    def edge_index_map(self) -> np.ndarray:
        return np.arange(self.source.num_edges)

    def laplacian(self) -> np.ndarray:
        return laplacian(self.graph)


def line_graph(g: Graph) -> LineGraph:
    """Line graph with adjacency ``abs(B^T B) - 2 I``."""
    if g.num_edges < 1:
        raise GraphError("line graph needs at least one edge")
    B = incidence(g)
    A = np.abs(B.T @ B) - 2 * np.eye(g.num_edges, dtype=np.int64)
    # simple graphs share at most one endpoint per edge pair
    if A.min() < 0 or A.max() > 1:
        raise GraphError("line-graph adjacency left {0, 1}; input is not a simple graph")
    rows, cols = np.nonzero(np.triu(A, 1))
    dual = Graph(g.num_edges, tuple(zip(rows.tolist(), cols.tolist())))
    A.setflags(write=False)
    return LineGraph(graph=dual, adjacency=A, source=g)


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    """All 3-cliques ``(a, b, c)`` with ``a < b < c``, sorted lexicographically."""
    nbrs = g.neighbors()
    out = []
    for a in range(g.num_nodes):
        higher = sorted(n for n in nbrs[a] if n > a)
        for b, c in combinations(higher, 2):
            if c in nbrs[b]:
                out.append((a, b, c))
    out.sort()
    return out


def triangle_incidence(g: Graph, tris: Sequence[tuple[int, int, int]] | None = None) -> np.ndarray:
    """Edge-by-triangle boundary matrix.

    Triangle ``(a, b, c)`` gets ``+1`` on edge ``(a, b)``, ``-1`` on
    ``(a, c)`` and ``+1`` on ``(b, c)``.
    """
    if tris is None:
        tris = triangles(g)
    B2 = np.zeros((g.num_edges, len(tris)), dtype=np.int64)
    for j, (a, b, c) in enumerate(tris):
        B2[g.edge_index(a, b), j] = 1
        B2[g.edge_index(a, c), j] = -1
        B2[g.edge_index(b, c), j] = 1
    return B2


@dataclass(frozen=True)
class HodgePair:
    """Lower and upper Hodge Laplacians acting on edge signals."""

    lower: np.ndarray
    upper: np.ndarray
    triangles: tuple[tuple[int, int, int], ...]


def hodge_laplacians(g: Graph) -> HodgePair:
    B = incidence(g)
    tris = triangles(g)
    B2 = triangle_incidence(g, tris)
    lower = B.T @ B
    upper = B2 @ B2.T
    lower.setflags(write=False)
    upper.setflags(write=False)
    return HodgePair(lower=lower, upper=upper, triangles=tuple(tris))
