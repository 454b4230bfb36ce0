"""
Graph Core
Immutable undirected graphs with loops, stored as sorted CSR neighbor arrays.

A loop at v appears once in v's neighbor list, adds 1 to deg(v) and puts a 1
on the adjacency diagonal. The edge count m counts each non-loop edge once and
each loop once.
"""

from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy import sparse

from ..core.exceptions import GraphError
from ..utils.logging import get_logger

logger = get_logger(__name__)

VertexSet = Sequence[int]


class Graph:
    """Immutable undirected graph, loops permitted, no parallel edges."""

    def __init__(
        self,
        n: int,
        indptr: np.ndarray,
        indices: np.ndarray,
        name: Optional[str] = None,
    ):
        # use the from_* constructors; this trusts its (canonical) input
        self.n = int(n)
        self.indptr = indptr
        self.indices = indices
        self.name = name
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)
        self.degrees = np.diff(indptr)
        self.degrees.setflags(write=False)
        sources = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        self.loops = np.zeros(self.n, dtype=bool)
        self.loops[sources[sources == indices]] = True
        self.loops.setflags(write=False)
        self.loop_count = int(self.loops.sum())
        self.m = (int(indices.size) - self.loop_count) // 2 + self.loop_count

    # Constructors

    @classmethod
    def from_edge_list(
        cls, n: int, edges: Iterable[Tuple[int, int]], name: Optional[str] = None
    ) -> "Graph":
        """Build a graph; (u, u) pairs become loops, duplicates are rejected."""
        if n < 0:
            raise GraphError(f"Vertex count must be non-negative, got {n}")
        pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        return cls.from_pairs(n, pairs, name=name, check_duplicates=True)

    @classmethod
    def from_pairs(
        cls,
        n: int,
        pairs: np.ndarray,
        name: Optional[str] = None,
        check_duplicates: bool = True,
    ) -> "Graph":
        """Vectorized constructor from an (m, 2) integer array."""
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        if pairs.size and (pairs.min() < 0 or pairs.max() >= n):
            bad = pairs[(pairs < 0).any(axis=1) | (pairs >= n).any(axis=1)][0]
            raise GraphError(f"Edge ({bad[0]}, {bad[1]}) has a vertex outside [0, {n})")
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        keys = lo * max(n, 1) + hi
        unique_keys, counts = np.unique(keys, return_counts=True)
        if check_duplicates and (counts > 1).any():
            dup = unique_keys[counts > 1][0]
            raise GraphError(f"Duplicate edge ({dup // n}, {dup % n})")
        lo, hi = unique_keys // max(n, 1), unique_keys % max(n, 1)
        return cls._from_canonical(n, lo, hi, name)

    @classmethod
    def from_neighbor_array(
        cls,
        neighbors: np.ndarray,
        name: Optional[str] = None,
        check_symmetric: bool = True,
    ) -> "Graph":
        """Build from an (n, d) array whose row v lists the neighbors of v.

        The relation must already be symmetric (Cayley graphs, for example).
        Skip the symmetry check only when it holds by construction.
        """
        neighbors = np.sort(np.asarray(neighbors, dtype=np.int64), axis=1)
        n, d = neighbors.shape
        if d > 1 and (np.diff(neighbors, axis=1) == 0).any():
            raise GraphError("Neighbor rows contain repeated entries")
        indptr = np.arange(0, n * d + 1, d, dtype=np.int64)
        graph = cls(n, indptr, neighbors.ravel(), name=name)
        if check_symmetric:
            graph._check_symmetric()
        return graph

    @classmethod
    def _from_canonical(
        cls, n: int, lo: np.ndarray, hi: np.ndarray, name: Optional[str]
    ) -> "Graph":
        proper = lo != hi
        src = np.concatenate([lo, hi[proper]])
        dst = np.concatenate([hi, lo[proper]])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(n, indptr, dst.astype(np.int64), name=name)

    @classmethod
    def empty(cls, n: int, name: Optional[str] = None) -> "Graph":
        return cls(n, np.zeros(n + 1, dtype=np.int64), np.zeros(0, dtype=np.int64), name)

    @classmethod
    def complete(cls, n: int, name: Optional[str] = None) -> "Graph":
        lo, hi = np.triu_indices(n, k=1)
        return cls._from_canonical(n, lo.astype(np.int64), hi.astype(np.int64), name)

    @classmethod
    def from_dense(cls, matrix: np.ndarray, name: Optional[str] = None) -> "Graph":
        """Build from a symmetric 0/1 adjacency matrix (diagonal = loops)."""
        matrix = np.asarray(matrix)
        if matrix.shape[0] != matrix.shape[1] or not np.array_equal(matrix, matrix.T):
            raise GraphError("Adjacency matrix must be square and symmetric")
        lo, hi = np.nonzero(np.triu(matrix))
        return cls._from_canonical(
            matrix.shape[0], lo.astype(np.int64), hi.astype(np.int64), name
        )

    def _check_symmetric(self):
        adj = self.sparse_adjacency()
        if (adj != adj.T).nnz:
            raise GraphError("Adjacency relation is not symmetric")

    # Queries

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbors of v (v itself included when v has a loop)."""
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.degrees[v])

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return bool(i < row.size and row[i] == v)

    def edges(self) -> List[Tuple[int, int]]:
        """Edges as (u, v) with u <= v, in lexicographic order."""
        return [(int(u), int(v)) for u, v in self.edge_array()]

    def edge_array(self) -> np.ndarray:
        mask = self.arc_sources <= self.indices
        return np.stack([self.arc_sources[mask], self.indices[mask]], axis=1)

    @cached_property
    def arc_sources(self) -> np.ndarray:
        """Source vertex of every stored arc, aligned with indices."""
        return np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)

    @property
    def is_regular(self) -> bool:
        return self.n == 0 or bool((self.degrees == self.degrees[0]).all())

    @property
    def regular_degree(self) -> Optional[int]:
        """The common degree, or None for irregular graphs."""
        if self.n == 0:
            return 0
        return int(self.degrees[0]) if self.is_regular else None

    @property
    def has_loops(self) -> bool:
        return self.loop_count > 0

    @property
    def label(self) -> str:
        return self.name or f"graph(n={self.n}, m={self.m})"

    def sparse_adjacency(self, dtype=np.int64) -> sparse.csr_matrix:
        data = np.ones(self.indices.size, dtype=dtype)
        return sparse.csr_matrix(
            (data, self.indices, self.indptr), shape=(self.n, self.n)
        )

    def adjacency_matrix(self, dtype=np.float64) -> np.ndarray:
        """Dense adjacency matrix, loops on the diagonal."""
        matrix = np.zeros((self.n, self.n), dtype=dtype)
        matrix[self.arc_sources, self.indices] = 1
        return matrix

    @cached_property
    def neighbor_bits(self) -> List[int]:
        """Loopless neighborhoods as Python int bitsets, for exact oracles."""
        bits = []
        for v in range(self.n):
            mask = 0
            for u in self.neighbors(v):
                if u != v:
                    mask |= 1 << int(u)
            bits.append(mask)
        return bits

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    # Derived graphs

    def complement(self) -> "Graph":
        """Loopless complement."""
        matrix = 1 - self.adjacency_matrix(dtype=np.int8)
        np.fill_diagonal(matrix, 0)
        return Graph.from_dense(matrix, name=f"complement({self.label})")

    def induced_subgraph(self, vertices: VertexSet) -> "Graph":
        """Induced subgraph on the given vertices, relabelled 0..k-1 in order."""
        vertices = _as_vertex_array(self, vertices)
        relabel = np.full(self.n, -1, dtype=np.int64)
        relabel[vertices] = np.arange(vertices.size)
        pairs = self.edge_array()
        keep = (relabel[pairs[:, 0]] >= 0) & (relabel[pairs[:, 1]] >= 0)
        return Graph.from_pairs(
            vertices.size, relabel[pairs[keep]], check_duplicates=False
        )

    def without_loops(self) -> "Graph":
        if not self.has_loops:
            return self
        pairs = self.edge_array()
        return Graph.from_pairs(
            self.n, pairs[pairs[:, 0] != pairs[:, 1]], name=self.name, check_duplicates=False
        )

    def with_name(self, name: str) -> "Graph":
        return Graph(self.n, self.indptr.copy(), self.indices.copy(), name=name)

    # Comparisons

    def same_edges(self, other: "Graph") -> bool:
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.same_edges(other)

    def __hash__(self) -> int:
        return hash((self.n, self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, name={self.name!r})"


def _as_vertex_array(g: Graph, vertices: Optional[VertexSet]) -> np.ndarray:
    """Validate a vertex set and return it as a sorted unique int64 array."""
    if vertices is None:
        return np.arange(g.n, dtype=np.int64)
    array = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if array.size and (array[0] < 0 or array[-1] >= g.n):
        raise GraphError(f"Vertex set contains a vertex outside [0, {g.n})")
    return array


def _membership(g: Graph, vertices: VertexSet) -> np.ndarray:
    mask = np.zeros(g.n, dtype=bool)
    mask[_as_vertex_array(g, vertices)] = True
    return mask


def from_edge_list(n: int, edges: Iterable[Tuple[int, int]], name: Optional[str] = None) -> Graph:
    """Canonical immutable graph from a vertex count and an edge list."""
    return Graph.from_edge_list(n, edges, name=name)


def edge_count_between(g: Graph, U: VertexSet, W: VertexSet) -> int:
    """e(U, W) = sum over u in U of |adj(u) & W|.

    An edge with both ends in U & W is counted twice; a loop in U & W once.
    """
    in_u = _membership(g, U)
    in_w = _membership(g, W)
    return int(np.count_nonzero(in_u[g.arc_sources] & in_w[g.indices]))


def induced_edges(g: Graph, U: VertexSet) -> int:
    """e(U): internal non-loop edges once, loops once."""
    in_u = _membership(g, U)
    inside = in_u[g.arc_sources] & in_u[g.indices]
    loops = int(np.count_nonzero(inside & (g.arc_sources == g.indices)))
    return (int(np.count_nonzero(inside)) - loops) // 2 + loops


def is_triangle_free(g: Graph, vertices: Optional[VertexSet] = None) -> bool:
    """True when no triangle passes through the given vertices (all by default)."""
    for u in _as_vertex_array(g, vertices):
        row = g.neighbors(int(u))
        row = row[row != u]
        for v in row:
            other = g.neighbors(int(v))
            common = np.intersect1d(row, other[(other != v)], assume_unique=True)
            if common.size:
                return False
    return True


def subset_indicator_matrix(n: int, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
    """Rows are the 0/1 indicator vectors of subsets start..stop-1 of range(n)."""
    stop = 1 << n if stop is None else stop
    codes = np.arange(start, stop, dtype=np.int64)[:, None]
    return ((codes >> np.arange(n, dtype=np.int64)) & 1).astype(np.int64)
