"""
Random Subgraphs
G_p sampling, union-find component sizes and minimum spanning weights.
"""

from typing import List, Optional

import numpy as np

from ..core.exceptions import ExperimentError
from ..graphs.core import Graph
from ..utils.seeding import STREAM_MONTE_CARLO, make_rng

SAMPLE_STREAM = 0


class UnionFind:
    """Disjoint sets with path compression and union by size."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.size = [1] * size
        self.components = size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of a and b; False when already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True

    def component_sizes(self) -> List[int]:
        """Sizes of all components, largest first."""
        roots = (v for v in range(len(self.parent)) if self.parent[v] == v)
        return sorted((self.size[v] for v in roots), reverse=True)


def keep_edges(pairs: np.ndarray, p: float, rng: np.random.Generator) -> np.ndarray:
    """Rows of pairs kept independently with probability p."""
    if pairs.shape[0] == 0:
        return pairs
    return pairs[rng.random(pairs.shape[0]) < p]


def simple_pairs(g: Graph) -> np.ndarray:
    pairs = g.edge_array()
    return pairs[pairs[:, 0] != pairs[:, 1]] if pairs.size else pairs.reshape(0, 2)


def sample_gp(
    g: Graph, p: float, seed: int = 0, rng: Optional[np.random.Generator] = None
) -> Graph:
    """G_p: every edge of g kept independently with probability p.

    Loops are edges too and are kept with the same probability. p = 1 returns
    a graph equal to g and p = 0 the empty graph on V(g).

    Raises:
        ExperimentError: p outside [0, 1]
    """
    if not 0.0 <= p <= 1.0:
        raise ExperimentError(f"Edge probability must lie in [0, 1], got {p}")
    rng = rng or make_rng(seed, STREAM_MONTE_CARLO, SAMPLE_STREAM)
    kept = keep_edges(g.edge_array(), p, rng)
    return Graph.from_pairs(g.n, kept, name=f"{g.label}_p{p:g}", check_duplicates=False)


def component_sizes(n: int, pairs: np.ndarray) -> List[int]:
    """Component sizes of the graph (range(n), pairs), largest first."""
    forest = UnionFind(n)
    for u, v in pairs.tolist():
        forest.union(u, v)
    return forest.component_sizes()


def is_spanning_connected(n: int, pairs: np.ndarray) -> bool:
    if n <= 1:
        return True
    forest = UnionFind(n)
    for u, v in pairs.tolist():
        if forest.union(u, v) and forest.components == 1:
            return True
    return False


def minimum_spanning_weight(n: int, pairs: np.ndarray, weights: np.ndarray) -> float:
    """Weight of a minimum spanning tree, growing the forest along edges sorted by weight.

    Raises:
        ExperimentError: the graph is disconnected
    """
    if n <= 1:
        return 0.0
    forest = UnionFind(n)
    total = 0.0
    for index in np.argsort(weights, kind="stable").tolist():
        u, v = int(pairs[index, 0]), int(pairs[index, 1])
        if forest.union(u, v):
            total += float(weights[index])
            if forest.components == 1:
                return total
    raise ExperimentError("Minimum spanning tree of a disconnected graph")
