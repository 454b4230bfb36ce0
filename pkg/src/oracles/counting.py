"""
Exact Counting
Labeled copies of small subgraphs and spanning-tree counts.
"""

from collections import Counter
from functools import lru_cache
from typing import Dict, FrozenSet, List, Tuple

from ..core.exceptions import OracleError
from ..graphs.connectivity import is_connected
from ..graphs.core import Graph
from ..utils.logging import get_logger
from .result import bits_to_list, popcount

logger = get_logger(__name__)

PATTERN_MAX_N = 6
SPANNING_TREE_MAX_N = 500
DELETION_CONTRACTION_MAX_M = 40


def _pattern_order(h: Graph) -> List[int]:
    """Breadth-first order of the pattern from its highest-degree vertex."""
    order: List[int] = []
    seen = set()
    for root in sorted(range(h.n), key=lambda v: (-h.degree(v), v)):
        if root in seen:
            continue
        queue = [root]
        seen.add(root)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in h.neighbors(v):
                if int(u) not in seen:
                    seen.add(int(u))
                    queue.append(int(u))
    return order


def count_subgraph_copies(g: Graph, h: Graph, induced: bool = False) -> int:
    """Labeled copies of h in g: injective maps sending edges to edges.

    With induced=True non-edges must also go to non-edges (N*_G). Loops in g
    are ignored.

    Raises:
        OracleError: h has more than PATTERN_MAX_N vertices or carries a loop
    """
    if h.n > PATTERN_MAX_N:
        raise OracleError(f"Patterns are limited to {PATTERN_MAX_N} vertices, got {h.n}")
    if h.has_loops:
        raise OracleError("Pattern graphs must be loopless")
    if h.n == 0:
        return 1
    if h.n > g.n:
        return 0

    order = _pattern_order(h)
    position = {v: i for i, v in enumerate(order)}
    earlier_adjacent = [
        [position[int(u)] for u in h.neighbors(v) if position[int(u)] < i]
        for i, v in enumerate(order)
    ]
    earlier_apart = [
        [j for j in range(i) if j not in earlier_adjacent[i]] for i in range(h.n)
    ]
    bits = g.neighbor_bits
    full = (1 << g.n) - 1
    images = [0] * h.n

    def extend(i: int, used: int) -> int:
        candidates = full & ~used
        for j in earlier_adjacent[i]:
            candidates &= bits[images[j]]
        if induced:
            for j in earlier_apart[i]:
                candidates &= ~bits[images[j]]
        if i == h.n - 1:
            return popcount(candidates)
        total = 0
        for v in bits_to_list(candidates):
            images[i] = v
            total += extend(i + 1, used | (1 << v))
        return total

    return extend(0, 0)


def automorphism_count(h: Graph) -> int:
    """|Aut(h)|: labeled copies of h inside itself."""
    return count_subgraph_copies(h, h, induced=True)


def _bareiss_determinant(matrix: List[List[int]]) -> int:
    """Integer determinant by fraction-free elimination."""
    rows = [row[:] for row in matrix]
    n = len(rows)
    if n == 0:
        return 1
    sign, previous = 1, 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if rows[r][k] != 0), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            row_i, factor = rows[i], rows[i][k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * rows[k][j]) // previous
            row_i[k] = 0
        previous = pivot
    return sign * rows[n - 1][n - 1]


def count_spanning_trees(g: Graph) -> int:
    """Number of spanning trees: det of the Laplacian with one row and column removed.

    Loops are ignored; a disconnected graph has none.
    """
    if g.n > SPANNING_TREE_MAX_N:
        raise OracleError(f"Spanning-tree counting supports n <= {SPANNING_TREE_MAX_N}")
    if g.n == 0:
        return 0
    if not is_connected(g):
        return 0
    simple = g.without_loops()
    laplacian = [[0] * (g.n - 1) for _ in range(g.n - 1)]
    for v in range(g.n - 1):
        laplacian[v][v] = simple.degree(v)
        for u in simple.neighbors(v):
            if u < g.n - 1:
                laplacian[v][int(u)] = -1
    return _bareiss_determinant(laplacian)


Multigraph = Tuple[FrozenSet[int], FrozenSet[Tuple[Tuple[int, int], int]]]


def _connected(vertices: FrozenSet[int], edges: Dict[Tuple[int, int], int]) -> bool:
    parent = {v: v for v in vertices}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in vertices}) == 1


def spanning_trees_deletion_contraction(g: Graph) -> int:
    """Spanning-tree count by t(G) = t(G - e) + t(G / e) over multigraphs.

    Parallel copies of an edge are handled together: t(G) = t(G - {uv}) + k t(G / uv).
    """
    if g.m - g.loop_count > DELETION_CONTRACTION_MAX_M:
        raise OracleError(
            f"Deletion-contraction supports at most {DELETION_CONTRACTION_MAX_M} edges"
        )

    @lru_cache(maxsize=None)
    def trees(state: Multigraph) -> int:
        vertices, frozen_edges = state
        if len(vertices) == 1:
            return 1
        edges = dict(frozen_edges)
        if not _connected(vertices, edges):
            return 0
        (u, v), k = min(edges.items())
        deleted = {e: c for e, c in edges.items() if e != (u, v)}
        contracted: Counter = Counter()
        for (a, b), c in deleted.items():
            a, b = (u if a == v else a), (u if b == v else b)
            if a != b:
                contracted[(min(a, b), max(a, b))] += c
        return trees((vertices, frozenset(deleted.items()))) + k * trees(
            (vertices - {v}, frozenset(contracted.items()))
        )

    if g.n == 0:
        return 0
    edges = {(u, v): 1 for u, v in g.edges() if u != v}
    return trees((frozenset(range(g.n)), frozenset(edges.items())))
