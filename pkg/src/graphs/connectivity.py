"""
Connectivity
Exact vertex/edge connectivity by max-flow and connected components.
"""

from typing import List, Optional

import networkx as nx
import numpy as np
from scipy.sparse import csgraph

from ..core.exceptions import GraphError
from ..utils.logging import get_logger
from .core import Graph

logger = get_logger(__name__)


def _check_loopless(g: Graph, what: str):
    if g.has_loops:
        raise GraphError(f"{what} requires a loopless graph")
    if g.n < 2:
        raise GraphError(f"{what} requires n >= 2, got n = {g.n}")


def vertex_connectivity(g: Graph) -> int:
    """Exact kappa(G): unit vertex capacities, max-flow over the pair enumeration."""
    _check_loopless(g, "vertex_connectivity")
    if g.m == g.n * (g.n - 1) // 2:
        return g.n - 1
    value = int(nx.node_connectivity(g.to_networkx()))
    logger.debug(f"kappa({g.label}) = {value}")
    return value


def edge_connectivity(g: Graph) -> int:
    """Exact kappa'(G) by max-flow."""
    _check_loopless(g, "edge_connectivity")
    value = int(nx.edge_connectivity(g.to_networkx()))
    logger.debug(f"kappa'({g.label}) = {value}")
    return value


def components(g: Graph) -> List[List[int]]:
    """Connected components, each sorted, ordered by least vertex."""
    if g.n == 0:
        return []
    _, labels = csgraph.connected_components(
        g.sparse_adjacency(), directed=False, connection="weak"
    )
    # relabel so component ids follow the least vertex they contain
    _, first = np.unique(labels, return_index=True)
    order = np.argsort(first)
    groups: List[List[int]] = [[] for _ in order]
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    for v, label in enumerate(labels):
        groups[rank[label]].append(v)
    return groups


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def min_degree(g: Graph) -> int:
    return int(g.degrees.min()) if g.n else 0


GIRTH_ROOT_BLOCK = 64


def girth(g: Graph) -> Optional[int]:
    """Length of a shortest cycle (loops ignored), or None for a forest.

    From every root r a non-tree edge between two vertices at equal depth
    closes an odd cycle of length 2 depth + 1, and a vertex with two parents
    closes an even cycle of length 2 depth; the minimum over all roots is exact.
    """
    simple = g.without_loops()
    if simple.m == 0:
        return None
    adjacency = simple.sparse_adjacency(dtype=np.float64)
    edges = simple.edge_array()
    tails, heads = simple.arc_sources, simple.indices
    best = np.inf
    for start in range(0, g.n, GIRTH_ROOT_BLOCK):
        roots = np.arange(start, min(start + GIRTH_ROOT_BLOCK, g.n))
        depth = csgraph.shortest_path(adjacency, unweighted=True, indices=roots)
        du, dv = depth[:, edges[:, 0]], depth[:, edges[:, 1]]
        level = np.isfinite(du) & (du == dv)
        if level.any():
            best = min(best, float((2 * du[level] + 1).min()))
        # parents[r, y] counts neighbours x of y one level closer to r
        head_depth = depth[:, heads]
        parent_arc = np.isfinite(head_depth) & (depth[:, tails] == head_depth - 1)
        parents = np.zeros(depth.shape, dtype=np.int64)
        rows = np.broadcast_to(np.arange(roots.size)[:, None], parent_arc.shape)
        columns = np.broadcast_to(heads, parent_arc.shape)
        np.add.at(parents, (rows[parent_arc], columns[parent_arc]), 1)
        forked = parents >= 2
        if forked.any():
            best = min(best, float((2 * depth[forked]).min()))
    value = None if not np.isfinite(best) else int(best)
    logger.debug(f"girth({g.label}) = {value}")
    return value
