"""
Hamilton Cycles
Backtracking search with degree and connectivity pruning, and an exact
subset-DP count for small graphs.
"""

from typing import List, Optional

import numpy as np

from ..core.exceptions import OracleError
from ..graphs.core import Graph
from ..utils.logging import get_logger
from .result import (
    BudgetExhausted,
    OracleResult,
    OracleStatus,
    SearchBudget,
    bits_to_list,
    is_hamilton_cycle,
    popcount,
)

logger = get_logger(__name__)

DEFAULT_HAMILTON_BUDGET = 5_000_000
COUNT_MAX_N = 16


def _reachable(start: int, allowed: int, bits: List[int]) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        grown = 0
        for v in bits_to_list(frontier):
            grown |= bits[v]
        frontier = grown & allowed & ~seen
        seen |= frontier
    return seen


def _search(n: int, bits: List[int], budget: SearchBudget) -> Optional[List[int]]:
    path = [0]
    unvisited = ((1 << n) - 1) & ~1

    def viable(end: int, rest: int) -> bool:
        if not rest:
            return True
        # every unvisited vertex keeps two usable neighbours
        usable = rest | (1 << end) | 1
        for v in bits_to_list(rest):
            if popcount(bits[v] & usable) < 2:
                return False
        # the unvisited vertices stay reachable from the path end
        reach = _reachable(end, rest | (1 << end), bits)
        return rest & ~reach == 0

    def extend(end: int, rest: int) -> bool:
        budget.tick()
        if not rest:
            return bool(bits[end] & 1)
        for u in bits_to_list(bits[end] & rest):
            next_rest = rest & ~(1 << u)
            if not viable(u, next_rest):
                continue
            path.append(u)
            if extend(u, next_rest):
                return True
            path.pop()
        return False

    return list(path) if extend(0, unvisited) else None


def hamilton_search(g: Graph, budget: int = DEFAULT_HAMILTON_BUDGET) -> OracleResult:
    """Find a Hamilton cycle or prove there is none within the node budget."""
    search = SearchBudget(budget)
    bits = g.neighbor_bits
    if g.n < 3 or any(popcount(b) < 2 for b in bits):
        return search.result("hamilton", OracleStatus.NONE, value=False)
    try:
        cycle = _search(g.n, bits, search)
    except BudgetExhausted:
        logger.warning(f"hamilton_search({g.label}) ran out of budget after {search.nodes} nodes")
        return search.result("hamilton", OracleStatus.UNKNOWN)
    if cycle is None:
        return search.result("hamilton", OracleStatus.NONE, value=False)
    if not is_hamilton_cycle(g, cycle):
        raise OracleError(f"hamilton_search produced an invalid cycle on {g.label}")
    return search.result("hamilton", OracleStatus.FOUND, value=True, witness=cycle)


def count_hamilton_cycles(g: Graph) -> OracleResult:
    """Exact number of Hamilton cycles (undirected, unrooted), n <= 16.

    walks[S][v] counts paths from vertex 0 through exactly the vertices of S
    ending at v; masks range over subsets of 1..n-1.
    """
    if g.n > COUNT_MAX_N:
        raise OracleError(f"Hamilton counting supports n <= {COUNT_MAX_N}, got n = {g.n}")
    search = SearchBudget(0)
    if g.n < 3:
        return search.result("hamilton_count", OracleStatus.FOUND, value=0)
    adjacency = g.without_loops().adjacency_matrix(dtype=np.int64)
    rest = g.n - 1
    walks = np.zeros((1 << rest, g.n), dtype=np.int64)
    for v in range(1, g.n):
        walks[1 << (v - 1), v] = adjacency[0, v]
    for mask in range(1, 1 << rest):
        row = walks[mask]
        if not row.any():
            continue
        reach = row @ adjacency
        for v in range(1, g.n):
            bit = 1 << (v - 1)
            if not mask & bit and reach[v]:
                walks[mask | bit, v] += reach[v]
        search.nodes += 1
    closed = int(walks[(1 << rest) - 1] @ adjacency[:, 0])
    return search.result("hamilton_count", OracleStatus.FOUND, value=closed // 2)
