"""
Maximum Cut
Exhaustive bipartition scan with the last vertex pinned, and single-move local search.
"""

import numpy as np

from ..core.exceptions import OracleError
from ..graphs.core import Graph, subset_indicator_matrix
from ..utils.logging import get_logger
from ..utils.seeding import STREAM_ORACLE, make_rng
from .result import OracleResult, OracleStatus, SearchBudget, cut_size

logger = get_logger(__name__)

DEFAULT_MAXCUT_MAX_N = 24
CHUNK = 1 << 14
LOCAL_SEARCH_STREAM = 100


def exact_maxcut(g: Graph, max_n: int = DEFAULT_MAXCUT_MAX_N) -> OracleResult:
    """f(G), the largest number of edges crossing a bipartition.

    cut(S) = sum_{u in S} d(u) - 1_S^T A 1_S over the loopless adjacency,
    evaluated for every S not containing vertex n - 1.

    Raises:
        OracleError: n above max_n
    """
    if g.n > max_n:
        raise OracleError(f"exact_maxcut supports n <= {max_n}, got n = {g.n}")
    budget = SearchBudget(0)
    if g.n < 2:
        return budget.result("maxcut", OracleStatus.FOUND, value=0, witness=[[], list(range(g.n))])

    simple = g.without_loops()
    adjacency = simple.adjacency_matrix(dtype=np.float64)
    degrees = simple.degrees.astype(np.float64)
    free = g.n - 1
    total = 1 << free
    best_value, best_code = -1, 0
    for start in range(0, total, CHUNK):
        stop = min(start + CHUNK, total)
        sides = np.zeros((stop - start, g.n))
        sides[:, :free] = subset_indicator_matrix(free, start, stop)
        cuts = sides @ degrees - ((sides @ adjacency) * sides).sum(axis=1)
        index = int(cuts.argmax())
        if cuts[index] > best_value + 0.5:
            best_value, best_code = int(round(cuts[index])), start + index
        budget.nodes += stop - start

    side = [v for v in range(free) if best_code >> v & 1]
    other = [v for v in range(g.n) if not best_code >> v & 1]
    if cut_size(g, side) != best_value:
        raise OracleError(f"exact_maxcut witness does not realise {best_value} on {g.label}")
    logger.debug(f"maxcut({g.label}) = {best_value}")
    return budget.result("maxcut", OracleStatus.FOUND, value=best_value, witness=[side, other])


def local_search_maxcut(g: Graph, seed: int = 0) -> OracleResult:
    """A cut no single vertex move improves, from a seeded random bipartition.

    Every such cut has at least m/2 edges; the value is a lower bound on f(G),
    so the status stays UNKNOWN with bounds (cut, m).
    """
    budget = SearchBudget(0)
    simple = g.without_loops()
    adjacency = simple.sparse_adjacency(dtype=np.int64)
    side = make_rng(seed, STREAM_ORACLE, LOCAL_SEARCH_STREAM).integers(0, 2, size=g.n).astype(bool)
    while True:
        same = np.asarray(adjacency @ side.astype(np.int64)).ravel()
        # gain of moving v: neighbours on its own side minus neighbours across
        own = np.where(side, same, simple.degrees - same)
        gain = 2 * own - simple.degrees
        v = int(gain.argmax()) if g.n else 0
        if g.n == 0 or gain[v] <= 0:
            break
        side[v] = not side[v]
        budget.nodes += 1
    chosen = [int(v) for v in np.flatnonzero(side)]
    value = cut_size(simple, chosen)
    logger.debug(f"local_search_maxcut({g.label}) = {value} after {budget.nodes} moves")
    return budget.result(
        "maxcut_local_search",
        OracleStatus.UNKNOWN,
        witness=[chosen, [int(v) for v in np.flatnonzero(~side)]],
        bounds=(value, simple.m),
        notes={"cut": value},
    )
