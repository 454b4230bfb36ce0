"""
Turan Numbers
Exact ex(G, K_t) as m minus a minimum edge set hitting every K_t, and the
local-search partition behind the (t-2)/(t-1) lower bound.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Tuple

from ..core.exceptions import OracleError
from ..graphs.core import Graph
from ..utils.logging import get_logger
from .result import (
    BudgetExhausted,
    OracleResult,
    OracleStatus,
    SearchBudget,
    bits_to_list,
    popcount,
)

logger = get_logger(__name__)

EXHAUSTIVE_MAX_M = 20
DEFAULT_TURAN_BUDGET = 200_000


def cliques_of_order(g: Graph, t: int) -> List[Tuple[int, ...]]:
    """All t-cliques of g as increasing vertex tuples (loops ignored)."""
    bits = g.neighbor_bits
    found: List[Tuple[int, ...]] = []

    def grow(clique: List[int], pool: int):
        if len(clique) == t:
            found.append(tuple(clique))
            return
        for v in bits_to_list(pool):
            grow(clique + [v], pool & bits[v] & ~((1 << (v + 1)) - 1))

    grow([], (1 << g.n) - 1)
    return found


@dataclass(frozen=True)
class TuranPartition:
    """A (t-1)-partition whose cross edges form a K_t-free subgraph."""

    parts: List[List[int]]
    cross_edges: int
    internal_edges: int
    moves: int

    def to_dict(self) -> Dict[str, object]:
        return {
            "parts": self.parts,
            "cross_edges": self.cross_edges,
            "internal_edges": self.internal_edges,
            "moves": self.moves,
        }


def greedy_turan_partition(g: Graph, t: int) -> TuranPartition:
    """Local search until every vertex has at most deg(v)/(t-1) neighbours in its own part.

    Vertices start in part v mod (t-1); a violating vertex moves to the part
    where it has fewest neighbours (least index on ties). Each move strictly
    lowers the number of internal edges, so the search terminates.
    """
    if t < 3:
        raise OracleError(f"greedy_turan_partition needs t >= 3, got t = {t}")
    parts_count = t - 1
    part = [v % parts_count for v in range(g.n)]
    neighbors = [[int(u) for u in g.neighbors(v) if u != v] for v in range(g.n)]

    def internal_total() -> int:
        return sum(1 for v in range(g.n) for u in neighbors[v] if u > v and part[u] == part[v])

    potential = internal_total()
    moves = 0
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            counts = [0] * parts_count
            for u in neighbors[v]:
                counts[part[u]] += 1
            if counts[part[v]] * parts_count <= len(neighbors[v]):
                continue
            target = min(range(parts_count), key=lambda i: (counts[i], i))
            part[v] = target
            moves += 1
            changed = True
            updated = internal_total()
            if updated >= potential:
                raise OracleError("Turan local search failed to lower the internal edge count")
            potential = updated

    simple_m = g.m - g.loop_count
    groups = [[v for v in range(g.n) if part[v] == i] for i in range(parts_count)]
    logger.debug(
        f"greedy_turan_partition({g.label}, {t}): {simple_m - potential} cross edges "
        f"after {moves} moves"
    )
    return TuranPartition(groups, simple_m - potential, potential, moves)


def _packing_bound(cliques: List[int]) -> int:
    """Size of a greedy family of edge-disjoint cliques, a lower bound on any hitting set."""
    used, count = 0, 0
    for mask in cliques:
        if not mask & used:
            used |= mask
            count += 1
    return count


def _min_hitting_set(
    cliques: List[int], upper: int, budget: SearchBudget
) -> Tuple[int, int]:
    """Smallest edge set meeting every clique mask, by branching on an unhit clique."""
    best = [upper, 0]

    def branch(remaining: List[int], chosen: int, size: int):
        budget.tick()
        if not remaining:
            if size < best[0]:
                best[0], best[1] = size, chosen
            return
        if size + _packing_bound(remaining) >= best[0]:
            return
        for e in bits_to_list(remaining[0]):
            bit = 1 << e
            branch([mask for mask in remaining if not mask & bit], chosen | bit, size + 1)

    branch(cliques, 0, 0)
    return best[0], best[1]


def turan_exact(
    g: Graph, t: int, budget: int = DEFAULT_TURAN_BUDGET, gap: int = 0
) -> OracleResult:
    """ex(G, K_t), the most edges in a K_t-free subgraph.

    Up to EXHAUSTIVE_MAX_M edges every deletion set is scanned by size;
    above that a branch-and-bound search runs until the interval
    [lower, upper] is no wider than gap or the budget is spent.

    Returns:
        OracleResult with the value when exact, else UNKNOWN with bounds
    """
    if t < 2:
        raise OracleError(f"turan_exact needs t >= 2, got t = {t}")
    search = SearchBudget(budget)
    edges = [(u, v) for u, v in g.edges() if u != v]
    index = {e: i for i, e in enumerate(edges)}
    m = len(edges)
    cliques = []
    for clique in cliques_of_order(g, t):
        mask = 0
        for a, b in combinations(clique, 2):
            mask |= 1 << index[(a, b)]
        cliques.append(mask)

    def finish(deleted: int, status: OracleStatus, bounds: Tuple[int, int]) -> OracleResult:
        kept = [list(edges[i]) for i in range(m) if not deleted >> i & 1]
        value = len(kept) if status == OracleStatus.FOUND else None
        return search.result(
            "turan",
            status,
            value=value,
            witness=kept,
            bounds=bounds,
            notes={"t": t, "m": m, "cliques": len(cliques)},
        )

    if not cliques:
        return finish(0, OracleStatus.FOUND, (m, m))

    if m <= EXHAUSTIVE_MAX_M:
        for size in range(1, m + 1):
            for combo in combinations(range(m), size):
                search.nodes += 1
                deleted = sum(1 << i for i in combo)
                if all(mask & deleted for mask in cliques):
                    return finish(deleted, OracleStatus.FOUND, (m - size, m - size))

    if t >= 3:
        partition = greedy_turan_partition(g, t)
        side = {v: i for i, part in enumerate(partition.parts) for v in part}
        greedy_deleted = sum(
            1 << i for i, (u, v) in enumerate(edges) if side[u] == side[v]
        )
    else:
        greedy_deleted = (1 << m) - 1
    greedy_size = popcount(greedy_deleted)
    floor = _packing_bound(cliques)
    if greedy_size - floor <= gap:
        status = OracleStatus.FOUND if greedy_size == floor else OracleStatus.UNKNOWN
        return finish(greedy_deleted, status, (m - greedy_size, m - floor))

    try:
        size, deleted = _min_hitting_set(cliques, greedy_size, search)
    except BudgetExhausted:
        logger.warning(f"turan_exact({g.label}, {t}) ran out of budget")
        return finish(greedy_deleted, OracleStatus.UNKNOWN, (m - greedy_size, m - floor))
    if size == greedy_size:
        deleted = greedy_deleted
    return finish(deleted, OracleStatus.FOUND, (m - size, m - size))
