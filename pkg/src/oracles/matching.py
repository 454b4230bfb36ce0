"""
Matchings and Factors
Perfect-matching existence (Tutte matrix over a prime field, checked against
Edmonds' blossom algorithm), exact perfect-matching counts and triangle factors.
"""

from enum import Enum
from functools import lru_cache
from typing import List, Tuple

import networkx as nx
import numpy as np

from ..core.exceptions import OracleError
from ..graphs.core import Graph
from ..utils.logging import get_logger
from ..utils.seeding import STREAM_ORACLE, make_rng
from .result import (
    BudgetExhausted,
    OracleResult,
    OracleStatus,
    SearchBudget,
    bits_to_list,
    is_perfect_matching,
    is_triangle_factor,
)

logger = get_logger(__name__)

TUTTE_PRIME = (1 << 31) - 1
TUTTE_TRIALS = 8
DETERMINISTIC_MAX_N = 60
COUNT_MAX_N = 32
TRIANGLE_FACTOR_BUDGET = 5_000_000


class MatchingMode(str, Enum):
    EXISTS_PERFECT = "exists_perfect"
    COUNT_PERFECT = "count_perfect"


def _det_mod(matrix: np.ndarray, prime: int) -> int:
    """Determinant mod prime by Gaussian elimination, one pivot row at a time.

    prime < 2^31 keeps every product below 2^62 in int64.
    """
    rows = np.array(matrix, dtype=np.int64) % prime
    n = rows.shape[0]
    det = 1
    for col in range(n):
        nonzero = np.flatnonzero(rows[col:, col])
        if not nonzero.size:
            return 0
        pivot = col + int(nonzero[0])
        if pivot != col:
            rows[[col, pivot]] = rows[[pivot, col]]
            det = -det
        lead = int(rows[col, col])
        det = det * lead % prime
        factors = rows[col + 1 :, col] * pow(lead, prime - 2, prime) % prime
        below = rows[col + 1 :, col:] - factors[:, None] * rows[col, col:]
        rows[col + 1 :, col:] = below % prime
    return det % prime


def tutte_rank_test(g: Graph, seed: int = 0, trials: int = TUTTE_TRIALS) -> bool:
    """True iff some random Tutte matrix is nonsingular (one-sided error)."""
    pairs = g.edge_array()
    pairs = pairs[pairs[:, 0] != pairs[:, 1]] if pairs.size else pairs.reshape(0, 2)
    us, vs = pairs[:, 0], pairs[:, 1]
    for trial in range(trials):
        rng = make_rng(seed, STREAM_ORACLE, trial)
        values = rng.integers(1, TUTTE_PRIME, size=len(us), dtype=np.int64)
        matrix = np.zeros((g.n, g.n), dtype=np.int64)
        matrix[us, vs] = values
        matrix[vs, us] = TUTTE_PRIME - values
        if _det_mod(matrix, TUTTE_PRIME):
            return True
    return False


def maximum_matching(g: Graph) -> List[Tuple[int, int]]:
    """Maximum-cardinality matching (blossom algorithm), pairs sorted."""
    matched = nx.max_weight_matching(g.without_loops().to_networkx(), maxcardinality=True)
    return sorted(tuple(sorted((int(u), int(v)))) for u, v in matched)


def count_perfect_matchings(g: Graph) -> int:
    """Exact count by recursion on the least unmatched vertex, memoised on the vertex set."""
    if g.n > COUNT_MAX_N:
        raise OracleError(f"Perfect-matching counting supports n <= {COUNT_MAX_N}, got n = {g.n}")
    if g.n % 2:
        return 0
    bits = g.neighbor_bits

    @lru_cache(maxsize=None)
    def count(rest: int) -> int:
        if not rest:
            return 1
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        return sum(count(rest & ~(1 << u)) for u in bits_to_list(bits[v] & rest))

    return count((1 << g.n) - 1)


def matching(g: Graph, mode: str = MatchingMode.EXISTS_PERFECT, seed: int = 0) -> OracleResult:
    """Perfect-matching existence or exact count.

    Existence up to DETERMINISTIC_MAX_N vertices comes from the blossom
    algorithm with the Tutte test as a cross-check; above that the Tutte test
    alone decides and a singular result is flagged randomized (error < (n/P)^8).
    """
    mode = MatchingMode(mode)
    search = SearchBudget(0)
    if mode == MatchingMode.COUNT_PERFECT:
        count = count_perfect_matchings(g)
        status = OracleStatus.FOUND if count else OracleStatus.NONE
        return search.result("perfect_matching_count", status, value=count)

    if g.n % 2:
        return search.result("perfect_matching", OracleStatus.NONE, value=False)
    nonsingular = tutte_rank_test(g, seed)
    if g.n > DETERMINISTIC_MAX_N:
        # a nonsingular Tutte matrix proves existence; singular ones may err
        status = OracleStatus.FOUND if nonsingular else OracleStatus.NONE
        return search.result(
            "perfect_matching", status, value=nonsingular, randomized=not nonsingular
        )

    pairs = maximum_matching(g)
    exists = 2 * len(pairs) == g.n
    if exists != nonsingular:
        raise OracleError(
            f"Tutte test ({nonsingular}) disagrees with the blossom algorithm ({exists}) "
            f"on {g.label}"
        )
    if exists and not is_perfect_matching(g, pairs):
        raise OracleError(f"matching produced an invalid perfect matching on {g.label}")
    return search.result(
        "perfect_matching",
        OracleStatus.FOUND if exists else OracleStatus.NONE,
        value=exists,
        witness=[list(p) for p in pairs] if exists else None,
        notes={"maximum_matching": len(pairs)},
    )


def triangle_factor_exact(g: Graph, budget: int = TRIANGLE_FACTOR_BUDGET) -> OracleResult:
    """n/3 vertex-disjoint triangles, by covering the least uncovered vertex first.

    Raises:
        OracleError: n not divisible by 3
    """
    if g.n % 3:
        raise OracleError(f"A triangle factor needs 3 | n, got n = {g.n}")
    search = SearchBudget(budget)
    bits = g.neighbor_bits
    chosen: List[Tuple[int, int, int]] = []

    def cover(rest: int) -> bool:
        search.tick()
        if not rest:
            return True
        low = rest & -rest
        v = low.bit_length() - 1
        pool = bits[v] & rest
        for u in bits_to_list(pool):
            for w in bits_to_list(bits[u] & pool & ~((1 << (u + 1)) - 1)):
                chosen.append((v, u, w))
                if cover(rest & ~((1 << v) | (1 << u) | (1 << w))):
                    return True
                chosen.pop()
        return False

    try:
        found = cover((1 << g.n) - 1)
    except BudgetExhausted:
        return search.result("triangle_factor", OracleStatus.UNKNOWN)
    if not found:
        return search.result("triangle_factor", OracleStatus.NONE, value=False)
    witness = [list(t) for t in chosen]
    if not is_triangle_factor(g, witness):
        raise OracleError(f"triangle_factor_exact produced an invalid factor on {g.label}")
    return search.result("triangle_factor", OracleStatus.FOUND, value=True, witness=witness)
