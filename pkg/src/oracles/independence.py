"""
Independence and Coloring Oracles
Exact alpha, omega and chi by branch-and-bound over bitsets, and the greedy
min-degree procedures whose guarantees depend on d and lambda.
"""

import math
from typing import List, Optional, Sequence, Tuple

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
    is_clique,
    is_independent,
    is_proper_coloring,
    popcount,
)

logger = get_logger(__name__)

DEFAULT_ALPHA_BUDGET = 2_000_000
DEFAULT_CHI_BUDGET = 2_000_000


# Maximum independent set


def _clique_cover_bound(candidates: int, bits: List[int]) -> int:
    """Greedy partition of candidates into cliques of G; alpha <= number of parts."""
    parts = 0
    rest = candidates
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        clique = low
        pool = rest & bits[v]
        while pool:
            u_low = pool & -pool
            clique |= u_low
            pool &= bits[u_low.bit_length() - 1]
        rest &= ~clique
        parts += 1
    return parts


def _greedy_independent_bits(candidates: int, bits: List[int]) -> int:
    chosen = 0
    while candidates:
        best, best_degree = -1, None
        for v in bits_to_list(candidates):
            degree = popcount(bits[v] & candidates)
            if best_degree is None or degree < best_degree:
                best, best_degree = v, degree
        chosen |= 1 << best
        candidates &= ~(bits[best] | (1 << best))
    return chosen


def _max_independent(candidates: int, bits: List[int], budget: SearchBudget) -> int:
    """Bitset of a maximum independent set within candidates."""
    best = [_greedy_independent_bits(candidates, bits)]
    best_size = [popcount(best[0])]

    def expand(chosen: int, size: int, rest: int):
        budget.tick()
        # a vertex of degree <= 1 in rest lies in some maximum independent set
        while rest:
            forced = None
            for v in bits_to_list(rest):
                if popcount(bits[v] & rest) <= 1:
                    forced = v
                    break
            if forced is None:
                break
            chosen |= 1 << forced
            size += 1
            rest &= ~(bits[forced] | (1 << forced))
        if not rest:
            if size > best_size[0]:
                best[0], best_size[0] = chosen, size
            return
        if size + popcount(rest) <= best_size[0]:
            return
        if size + _clique_cover_bound(rest, bits) <= best_size[0]:
            return
        pivot = max(bits_to_list(rest), key=lambda v: (popcount(bits[v] & rest), -v))
        expand(chosen | (1 << pivot), size + 1, rest & ~(bits[pivot] | (1 << pivot)))
        expand(chosen, size, rest & ~(1 << pivot))

    expand(0, 0, candidates)
    return best[0]


def _loopless_vertices(g: Graph) -> int:
    mask = 0
    for v in np.nonzero(~g.loops)[0]:
        mask |= 1 << int(v)
    return mask


def exact_alpha(g: Graph, cap: int = DEFAULT_ALPHA_BUDGET) -> OracleResult:
    """Independence number; vertices carrying a loop are never independent.

    Args:
        g: Graph, n <= 64 recommended
        cap: Search-node budget (0 for unlimited)

    Returns:
        OracleResult with value alpha and the independent set, or UNKNOWN
    """
    budget = SearchBudget(cap)
    try:
        chosen = _max_independent(_loopless_vertices(g), g.neighbor_bits, budget)
    except BudgetExhausted:
        logger.warning(f"exact_alpha({g.label}) ran out of budget after {budget.nodes} nodes")
        return budget.result("alpha", OracleStatus.UNKNOWN)
    witness = bits_to_list(chosen)
    if not is_independent(g, witness):
        raise OracleError(f"exact_alpha produced a dependent set on {g.label}")
    logger.debug(f"alpha({g.label}) = {len(witness)} in {budget.nodes} nodes")
    return budget.result("alpha", OracleStatus.FOUND, value=len(witness), witness=witness)


def _complement_bits(g: Graph) -> List[int]:
    full = (1 << g.n) - 1
    return [full & ~bits & ~(1 << v) for v, bits in enumerate(g.neighbor_bits)]


def exact_clique(g: Graph, cap: int = DEFAULT_ALPHA_BUDGET) -> OracleResult:
    """Clique number, as the independence number of the complement."""
    budget = SearchBudget(cap)
    try:
        chosen = _max_independent((1 << g.n) - 1, _complement_bits(g), budget)
    except BudgetExhausted:
        return budget.result("clique", OracleStatus.UNKNOWN)
    witness = bits_to_list(chosen)
    if not is_clique(g, witness):
        raise OracleError(f"exact_clique produced a non-clique on {g.label}")
    return budget.result("clique", OracleStatus.FOUND, value=len(witness), witness=witness)


def min_vertex_cover(g: Graph, cap: int = DEFAULT_ALPHA_BUDGET) -> OracleResult:
    """Minimum vertex cover, the complement of a maximum independent set."""
    alpha = exact_alpha(g, cap)
    if not alpha.is_known:
        return OracleResult("vertex_cover", OracleStatus.UNKNOWN, nodes=alpha.nodes)
    independent = set(alpha.witness)
    cover = [v for v in range(g.n) if v not in independent]
    return OracleResult(
        "vertex_cover",
        OracleStatus.FOUND,
        value=len(cover),
        witness=cover,
        nodes=alpha.nodes,
        elapsed=alpha.elapsed,
    )


# Chromatic number


def _dsatur_greedy(n: int, bits: List[int]) -> List[int]:
    """DSATUR coloring; ties by degree, then least index."""
    colors = [-1] * n
    saturation = [0] * n
    degrees = [popcount(b) for b in bits]
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (popcount(saturation[u]), degrees[u], -u),
        )
        c = 0
        while saturation[v] >> c & 1:
            c += 1
        colors[v] = c
        for u in bits_to_list(bits[v]):
            saturation[u] |= 1 << c
    return colors


def _greedy_clique(n: int, bits: List[int]) -> List[int]:
    best: List[int] = []
    for start in range(n):
        clique, pool = [start], bits[start]
        while pool:
            u = max(bits_to_list(pool), key=lambda w: (popcount(bits[w] & pool), -w))
            clique.append(u)
            pool &= bits[u]
        if len(clique) > len(best):
            best = clique
    return best


def _k_colorable(n: int, bits: List[int], k: int, budget: SearchBudget) -> Optional[List[int]]:
    colors = [-1] * n
    saturation = [0] * n
    degrees = [popcount(b) for b in bits]

    def search(colored: int, used: int) -> bool:
        budget.tick()
        if colored == n:
            return True
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (popcount(saturation[u]), degrees[u], -u),
        )
        for c in range(min(k, used + 1)):
            if saturation[v] >> c & 1:
                continue
            colors[v] = c
            touched = [u for u in bits_to_list(bits[v]) if not saturation[u] >> c & 1]
            for u in touched:
                saturation[u] |= 1 << c
            if search(colored + 1, max(used, c + 1)):
                return True
            for u in touched:
                saturation[u] &= ~(1 << c)
            colors[v] = -1
        return False

    return list(colors) if search(0, 0) else None


def exact_chi(g: Graph, cap: int = DEFAULT_CHI_BUDGET) -> OracleResult:
    """Chromatic number by iterative deepening over DSATUR backtracking.

    Raises:
        OracleError: The graph has a loop (no proper coloring exists)
    """
    if g.has_loops:
        raise OracleError(f"{g.label} has loops and admits no proper coloring")
    budget = SearchBudget(cap)
    if g.n == 0:
        return budget.result("chi", OracleStatus.FOUND, value=0, witness=[])
    bits = g.neighbor_bits
    upper_coloring = _dsatur_greedy(g.n, bits)
    upper = max(upper_coloring) + 1
    lower = len(_greedy_clique(g.n, bits))
    best = upper_coloring
    try:
        for k in range(lower, upper):
            coloring = _k_colorable(g.n, bits, k, budget)
            if coloring is not None:
                best = coloring
                break
            lower = k + 1
    except BudgetExhausted:
        logger.warning(f"exact_chi({g.label}) ran out of budget; chi in [{lower}, {upper}]")
        return budget.result(
            "chi", OracleStatus.UNKNOWN, witness=upper_coloring, bounds=(lower, upper)
        )
    if not is_proper_coloring(g, best):
        raise OracleError(f"exact_chi produced an improper coloring on {g.label}")
    chi = max(best) + 1
    return budget.result("chi", OracleStatus.FOUND, value=chi, witness=best, bounds=(chi, chi))


# Greedy procedures


def independent_set_lower_bound(n: int, d: float, lam: float, size: int) -> float:
    """n/(2(d - lambda)) * ln(size (d - lambda) / (n (lambda + 1)) + 1)."""
    if lam >= d:
        return 0.0
    return n / (2 * (d - lam)) * math.log(size * (d - lam) / (n * (lam + 1)) + 1)


def _greedy_min_degree(g: Graph, alive: np.ndarray) -> List[int]:
    """Repeatedly take a minimum-degree vertex of G[alive], least index first."""
    adjacency = g.without_loops().sparse_adjacency()
    alive = alive.copy()
    degree = np.asarray(adjacency @ alive.astype(np.int64)).ravel()
    sentinel = g.n + 1
    chosen = []
    while alive.any():
        v = int(np.where(alive, degree, sentinel).argmin())
        chosen.append(v)
        removed = [v] + [int(u) for u in g.neighbors(v) if alive[u] and u != v]
        for x in removed:
            alive[x] = False
        for x in removed:
            for u in g.neighbors(x):
                if u != x:
                    degree[u] -= 1
    return chosen


def greedy_independent(
    g: Graph,
    start: Optional[Sequence[int]] = None,
    d: Optional[float] = None,
    lam: Optional[float] = None,
) -> OracleResult:
    """Independent set in G[start] by repeated minimum-degree selection.

    With d and lam given, the result notes carry the guaranteed size
    n/(2(d - lambda)) ln(|U|(d - lambda)/(n(lambda + 1)) + 1).
    """
    alive = np.zeros(g.n, dtype=bool)
    alive[list(range(g.n)) if start is None else [int(v) for v in start]] = True
    alive &= ~g.loops
    chosen = sorted(_greedy_min_degree(g, alive))
    if not is_independent(g, chosen):
        raise OracleError(f"greedy_independent produced a dependent set on {g.label}")
    result = OracleResult("greedy_independent", OracleStatus.FOUND, len(chosen), chosen)
    if d is not None and lam is not None:
        size = g.n if start is None else len(set(start))
        result.notes["bound"] = independent_set_lower_bound(g.n, d, lam, size)
    return result


def coloring_upper_bound(d: float, lam: float) -> float:
    """6(d - lambda) / ln((d - lambda)/(lambda + 1) + 1)."""
    return 6 * (d - lam) / math.log((d - lam) / (lam + 1) + 1)


def _smallest_last_coloring(g: Graph, vertices: List[int], first_color: int) -> Tuple[dict, int]:
    """Sequential coloring of G[vertices] in reverse min-degree removal order."""
    if not vertices:
        return {}, 0
    alive = np.zeros(g.n, dtype=bool)
    alive[vertices] = True
    adjacency = g.without_loops().sparse_adjacency()
    degree = np.asarray(adjacency @ alive.astype(np.int64)).ravel()
    sentinel = g.n + 1
    order = []
    while alive.any():
        v = int(np.where(alive, degree, sentinel).argmin())
        order.append(v)
        alive[v] = False
        for u in g.neighbors(v):
            if u != v:
                degree[u] -= 1
    colors: dict = {}
    for v in reversed(order):
        taken = {colors[u] for u in g.neighbors(v) if int(u) in colors}
        c = first_color
        while c in taken:
            c += 1
        colors[v] = c
    used = len(set(colors.values()))
    return colors, used


def greedy_coloring(g: Graph, d: float, lam: float) -> OracleResult:
    """Two-phase coloring: extract greedy independent sets while
    |U| >= n / ln((d - lambda)/(lambda + 1) + 1), then color the rest by
    smallest-last sequential coloring.

    Raises:
        OracleError: lambda >= d on a graph with edges, or loops present
    """
    if g.has_loops:
        raise OracleError(f"{g.label} has loops and admits no proper coloring")
    if g.m == 0:
        coloring = [0] * g.n
        return OracleResult(
            "greedy_coloring", OracleStatus.FOUND, 1 if g.n else 0, coloring,
            notes={"phase1_colors": 0, "phase2_colors": 1 if g.n else 0},
        )
    if lam >= d:
        raise OracleError(f"greedy_coloring needs lambda < d, got lambda = {lam}, d = {d}")

    log_term = math.log((d - lam) / (lam + 1) + 1)
    threshold = g.n / log_term
    colors = [-1] * g.n
    remaining = list(range(g.n))
    phase1 = 0
    while remaining and len(remaining) >= threshold:
        extracted = greedy_independent(g, remaining).witness
        for v in extracted:
            colors[v] = phase1
        phase1 += 1
        taken = set(extracted)
        remaining = [v for v in remaining if v not in taken]

    tail, phase2 = _smallest_last_coloring(g, remaining, phase1)
    for v, c in tail.items():
        colors[v] = c
    if not is_proper_coloring(g, colors):
        raise OracleError(f"greedy_coloring produced an improper coloring on {g.label}")
    total = len(set(colors))
    bound = coloring_upper_bound(d, lam)
    logger.debug(f"greedy_coloring({g.label}): {phase1} + {phase2} colors, bound {bound:.4g}")
    return OracleResult(
        "greedy_coloring",
        OracleStatus.FOUND,
        total,
        colors,
        notes={
            "phase1_colors": phase1,
            "phase2_colors": phase2,
            "phase1_threshold": threshold,
            "bound": bound,
        },
    )
