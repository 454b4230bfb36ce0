"""
Walks and Pseudo-randomness Scores
Exact closed-walk counts and finite-n deviation scores for the classical
quasi-random properties at a target density p.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
from scipy import sparse

from ..core.exceptions import GraphError
from ..fields.finite_field import is_prime
from ..graphs.core import Graph, subset_indicator_matrix
from ..graphs.statistics import DEFAULT_TABLE_CAP, codegree_stats
from ..utils.logging import get_logger
from ..utils.seeding import STREAM_SAMPLING, make_rng
from .spectrum import DEFAULT_DENSE_CAP, spectral_summary

logger = get_logger(__name__)

EXACT_POWER_MAX_N = 2048
WALK_BLOCK = 256
INT64_SAFE = 1 << 62
MODULUS_CEILING = 1 << 31
DISC_EXHAUSTIVE_MAX_N = 14
DEFAULT_SAMPLE_BUDGET = 20_000
SUBSET_CHUNK = 1024

# Sub-streams of STREAM_SAMPLING
_DISC_PAIRS = 1
_HALF_SETS = 2


@lru_cache(maxsize=None)
def _modulus(index: int) -> int:
    """The index-th prime below 2^31, counting down."""
    candidate = MODULUS_CEILING - 1 if index == 0 else _modulus(index - 1) - 2
    while not is_prime(candidate):
        candidate -= 2
    return candidate


def _moduli_for(bound: int) -> List[Optional[int]]:
    """Moduli whose product exceeds bound; [None] when int64 is already exact."""
    if bound < INT64_SAFE:
        return [None]
    moduli: List[Optional[int]] = []
    product = 1
    while product <= bound:
        modulus = _modulus(len(moduli))
        moduli.append(modulus)
        product *= modulus
    return moduli


def _trace_power(adjacency: sparse.csr_matrix, t: int, modulus: Optional[int]) -> int:
    """Tr(A^t), reduced mod a prime below 2^31 unless modulus is None.

    Columns of A^t are formed a block at a time; the whole power at once for
    n up to EXACT_POWER_MAX_N.
    """
    n = adjacency.shape[0]
    block = n if n <= EXACT_POWER_MAX_N else WALK_BLOCK
    total = 0
    for start in range(0, n, block):
        width = min(block, n - start)
        rows = np.arange(start, start + width)
        cols = np.arange(width)
        walks = np.zeros((n, width), dtype=np.int64)
        walks[rows, cols] = 1
        for _ in range(t):
            walks = adjacency @ walks
            if modulus is not None:
                walks %= modulus
        total += int(walks[rows, cols].sum())
    return total if modulus is None else total % modulus


def circuit_count(g: Graph, t: int) -> int:
    """Number of closed walks of length t, Tr(A^t), as an exact integer.

    Counts that could overflow int64 are recovered by the Chinese remainder
    theorem from residues modulo 31-bit primes.
    """
    if t < 1:
        raise ValueError(f"Walk length must be at least 1, got {t}")
    if g.n == 0:
        return 0
    adjacency = g.sparse_adjacency(dtype=np.int64)
    bound = g.n * int(g.degrees.max()) ** t
    moduli = _moduli_for(bound)
    if moduli == [None]:
        return _trace_power(adjacency, t, None)

    value, product = 0, 1
    for modulus in moduli:
        residue = _trace_power(adjacency, t, modulus)
        step = ((residue - value) * pow(product, -1, modulus)) % modulus
        value += product * step
        product *= modulus
    logger.debug(f"circuit_count({g.label}, {t}) recovered from {len(moduli)} residues")
    return value


def walk_matrix(g: Graph, length: int) -> np.ndarray:
    """Dense A^length: entry (x, y) counts walks of that length from x to y."""
    if length < 0:
        raise ValueError(f"Walk length must be nonnegative, got {length}")
    adjacency = g.sparse_adjacency(dtype=np.float64)
    walks = np.eye(g.n)
    for _ in range(length):
        walks = adjacency @ walks
    return walks


@dataclass(frozen=True)
class PropertyScores:
    """Finite-n deviations from the quasi-random properties at density p.

    circuit maps s to Tr(A^s)/(np)^s. EIG is split into |lambda_1/(np) - 1|
    and lambda/(np). disc is max |e(X,Y) - p|X||Y|| / (p n^2) over the
    subsets examined. u_degree and u_walk are the smallest constants c
    witnessing U(t). p5 is max |e(U) - p n^2/8| / n^2 over half-size U.
    p6_sum and p7_sum run over unordered pairs; p6 and p7 divide them by n^3.
    """

    p: float
    t: int
    circuit: Dict[int, float]
    eig_top: float
    eig_rest: float
    disc: float
    disc_method: str  # "exhaustive" | "sampled"
    disc_pairs: int
    u_degree: float
    u_walk: Optional[float]
    p5: float
    p5_method: str
    p6_sum: Optional[float]
    p7_sum: Optional[float]
    n: int

    @property
    def p6(self) -> Optional[float]:
        return None if self.p6_sum is None else self.p6_sum / self.n**3

    @property
    def p7(self) -> Optional[float]:
        return None if self.p7_sum is None else self.p7_sum / self.n**3

    def circuit_deviation(self, s: int) -> float:
        return abs(self.circuit[s] - 1.0)

    def chain(self) -> List[Tuple[str, float]]:
        """Scores in the order CIRCUIT(2t) => EIG => DISC."""
        even = max(s for s in self.circuit if s % 2 == 0)
        return [
            (f"CIRCUIT({even})", self.circuit_deviation(even)),
            ("EIG", max(self.eig_top, self.eig_rest)),
            ("DISC", self.disc),
        ]

    def to_dict(self) -> Dict[str, object]:
        return {
            "p": self.p,
            "t": self.t,
            "chain": [[name, value] for name, value in self.chain()],
            "circuit": {str(s): ratio for s, ratio in sorted(self.circuit.items())},
            "eig": {"lambda_1": self.eig_top, "lambda": self.eig_rest},
            "disc": {"score": self.disc, "method": self.disc_method, "pairs": self.disc_pairs},
            "u": {"degree": self.u_degree, "walk": self.u_walk},
            "p5": {"score": self.p5, "method": self.p5_method},
            "p6": {"sum": self.p6_sum, "score": self.p6},
            "p7": {"sum": self.p7_sum, "score": self.p7},
        }


def _row_sums_against(adjacency: sparse.csr_matrix, rows: np.ndarray) -> np.ndarray:
    """rows @ A for a batch of 0/1 indicator rows (A symmetric)."""
    return np.asarray(adjacency @ rows.T).T


def _disc_exhaustive(adjacency: sparse.csr_matrix, n: int, p: float) -> Tuple[float, int]:
    """max over all X, Y of |e(X, Y) - p|X||Y||.

    For fixed X the best Y takes every y with deg_X(y) - p|X| of one sign.
    """
    best = 0.0
    for start in range(0, 1 << n, SUBSET_CHUNK):
        subsets = subset_indicator_matrix(n, start, min(start + SUBSET_CHUNK, 1 << n))
        gaps = _row_sums_against(adjacency, subsets) - p * subsets.sum(axis=1)[:, None]
        above = np.clip(gaps, 0, None).sum(axis=1)
        below = np.clip(-gaps, 0, None).sum(axis=1)
        best = max(best, float(np.maximum(above, below).max()))
    return best, 1 << n


def _disc_sampled(
    adjacency: sparse.csr_matrix, n: int, p: float, pairs: int, seed: int
) -> Tuple[float, int]:
    """max |e(X, Y) - p|X||Y|| over seeded pairs, each vertex in X (Y) w.p. 1/2."""
    rng = make_rng(seed, STREAM_SAMPLING, _DISC_PAIRS)
    best = 0.0
    for start in range(0, pairs, SUBSET_CHUNK):
        count = min(SUBSET_CHUNK, pairs - start)
        xs = (rng.random((count, n)) < 0.5).astype(np.float64)
        ys = (rng.random((count, n)) < 0.5).astype(np.float64)
        crossing = (_row_sums_against(adjacency, xs) * ys).sum(axis=1)
        gaps = np.abs(crossing - p * xs.sum(axis=1) * ys.sum(axis=1))
        best = max(best, float(gaps.max()))
    return best, pairs


def _half_sets(n: int, budget: int, seed: int, exhaustive: bool) -> Iterator[np.ndarray]:
    """Chunks of indicator rows for subsets of size floor(n/2)."""
    half = n // 2
    if exhaustive:
        chunk = []
        for subset in combinations(range(n), half):
            row = np.zeros(n)
            row[list(subset)] = 1
            chunk.append(row)
            if len(chunk) == SUBSET_CHUNK:
                yield np.asarray(chunk)
                chunk = []
        if chunk:
            yield np.asarray(chunk)
        return
    rng = make_rng(seed, STREAM_SAMPLING, _HALF_SETS)
    for start in range(0, budget, SUBSET_CHUNK):
        count = min(SUBSET_CHUNK, budget - start)
        order = np.argsort(rng.random((count, n)), axis=1)[:, :half]
        rows = np.zeros((count, n))
        np.put_along_axis(rows, order, 1.0, axis=1)
        yield rows


def _half_set_score(
    g: Graph, adjacency: sparse.csr_matrix, p: float, budget: int, seed: int, exhaustive: bool
) -> float:
    """max |e(U) - p n^2/8| / n^2 over the half-size subsets examined."""
    target = p * g.n * g.n / 8
    diagonal = np.zeros(g.n)
    diagonal[g.loops] = 1
    best = 0.0
    for rows in _half_sets(g.n, budget, seed, exhaustive):
        quadratic = (_row_sums_against(adjacency, rows) * rows).sum(axis=1)
        internal = (quadratic + rows @ diagonal) / 2
        best = max(best, float(np.abs(internal - target).max()))
    return best / (g.n * g.n)


def property_scores(
    g: Graph,
    p: float,
    t: int = 4,
    sample_budget: int = DEFAULT_SAMPLE_BUDGET,
    seed: int = 0,
    disc_exhaustive_max_n: int = DISC_EXHAUSTIVE_MAX_N,
    dense_cap: int = DEFAULT_DENSE_CAP,
    table_cap: int = DEFAULT_TABLE_CAP,
) -> PropertyScores:
    """Deviation scores of g from CIRCUIT, EIG, DISC, U(t), P5, P6 and P7 at density p.

    Args:
        g: Graph with at least one vertex
        p: Target density in (0, 1)
        t: Longest closed-walk length scored (CIRCUIT(4) is always included)
        sample_budget: DISC draws 2 * sample_budget (X, Y) pairs beyond the
            exhaustive range; P5 draws sample_budget half-size subsets
        seed: Master seed for the sampled scores

    Returns:
        PropertyScores; U(t) walks and P6/P7 are None above the dense caps
    """
    if not 0 < p < 1:
        raise ValueError(f"Density must lie in (0, 1), got {p}")
    if t < 2:
        raise ValueError(f"Walk length t must be at least 2, got {t}")
    if g.n == 0:
        raise GraphError("property_scores needs at least one vertex")

    n = g.n
    scale = n * p
    lengths = sorted(set(range(2, t + 1)) | {4})
    circuit = {s: circuit_count(g, s) / scale**s for s in lengths}

    summary = spectral_summary(g, dense_cap)
    eig_top = abs(summary.lambda_1 / scale - 1)
    eig_rest = summary.lambda_abs / scale

    adjacency = g.sparse_adjacency(dtype=np.float64)
    if n <= disc_exhaustive_max_n:
        deviation, pairs = _disc_exhaustive(adjacency, n, p)
        disc_method = "exhaustive"
    else:
        deviation, pairs = _disc_sampled(adjacency, n, p, 2 * sample_budget, seed)
        disc_method = "sampled"
    disc = deviation / (p * n * n)

    u_degree = float(g.degrees.max()) / scale
    u_walk = None
    if n <= dense_cap:
        walks = walk_matrix(g, t - 1)
        u_walk = float(walks.max()) / (n ** (t - 2) * p ** (t - 1))

    half_exhaustive = n <= disc_exhaustive_max_n
    p5 = _half_set_score(g, adjacency, p, sample_budget, seed, half_exhaustive)

    p6_sum = p7_sum = None
    if n <= table_cap and n >= 2:
        stats = codegree_stats(g.without_loops(), p, table_cap)
        p6_sum, p7_sum = stats.similarity_deviation, stats.codegree_deviation

    scores = PropertyScores(
        p=p,
        t=t,
        circuit=circuit,
        eig_top=eig_top,
        eig_rest=eig_rest,
        disc=disc,
        disc_method=disc_method,
        disc_pairs=pairs,
        u_degree=u_degree,
        u_walk=u_walk,
        p5=p5,
        p5_method="exhaustive" if half_exhaustive else "sampled",
        p6_sum=p6_sum,
        p7_sum=p7_sum,
        n=n,
    )
    chain = ", ".join(f"{name}={value:.4g}" for name, value in scores.chain())
    logger.info(f"Property scores for {g.label} at p={p}: {chain}")
    return scores


def trace_identity_gap(g: Graph, t: int) -> float:
    """|Tr(A^t) - sum lambda_i^t| relative to max(1, lambda_1^t)."""
    summary = spectral_summary(g)
    if summary.spectrum is None:
        raise GraphError(f"trace_identity_gap needs the full spectrum of {g.label}")
    exact = circuit_count(g, t)
    return abs(exact - summary.spectrum.power_sum(t)) / max(1.0, abs(summary.lambda_1) ** t)


def regular_lambda_lower_bound(n: int, d: int) -> float:
    """sqrt(d (n - d) / (n - 1)), the least lambda a d-regular graph can have."""
    if n < 2:
        return 0.0
    return math.sqrt(d * (n - d) / (n - 1))
