"""
Degree and Codegree Statistics
Exact degree irregularity and pairwise codegree tables.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional

import numpy as np

from ..core.exceptions import GraphError
from ..utils.logging import get_logger
from .core import Graph

logger = get_logger(__name__)

DEFAULT_TABLE_CAP = 4096


@dataclass(frozen=True)
class DegreeStats:
    """Degree summary; mean and irregularity are exact rationals."""

    min: int
    max: int
    mean: Fraction
    irregularity: Fraction  # K = sum (d(v) - d)^2

    @property
    def is_regular(self) -> bool:
        return self.irregularity == 0

    def to_dict(self) -> Dict[str, float]:
        return {
            "min": self.min,
            "max": self.max,
            "mean": float(self.mean),
            "K": float(self.irregularity),
        }


@dataclass(frozen=True)
class CodegreeStats:
    """Pairwise codegree and similarity tables with their aggregate deviations.

    Sums run over unordered pairs x != y; the normalized values divide by n^3.
    """

    p: float
    codegree: np.ndarray
    similarity: np.ndarray
    codegree_deviation: float  # sum |codeg - p^2 n|
    similarity_deviation: float  # sum |s - (p^2 + (1-p)^2) n|
    max_codegree: int
    min_codegree: int

    @property
    def n(self) -> int:
        return int(self.codegree.shape[0])

    @property
    def codegree_score(self) -> float:
        return self.codegree_deviation / self.n**3 if self.n else 0.0

    @property
    def similarity_score(self) -> float:
        return self.similarity_deviation / self.n**3 if self.n else 0.0

    def edge_codegrees(self, g: Graph) -> np.ndarray:
        """Distinct codegree values over adjacent pairs."""
        pairs = g.edge_array()
        pairs = pairs[pairs[:, 0] != pairs[:, 1]]
        return np.unique(self.codegree[pairs[:, 0], pairs[:, 1]])

    def non_edge_codegrees(self, g: Graph) -> np.ndarray:
        """Distinct codegree values over non-adjacent distinct pairs."""
        mask = g.adjacency_matrix(dtype=bool)
        np.fill_diagonal(mask, True)
        return np.unique(self.codegree[~mask])


def degree_stats(g: Graph) -> DegreeStats:
    """Exact degree statistics, mean d being the average degree."""
    if g.n == 0:
        return DegreeStats(0, 0, Fraction(0), Fraction(0))
    degrees = [int(x) for x in g.degrees]
    total = sum(degrees)
    mean = Fraction(total, g.n)
    irregularity = Fraction(sum(x * x for x in degrees)) - Fraction(total * total, g.n)
    return DegreeStats(min(degrees), max(degrees), mean, irregularity)


def codegree(g: Graph, x: int, y: int) -> int:
    """Number of common neighbors of x and y, computed on demand."""
    return int(np.intersect1d(g.neighbors(x), g.neighbors(y), assume_unique=True).size)


def codegree_matrix(g: Graph, cap: int = DEFAULT_TABLE_CAP) -> np.ndarray:
    """Dense A^2 (codegrees off the diagonal, degrees on it)."""
    if g.n > cap:
        raise GraphError(
            f"n = {g.n} exceeds the codegree table cap {cap}; query pairs with codegree()"
        )
    adj = g.sparse_adjacency()
    return np.asarray((adj @ adj).toarray(), dtype=np.int64)


def codegree_stats(g: Graph, p: float, cap: int = DEFAULT_TABLE_CAP) -> CodegreeStats:
    """Full pairwise codegree and similarity tables for a loopless graph.

    Args:
        g: Loopless graph with n at most the table cap
        p: Target density
        cap: Largest n for which the dense table is built

    Returns:
        CodegreeStats with s(x, y) = n - d(x) - d(y) + 2 codeg(x, y)
    """
    if g.has_loops:
        raise GraphError("codegree_stats requires a loopless graph")
    table = codegree_matrix(g, cap)
    n = g.n
    deg = g.degrees.astype(np.int64)
    similarity = n - deg[:, None] - deg[None, :] + 2 * table

    upper = np.triu_indices(n, k=1)
    codeg_pairs = table[upper]
    sim_pairs = similarity[upper]
    codeg_dev = float(np.abs(codeg_pairs - p * p * n).sum())
    sim_dev = float(np.abs(sim_pairs - (p * p + (1 - p) ** 2) * n).sum())
    logger.debug(
        f"Codegree table for {g.label}: P7 sum={codeg_dev:.6g}, P6 sum={sim_dev:.6g}"
    )
    return CodegreeStats(
        p=p,
        codegree=table,
        similarity=similarity,
        codegree_deviation=codeg_dev,
        similarity_deviation=sim_dev,
        max_codegree=int(codeg_pairs.max()) if codeg_pairs.size else 0,
        min_codegree=int(codeg_pairs.min()) if codeg_pairs.size else 0,
    )


def max_codegree(g: Graph, cap: int = DEFAULT_TABLE_CAP) -> Optional[int]:
    """Largest codegree over distinct pairs, or None when n < 2."""
    if g.n < 2:
        return None
    table = codegree_matrix(g, cap)
    np.fill_diagonal(table, -1)
    return int(table.max())
