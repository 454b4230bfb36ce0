"""
Strongly Regular Graphs
Closed-form spectra of srg(n, d, eta, mu) and detection from codegrees.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional

import numpy as np
from scipy import sparse

from ..constructions.descriptor import SrgParams
from ..core.exceptions import SpectralError
from ..graphs.core import Graph
from ..utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class SrgSpectrum:
    """Eigenvalues d (simple when connected), lambda_2 > lambda_3 and their multiplicities."""

    params: SrgParams
    lambda_2: float
    lambda_3: float
    s_2: int
    s_3: int
    conference: bool = False

    def eigenvalues(self) -> np.ndarray:
        """All n eigenvalues, sorted descending."""
        return np.concatenate(
            [
                [float(self.params.d)],
                np.full(self.s_2, self.lambda_2),
                np.full(self.s_3, self.lambda_3),
            ]
        )

    def to_dict(self) -> Dict[str, object]:
        return {
            "params": list(self.params.as_tuple()),
            "lambda_2": self.lambda_2,
            "lambda_3": self.lambda_3,
            "s_2": self.s_2,
            "s_3": self.s_3,
            "conference": self.conference,
        }


def srg_spectrum(params: SrgParams) -> SrgSpectrum:
    """Restricted eigenvalues and multiplicities of a strongly regular graph.

    With D = (eta - mu)^2 + 4(d - mu):
        lambda_2,3 = (eta - mu +- sqrt(D)) / 2
        s_2,3 = ((n - 1) -+ (2d + (n - 1)(eta - mu)) / sqrt(D)) / 2

    Raises:
        SpectralError: Infeasible parameters, or multiplicities that are not
            nonnegative integers
    """
    if not params.is_feasible():
        raise SpectralError(f"srg{params.as_tuple()} is not feasible")
    n, d, eta, mu = params.as_tuple()
    discriminant = (eta - mu) ** 2 + 4 * (d - mu)
    if discriminant <= 0:
        raise SpectralError(f"srg{params.as_tuple()} has a degenerate spectrum")

    numerator = 2 * d + (n - 1) * (eta - mu)
    root = math.isqrt(discriminant)
    conference = False
    if root * root == discriminant:
        s_2 = Fraction((n - 1) * root - numerator, 2 * root)
        s_3 = Fraction((n - 1) * root + numerator, 2 * root)
    elif numerator == 0 and (n - 1) % 2 == 0:
        # irrational eigenvalues force equal multiplicities
        s_2 = s_3 = Fraction(n - 1, 2)
        conference = True
    else:
        raise SpectralError(
            f"srg{params.as_tuple()}: irrational eigenvalues need 2d + (n-1)(eta-mu) = 0"
        )
    if s_2.denominator != 1 or s_3.denominator != 1 or s_2 < 0 or s_3 < 0:
        raise SpectralError(
            f"srg{params.as_tuple()}: multiplicities {s_2}, {s_3} are not nonnegative integers"
        )

    sqrt_d = math.sqrt(discriminant)
    lambda_2 = (eta - mu + sqrt_d) / 2
    lambda_3 = (eta - mu - sqrt_d) / 2
    result = SrgSpectrum(params, lambda_2, lambda_3, int(s_2), int(s_3), conference)

    if 1 + result.s_2 + result.s_3 != n:
        raise SpectralError(f"srg{params.as_tuple()}: multiplicities do not sum to n")
    trace = d + result.s_2 * lambda_2 + result.s_3 * lambda_3
    if abs(trace) > 1e-9 * max(1, n * d):
        raise SpectralError(f"srg{params.as_tuple()}: trace {trace:.3e} is not zero")
    return result


def _constant_value(matrix: sparse.csr_matrix, slots: int) -> Optional[int]:
    """The common value of a matrix over `slots` positions, zeros implicit."""
    if matrix.nnz == 0:
        return 0
    if matrix.nnz != slots:
        return None
    values = np.unique(matrix.data)
    return int(values[0]) if values.size == 1 else None


def srg_detect(g: Graph) -> Optional[SrgParams]:
    """srg(n, d, eta, mu) when codegrees are constant on edges and on non-edges.

    Graphs with loops, irregular graphs, and the trivial edgeless and
    complete graphs return None.
    """
    d = g.regular_degree
    if g.has_loops or d is None or d == 0 or d == g.n - 1:
        return None

    adjacency = g.sparse_adjacency()
    square = (adjacency @ adjacency).tocsr()
    square = (square - sparse.diags(square.diagonal())).tocsr()
    square.eliminate_zeros()
    on_edges = square.multiply(adjacency).tocsr()
    on_edges.eliminate_zeros()
    off_edges = (square - on_edges).tocsr()
    off_edges.eliminate_zeros()

    arcs = int(g.indices.size)
    eta = _constant_value(on_edges, arcs)
    mu = _constant_value(off_edges, g.n * (g.n - 1) - arcs)
    if eta is None or mu is None:
        return None
    params = SrgParams(g.n, d, eta, mu)
    logger.debug(f"srg_detect({g.label}) -> {params.as_tuple()}")
    return params
