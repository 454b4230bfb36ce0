"""
Spectrum
Dense and extremal symmetric eigensolvers for graph adjacency matrices.

The dense path is LAPACK ?syev (Householder tridiagonalization followed by the
implicitly shifted QL/QR iteration); the sparse path is ARPACK's implicitly
restarted Lanczos with a deflated top eigenvector.
"""

import math
import time
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from ..core.exceptions import ConvergenceError, DenseCapExceeded
from ..graphs.core import Graph
from ..utils.logging import get_logger, log_performance_metric
from ..utils.seeding import STREAM_SAMPLING, make_rng

logger = get_logger(__name__)

DEFAULT_DENSE_CAP = 4096
MULTIPLICITY_TOLERANCE = 1e-6
SMALL_DENSE_N = 32


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending, with per-eigenpair residuals."""

    eigenvalues: np.ndarray
    residuals: np.ndarray
    tolerance: float

    @property
    def n(self) -> int:
        return int(self.eigenvalues.size)

    @property
    def lambda_1(self) -> float:
        return float(self.eigenvalues[0]) if self.n else 0.0

    @property
    def lambda_2(self) -> float:
        """Second largest eigenvalue by value."""
        return float(self.eigenvalues[1]) if self.n > 1 else 0.0

    @property
    def lambda_abs(self) -> float:
        """lambda = max over i >= 2 of |lambda_i|."""
        return float(np.abs(self.eigenvalues[1:]).max()) if self.n > 1 else 0.0

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[-1]) if self.n else 0.0

    @property
    def spectral_gap(self) -> float:
        return self.lambda_1 - self.lambda_abs

    @property
    def max_residual(self) -> float:
        return float(self.residuals.max()) if self.n else 0.0

    def is_ramanujan(self, d: int) -> bool:
        return d >= 1 and self.lambda_abs <= 2 * math.sqrt(max(d - 1, 0)) + self.tolerance

    def multiplicities(self, rel_tol: float = MULTIPLICITY_TOLERANCE) -> List[Tuple[float, int]]:
        """Group eigenvalues that agree within rel_tol * max(1, |value|)."""
        groups: List[List[float]] = []
        for value in self.eigenvalues:
            if groups and abs(groups[-1][0] - value) <= rel_tol * max(1.0, abs(value)):
                groups[-1].append(float(value))
            else:
                groups.append([float(value)])
        return [(float(np.mean(g)), len(g)) for g in groups]

    def power_sum(self, t: int) -> float:
        return float(np.sum(self.eigenvalues**t))

    def to_dict(self) -> Dict[str, object]:
        return {
            "eigenvalues": self.eigenvalues.tolist(),
            "lambda_1": self.lambda_1,
            "lambda_2": self.lambda_2,
            "lambda": self.lambda_abs,
            "lambda_min": self.lambda_min,
            "spectral_gap": self.spectral_gap,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
        }


class Extremal(NamedTuple):
    """lambda_1 and lambda = max over i >= 2 of |lambda_i|."""

    lambda_1: float
    lambda_abs: float


def full_spectrum(g: Graph, dense_cap: int = DEFAULT_DENSE_CAP) -> Spectrum:
    """All eigenvalues of the adjacency matrix.

    Args:
        g: Graph with n at most the dense cap
        dense_cap: Largest n solved densely

    Returns:
        Spectrum with every residual at most 1e-8 * n * max|A|
    """
    if g.n > dense_cap:
        raise DenseCapExceeded(g.n, dense_cap)
    if g.n == 0:
        empty = np.zeros(0)
        return Spectrum(empty, empty, 0.0)

    matrix = g.adjacency_matrix()
    values, vectors = scipy.linalg.eigh(matrix, driver="ev", check_finite=False)
    residuals = np.linalg.norm(matrix @ vectors - vectors * values, axis=0)
    scale = max(1.0, float(np.abs(matrix).max()))
    tolerance = 1e-8 * g.n * scale
    worst = float(residuals.max())
    if worst > tolerance:
        raise ConvergenceError(
            f"Dense eigensolver residual {worst:.3e} exceeds {tolerance:.3e} on {g.label}"
        )
    order = np.argsort(values, kind="stable")[::-1]
    logger.debug(
        f"full_spectrum({g.label}): lambda_1={values[order[0]]:.12g}, residual={worst:.2e}"
    )
    return Spectrum(values[order].copy(), residuals[order].copy(), tolerance)


def _start_vector(n: int) -> np.ndarray:
    # fixed seeded start keeps ARPACK runs reproducible
    return make_rng(0, STREAM_SAMPLING, n).standard_normal(n)


def extremal_lambda(g: Graph, tol: float = 1e-10, maxiter: int = 20_000) -> Extremal:
    """lambda_1 and lambda for graphs too large for the dense solver.

    lambda_1 comes from Lanczos on A; lambda from Lanczos on the operator
    A - lambda_1 x x^T, which removes the top eigenpair.
    """
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    if g.n <= SMALL_DENSE_N:
        spectrum = full_spectrum(g)
        return Extremal(spectrum.lambda_1, spectrum.lambda_abs)

    adjacency = g.sparse_adjacency(dtype=np.float64)
    v0 = _start_vector(g.n)
    try:
        top_values, top_vectors = eigsh(adjacency, k=1, which="LA", tol=tol, maxiter=maxiter, v0=v0)
    except ArpackNoConvergence as e:
        raise ConvergenceError(f"Top eigenvalue did not converge on {g.label}: {e}") from e
    lambda_1 = float(top_values[0])
    x = top_vectors[:, 0]

    def deflated(v: np.ndarray) -> np.ndarray:
        v = np.asarray(v).ravel()
        return adjacency @ v - lambda_1 * x * (x @ v)

    operator = LinearOperator((g.n, g.n), matvec=deflated, dtype=np.float64)
    try:
        rest_values, _ = eigsh(operator, k=1, which="LM", tol=tol, maxiter=maxiter, v0=v0)
    except ArpackNoConvergence as e:
        raise ConvergenceError(f"Second eigenvalue did not converge on {g.label}: {e}") from e
    lambda_abs = float(abs(rest_values[0]))
    logger.debug(f"extremal_lambda({g.label}): lambda_1={lambda_1:.12g}, lambda={lambda_abs:.12g}")
    return Extremal(lambda_1, lambda_abs)


def smallest_eigenvalue(g: Graph, tol: float = 1e-10, maxiter: int = 20_000) -> float:
    """lambda_n, densely under the small-n threshold, else by Lanczos."""
    if g.n <= SMALL_DENSE_N:
        return full_spectrum(g).lambda_min
    try:
        values, _ = eigsh(
            g.sparse_adjacency(dtype=np.float64),
            k=1,
            which="SA",
            tol=tol,
            maxiter=maxiter,
            v0=_start_vector(g.n),
        )
    except ArpackNoConvergence as e:
        raise ConvergenceError(f"Smallest eigenvalue did not converge on {g.label}: {e}") from e
    return float(values[0])


@dataclass(frozen=True)
class SpectralSummary:
    """lambda_1, lambda and lambda_n from whichever solver fits the graph."""

    lambda_1: float
    lambda_abs: float
    lambda_min: float
    method: str  # "dense" | "lanczos"
    spectrum: Optional[Spectrum] = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "lambda_1": self.lambda_1,
            "lambda": self.lambda_abs,
            "lambda_min": self.lambda_min,
            "method": self.method,
        }


def spectral_summary(
    g: Graph, dense_cap: int = DEFAULT_DENSE_CAP, tol: float = 1e-10
) -> SpectralSummary:
    """Dense spectrum below the cap, extremal Lanczos above it."""
    start = time.perf_counter()
    if g.n <= dense_cap:
        spectrum = full_spectrum(g, dense_cap)
        summary = SpectralSummary(
            spectrum.lambda_1, spectrum.lambda_abs, spectrum.lambda_min, "dense", spectrum
        )
    else:
        extremal = extremal_lambda(g, tol)
        summary = SpectralSummary(
            extremal.lambda_1, extremal.lambda_abs, smallest_eigenvalue(g, tol), "lanczos"
        )
    log_performance_metric(logger, f"spectral_summary({g.label})", time.perf_counter() - start)
    return summary
