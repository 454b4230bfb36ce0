"""
Random Models
Seeded G(n, p) and configuration-model random regular graphs.
"""

import math

import numpy as np

from ..core.exceptions import ConstructionError
from ..graphs.core import Graph
from ..utils.logging import get_logger
from ..utils.seeding import STREAM_GNP, STREAM_REGULAR, make_rng
from .descriptor import ConstructionDescriptor, Relation, base_descriptor

logger = get_logger(__name__)

MAX_RESTARTS = 100_000


def gnp(n: int, p: float, seed: int = 0) -> Graph:
    """G(n, p): each pair independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ConstructionError(f"Edge probability must lie in [0, 1], got {p}")
    rng = make_rng(seed, STREAM_GNP)
    lo, hi = np.triu_indices(n, k=1)
    keep = rng.random(lo.size) < p
    pairs = np.stack([lo[keep], hi[keep]], axis=1)
    return Graph.from_pairs(n, pairs, name=f"gnp({n},{p},seed={seed})", check_duplicates=False)


def random_regular(n: int, d: int, seed: int = 0, max_restarts: int = MAX_RESTARTS) -> Graph:
    """Configuration model with a full restart on any loop or repeated edge.

    Args:
        n: Vertex count
        d: Degree, with d < n and n * d even
        seed: Master seed of the stub shuffles
        max_restarts: Attempts before giving up

    Returns:
        A simple d-regular graph, deterministic for fixed (n, d, seed)
    """
    if (n * d) % 2:
        raise ConstructionError(f"n * d must be even, got n = {n}, d = {d}")
    if not 0 <= d < n:
        raise ConstructionError(f"Degree must satisfy 0 <= d < n, got d = {d}, n = {n}")

    rng = make_rng(seed, STREAM_REGULAR)
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    for attempt in range(1, max_restarts + 1):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        if (lo == hi).any():
            continue
        keys = lo * n + hi
        if np.unique(keys).size != keys.size:
            continue
        logger.debug(f"random_regular({n},{d}) accepted on attempt {attempt}")
        return Graph.from_pairs(
            n, np.stack([lo, hi], axis=1), name=f"random_regular({n},{d},seed={seed})"
        )
    raise ConstructionError(
        f"random_regular({n},{d}) found no simple pairing in {max_restarts} restarts"
    )


def describe_gnp(n: int, p: float, seed: int, graph: Graph) -> ConstructionDescriptor:
    descriptor = base_descriptor("gnp", {"n": n, "p": p, "seed": seed}, graph, None)
    descriptor.add(
        "lambda_bound",
        Relation.AT_MOST,
        2.0 * math.sqrt(p * (1.0 - p) * n),
        "2 sqrt(p (1 - p) n) (random graph benchmark, holds whp)",
        advisory=True,
    )
    return descriptor


def describe_random_regular(n: int, d: int, seed: int, graph: Graph) -> ConstructionDescriptor:
    descriptor = base_descriptor(
        "random_regular", {"n": n, "d": d, "seed": seed}, graph, d, "d"
    )
    if d >= 2:
        descriptor.add(
            "lambda_bound",
            Relation.AT_MOST,
            2.0 * math.sqrt(d - 1) + 0.35,
            "2 sqrt(d - 1) + 0.35 (random regular benchmark, holds whp)",
            advisory=True,
        )
    descriptor.add(
        "codegree_deviation",
        Relation.AT_MOST,
        d * d / n,
        "max |codeg - d^2/n| reported against d^2/n",
        advisory=True,
    )
    return descriptor
