"""
Oracle Results
Result type, search budgets and witness validators shared by every oracle.
"""

import time
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..core.exceptions import OracleError
from ..graphs.core import Graph


class OracleStatus(str, Enum):
    """Outcome of an exact search."""

    FOUND = "found"  # value determined (and witness attached when one exists)
    NONE = "none"  # proven absent
    UNKNOWN = "unknown"  # budget exhausted before a proof


@dataclass
class OracleResult:
    """Value, witness and search statistics of one oracle call."""

    oracle: str
    status: OracleStatus
    value: Any = None
    witness: Any = None
    nodes: int = 0
    elapsed: float = 0.0
    randomized: bool = False
    bounds: Optional[Tuple[float, float]] = None
    notes: Dict[str, Any] = None

    def __post_init__(self):
        if self.notes is None:
            self.notes = {}

    @property
    def is_known(self) -> bool:
        return self.status != OracleStatus.UNKNOWN

    def to_dict(self) -> Dict[str, Any]:
        return {
            "oracle": self.oracle,
            "status": self.status.value,
            "value": self.value,
            "witness": self.witness,
            "nodes": self.nodes,
            "randomized": self.randomized,
            "bounds": list(self.bounds) if self.bounds is not None else None,
            "notes": self.notes,
        }


class BudgetExhausted(Exception):
    """Raised inside a search when its node budget runs out."""


class SearchBudget:
    """Node counter for branch-and-bound searches; cap <= 0 means unlimited."""

    def __init__(self, cap: int):
        self.cap = int(cap)
        self.nodes = 0
        self.started = time.perf_counter()

    def tick(self):
        self.nodes += 1
        if 0 < self.cap < self.nodes:
            raise BudgetExhausted()

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.started

    def result(self, oracle: str, status: OracleStatus, **kwargs: Any) -> OracleResult:
        return OracleResult(oracle, status, nodes=self.nodes, elapsed=self.elapsed, **kwargs)


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits_to_list(x: int) -> List[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def check_order(g: Graph, limit: int, oracle: str):
    if g.n > limit:
        raise OracleError(f"{oracle} supports n <= {limit}, got n = {g.n}")


# Witness validators


def is_independent(g: Graph, vertices: Sequence[int]) -> bool:
    """No edge (loops included) inside the set."""
    chosen = set(int(v) for v in vertices)
    return all(not (set(int(u) for u in g.neighbors(v)) & chosen) for v in chosen)


def is_clique(g: Graph, vertices: Sequence[int]) -> bool:
    vertices = [int(v) for v in vertices]
    return all(g.has_edge(u, v) for i, u in enumerate(vertices) for v in vertices[i + 1 :])


def is_proper_coloring(g: Graph, colors: Sequence[int]) -> bool:
    if len(colors) != g.n:
        return False
    return all(colors[u] != colors[v] for u, v in g.edges())


def cut_size(g: Graph, side: Sequence[int]) -> int:
    """Edges with exactly one end in side."""
    inside = set(int(v) for v in side)
    return sum(1 for u, v in g.edges() if (u in inside) != (v in inside))


def is_hamilton_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    cycle = [int(v) for v in cycle]
    if g.n < 3 or len(cycle) != g.n or sorted(cycle) != list(range(g.n)):
        return False
    return all(g.has_edge(cycle[i], cycle[(i + 1) % g.n]) for i in range(g.n))


def is_perfect_matching(g: Graph, pairs: Sequence[Sequence[int]]) -> bool:
    covered = [int(v) for pair in pairs for v in pair]
    if len(covered) != g.n or len(set(covered)) != g.n:
        return False
    return all(u != v and g.has_edge(u, v) for u, v in pairs)


def is_triangle_factor(g: Graph, triangles: Sequence[Sequence[int]]) -> bool:
    covered = [int(v) for tri in triangles for v in tri]
    if len(covered) != g.n or len(set(covered)) != g.n:
        return False
    return all(len(tri) == 3 and is_clique(g, tri) for tri in triangles)
