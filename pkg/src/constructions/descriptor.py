"""
Construction Descriptors
Parameters and the claims a builder attaches to the graph it produces.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from ..core.exceptions import ConstructionError
from ..graphs.core import Graph


@dataclass(frozen=True)
class SrgParams:
    """Strongly regular parameters srg(n, d, eta, mu)."""

    n: int
    d: int
    eta: int  # common neighbours of adjacent pairs
    mu: int  # common neighbours of non-adjacent pairs

    def is_feasible(self) -> bool:
        return (
            0 <= self.eta <= self.d
            and 0 <= self.mu <= self.d
            and self.d * (self.d - self.eta - 1) == (self.n - self.d - 1) * self.mu
        )

    def validate(self) -> "SrgParams":
        if not self.is_feasible():
            raise ConstructionError(
                f"srg{self.as_tuple()} violates d(d - eta - 1) = (n - d - 1) mu"
            )
        return self

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.n, self.d, self.eta, self.mu)


class Relation(str, Enum):
    """How a claim's value is compared with the measured quantity."""

    EQUAL = "=="
    AT_MOST = "<="
    AT_LEAST = ">="
    SUBSET = "in"
    HOLDS = "holds"


@dataclass
class Claim:
    """One statement a construction makes about its graph.

    Advisory claims are reported with their slack but never fail a run.
    """

    name: str
    relation: Relation
    value: Any
    expression: str = ""
    advisory: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "relation": self.relation.value,
            "value": self.value,
            "expression": self.expression,
            "advisory": self.advisory,
        }


@dataclass
class ConstructionDescriptor:
    """Family tag, parameters and the claims attached at build time."""

    family: str
    params: Dict[str, Any]
    n: int
    degree: Optional[int]
    claims: List[Claim] = field(default_factory=list)
    srg: Optional[SrgParams] = None
    vertex_transitive: bool = False
    notes: List[str] = field(default_factory=list)

    def claim(self, name: str) -> Optional[Claim]:
        for c in self.claims:
            if c.name == name:
                return c
        return None

    def add(
        self,
        name: str,
        relation: Relation,
        value: Any,
        expression: str = "",
        advisory: bool = False,
    ) -> "ConstructionDescriptor":
        self.claims.append(Claim(name, relation, value, expression, advisory))
        return self

    @property
    def label(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.family}({inner})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "params": dict(self.params),
            "n": self.n,
            "degree": self.degree,
            "srg": list(self.srg.as_tuple()) if self.srg else None,
            "vertex_transitive": self.vertex_transitive,
            "claims": [c.to_dict() for c in self.claims],
            "notes": list(self.notes),
        }


@dataclass
class Construction:
    """A built graph together with its descriptor."""

    graph: Graph
    descriptor: ConstructionDescriptor

    def __iter__(self):
        # allows `graph, descriptor = build(...)`
        yield self.graph
        yield self.descriptor


def base_descriptor(
    family: str,
    params: Dict[str, Any],
    graph: Graph,
    degree: Optional[int],
    degree_expression: str = "",
) -> ConstructionDescriptor:
    """Descriptor pre-filled with the vertex-count and degree claims."""
    descriptor = ConstructionDescriptor(family=family, params=params, n=graph.n, degree=degree)
    descriptor.add("n", Relation.EQUAL, graph.n)
    if degree is not None:
        descriptor.add("degree", Relation.EQUAL, degree, degree_expression)
    return descriptor
