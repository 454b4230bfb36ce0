"""
Audit Context
The graph, its spectral header and memoised oracle calls shared by all audits.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

import numpy as np

from ..constructions.descriptor import ConstructionDescriptor
from ..graphs.core import Graph
from ..spectral.spectrum import SpectralSummary, spectral_summary
from ..utils.config import RunConfig


@dataclass
class AuditContext:
    """Per-graph state: (n, d, lambda, lambda_n) plus an oracle cache."""

    graph: Graph
    config: RunConfig
    summary: SpectralSummary
    descriptor: Optional[ConstructionDescriptor] = None
    _cache: Dict[str, Any] = field(default_factory=dict, repr=False)

    @classmethod
    def for_graph(
        cls,
        g: Graph,
        config: Optional[RunConfig] = None,
        descriptor: Optional[ConstructionDescriptor] = None,
    ) -> "AuditContext":
        config = config or RunConfig()
        summary = spectral_summary(g, config.dense_cap, config.extremal_tolerance)
        return cls(g, config, summary, descriptor)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def regular(self) -> bool:
        return self.graph.regular_degree is not None

    @property
    def d(self) -> float:
        """Regular degree, or the average degree of an irregular graph."""
        if self.graph.n == 0:
            return 0.0
        return float(np.mean(self.graph.degrees))

    @property
    def lam(self) -> float:
        return self.summary.lambda_abs

    @property
    def lam_min(self) -> float:
        return self.summary.lambda_min

    @property
    def tol(self) -> float:
        return self.config.audit_tolerance

    def memo(self, key: str, compute: Callable[[], Any]) -> Any:
        """Run compute once per key (oracles shared between audits)."""
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    def header(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "m": self.graph.m,
            "d": self.d,
            "regular": self.regular,
            "loops": self.graph.loop_count,
            "lambda_1": self.summary.lambda_1,
            "lambda": self.lam,
            "lambda_min": self.lam_min,
            "spectral_method": self.summary.method,
        }
