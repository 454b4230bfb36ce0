"""
Monte Carlo Estimates
Per-statistic summaries and phase curves over a parameter grid.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from ..core.exceptions import ExperimentError
from ..utils.seeding import SEED_RULE


@dataclass
class McEstimate:
    """Mean, sample standard deviation and standard error over trials."""

    statistic: str
    trials: int
    mean: float
    stddev: float
    stderr: float
    seed: int
    seed_rule: str = SEED_RULE
    reference: Optional[float] = None  # predicted value, when the theory gives one
    values: List[float] = field(default_factory=list, repr=False)

    @classmethod
    def from_values(
        cls,
        statistic: str,
        values: Sequence[float],
        seed: int,
        reference: Optional[float] = None,
    ) -> "McEstimate":
        data = np.asarray(values, dtype=np.float64)
        trials = int(data.size)
        if trials == 0:
            raise ExperimentError(f"{statistic}: no trials")
        stddev = float(data.std(ddof=1)) if trials > 1 else 0.0
        return cls(
            statistic=statistic,
            trials=trials,
            mean=float(data.mean()),
            stddev=stddev,
            stderr=stddev / math.sqrt(trials),
            seed=seed,
            reference=reference,
            values=data.tolist(),
        )

    def fraction(self, predicate: Callable[[float], bool]) -> float:
        """Share of trials whose value satisfies the predicate."""
        return sum(1 for v in self.values if predicate(v)) / self.trials

    def to_dict(self) -> Dict[str, Any]:
        return {
            "statistic": self.statistic,
            "trials": self.trials,
            "mean": self.mean,
            "stddev": self.stddev,
            "stderr": self.stderr,
            "seed": self.seed,
            "seed_rule": self.seed_rule,
            "reference": self.reference,
        }


@dataclass
class PhaseCurve:
    """An observable estimated at each point of a strictly increasing grid."""

    experiment: str
    x_name: str
    grid: List[float]
    points: List[McEstimate]
    seed: int
    secondary: Dict[str, List[McEstimate]] = None
    summary: Dict[str, Any] = None
    diagnostics: List[str] = None

    def __post_init__(self):
        if self.secondary is None:
            self.secondary = {}
        if self.summary is None:
            self.summary = {}
        if self.diagnostics is None:
            self.diagnostics = []
        check_grid(self.grid)
        if len(self.points) != len(self.grid):
            raise ExperimentError(
                f"{self.experiment}: {len(self.points)} points for a grid of {len(self.grid)}"
            )

    @property
    def means(self) -> List[float]:
        return [p.mean for p in self.points]

    def point(self, x: float) -> McEstimate:
        for value, estimate in zip(self.grid, self.points):
            if math.isclose(value, x, rel_tol=1e-12, abs_tol=1e-12):
                return estimate
        raise KeyError(f"{x} is not on the {self.experiment} grid")

    def to_dict(self) -> Dict[str, Any]:
        points = []
        for i, (x, estimate) in enumerate(zip(self.grid, self.points)):
            entry: Dict[str, Any] = {
                "x": x,
                "mean": estimate.mean,
                "stderr": estimate.stderr,
                "stddev": estimate.stddev,
                "trials": estimate.trials,
                "reference": estimate.reference,
            }
            for name, series in sorted(self.secondary.items()):
                entry[name] = {"mean": series[i].mean, "stderr": series[i].stderr}
            points.append(entry)
        return {
            "experiment": self.experiment,
            "x": self.x_name,
            "seed": self.seed,
            "seed_rule": SEED_RULE,
            "points": points,
            "summary": self.summary,
            "diagnostics": list(self.diagnostics),
        }


def check_grid(grid: Sequence[float]):
    """Raise unless the grid is non-empty and strictly increasing."""
    if len(grid) == 0:
        raise ExperimentError("The grid is empty")
    if len(grid) > 1 and not np.all(np.diff(np.asarray(grid, dtype=np.float64)) > 0):
        raise ExperimentError(f"Grid must be strictly increasing: {list(grid)}")


def parse_grid(text: str) -> List[float]:
    """Grid from 'a:b:step' (inclusive of b up to rounding) or 'x1,x2,...'."""
    try:
        if ":" in text:
            start, stop, step = (float(part) for part in text.split(":"))
            if step <= 0:
                raise ExperimentError(f"Grid step must be positive, got {step}")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            grid = [round(start + i * step, 12) for i in range(count)]
        else:
            grid = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        if isinstance(e, ExperimentError):
            raise
        raise ExperimentError(f"Cannot parse grid {text!r}: {e}") from e
    check_grid(grid)
    return grid
