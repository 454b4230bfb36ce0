"""
Random Subgraph Experiments
Giant component, connectivity window, minimum spanning tree and
minimum-degree threshold of G_p for a fixed host graph.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize, special

from ..core.exceptions import ExperimentError
from ..graphs.connectivity import is_connected
from ..graphs.core import Graph
from ..oracles.hamilton import hamilton_search
from ..oracles.result import OracleStatus
from ..utils.config import RunConfig
from ..utils.logging import experiment_logger, get_logger
from ..utils.seeding import STREAM_MONTE_CARLO, make_rng
from .estimates import McEstimate, PhaseCurve, check_grid
from .sampling import (
    component_sizes,
    is_spanning_connected,
    keep_edges,
    minimum_spanning_weight,
    simple_pairs,
)

logger = get_logger(__name__)

GIANT_TAG = 1
WINDOW_TAG = 2
MST_TAG = 3
DEGREE_TAG = 4

ZETA_3 = float(special.zeta(3, 1))
DEGREE_OFFSETS = tuple(range(-4, 5))
HAMILTON_CONFIRM_MAX_N = 40


def _run_trials(trial: Callable[[int], Any], trials: int, threads: int) -> List[Any]:
    """Results in trial order whatever the thread count."""
    if trials < 1:
        raise ExperimentError(f"Need at least one trial, got {trials}")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(trial, range(trials)))
    return [trial(t) for t in range(trials)]


def _regular_degree(g: Graph, experiment: str) -> int:
    d = g.regular_degree
    if d is None or d == 0 or g.has_loops:
        raise ExperimentError(
            f"{experiment} needs a loopless regular graph with edges, got {g.label}"
        )
    return d


def _clip(p: float, experiment: str) -> Tuple[float, bool]:
    if p > 1.0:
        logger.warning(f"{experiment}: p = {p:.6g} clipped to 1")
        return 1.0, True
    if p < 0.0:
        logger.warning(f"{experiment}: p = {p:.6g} clipped to 0")
        return 0.0, True
    return p, False


def dual_branching_root(alpha: float) -> float:
    """The root x in (0, 1) of x e^(-x) = alpha e^(-alpha), alpha > 1.

    x e^(-x) increases on (0, 1), so the root is unique; bisection runs to
    an interval of 1e-14, which keeps the residual below 1e-12.
    """
    if alpha <= 1.0:
        raise ExperimentError(f"The dual root needs alpha > 1, got {alpha}")
    target = alpha * math.exp(-alpha)
    upper = math.exp(-1.0) - target
    if upper <= 0.0:
        return 1.0
    return float(optimize.bisect(lambda x: x * math.exp(-x) - target, 0.0, 1.0, xtol=1e-14))


def giant_fraction_prediction(alpha: float) -> float:
    """1 - dual/alpha above the critical point, 0 at or below it."""
    if alpha <= 1.0:
        return 0.0
    return 1.0 - dual_branching_root(alpha) / alpha


def giant_component_experiment(
    g: Graph,
    alpha_grid: Sequence[float],
    trials: int,
    seed: int = 0,
    config: Optional[RunConfig] = None,
) -> PhaseCurve:
    """Largest-component fraction of G_{alpha/d} at each alpha.

    Secondary series: the size of the second largest component, to be read
    against log n.
    """
    config = config or RunConfig()
    d = _regular_degree(g, "giant_component_experiment")
    check_grid(alpha_grid)
    n = g.n
    pairs = simple_pairs(g)
    points, second = [], []
    for i, alpha in enumerate(alpha_grid):
        p, _ = _clip(alpha / d, "giant_component_experiment")

        def trial(t: int, i: int = i, p: float = p) -> Tuple[float, int]:
            rng = make_rng(seed, STREAM_MONTE_CARLO, GIANT_TAG, i, t)
            sizes = component_sizes(n, keep_edges(pairs, p, rng))
            return sizes[0] / n, sizes[1] if len(sizes) > 1 else 0

        results = _run_trials(trial, trials, config.threads)
        estimate = McEstimate.from_values(
            "largest_fraction", [r[0] for r in results], seed, giant_fraction_prediction(alpha)
        )
        points.append(estimate)
        second.append(McEstimate.from_values("second_largest", [r[1] for r in results], seed))
        experiment_logger.point("giant", alpha, estimate.mean, estimate.stderr)

    return PhaseCurve(
        experiment="giant",
        x_name="alpha",
        grid=list(alpha_grid),
        points=points,
        seed=seed,
        secondary={"second_largest": second},
        summary={
            "n": n,
            "d": d,
            "log_n": math.log(n),
            "tolerance": config.giant_fraction_tolerance,
        },
    )


def _crossing(grid: Sequence[float], levels: np.ndarray, target: float) -> Optional[float]:
    """First p where the monotone envelope of the frequencies reaches target."""
    above = np.flatnonzero(levels >= target)
    if above.size == 0 or above[0] == 0:
        return None
    j = int(above[0])
    x0, x1 = grid[j - 1], grid[j]
    y0, y1 = levels[j - 1], levels[j]
    return float(x0 + (target - y0) * (x1 - x0) / (y1 - y0))


def connectivity_window_experiment(
    g: Graph,
    p_grid: Sequence[float],
    trials: int,
    seed: int = 0,
    epsilon: Optional[float] = None,
    config: Optional[RunConfig] = None,
) -> PhaseCurve:
    """Frequency of a connected G_p along the grid, and the window p_eps .. p_(1-eps).

    The window comes from linear interpolation of the running maximum of the
    frequencies. A grid that does not bracket both levels, or a host graph
    that is itself disconnected, leaves the window undefined with a diagnostic.
    """
    config = config or RunConfig()
    epsilon = config.window_epsilon if epsilon is None else epsilon
    if not 0.0 < epsilon < 0.5:
        raise ExperimentError(f"Window epsilon must lie in (0, 1/2), got {epsilon}")
    check_grid(p_grid)
    for p in p_grid:
        if not 0.0 <= p <= 1.0:
            raise ExperimentError(f"Edge probability must lie in [0, 1], got {p}")
    n = g.n
    pairs = simple_pairs(g)
    diagnostics: List[str] = []
    host_connected = is_connected(g)
    if not host_connected:
        diagnostics.append(
            f"{g.label} is disconnected; every G_p is disconnected and the window is undefined"
        )

    points = []
    for i, p in enumerate(p_grid):

        def trial(t: int, i: int = i, p: float = p) -> float:
            if not host_connected:
                return 0.0
            rng = make_rng(seed, STREAM_MONTE_CARLO, WINDOW_TAG, i, t)
            return 1.0 if is_spanning_connected(n, keep_edges(pairs, p, rng)) else 0.0

        values = _run_trials(trial, trials, config.threads)
        estimate = McEstimate.from_values("connected", values, seed)
        points.append(estimate)
        experiment_logger.point("window", p, estimate.mean, estimate.stderr)

    envelope = np.maximum.accumulate(np.array([e.mean for e in points]))
    low = _crossing(p_grid, envelope, epsilon)
    high = _crossing(p_grid, envelope, 1.0 - epsilon)
    if host_connected and (low is None or high is None):
        diagnostics.append(
            f"grid [{p_grid[0]:g}, {p_grid[-1]:g}] does not bracket connectivity frequencies "
            f"{epsilon:g} and {1 - epsilon:g}"
        )
    ratio = high / low if low and high else None
    d = float(np.mean(g.degrees)) if n else 0.0
    summary = {
        "epsilon": epsilon,
        "p_low": low,
        "p_high": high,
        "ratio": ratio,
        "reference_p": math.log(n) / d if n > 1 and d > 0 else None,
    }
    if ratio is not None:
        logger.info(f"Connectivity window on {g.label}: [{low:.6g}, {high:.6g}], ratio {ratio:.4g}")
    return PhaseCurve(
        experiment="window",
        x_name="p",
        grid=list(p_grid),
        points=points,
        seed=seed,
        summary=summary,
        diagnostics=diagnostics,
    )


def mst_experiment(
    g: Graph, trials: int, seed: int = 0, config: Optional[RunConfig] = None
) -> McEstimate:
    """Minimum spanning tree weight under independent uniform(0, 1) edge lengths,
    against (n/d) zeta(3).

    Raises:
        ExperimentError: g is disconnected
    """
    config = config or RunConfig()
    if g.n == 0 or not is_connected(g):
        raise ExperimentError(f"mst_experiment needs a connected graph, {g.label} is not")
    pairs = simple_pairs(g)
    n = g.n
    d = 2.0 * pairs.shape[0] / n

    def trial(t: int) -> float:
        rng = make_rng(seed, STREAM_MONTE_CARLO, MST_TAG, 0, t)
        return minimum_spanning_weight(n, pairs, rng.random(pairs.shape[0]))

    values = _run_trials(trial, trials, config.threads)
    reference = n / d * ZETA_3 if d > 0 else None
    estimate = McEstimate.from_values("mst_weight", values, seed, reference)
    logger.info(
        f"MST weight on {g.label}: {estimate.mean:.6g} +- {estimate.stderr:.3g} "
        f"(reference {reference})"
    )
    return estimate


def degree_threshold_p(n: int, d: int, offset: float) -> float:
    """(log n + log log n + c) / d before clipping."""
    return (math.log(n) + math.log(math.log(n)) + offset) / d


def degree_threshold_experiment(
    g: Graph,
    trials: int,
    seed: int = 0,
    offsets: Sequence[float] = DEGREE_OFFSETS,
    hamilton: bool = False,
    config: Optional[RunConfig] = None,
) -> PhaseCurve:
    """Probability that G_p has minimum degree >= 2 at p = (log n + log log n + c)/d.

    The constant offsets c stand in for a slowly diverging term. Secondary
    series: a vertex of degree <= 1 (the complement event) and, for n <= 40
    with hamilton set, a Hamilton cycle found by exact search.
    """
    config = config or RunConfig()
    d = _regular_degree(g, "degree_threshold_experiment")
    n = g.n
    if n < 3:
        raise ExperimentError(f"degree_threshold_experiment needs n >= 3, got {n}")
    check_grid(offsets)
    confirm = hamilton and n <= HAMILTON_CONFIRM_MAX_N
    if hamilton and not confirm:
        logger.warning(f"Hamilton confirmation skipped: n = {n} > {HAMILTON_CONFIRM_MAX_N}")
    pairs = simple_pairs(g)
    points, isolated, cycles = [], [], []
    probabilities, clipped, unknown = [], [], 0
    for i, offset in enumerate(offsets):
        p, was_clipped = _clip(degree_threshold_p(n, d, offset), "degree_threshold_experiment")
        probabilities.append(p)
        clipped.append(was_clipped)

        def trial(t: int, i: int = i, p: float = p) -> Tuple[float, Optional[bool]]:
            rng = make_rng(seed, STREAM_MONTE_CARLO, DEGREE_TAG, i, t)
            kept = keep_edges(pairs, p, rng)
            degrees = np.bincount(kept.ravel(), minlength=n)
            good = bool(degrees.min() >= 2)
            if not confirm:
                return float(good), None
            sample = Graph.from_pairs(n, kept, check_duplicates=False)
            found = hamilton_search(sample, config.hamilton_budget)
            if found.status == OracleStatus.UNKNOWN:
                return float(good), None
            return float(good), found.status == OracleStatus.FOUND

        results = _run_trials(trial, trials, config.threads)
        estimate = McEstimate.from_values("min_degree_at_least_2", [r[0] for r in results], seed)
        points.append(estimate)
        low = [1.0 - r[0] for r in results]
        isolated.append(McEstimate.from_values("degree_at_most_1", low, seed))
        if confirm:
            unknown += sum(1 for r in results if r[1] is None)
            cycles.append(
                McEstimate.from_values("hamiltonian", [1.0 if r[1] else 0.0 for r in results], seed)
            )
        experiment_logger.point("degree", offset, estimate.mean, estimate.stderr)

    secondary = {"degree_at_most_1": isolated}
    if confirm:
        secondary["hamiltonian"] = cycles
    return PhaseCurve(
        experiment="degree",
        x_name="offset",
        grid=[float(c) for c in offsets],
        points=points,
        seed=seed,
        secondary=secondary,
        summary={
            "p": probabilities,
            "clipped": clipped,
            "hamilton_unknown": unknown,
            "note": "constant offsets render the diverging term at finite n",
        },
    )
