# Random Lab: Monte Carlo on random subgraphs G_p and enumeration bounds
from .enumeration import enumeration_bounds_check, super_regularity
from .estimates import McEstimate, PhaseCurve, parse_grid
from .experiments import (
    connectivity_window_experiment,
    degree_threshold_experiment,
    dual_branching_root,
    giant_component_experiment,
    giant_fraction_prediction,
    mst_experiment,
)
from .sampling import UnionFind, component_sizes, minimum_spanning_weight, sample_gp

__all__ = [
    "McEstimate",
    "PhaseCurve",
    "UnionFind",
    "component_sizes",
    "connectivity_window_experiment",
    "degree_threshold_experiment",
    "dual_branching_root",
    "enumeration_bounds_check",
    "giant_component_experiment",
    "giant_fraction_prediction",
    "minimum_spanning_weight",
    "mst_experiment",
    "parse_grid",
    "sample_gp",
    "super_regularity",
]
