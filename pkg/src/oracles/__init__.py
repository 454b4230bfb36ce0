# Oracles: exact exponential-time searches and the greedy procedures they check
from .counting import (
    automorphism_count,
    count_spanning_trees,
    count_subgraph_copies,
    spanning_trees_deletion_contraction,
)
from .cuts import exact_maxcut, local_search_maxcut
from .hamilton import count_hamilton_cycles, hamilton_search
from .independence import (
    exact_alpha,
    exact_chi,
    exact_clique,
    greedy_coloring,
    greedy_independent,
    min_vertex_cover,
)
from .matching import MatchingMode, count_perfect_matchings, matching, triangle_factor_exact
from .result import OracleResult, OracleStatus
from .turan import TuranPartition, greedy_turan_partition, turan_exact

__all__ = [
    "MatchingMode",
    "OracleResult",
    "OracleStatus",
    "TuranPartition",
    "automorphism_count",
    "count_hamilton_cycles",
    "count_perfect_matchings",
    "count_spanning_trees",
    "count_subgraph_copies",
    "exact_alpha",
    "exact_chi",
    "exact_clique",
    "exact_maxcut",
    "greedy_coloring",
    "greedy_independent",
    "greedy_turan_partition",
    "hamilton_search",
    "local_search_maxcut",
    "matching",
    "min_vertex_cover",
    "spanning_trees_deletion_contraction",
    "triangle_factor_exact",
    "turan_exact",
]
