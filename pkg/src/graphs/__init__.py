# Graph Core: representation, edge counts, statistics, connectivity, formats
from .connectivity import components, edge_connectivity, girth, is_connected, vertex_connectivity
from .core import (
    Graph,
    edge_count_between,
    from_edge_list,
    induced_edges,
    is_triangle_free,
)
from .statistics import CodegreeStats, DegreeStats, codegree, codegree_stats, degree_stats

__all__ = [
    "CodegreeStats",
    "DegreeStats",
    "Graph",
    "codegree",
    "codegree_stats",
    "components",
    "degree_stats",
    "edge_connectivity",
    "edge_count_between",
    "from_edge_list",
    "girth",
    "induced_edges",
    "is_connected",
    "is_triangle_free",
    "vertex_connectivity",
]
