# Graph families: deterministic algebraic builders and seeded random models
from .algebraic import (
    dgt_graph,
    inner_product_graph,
    norm_graph,
    paley,
    paley_subfield_witnesses,
    pg_polarity,
)
from .cayley import (
    alon_connection_set,
    alon_general,
    alon_triangle_free,
    cayley_abelian,
    lps,
    lps_generators,
    power_residue_cayley,
)
from .descriptor import Claim, Construction, ConstructionDescriptor, Relation, SrgParams
from .random_models import gnp, random_regular
from .registry import BUILDERS, build

__all__ = [
    "BUILDERS",
    "Claim",
    "Construction",
    "ConstructionDescriptor",
    "Relation",
    "SrgParams",
    "alon_connection_set",
    "alon_general",
    "alon_triangle_free",
    "build",
    "cayley_abelian",
    "dgt_graph",
    "gnp",
    "inner_product_graph",
    "lps",
    "lps_generators",
    "norm_graph",
    "paley",
    "paley_subfield_witnesses",
    "pg_polarity",
    "power_residue_cayley",
    "random_regular",
]
