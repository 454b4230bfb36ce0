# Finite fields, characters and the norm map
from .characters import char_eval, character_sums, group_elements
from .finite_field import (
    FieldElement,
    FiniteField,
    canonical_irreducible,
    ff_arith,
    ff_create,
    ff_norm,
    field_of_order,
    is_irreducible,
    is_prime,
    prime_power,
    quad_char,
)

__all__ = [
    "FieldElement",
    "FiniteField",
    "canonical_irreducible",
    "char_eval",
    "character_sums",
    "ff_arith",
    "ff_create",
    "ff_norm",
    "field_of_order",
    "group_elements",
    "is_irreducible",
    "is_prime",
    "prime_power",
    "quad_char",
]
