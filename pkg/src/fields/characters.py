"""
Abelian Group Characters
Characters of finite abelian groups given as products of cyclic factors.
"""

import cmath
from typing import Sequence

import numpy as np

from ..core.exceptions import FieldError


def _check_tuple(name: str, values: Sequence[int], factors: Sequence[int]):
    if len(values) != len(factors):
        raise FieldError(
            f"{name} has {len(values)} components for a group with {len(factors)} factors"
        )
    for j, (value, order) in enumerate(zip(values, factors)):
        if not 0 <= value < order:
            raise FieldError(f"{name}[{j}] = {value} out of range for Z_{order}")


def char_eval(
    factors: Sequence[int], index: Sequence[int], element: Sequence[int]
) -> complex:
    """Evaluate the character chi_index at an element of Z_{n1} x ... x Z_{nr}.

    Args:
        factors: Orders of the cyclic factors
        index: Character index, componentwise in [0, n_j)
        element: Group element, componentwise in [0, n_j)

    Returns:
        prod_j exp(2 pi i index_j element_j / n_j)
    """
    _check_tuple("index", index, factors)
    _check_tuple("element", element, factors)
    # accumulate the phase as an exact fraction of a full turn per factor
    turns = 0.0
    for a, g, order in zip(index, element, factors):
        turns += ((a * g) % order) / order
    turns %= 1.0
    if turns == 0.0:
        return complex(1.0, 0.0)
    if turns == 0.5:
        return complex(-1.0, 0.0)
    return cmath.exp(2j * cmath.pi * turns)


def group_elements(factors: Sequence[int]) -> np.ndarray:
    """All group elements as rows, in mixed-radix order (last factor fastest)."""
    grids = np.meshgrid(*[np.arange(n) for n in factors], indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)


def character_sums(factors: Sequence[int], connection_set: Sequence[Sequence[int]]) -> np.ndarray:
    """sum_{s in S} chi_a(s) for every character a, in group_elements order.

    For a symmetric S these are the (real) eigenvalues of the Cayley graph.
    """
    orders = np.asarray(factors, dtype=np.float64)
    indices = group_elements(factors).astype(np.float64)
    gens = np.asarray(connection_set, dtype=np.float64).reshape(-1, len(factors))
    phases = (indices / orders) @ gens.T  # turns, one column per generator
    return np.cos(2.0 * np.pi * phases).sum(axis=1)
