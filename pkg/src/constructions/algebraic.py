"""
Algebraic Constructions
Finite-field graph families: Paley, inner-product, DGT nets, projective
polarity graphs and norm graphs.
"""

import math
from itertools import product
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import ConstructionError, FieldError
from ..fields.finite_field import FiniteField, ff_create, field_of_order
from ..graphs.core import Graph
from ..utils.logging import get_logger
from .descriptor import ConstructionDescriptor, Relation, SrgParams, base_descriptor

logger = get_logger(__name__)


def _field(q: int) -> FiniteField:
    try:
        return field_of_order(q)
    except FieldError as e:
        raise ConstructionError(f"q = {q}: {e}") from e


# Paley graphs


def paley(q: int) -> Graph:
    """Paley graph: a ~ b iff a - b is a nonzero square in GF(q)."""
    if q % 4 != 1:
        raise ConstructionError(f"Paley graphs need q = 1 mod 4, got q = {q}")
    field = _field(q)
    residues = np.nonzero(field.quad_char_table() == 1)[0]
    neighbors = field.addition_table[:, residues]
    return Graph.from_neighbor_array(neighbors, name=f"paley({q})")


def paley_subfield_witnesses(q: int) -> Tuple[List[int], List[int]]:
    """For q = p^2: the subfield GF(p) (a clique) and beta * GF(p) (independent).

    beta is the least non-residue; both sets have p vertices.
    """
    field = _field(q)
    if field.k != 2:
        raise ConstructionError(f"Subfield witnesses need q = p^2, got q = {q}")
    chi = field.quad_char_table()
    beta = int(np.nonzero(chi == -1)[0][0])
    clique = list(range(field.p))
    independent = sorted(field.mul_values(beta, a) for a in range(field.p))
    return clique, independent


def describe_paley(q: int, graph: Graph) -> ConstructionDescriptor:
    d = (q - 1) // 2
    descriptor = base_descriptor("paley", {"q": q}, graph, d, "(q - 1)/2")
    descriptor.vertex_transitive = True
    descriptor.srg = SrgParams(q, d, (q - 5) // 4, (q - 1) // 4)
    descriptor.add(
        "srg", Relation.EQUAL, list(descriptor.srg.as_tuple()), "(q, (q-1)/2, (q-5)/4, (q-1)/4)"
    )
    root = math.sqrt(q)
    descriptor.add("lambda", Relation.EQUAL, (root + 1) / 2, "(sqrt(q) + 1)/2")
    descriptor.add(
        "nontrivial_eigenvalues",
        Relation.SUBSET,
        [(-1 + root) / 2, (-1 - root) / 2],
        "(-1 +- sqrt(q))/2",
    )
    field = _field(q)
    if field.k == 2:
        descriptor.add("clique_at_least", Relation.AT_LEAST, field.p, "subfield GF(p)")
        descriptor.add("alpha_at_least", Relation.AT_LEAST, field.p, "coset beta GF(p)")
    return descriptor


# Inner-product graphs H_k


def inner_product_graph(k: int) -> Graph:
    """H_k: odd-weight binary k-vectors except 1...1, adjacent iff <u, v> = 1 mod 2."""
    if k % 2 == 0:
        raise ConstructionError(f"inner_product_graph needs odd k, got k = {k}")
    if k < 5:
        raise ConstructionError(f"inner_product_graph needs k >= 5, got k = {k}")
    full = (1 << k) - 1
    codes = np.arange(1, full, dtype=np.int64)
    bits = (codes[:, None] >> np.arange(k, dtype=np.int64)) & 1
    vertices = bits[bits.sum(axis=1) % 2 == 1]
    gram = (vertices @ vertices.T) % 2
    np.fill_diagonal(gram, 0)
    return Graph.from_dense(gram, name=f"inner_product({k})")


def describe_inner_product(k: int, graph: Graph) -> ConstructionDescriptor:
    d = 2 ** (k - 2) - 2
    descriptor = base_descriptor("inner_product", {"k": k}, graph, d, "2^(k-2) - 2")
    descriptor.srg = SrgParams(2 ** (k - 1) - 1, d, 2 ** (k - 3) - 3, 2 ** (k - 3) - 1)
    descriptor.add(
        "srg",
        Relation.EQUAL,
        list(descriptor.srg.as_tuple()),
        "(2^(k-1) - 1, 2^(k-2) - 2, 2^(k-3) - 3, 2^(k-3) - 1)",
    )
    descriptor.add("lambda", Relation.EQUAL, 1 + 2 ** ((k - 3) / 2), "1 + 2^((k-3)/2)")
    descriptor.add("alpha", Relation.AT_MOST, k, "k (orthonormal vector family)")
    return descriptor


# DGT nets on GF(q)^2


def dgt_directions(field: FiniteField) -> List[Tuple[int, int]]:
    """Canonical direction order: slopes 0, 1, ..., q-1, then vertical."""
    return [(1, m) for m in range(field.q)] + [(0, 1)]


def dgt_graph(q: int, k: int, lines: Optional[Sequence[int]] = None) -> Graph:
    """Vertices GF(q)^2; x ~ y iff x - y is parallel to one of k chosen lines.

    Args:
        q: Prime power
        k: Number of directions, 1 <= k <= q + 1
        lines: Optional override, indices into the canonical direction order

    Returns:
        k(q - 1)-regular Cayley graph of GF(q)^2 (vertex x + q*y)
    """
    if not 1 <= k <= q + 1:
        raise ConstructionError(f"dgt_graph needs 1 <= k <= q + 1, got k = {k}, q = {q}")
    field = _field(q)
    directions = dgt_directions(field)
    if lines is None:
        chosen = directions[:k]
    else:
        if len(lines) != k or len(set(lines)) != k or not all(0 <= i <= q for i in lines):
            raise ConstructionError(f"lines must be {k} distinct indices in [0, {q}]")
        chosen = [directions[i] for i in lines]

    mul = field.multiplication_table
    add = field.addition_table
    scalars = np.arange(1, q, dtype=np.int64)
    sx = np.concatenate([mul[scalars, a] for a, _ in chosen])
    sy = np.concatenate([mul[scalars, b] for _, b in chosen])

    vertices = np.arange(q * q, dtype=np.int64)
    x, y = vertices % q, vertices // q
    neighbors = add[x[:, None], sx[None, :]] + q * add[y[:, None], sy[None, :]]
    return Graph.from_neighbor_array(neighbors, name=f"dgt({q},{k})")


def describe_dgt(q: int, k: int, graph: Graph) -> ConstructionDescriptor:
    d = k * (q - 1)
    descriptor = base_descriptor("dgt", {"q": q, "k": k}, graph, d, "k (q - 1)")
    descriptor.vertex_transitive = True
    descriptor.add(
        "nontrivial_eigenvalues", Relation.SUBSET, [float(-k), float(q - k)], "{-k, q - k}"
    )
    if 2 <= k <= q:
        descriptor.srg = SrgParams(q * q, d, (k - 1) * (k - 2) + q - 2, k * (k - 1))
        descriptor.add(
            "srg",
            Relation.EQUAL,
            list(descriptor.srg.as_tuple()),
            "(q^2, k(q-1), (k-1)(k-2) + q - 2, k(k-1))",
        )
    return descriptor


# Projective polarity graphs


def projective_points(field: FiniteField, t: int) -> np.ndarray:
    """Points of PG(t, q), first nonzero coordinate 1, in lexicographic order."""
    points = []
    for lead in range(t + 1):
        for tail in product(range(field.q), repeat=t - lead):
            points.append((0,) * lead + (1,) + tail)
    return np.asarray(points, dtype=np.int64)


def pg_polarity(q: int, t: int) -> Graph:
    """Polarity graph of PG(t, q): x ~ y iff x0 y0 + ... + xt yt = 0 (loops kept)."""
    if t < 2:
        raise ConstructionError(f"pg_polarity needs t >= 2, got t = {t}")
    field = _field(q)
    points = projective_points(field, t)
    mul = field.multiplication_table
    add = field.addition_table
    form = np.zeros((len(points), len(points)), dtype=np.int64)
    for c in range(t + 1):
        column = points[:, c]
        form = add[form, mul[column[:, None], column[None, :]]]
    return Graph.from_dense((form == 0).astype(np.int8), name=f"pg_polarity({q},{t})")


def describe_pg_polarity(q: int, t: int, graph: Graph) -> ConstructionDescriptor:
    d = (q**t - 1) // (q - 1)
    mu = (q ** (t - 1) - 1) // (q - 1)
    descriptor = base_descriptor(
        "pg_polarity", {"q": q, "t": t}, graph, d, "(q^t - 1)/(q - 1), loops counted"
    )
    descriptor.add(
        "square_identity", Relation.EQUAL, mu, "A^2 = mu J + (d - mu) I, mu = (q^(t-1) - 1)/(q - 1)"
    )
    descriptor.add(
        "nontrivial_abs", Relation.EQUAL, q ** ((t - 1) / 2), "q^((t-1)/2) = sqrt(d - mu)"
    )
    descriptor.add("loop_bound", Relation.AT_MOST, 2 * d, "2 (q^t - 1)/(q - 1)")
    if t == 2:
        descriptor.add("c4_free", Relation.HOLDS, True, "mu = 1")
        if q % 2 == 1:
            descriptor.add("loops", Relation.EQUAL, q + 1, "q + 1 absolute points (conic)")
    return descriptor


# Norm graphs


def norm_graph(p: int, t: int, loops: bool = True) -> Graph:
    """Norm graph on GF(p^(t-1)) x GF(p)*: (X, a) ~ (Y, b) iff N(X + Y) = ab.

    Vertex (X, a) has index X * (p - 1) + (a - 1). A vertex with N(2X) = a^2
    satisfies the relation with itself; it carries a loop unless loops=False.
    """
    if t < 3:
        raise ConstructionError(f"norm_graph needs t >= 3, got t = {t}")
    try:
        field = ff_create(p, t - 1)
    except FieldError as e:
        raise ConstructionError(f"norm_graph: {e}") from e
    exponent = (field.q - 1) // (p - 1)
    norms = field.power_values(exponent)
    norm_of_sum = norms[field.addition_table]

    xs = np.repeat(np.arange(field.q, dtype=np.int64), p - 1)
    scalars = np.tile(np.arange(1, p, dtype=np.int64), field.q)
    adjacency = norm_of_sum[xs[:, None], xs[None, :]] == (scalars[:, None] * scalars[None, :]) % p
    if not loops:
        np.fill_diagonal(adjacency, False)
    return Graph.from_dense(adjacency.astype(np.int8), name=f"norm_graph({p},{t})")


def describe_norm_graph(p: int, t: int, graph: Graph) -> ConstructionDescriptor:
    q = p ** (t - 1)
    descriptor = base_descriptor(
        "norm_graph", {"p": p, "t": t}, graph, q - 1, "p^(t-1) - 1, loops counted"
    )
    descriptor.add("lambda", Relation.EQUAL, math.sqrt(q), "p^((t-1)/2)")
    descriptor.add(
        "bipartite_free",
        Relation.HOLDS,
        [t, math.factorial(t - 1) + 1],
        "no K_{t,(t-1)!+1}",
    )
    return descriptor
