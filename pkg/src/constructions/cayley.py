"""
Cayley Constructions
Cayley graphs of abelian groups, power-residue graphs, the triangle-free
binary-code graphs on Z_2^N, and the PSL(2, q) expanders.
"""

import math
from itertools import product
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..core.exceptions import ConstructionError, FieldError
from ..fields.characters import character_sums, group_elements
from ..fields.finite_field import ff_create, field_of_order, is_prime
from ..graphs.core import Graph
from ..utils.logging import get_logger
from .descriptor import ConstructionDescriptor, Relation, base_descriptor

logger = get_logger(__name__)

Matrix = Tuple[int, int, int, int]  # row-major 2x2 over Z_q


# Abelian groups Z_{n1} x ... x Z_{nr}


def _encode(elements: np.ndarray, factors: Sequence[int]) -> np.ndarray:
    """Mixed-radix index, last factor fastest (matches group_elements)."""
    index = np.zeros(elements.shape[:-1], dtype=np.int64)
    for j, order in enumerate(factors):
        index = index * order + elements[..., j]
    return index


def cayley_abelian(
    factors: Sequence[int], connection_set: Sequence[Sequence[int]]
) -> Tuple[Graph, np.ndarray]:
    """Cayley graph g ~ g + s (s in S) with its character-predicted spectrum.

    Args:
        factors: Cyclic orders n_1, ..., n_r
        connection_set: Symmetric set S of r-tuples, identity excluded

    Returns:
        (graph, predicted eigenvalues sorted descending)
    """
    factors = [int(f) for f in factors]
    if not factors or min(factors) < 1:
        raise ConstructionError(f"Cyclic factor orders must be positive, got {factors}")
    gens = np.asarray(connection_set, dtype=np.int64).reshape(-1, len(factors))
    orders = np.asarray(factors, dtype=np.int64)
    if ((gens < 0) | (gens >= orders)).any():
        raise ConstructionError("Connection set element out of range of its factor")
    keys = set(map(tuple, gens.tolist()))
    if len(keys) != len(gens):
        raise ConstructionError("Connection set contains repeated elements")
    if tuple([0] * len(factors)) in keys:
        raise ConstructionError("Connection set contains the identity")
    for s in keys:
        inverse = tuple(int(x) for x in (-np.asarray(s)) % orders)
        if inverse not in keys:
            raise ConstructionError(
                f"Connection set is not symmetric: {s} has no inverse {inverse}"
            )

    elements = group_elements(factors)
    shifted = (elements[:, None, :] + gens[None, :, :]) % orders
    neighbors = _encode(shifted, factors)
    label = "x".join(f"Z{f}" for f in factors)
    graph = Graph.from_neighbor_array(neighbors, name=f"cayley({label},|S|={len(gens)})")
    predicted = np.sort(character_sums(factors, gens))[::-1]
    return graph, predicted


def describe_cayley_abelian(
    factors: Sequence[int],
    connection_set: Sequence[Sequence[int]],
    graph: Graph,
    predicted: np.ndarray,
) -> ConstructionDescriptor:
    descriptor = base_descriptor(
        "cayley_abelian",
        {"factors": list(factors), "S": [list(s) for s in connection_set]},
        graph,
        len(connection_set),
        "|S|",
    )
    descriptor.vertex_transitive = True
    descriptor.add(
        "spectrum", Relation.EQUAL, [float(x) for x in predicted], "sum over s in S of chi_a(s)"
    )
    return descriptor


# Power-residue Cayley graphs on GF(q)


def power_residue_cayley(q: int, k: int) -> Graph:
    """Cayley graph of (GF(q), +) with S the nonzero k-th powers."""
    try:
        field = field_of_order(q)
    except FieldError as e:
        raise ConstructionError(f"q = {q}: {e}") from e
    if k < 1 or (q - 1) % k:
        raise ConstructionError(f"k = {k} must divide q - 1 = {q - 1}")
    powers = np.unique(field.power_values(k)[1:])
    minus_one = field.neg_value(1)
    if minus_one not in set(powers.tolist()):
        raise ConstructionError(
            f"k-th powers in GF({q}) with k = {k} are not symmetric: -1 is not a {k}-th power"
        )
    neighbors = field.addition_table[:, powers]
    return Graph.from_neighbor_array(neighbors, name=f"power_residue({q},{k})")


def describe_power_residue(q: int, k: int, graph: Graph) -> ConstructionDescriptor:
    d = (q - 1) // k
    descriptor = base_descriptor("power_residue", {"q": q, "k": k}, graph, d, "(q - 1)/k")
    descriptor.vertex_transitive = True
    # the eigenvalue is (sum_y psi(y^k) - 1)/k; the character sum bound covers k = 1 too
    bound = max((k - 1) * math.sqrt(q), ((k - 1) * math.sqrt(q) + 1) / k)
    descriptor.add("lambda_bound", Relation.AT_MOST, bound, "(k - 1) sqrt(q)")
    return descriptor


# Binary-code Cayley graphs on Z_2^((2h+1)k)


def alon_connection_set(k: int, h: int = 1) -> np.ndarray:
    """S = U_0 + U_1 on Z_2^((2h+1)k), as sorted integer bit-vectors.

    W_b holds the nonzero w whose power w^(4h+3) has leading coefficient b;
    U_b holds the vectors (w, w^3, ..., w^(4h+1)), first block in the high bits.
    """
    exponent = 4 * h + 3
    if h < 1:
        raise ConstructionError(f"h must be >= 1, got {h}")
    if ((1 << k) - 1) % exponent == 0:
        raise ConstructionError(f"{exponent} divides 2^{k} - 1 = {(1 << k) - 1}")
    field = ff_create(2, k)
    blocks = 2 * h + 1
    top = field.power_values(exponent)
    words: Dict[int, List[int]] = {0: [], 1: []}
    for w in range(1, field.q):
        vector = 0
        for j in range(blocks):
            vector = (vector << k) | field.pow_value(w, 2 * j + 1)
        words[field.top_coefficient(int(top[w]))].append(vector)
    u0 = np.asarray(words[0], dtype=np.int64)
    u1 = np.asarray(words[1], dtype=np.int64)
    sums = np.unique((u0[:, None] ^ u1[None, :]).ravel())
    if sums.size != u0.size * u1.size:
        raise ConstructionError("Sums U_0 + U_1 are not distinct")
    return sums


def xor_cayley_graph(connection_set: np.ndarray, bits: int, name: str) -> Graph:
    vertices = np.arange(1 << bits, dtype=np.int64)
    neighbors = vertices[:, None] ^ connection_set[None, :]
    # x ^ s ^ s = x, so the relation is symmetric by construction
    return Graph.from_neighbor_array(neighbors, name=name, check_symmetric=False)


def xor_cayley_spectrum(connection_set: np.ndarray, bits: int) -> np.ndarray:
    """Exact eigenvalues sum_s (-1)^<a,s> via a Walsh-Hadamard transform."""
    values = np.zeros(1 << bits, dtype=np.int64)
    values[connection_set] = 1
    step = 1
    while step < values.size:
        view = values.reshape(-1, 2, step)
        left, right = view[:, 0, :].copy(), view[:, 1, :].copy()
        view[:, 0, :] = left + right
        view[:, 1, :] = left - right
        step *= 2
    return np.sort(values)[::-1]


def xor_odd_cycle_free(connection_set: np.ndarray, h: int) -> bool:
    """True when the Cayley graph of Z_2^N has no odd cycle of length <= 2h + 1.

    Closed walks from 0 of length j are j-fold sums of S equal to 0. The j-fold
    sumsets grow with j in steps of two, so it suffices that the (h+1)-fold and
    h-fold sumsets are disjoint.
    """
    previous = np.zeros(1, dtype=np.int64)  # 0-fold sumset
    current = np.unique(connection_set)
    for _ in range(h):
        previous, current = current, np.unique((current[:, None] ^ connection_set[None, :]).ravel())
    return np.intersect1d(previous, current, assume_unique=True).size == 0


def alon_general(k: int, h: int) -> Graph:
    """Cayley graph of Z_2^((2h+1)k) with no odd cycle of length <= 2h + 1."""
    connection = alon_connection_set(k, h)
    bits = (2 * h + 1) * k
    logger.debug(f"alon_general({k},{h}): n = 2^{bits}, |S| = {connection.size}")
    return xor_cayley_graph(connection, bits, name=f"alon_general({k},{h})")


def alon_triangle_free(k: int) -> Graph:
    """Triangle-free Cayley graph of Z_2^(3k), 3 not dividing k."""
    if k % 3 == 0:
        raise ConstructionError(f"alon_triangle_free needs 3 not dividing k, got k = {k}")
    if k < 4:
        raise ConstructionError(f"alon_triangle_free needs k >= 4, got k = {k}")
    connection = alon_connection_set(k, 1)
    return xor_cayley_graph(connection, 3 * k, name=f"alon_triangle_free({k})")


def describe_alon(k: int, h: int, graph: Graph) -> ConstructionDescriptor:
    d = 2 ** (k - 1) * (2 ** (k - 1) - 1)
    family = "alon_triangle_free" if h == 1 else "alon_general"
    params = {"k": k} if h == 1 else {"k": k, "h": h}
    descriptor = base_descriptor(family, params, graph, d, "2^(k-1) (2^(k-1) - 1)")
    descriptor.vertex_transitive = True
    descriptor.add("odd_cycle_free", Relation.HOLDS, 2 * h + 1, "no odd cycle of length <= 2h + 1")
    if h == 1:
        descriptor.add("triangle_free", Relation.HOLDS, True, "sum of 3 elements of S is nonzero")
        descriptor.add(
            "lambda_bound",
            Relation.AT_MOST,
            9 * 2**k + 3 * 2 ** (k / 2) + 0.25,
            "9 2^k + 3 2^(k/2) + 1/4",
        )
    return descriptor


# PSL(2, q) expanders


def legendre(a: int, q: int) -> int:
    value = pow(a % q, (q - 1) // 2, q)
    return -1 if value == q - 1 else value


def lps_generators(p: int) -> List[Tuple[int, int, int, int]]:
    """Integer solutions of a0^2 + ... + a3^2 = p, a0 > 0 odd, a1..a3 even."""
    bound = math.isqrt(p)
    evens = [a for a in range(-bound, bound + 1) if a % 2 == 0]
    solutions = []
    for a0 in range(1, bound + 1, 2):
        for a1, a2, a3 in product(evens, repeat=3):
            if a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 == p:
                solutions.append((a0, a1, a2, a3))
    return solutions


def _check_lps(p: int, q: int):
    for name, value in (("p", p), ("q", q)):
        if not is_prime(value):
            raise ConstructionError(f"lps: {name} = {value} is not prime")
        if value % 4 != 1:
            raise ConstructionError(f"lps: {name} = {value} is not 1 mod 4")
    if p == q:
        raise ConstructionError("lps: p and q must differ")
    if legendre(p, q) != 1:
        raise ConstructionError(f"lps: p = {p} is not a quadratic residue mod q = {q}")
    if q * q <= 4 * p:
        raise ConstructionError(f"lps: q = {q} must exceed 2 sqrt(p) = {2 * math.sqrt(p):.4f}")


def _canonical(m: Matrix, q: int) -> Matrix:
    """Representative of +-m: first nonzero entry in 1..(q-1)/2."""
    lead = next(x for x in m if x)
    if lead > (q - 1) // 2:
        return tuple((-x) % q for x in m)  # type: ignore[return-value]
    return m


def _matmul(a: Matrix, b: Matrix, q: int) -> Matrix:
    return (
        (a[0] * b[0] + a[1] * b[2]) % q,
        (a[0] * b[1] + a[1] * b[3]) % q,
        (a[2] * b[0] + a[3] * b[2]) % q,
        (a[2] * b[1] + a[3] * b[3]) % q,
    )


def lps_matrices(p: int, q: int) -> List[Matrix]:
    """Generators of PSL(2, q): [[a0 + i a1, a2 + i a3], [-a2 + i a3, a0 - i a1]] / sqrt(p)."""
    i = next(x for x in range(1, q) if (x * x) % q == q - 1)
    root = next(x for x in range(1, q) if (x * x) % q == p % q)
    scale = pow(root, -1, q)
    matrices = []
    for a0, a1, a2, a3 in lps_generators(p):
        entries = (a0 + i * a1, a2 + i * a3, -a2 + i * a3, a0 - i * a1)
        scaled = tuple((scale * e) % q for e in entries)
        matrices.append(_canonical(scaled, q))  # type: ignore[arg-type]
    return matrices


def lps(p: int, q: int) -> Graph:
    """The (p + 1)-regular Cayley graph of PSL(2, q), vertices in BFS order from I."""
    _check_lps(p, q)
    gens = lps_matrices(p, q)
    if len(gens) != p + 1:
        raise ConstructionError(f"lps: found {len(gens)} generators, expected p + 1 = {p + 1}")

    identity: Matrix = (1, 0, 0, 1)
    index: Dict[Matrix, int] = {identity: 0}
    order: List[Matrix] = [identity]
    rows: List[List[int]] = []
    head = 0
    while head < len(order):
        g = order[head]
        row = []
        for s in gens:
            h = _canonical(_matmul(g, s, q), q)
            if h not in index:
                index[h] = len(order)
                order.append(h)
            row.append(index[h])
        rows.append(row)
        head += 1

    expected = q * (q * q - 1) // 2
    if len(order) != expected:
        raise ConstructionError(f"lps: generated {len(order)} elements, expected {expected}")
    return Graph.from_neighbor_array(np.asarray(rows, dtype=np.int64), name=f"lps({p},{q})")


def describe_lps(p: int, q: int, graph: Graph) -> ConstructionDescriptor:
    descriptor = base_descriptor("lps", {"p": p, "q": q}, graph, p + 1, "p + 1")
    descriptor.vertex_transitive = True
    descriptor.add("n_formula", Relation.EQUAL, q * (q * q - 1) // 2, "q (q^2 - 1)/2")
    descriptor.add("generators", Relation.EQUAL, p + 1, "p + 1 quaternion solutions")
    descriptor.add("connected", Relation.HOLDS, True)
    descriptor.add("girth", Relation.AT_LEAST, 2 * math.log(q) / math.log(p), "2 log_p q")
    descriptor.add("lambda_bound", Relation.AT_MOST, 2 * math.sqrt(p), "2 sqrt(p)")
    return descriptor
