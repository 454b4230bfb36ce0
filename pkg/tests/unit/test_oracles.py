"""Unit tests for the exact oracles and greedy procedures."""

import math
import time

import numpy as np
import pytest

from src.constructions import lps, paley
from src.core.exceptions import OracleError
from src.graphs import Graph
from src.oracles import (
    MatchingMode,
    OracleStatus,
    automorphism_count,
    count_hamilton_cycles,
    count_perfect_matchings,
    count_spanning_trees,
    count_subgraph_copies,
    exact_alpha,
    exact_chi,
    exact_clique,
    exact_maxcut,
    greedy_coloring,
    greedy_independent,
    greedy_turan_partition,
    hamilton_search,
    local_search_maxcut,
    matching,
    min_vertex_cover,
    spanning_trees_deletion_contraction,
    triangle_factor_exact,
    turan_exact,
)
from src.oracles.independence import coloring_upper_bound
from src.oracles.matching import TUTTE_PRIME, _det_mod, tutte_rank_test
from src.oracles.result import (
    cut_size,
    is_hamilton_cycle,
    is_independent,
    is_proper_coloring,
)
from src.spectral import circuit_count


def cycle(n: int) -> Graph:
    return Graph.from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete_tripartite(size: int) -> Graph:
    n = 3 * size
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if u // size != v // size]
    return Graph.from_edge_list(n, edges, name=f"K{size},{size},{size}")


class TestIndependence:
    """Test alpha, omega and vertex cover."""

    def test_pentagon(self, c5):
        result = exact_alpha(c5)
        assert result.status == OracleStatus.FOUND
        assert result.value == 2
        assert is_independent(c5, result.witness)

    def test_paley_25(self, paley25):
        assert exact_alpha(paley25).value == 5
        assert exact_clique(paley25).value == 5

    def test_bipartite(self, k33):
        assert exact_alpha(k33).value == 3

    def test_cover_duality(self, k33, petersen):
        for g in (k33, petersen):
            assert exact_alpha(g).value + min_vertex_cover(g).value == g.n

    def test_loops_are_never_independent(self):
        g = Graph.from_edge_list(3, [(0, 0), (1, 2)])
        result = exact_alpha(g)
        assert result.value == 1
        assert 0 not in result.witness

    def test_budget_gives_unknown(self, petersen):
        result = exact_alpha(petersen, cap=1)
        assert result.status == OracleStatus.UNKNOWN
        assert result.value is None

    def test_to_dict_has_no_timing(self, c5):
        payload = exact_alpha(c5).to_dict()
        assert payload["status"] == "found"
        assert "elapsed" not in payload


class TestChromatic:
    """Test the exact chromatic number."""

    def test_odd_cycle(self, c5):
        result = exact_chi(c5)
        assert result.value == 3
        assert is_proper_coloring(c5, result.witness)

    def test_complete(self, k4):
        assert exact_chi(k4).value == 4

    def test_paley_25(self, paley25):
        assert exact_chi(paley25).value == 5

    def test_loops_rejected(self):
        with pytest.raises(OracleError):
            exact_chi(Graph.from_edge_list(2, [(0, 0), (0, 1)]))


class TestMaxCut:
    """Test the exhaustive and local-search cuts."""

    def test_known_values(self, k4, c5, k33):
        assert exact_maxcut(k4).value == 4
        assert exact_maxcut(c5).value == 4
        assert exact_maxcut(k33).value == 9

    def test_witness_realises_value(self, petersen):
        result = exact_maxcut(petersen)
        assert cut_size(petersen, result.witness[0]) == result.value

    def test_order_limit(self):
        with pytest.raises(OracleError):
            exact_maxcut(Graph.empty(30))

    def test_local_search_is_half_of_m(self, paley13):
        result = local_search_maxcut(paley13, seed=4)
        low, high = result.bounds
        assert result.status == OracleStatus.UNKNOWN
        assert 2 * low >= paley13.m
        assert high == paley13.m
        assert low <= exact_maxcut(paley13).value


class TestHamilton:
    """Test Hamilton cycle search and counting."""

    def test_cycle(self, c5):
        result = hamilton_search(c5)
        assert result.status == OracleStatus.FOUND
        assert is_hamilton_cycle(c5, result.witness)
        assert count_hamilton_cycles(c5).value == 1

    def test_petersen_is_not_hamiltonian(self, petersen):
        result = hamilton_search(petersen)
        assert result.status == OracleStatus.NONE
        assert count_hamilton_cycles(petersen).value == 0

    def test_complete_count(self, k5):
        assert count_hamilton_cycles(k5).value == math.factorial(4) // 2

    def test_low_degree_shortcut(self, path3):
        assert hamilton_search(path3).status == OracleStatus.NONE

    def test_count_order_limit(self):
        with pytest.raises(OracleError):
            count_hamilton_cycles(cycle(17))


class TestMatching:
    """Test perfect-matching existence and counting."""

    def test_counts(self, c6, k4):
        assert count_perfect_matchings(c6) == 2
        assert matching(k4, MatchingMode.COUNT_PERFECT).value == 3

    def test_odd_order(self, c5):
        result = matching(c5)
        assert result.status == OracleStatus.NONE
        assert result.value is False

    def test_petersen_has_perfect_matching(self, petersen):
        result = matching(petersen)
        assert result.status == OracleStatus.FOUND
        assert len(result.witness) == 5
        assert not result.randomized

    def test_no_perfect_matching(self):
        star = Graph.from_edge_list(4, [(0, 1), (0, 2), (0, 3)])
        result = matching(star)
        assert result.status == OracleStatus.NONE
        assert result.notes["maximum_matching"] == 1

    def test_string_mode(self, k4):
        assert matching(k4, "count_perfect").value == 3

    def test_determinant_mod_prime(self):
        assert _det_mod(np.array([[2, 1], [1, 3]]), 7) == 5
        assert _det_mod(np.array([[0, 1], [1, 0]]), 7) == 6
        assert _det_mod(np.array([[1, 2], [2, 4]]), TUTTE_PRIME) == 0

    def test_tutte_test_agrees_with_blossom(self, c6, petersen):
        assert tutte_rank_test(c6)
        assert tutte_rank_test(petersen)
        assert not tutte_rank_test(Graph.from_edge_list(4, [(0, 1), (0, 2), (0, 3)]))

    @pytest.mark.slow
    def test_large_regular_graph_is_decided_quickly(self):
        g = lps(17, 13)
        start = time.perf_counter()
        result = matching(g)
        assert time.perf_counter() - start < 30.0
        assert result.status == OracleStatus.FOUND
        assert not result.randomized


class TestCounting:
    """Test labeled subgraph counts and spanning trees."""

    def test_triangles_in_k4(self, k4):
        assert count_subgraph_copies(k4, Graph.complete(3)) == 24

    def test_triangles_in_paley_13(self, paley13):
        assert count_subgraph_copies(paley13, Graph.complete(3)) == 156
        assert circuit_count(paley13, 3) == 156

    def test_induced_copies(self, k4):
        path = Graph.from_edge_list(3, [(0, 1), (1, 2)])
        assert count_subgraph_copies(k4, path) == 24
        assert count_subgraph_copies(k4, path, induced=True) == 0

    def test_automorphisms(self, c5):
        assert automorphism_count(c5) == 10
        assert automorphism_count(Graph.complete(3)) == 6

    def test_pattern_limit(self, k4):
        with pytest.raises(OracleError):
            count_subgraph_copies(k4, Graph.complete(7))

    def test_spanning_trees(self, k4, c5, petersen):
        assert count_spanning_trees(k4) == 16
        assert count_spanning_trees(c5) == 5
        assert count_spanning_trees(petersen) == 2000

    def test_deletion_contraction_agrees(self, petersen):
        assert spanning_trees_deletion_contraction(petersen) == 2000

    def test_disconnected_has_no_trees(self):
        assert count_spanning_trees(Graph.empty(3)) == 0


class TestTriangleFactor:
    """Test exact triangle factors."""

    def test_complete(self):
        result = triangle_factor_exact(Graph.complete(6))
        assert result.status == OracleStatus.FOUND
        assert len(result.witness) == 2

    def test_triangle_free(self):
        assert triangle_factor_exact(cycle(9)).status == OracleStatus.NONE

    def test_tripartite(self):
        assert triangle_factor_exact(complete_tripartite(3)).value is True

    def test_order_must_divide(self, c5):
        with pytest.raises(OracleError):
            triangle_factor_exact(c5)


class TestTuran:
    """Test ex(G, K_t) and the greedy partition."""

    def test_triangle_free_subgraph_of_k4(self, k4):
        result = turan_exact(k4, 3)
        assert result.status == OracleStatus.FOUND
        assert result.value == 4

    def test_k5_without_k5(self, k5):
        assert turan_exact(k5, 5).value == 9

    def test_already_free(self, k33):
        assert turan_exact(k33, 3).value == 9

    def test_greedy_k4(self, k4):
        partition = greedy_turan_partition(k4, 3)
        assert sorted(len(p) for p in partition.parts) == [2, 2]
        assert partition.cross_edges == 4

    def test_greedy_k6(self):
        partition = greedy_turan_partition(Graph.complete(6), 4)
        assert sorted(len(p) for p in partition.parts) == [2, 2, 2]
        assert partition.cross_edges == 12

    def test_greedy_bipartite_keeps_half(self, k33):
        partition = greedy_turan_partition(k33, 3)
        assert partition.cross_edges + partition.internal_edges == 9
        assert 2 * partition.cross_edges >= 9

    def test_greedy_needs_three_parts(self, k4):
        with pytest.raises(OracleError):
            greedy_turan_partition(k4, 2)


class TestGreedyProcedures:
    """Test greedy independent sets and the two-phase coloring."""

    def test_empty_graph_keeps_everything(self):
        assert greedy_independent(Graph.empty(4)).value == 4

    def test_pentagon(self, c5):
        assert greedy_independent(c5).value == 2

    def test_start_set(self, c5):
        result = greedy_independent(c5, start=[0, 1])
        assert result.value == 1

    def test_paley_101_meets_bound(self):
        lam = (math.sqrt(101) + 1) / 2
        result = greedy_independent(paley(101), d=50, lam=lam)
        assert result.value >= result.notes["bound"]

    def test_coloring_paley_25(self, paley25):
        result = greedy_coloring(paley25, 12, 3.0)
        assert is_proper_coloring(paley25, result.witness)
        assert result.value <= coloring_upper_bound(12, 3.0)

    def test_coloring_complete(self, k5):
        assert greedy_coloring(k5, 4, 1.0).value == 5

    def test_coloring_empty(self):
        assert greedy_coloring(Graph.empty(3), 0, 0.0).value == 1

    def test_coloring_needs_gap(self, k33):
        with pytest.raises(OracleError):
            greedy_coloring(k33, 3, 3.0)
