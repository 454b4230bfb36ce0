"""Unit tests for the graph families and the builder registry."""

import math
from itertools import combinations

import numpy as np
import pytest

from src.constructions import (
    SrgParams,
    alon_connection_set,
    alon_triangle_free,
    build,
    cayley_abelian,
    dgt_graph,
    gnp,
    inner_product_graph,
    lps,
    lps_generators,
    norm_graph,
    paley,
    paley_subfield_witnesses,
    pg_polarity,
    power_residue_cayley,
    random_regular,
)
from src.constructions.algebraic import describe_paley, describe_pg_polarity
from src.audits import Verdict, claims_verify, pattern_graph
from src.constructions.cayley import (
    describe_lps,
    lps_matrices,
    xor_cayley_graph,
    xor_cayley_spectrum,
    xor_odd_cycle_free,
)
from src.constructions.registry import family_names
from src.core.exceptions import ConstructionError
from src.graphs import girth, is_connected, is_triangle_free
from src.oracles import count_subgraph_copies
from src.spectral import circuit_count, extremal_lambda, full_spectrum, srg_detect


class TestPaley:
    """Test Paley graphs and their subfield witnesses."""

    def test_paley_5_is_pentagon(self, c5):
        assert paley(5).same_edges(c5)

    def test_paley_13(self, paley13):
        assert paley13.n == 13
        assert paley13.regular_degree == 6
        assert srg_detect(paley13) == SrgParams(13, 6, 2, 3)

    def test_paley_lambda(self, paley13):
        expected = (math.sqrt(13) + 1) / 2
        assert full_spectrum(paley13).lambda_abs == pytest.approx(expected, abs=1e-9)

    def test_paley_extension_field(self, paley25):
        assert srg_detect(paley25) == SrgParams(25, 12, 5, 6)

    def test_subfield_witnesses(self, paley25):
        clique, independent = paley_subfield_witnesses(25)
        assert len(clique) == len(independent) == 5
        for u, v in combinations(clique, 2):
            assert paley25.has_edge(u, v)
        for u, v in combinations(independent, 2):
            assert not paley25.has_edge(u, v)

    def test_witnesses_need_square_order(self):
        with pytest.raises(ConstructionError):
            paley_subfield_witnesses(13)

    def test_bad_orders(self):
        with pytest.raises(ConstructionError):
            paley(7)
        with pytest.raises(ConstructionError):
            paley(21)

    def test_descriptor_claims(self, paley13):
        descriptor = describe_paley(13, paley13)
        assert descriptor.claim("srg").value == [13, 6, 2, 3]
        assert descriptor.claim("lambda").value == pytest.approx((math.sqrt(13) + 1) / 2)
        assert descriptor.claim("clique_at_least") is None
        assert descriptor.label == "paley(q=13)"


class TestInnerProductAndNets:
    """Test H_k and the DGT line graphs."""

    def test_inner_product_5(self):
        g = inner_product_graph(5)
        assert g.n == 15
        assert srg_detect(g) == SrgParams(15, 6, 1, 3)
        assert full_spectrum(g).lambda_abs == pytest.approx(3.0, abs=1e-9)

    def test_inner_product_rejects_small_or_even(self):
        for k in (3, 4, 6):
            with pytest.raises(ConstructionError):
                inner_product_graph(k)

    def test_dgt_eigenvalues(self):
        g = dgt_graph(5, 3)
        assert g.n == 25
        assert g.regular_degree == 12
        nontrivial = full_spectrum(g).eigenvalues[1:]
        assert np.all(np.isclose(nontrivial, -3) | np.isclose(nontrivial, 2))

    def test_dgt_srg(self):
        assert srg_detect(dgt_graph(5, 3)) == SrgParams(25, 12, 5, 6)

    def test_all_directions_give_complete_graph(self):
        assert dgt_graph(5, 6).regular_degree == 24

    def test_dgt_line_override(self):
        g = dgt_graph(5, 2, lines=[0, 5])
        assert g.regular_degree == 8
        with pytest.raises(ConstructionError):
            dgt_graph(5, 2, lines=[0, 0])

    def test_dgt_k_range(self):
        with pytest.raises(ConstructionError):
            dgt_graph(5, 7)


class TestPolarityAndNormGraphs:
    """Test projective polarity graphs and norm graphs, loops included."""

    def test_pg_polarity_3_2(self):
        g = pg_polarity(3, 2)
        assert g.n == 13
        assert g.loop_count == 4
        assert g.regular_degree == 4
        spectrum = full_spectrum(g)
        assert spectrum.lambda_1 == pytest.approx(4.0)
        assert spectrum.lambda_abs == pytest.approx(math.sqrt(3), abs=1e-9)
        assert count_subgraph_copies(g, pattern_graph("C4")) == 0

    def test_square_identity(self):
        g = pg_polarity(2, 2)
        a = g.adjacency_matrix()
        assert g.n == 7
        np.testing.assert_array_equal(a @ a, np.ones((7, 7)) + 2 * np.eye(7))

    def test_pg_polarity_descriptor(self):
        g = pg_polarity(3, 2)
        descriptor = describe_pg_polarity(3, 2, g)
        assert descriptor.claim("loops").value == 4
        assert descriptor.claim("square_identity").value == 1

    def test_pg_polarity_needs_plane(self):
        with pytest.raises(ConstructionError):
            pg_polarity(3, 1)

    def test_norm_graph_3_3(self):
        g = norm_graph(3, 3)
        assert g.n == 18
        assert g.regular_degree == 8
        assert full_spectrum(g).lambda_abs == pytest.approx(3.0, abs=1e-9)

    def test_norm_graph_has_no_k33(self):
        a = norm_graph(3, 3).adjacency_matrix()
        for i, j, k in combinations(range(18), 3):
            assert (a[i] * a[j] * a[k]).sum() <= 2

    def test_norm_graph_without_loops(self):
        looped = norm_graph(3, 3)
        loopless = norm_graph(3, 3, loops=False)
        assert not loopless.has_loops
        assert looped.loop_count > 0
        # dropping a loop costs its vertex one unit of degree, so regularity is lost
        np.testing.assert_array_equal(loopless.degrees, looped.degrees - looped.loops)
        assert loopless.regular_degree is None

    def test_norm_graph_needs_t_at_least_3(self):
        with pytest.raises(ConstructionError):
            norm_graph(3, 2)


class TestCayleyGraphs:
    """Test abelian Cayley graphs against their character-predicted spectra."""

    def test_circulant_matches_prediction(self):
        g, predicted = cayley_abelian([7], [[1], [2], [5], [6]])
        np.testing.assert_allclose(full_spectrum(g).eigenvalues, predicted, atol=1e-9)

    def test_hypercube_spectrum(self):
        g, descriptor = build("hypercube", dim=4)
        assert g.n == 16
        multiplicities = [(round(v), m) for v, m in full_spectrum(g).multiplicities()]
        assert multiplicities == [(4, 1), (2, 4), (0, 6), (-2, 4), (-4, 1)]
        assert descriptor.vertex_transitive

    def test_connection_set_must_be_symmetric(self):
        with pytest.raises(ConstructionError):
            cayley_abelian([5], [[1]])

    def test_connection_set_excludes_identity(self):
        with pytest.raises(ConstructionError):
            cayley_abelian([5], [[0], [1], [4]])

    def test_power_residue_squares_are_paley(self, paley13):
        assert power_residue_cayley(13, 2).same_edges(paley13)

    def test_power_residue_cubes(self):
        g = power_residue_cayley(37, 3)
        assert g.n == 37
        assert g.regular_degree == 12
        assert full_spectrum(g).lambda_abs <= 2 * math.sqrt(37)

    def test_power_residue_rejects_asymmetric(self):
        with pytest.raises(ConstructionError):
            power_residue_cayley(7, 2)
        with pytest.raises(ConstructionError):
            power_residue_cayley(13, 5)


class TestBinaryCodeGraphs:
    """Test the triangle-free Cayley graphs on Z_2^(3k)."""

    def test_connection_set_size(self):
        connection = alon_connection_set(4)
        assert connection.size == 2**3 * (2**3 - 1)

    def test_odd_cycle_free(self):
        assert xor_odd_cycle_free(alon_connection_set(4), 1)
        # Q3 is bipartite; K4 on Z_2^2 has triangles
        assert xor_odd_cycle_free(np.array([1, 2, 4]), 3)
        assert not xor_odd_cycle_free(np.array([1, 2, 3]), 1)

    def test_walsh_hadamard_spectrum(self):
        g = xor_cayley_graph(np.array([1, 2, 4]), 3, name="Q3")
        np.testing.assert_allclose(
            full_spectrum(g).eigenvalues, xor_cayley_spectrum(np.array([1, 2, 4]), 3)
        )

    @pytest.mark.slow
    def test_alon_triangle_free_4(self):
        g = alon_triangle_free(4)
        assert g.n == 4096
        assert g.regular_degree == 56
        assert circuit_count(g, 3) == 0
        bound = 9 * 2**4 + 3 * 2**2 + 0.25
        spectrum = xor_cayley_spectrum(alon_connection_set(4), 12)
        assert spectrum[0] == 56
        assert np.abs(spectrum[1:]).max() <= bound
        assert extremal_lambda(g).lambda_abs <= bound

    @pytest.mark.slow
    def test_alon_triangle_free_5(self):
        g = alon_triangle_free(5)
        assert g.n == 2**15
        assert g.regular_degree == 2**4 * (2**4 - 1)
        # vertex-transitive, so the triangles through 0 are all of them up to translation
        assert is_triangle_free(g, [0])

    def test_small_triangle_free_example(self):
        assert is_triangle_free(xor_cayley_graph(np.array([1, 2, 4]), 3, name="Q3"))

    def test_bad_k(self):
        with pytest.raises(ConstructionError):
            alon_triangle_free(3)
        with pytest.raises(ConstructionError):
            alon_triangle_free(2)


class TestLps:
    """Test the PSL(2, q) Ramanujan graphs."""

    def test_generator_count(self):
        assert len(lps_generators(5)) == 6
        assert len(lps_generators(17)) == 18

    def test_matrices_are_distinct(self):
        matrices = lps_matrices(17, 13)
        assert len(set(matrices)) == 18

    @pytest.mark.slow
    def test_lps_17_13(self):
        g = lps(17, 13)
        assert g.n == 13 * (13 * 13 - 1) // 2
        assert g.regular_degree == 18
        assert is_connected(g)
        assert extremal_lambda(g).lambda_abs <= 2 * math.sqrt(17) + 1e-6
        assert girth(g) == 3
        found = {f.id: f for f in claims_verify(g, describe_lps(17, 13, g))}
        assert found["claim.girth"].verdict == Verdict.PASS
        assert found["claim.girth"].lhs == pytest.approx(2 * math.log(13) / math.log(17))
        assert found["claim.girth"].rhs == 3.0

    def test_parameter_checks(self):
        with pytest.raises(ConstructionError):
            lps(5, 5)
        with pytest.raises(ConstructionError):
            lps(3, 13)
        with pytest.raises(ConstructionError):
            lps(5, 13)  # 5 is not a square mod 13


class TestRandomModels:
    """Test the seeded random families."""

    def test_gnp_is_deterministic(self):
        assert gnp(30, 0.3, seed=1) == gnp(30, 0.3, seed=1)
        assert gnp(30, 0.3, seed=1) != gnp(30, 0.3, seed=2)

    def test_gnp_extremes(self):
        assert gnp(6, 0.0).m == 0
        assert gnp(6, 1.0).m == 15

    def test_gnp_probability_range(self):
        with pytest.raises(ConstructionError):
            gnp(5, 1.5)

    def test_random_regular(self):
        g = random_regular(20, 3, seed=2)
        assert g.regular_degree == 3
        assert not g.has_loops
        assert g == random_regular(20, 3, seed=2)

    def test_random_regular_parity(self):
        with pytest.raises(ConstructionError):
            random_regular(5, 3)
        with pytest.raises(ConstructionError):
            random_regular(4, 4)


class TestRegistry:
    """Test build() parameter handling."""

    def test_family_names(self):
        names = family_names()
        assert names == sorted(names)
        assert {"paley", "lps", "gnp", "hypercube"} <= set(names)

    def test_build_unpacks(self):
        g, descriptor = build("paley", q=13)
        assert g.n == 13
        assert descriptor.family == "paley"

    def test_parameters_are_coerced(self):
        g, _ = build("paley", q="13")
        assert g.regular_degree == 6

    def test_seed_defaults_to_zero(self):
        _, descriptor = build("gnp", n=10, p=0.5)
        assert descriptor.params["seed"] == 0

    def test_circulant_steps(self, c5):
        g, _ = build("circulant", n=5, steps="1")
        assert g.same_edges(c5)

    def test_unknown_family(self):
        with pytest.raises(ConstructionError):
            build("nope")

    def test_missing_and_unknown_parameters(self):
        with pytest.raises(ConstructionError):
            build("paley")
        with pytest.raises(ConstructionError):
            build("paley", q=13, k=2)

    def test_random_claims_are_advisory(self):
        _, descriptor = build("random_regular", n=20, d=3, seed=1)
        assert descriptor.claim("lambda_bound").advisory
        assert not descriptor.claim("degree").advisory
