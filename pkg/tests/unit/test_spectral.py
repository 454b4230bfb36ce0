"""Unit tests for eigensolvers, strongly regular spectra and walk counts."""

import math

import numpy as np
import pytest

from src.constructions import SrgParams, paley
from src.core.exceptions import DenseCapExceeded, SpectralError
from src.graphs import Graph
from src.spectral import (
    circuit_count,
    extremal_lambda,
    full_spectrum,
    property_scores,
    smallest_eigenvalue,
    spectral_summary,
    srg_detect,
    srg_spectrum,
    walk_matrix,
)
from src.spectral.walks import regular_lambda_lower_bound, trace_identity_gap

GOLDEN = (1 + math.sqrt(5)) / 2


class TestFullSpectrum:
    """Test the dense eigensolver on graphs with known spectra."""

    def test_complete_graph(self, k4):
        spectrum = full_spectrum(k4)
        np.testing.assert_allclose(spectrum.eigenvalues, [3, -1, -1, -1], atol=1e-12)
        assert spectrum.lambda_abs == pytest.approx(1.0)
        assert [(round(v), m) for v, m in spectrum.multiplicities()] == [(3, 1), (-1, 3)]

    def test_pentagon(self, c5):
        spectrum = full_spectrum(c5)
        assert spectrum.lambda_1 == pytest.approx(2.0)
        assert spectrum.lambda_2 == pytest.approx(GOLDEN - 1)
        assert spectrum.lambda_abs == pytest.approx(GOLDEN)
        assert spectrum.lambda_min == pytest.approx(-GOLDEN)

    def test_petersen_is_ramanujan(self, petersen):
        spectrum = full_spectrum(petersen)
        assert [(round(v), m) for v, m in spectrum.multiplicities()] == [(3, 1), (1, 5), (-2, 4)]
        assert spectrum.is_ramanujan(3)
        assert spectrum.spectral_gap == pytest.approx(1.0)

    def test_bipartite_has_no_gap(self, k33):
        spectrum = full_spectrum(k33)
        assert spectrum.lambda_abs == pytest.approx(3.0)
        assert spectrum.spectral_gap == pytest.approx(0.0, abs=1e-9)

    def test_residuals_within_tolerance(self, paley13):
        spectrum = full_spectrum(paley13)
        assert spectrum.max_residual <= spectrum.tolerance

    def test_dense_cap(self, petersen):
        with pytest.raises(DenseCapExceeded) as excinfo:
            full_spectrum(petersen, dense_cap=5)
        assert excinfo.value.cap == 5


class TestExtremalSolvers:
    """Test the Lanczos path against closed forms."""

    def test_small_graphs_use_dense_path(self, c5):
        extremal = extremal_lambda(c5)
        assert extremal.lambda_abs == pytest.approx(GOLDEN)

    def test_paley_101(self):
        g = paley(101)
        extremal = extremal_lambda(g)
        assert extremal.lambda_1 == pytest.approx(50.0, rel=1e-8)
        assert extremal.lambda_abs == pytest.approx((math.sqrt(101) + 1) / 2, rel=1e-6)
        assert smallest_eigenvalue(g) == pytest.approx(-(math.sqrt(101) + 1) / 2, rel=1e-6)

    def test_summary_switches_method(self):
        g = paley(101)
        assert spectral_summary(g).method == "dense"
        summary = spectral_summary(g, dense_cap=50)
        assert summary.method == "lanczos"
        assert summary.spectrum is None
        assert summary.lambda_abs == pytest.approx((math.sqrt(101) + 1) / 2, rel=1e-6)

    def test_tolerance_must_be_positive(self, c5):
        with pytest.raises(ValueError):
            extremal_lambda(c5, tol=0)


class TestStronglyRegular:
    """Test closed-form srg spectra and detection from codegrees."""

    def test_pentagon_is_conference(self):
        spectrum = srg_spectrum(SrgParams(5, 2, 0, 1))
        assert spectrum.conference
        assert spectrum.s_2 == spectrum.s_3 == 2
        assert spectrum.lambda_2 == pytest.approx(GOLDEN - 1)

    def test_paley_13(self, paley13):
        spectrum = srg_spectrum(SrgParams(13, 6, 2, 3))
        assert spectrum.conference
        np.testing.assert_allclose(
            spectrum.eigenvalues(), full_spectrum(paley13).eigenvalues, atol=1e-9
        )

    def test_integral_spectrum(self):
        spectrum = srg_spectrum(SrgParams(15, 6, 1, 3))
        assert (spectrum.lambda_2, spectrum.lambda_3) == (1.0, -3.0)
        assert (spectrum.s_2, spectrum.s_3) == (9, 5)
        assert not spectrum.conference

    def test_petersen(self, petersen):
        params = srg_detect(petersen)
        assert params == SrgParams(10, 3, 0, 1)
        spectrum = srg_spectrum(params)
        assert (spectrum.s_2, spectrum.s_3) == (5, 4)

    def test_infeasible(self):
        with pytest.raises(SpectralError):
            srg_spectrum(SrgParams(13, 6, 2, 2))

    def test_detect_rejects(self, path3, k4, c6):
        assert srg_detect(path3) is None
        assert srg_detect(k4) is None
        assert srg_detect(c6) is None
        assert srg_detect(Graph.from_edge_list(2, [(0, 0), (1, 1)])) is None

    def test_detect_pentagon(self, c5):
        assert srg_detect(c5) == SrgParams(5, 2, 0, 1)


class TestWalks:
    """Test exact closed-walk counts."""

    def test_triangle(self):
        assert circuit_count(Graph.complete(3), 3) == 6

    def test_two_walks_count_edges_twice(self, c5, k4):
        assert circuit_count(c5, 2) == 10
        assert circuit_count(k4, 1) == 0

    def test_large_counts_are_exact(self):
        # Tr (J - I)^t = (n - 1)^t + (n - 1)(-1)^t
        assert circuit_count(Graph.complete(10), 30) == 9**30 + 9

    def test_matches_spectrum(self, petersen):
        assert trace_identity_gap(petersen, 4) < 1e-9

    def test_length_must_be_positive(self, c5):
        with pytest.raises(ValueError):
            circuit_count(c5, 0)

    def test_walk_matrix(self, path3):
        np.testing.assert_array_equal(
            walk_matrix(path3, 2), [[1, 0, 1], [0, 2, 0], [1, 0, 1]]
        )

    def test_regular_lower_bound(self):
        assert regular_lambda_lower_bound(10, 3) == pytest.approx(math.sqrt(21 / 9))
        assert regular_lambda_lower_bound(1, 0) == 0.0


class TestPropertyScores:
    """Test the quasi-random deviation scores."""

    def test_exhaustive_scores(self, paley13):
        scores = property_scores(paley13, 0.5)
        assert [name for name, _ in scores.chain()] == ["CIRCUIT(4)", "EIG", "DISC"]
        assert scores.disc_method == "exhaustive"
        assert scores.eig_top == pytest.approx(1 / 13)
        assert scores.u_walk is not None
        assert scores.p6 is not None

    def test_sampled_scores_are_deterministic(self):
        g = paley(29)
        first = property_scores(g, 0.5, sample_budget=200, seed=3)
        second = property_scores(g, 0.5, sample_budget=200, seed=3)
        assert first.disc_method == "sampled"
        assert first.disc_pairs == 400
        assert first.to_dict() == second.to_dict()

    def test_density_range(self, c5):
        with pytest.raises(ValueError):
            property_scores(c5, 1.0)
