"""Unit tests for audit findings, the individual audits and claim verification."""

import math

import pytest

from src.audits import (
    AuditContext,
    AuditReport,
    Finding,
    Method,
    Verdict,
    audit_alpha_chi,
    audit_connectivity,
    audit_hamiltonicity,
    audit_irregular_mixing,
    audit_jumbledness,
    audit_maxcut,
    audit_mixing,
    audit_subgraphs,
    audit_turan,
    claims_verify,
    full_report,
    pattern_graph,
    verify_claim,
)
from src.audits.report import check, within
from src.constructions import Claim, Relation, build
from src.constructions.algebraic import describe_paley
from src.core.exceptions import ClaimsSchemaError, GraphError, SoundnessViolation
from src.graphs import Graph
from src.spectral import SpectralSummary
from src.utils.config import RunConfig


def by_id(findings):
    return {f.id: f for f in findings}


class TestFindings:
    """Test the tolerance rule and report bookkeeping."""

    def test_within(self):
        assert within(1.0, 1.0)
        assert within(1.0 + 5e-7, 1.0)
        assert not within(1.0 + 2e-6, 1.0)
        assert within(1000.0 + 5e-4, 1000.0)

    def test_check(self):
        passed = check("example", 2.0, 3.0)
        assert passed.verdict == Verdict.PASS
        assert passed.slack == pytest.approx(1.0)
        assert check("example", 3.0, 2.0).verdict == Verdict.FAIL

    def test_report_sorts_and_raises(self):
        report = AuditReport(graph={}, header={})
        report.add([check("b", 2.0, 1.0), check("a", 1.0, 2.0)])
        assert [f.id for f in report.findings] == ["a", "b"]
        assert report.verdict_counts() == {"fail": 1, "pass": 1}
        with pytest.raises(SoundnessViolation) as excinfo:
            report.raise_for_violations()
        assert [f.id for f in excinfo.value.findings] == ["b"]

    def test_failed_claim_is_a_violation(self):
        report = AuditReport(graph={}, header={}, claims=[Finding("claim.n", 3, 4, Verdict.FAIL)])
        assert len(report.violations()) == 1

    def test_optional_fields_omitted(self):
        payload = Finding("x", None, None, Verdict.VACUOUS).to_dict()
        assert "seed" not in payload
        assert "notes" not in payload


class TestMixing:
    """Test the expander mixing lemma audits."""

    def test_exhaustive_petersen(self, petersen):
        (finding,) = audit_mixing(petersen)
        assert finding.id == "expander_mixing"
        assert finding.verdict == Verdict.PASS
        assert finding.method == Method.EXHAUSTIVE
        assert finding.notes["sets"] == 2**10

    def test_sampled_paley(self, paley13):
        context = AuditContext.for_graph(paley13, RunConfig(sample_budget=200, seed=5))
        (finding,) = audit_mixing(paley13, context=context)
        assert finding.method == Method.SAMPLED
        assert finding.seed == 5
        assert finding.verdict == Verdict.PASS

    def test_understated_lambda_fails(self, petersen):
        summary = SpectralSummary(3.0, 0.1, -0.1, "dense")
        context = AuditContext(petersen, RunConfig(), summary)
        (finding,) = audit_mixing(petersen, context=context)
        assert finding.verdict == Verdict.FAIL
        assert finding.notes["violations"] > 0

    def test_irregular_without_gap(self, path3):
        (finding,) = audit_mixing(path3)
        assert finding.id == "irregular_mixing"
        assert finding.verdict == Verdict.HYPOTHESIS_NOT_MET

    def test_irregular_pair(self, petersen):
        g = Graph.from_edge_list(10, petersen.edges() + [(0, 2)])
        finding = audit_irregular_mixing(g, range(5), range(5, 10))
        assert finding.id == "irregular_mixing"
        assert finding.notes["K"] == pytest.approx(1.6)
        assert finding.lhs is not None

    def test_jumbledness(self, petersen):
        estimate, findings = audit_jumbledness(petersen)
        found = by_id(findings)
        assert estimate.method == Method.EXHAUSTIVE
        assert estimate.subsets == 2**10 - 1
        assert estimate.p == pytest.approx(1 / 3)
        assert found["jumbledness"].verdict == Verdict.SCORE
        assert found["jumbledness_complement"].verdict == Verdict.PASS
        assert found["codegree_jumbledness"].verdict == Verdict.PASS

    def test_jumbledness_tiny_graph(self):
        _, findings = audit_jumbledness(Graph.empty(1))
        assert findings[0].verdict == Verdict.VACUOUS


class TestStructure:
    """Test connectivity, alpha/chi, max-cut and Hamiltonicity audits."""

    def test_connectivity_paley(self, paley13):
        found = by_id(audit_connectivity(paley13))
        assert found["edge_connectivity"].verdict == Verdict.PASS
        assert found["vertex_connectivity"].verdict == Verdict.VACUOUS
        assert found["perfect_matching"].verdict == Verdict.HYPOTHESIS_NOT_MET

    def test_connectivity_matching(self, petersen):
        found = by_id(audit_connectivity(petersen.complement()))
        assert found["perfect_matching"].verdict == Verdict.PASS
        assert found["edge_connectivity"].verdict == Verdict.PASS

    def test_connectivity_irregular(self, path3):
        findings = audit_connectivity(path3)
        assert {f.verdict for f in findings} == {Verdict.HYPOTHESIS_NOT_MET}

    def test_alpha_chi_paley_13(self, paley13):
        found = by_id(audit_alpha_chi(paley13))
        assert set(found) == {"alpha_greedy", "alpha_upper", "chi_greedy", "chi_lower"}
        assert all(f.verdict == Verdict.PASS for f in found.values())

    def test_alpha_bound_is_tight_on_paley_25(self, paley25):
        finding = by_id(audit_alpha_chi(paley25))["alpha_upper"]
        assert finding.lhs == 5
        assert finding.slack == pytest.approx(0.0, abs=1e-9)
        assert finding.verdict == Verdict.PASS

    def test_maxcut_complete(self, k4):
        found = by_id(audit_maxcut(k4))
        assert found["maxcut_spectral"].lhs == 4
        assert found["maxcut_spectral"].rhs == pytest.approx(4.0)
        assert found["maxcut_half"].verdict == Verdict.PASS

    def test_maxcut_irregular(self, path3):
        assert audit_maxcut(path3)[0].verdict == Verdict.HYPOTHESIS_NOT_MET

    def test_hamiltonicity_paley(self, paley13):
        found = by_id(audit_hamiltonicity(paley13))
        assert found["hamilton_chvatal_erdos"].verdict == Verdict.PASS
        assert found["hamilton_chvatal_erdos"].notes["search"] == "found"
        assert found["hamilton_spectral"].verdict == Verdict.HYPOTHESIS_NOT_MET
        assert found["hamilton_polylog"].verdict == Verdict.HYPOTHESIS_NOT_MET

    def test_hamiltonicity_petersen(self, petersen):
        found = by_id(audit_hamiltonicity(petersen))
        assert found["hamilton_chvatal_erdos"].verdict == Verdict.HYPOTHESIS_NOT_MET


class TestSubgraphs:
    """Test pattern parsing, subgraph counts and Turan audits."""

    def test_pattern_names(self):
        assert pattern_graph("K2,3").m == 6
        assert pattern_graph("c5").label == "C5"
        assert pattern_graph("P4").m == 3
        for bad in ("X", "K7", "C2"):
            with pytest.raises(GraphError):
                pattern_graph(bad)

    def test_triangles_in_paley(self, paley13):
        found = by_id(audit_subgraphs(paley13, pattern_graph("K3")))
        count = found["subgraph_count.K3"]
        assert count.verdict == Verdict.SCORE
        assert count.lhs == 156
        assert count.rhs == pytest.approx(216.0)
        assert count.notes["copies"] == 26
        assert found["clique_threshold.K3"].verdict == Verdict.HYPOTHESIS_NOT_MET

    def test_odd_cycle_margin(self, paley13):
        found = by_id(audit_subgraphs(paley13, pattern_graph("C5")))
        assert found["odd_cycle_threshold.C5"].verdict == Verdict.SCORE

    def test_turan_complete(self, k4):
        found = by_id(audit_turan(k4, 3))
        assert found["turan_greedy"].verdict == Verdict.PASS
        assert found["turan"].verdict == Verdict.PASS
        assert found["turan"].rhs == 4
        assert found["turan_spectral"].lhs == pytest.approx(9 / 4)

    def test_turan_irregular(self, path3):
        assert {f.verdict for f in audit_turan(path3)} == {Verdict.HYPOTHESIS_NOT_MET}


class TestClaims:
    """Test claim re-verification."""

    def test_paley_claims_hold(self, paley13):
        findings = claims_verify(paley13, describe_paley(13, paley13))
        assert findings
        assert all(f.verdict == Verdict.PASS for f in findings)
        assert [f.id for f in findings] == sorted(f.id for f in findings)

    def test_false_lambda_fails(self, paley13):
        descriptor = describe_paley(13, paley13)
        descriptor.claim("lambda").value = 1.0
        found = by_id(claims_verify(paley13, descriptor))
        assert found["claim.lambda"].verdict == Verdict.FAIL

    @pytest.mark.parametrize(
        "family,params",
        [
            ("pg_polarity", {"q": 3, "t": 2}),
            ("norm_graph", {"p": 3, "t": 3}),
            ("dgt", {"q": 5, "k": 3}),
            ("paley", {"q": 25}),
            ("inner_product", {"k": 5}),
        ],
    )
    def test_builder_claims_hold(self, family, params):
        g, descriptor = build(family, **params)
        findings = claims_verify(g, descriptor)
        assert [f.id for f in findings if f.verdict != Verdict.PASS] == []

    def test_lower_bound_orientation(self, paley25):
        _, descriptor = build("paley", q=25)
        found = by_id(claims_verify(paley25, descriptor))
        clique = found["claim.clique_at_least"]
        assert (clique.lhs, clique.rhs) == (5.0, 5.0)

    def test_advisory_claims_score(self):
        g, descriptor = build("random_regular", n=20, d=3, seed=1)
        found = by_id(claims_verify(g, descriptor))
        assert found["claim.lambda_bound"].verdict == Verdict.SCORE
        assert found["claim.degree"].verdict == Verdict.PASS

    def test_unknown_claim(self, paley13):
        context = AuditContext.for_graph(paley13)
        with pytest.raises(ClaimsSchemaError):
            verify_claim(Claim("colour", Relation.EQUAL, 3), context)

    def test_broken_claim_is_an_error(self, paley13):
        context = AuditContext.for_graph(paley13)
        finding = verify_claim(Claim("girth", Relation.AT_LEAST, "abc"), context)
        assert finding.verdict == Verdict.ERROR
        assert "error" in finding.notes


class TestRunner:
    """Test the full report."""

    def test_paley_report(self, paley13):
        _, descriptor = build("paley", q=13)
        report = full_report(paley13, RunConfig(sample_budget=200), descriptor)
        assert report.violations() == []
        assert [f.id for f in report.findings] == sorted(f.id for f in report.findings)
        assert report.claims
        assert report.header["lambda"] == pytest.approx((math.sqrt(13) + 1) / 2)
        assert "jumbledness" in report.extras
        assert report.graph["descriptor"]["family"] == "paley"

    def test_threads_do_not_change_the_report(self, petersen):
        single = full_report(petersen, RunConfig(sample_budget=200, threads=1))
        pooled = full_report(petersen, RunConfig(sample_budget=200, threads=4))
        single.config.pop("threads")
        pooled.config.pop("threads")
        assert single.to_dict() == pooled.to_dict()

    def test_failing_step_becomes_error(self, petersen):
        report = full_report(petersen, RunConfig(sample_budget=200), patterns=["Q9"])
        assert report.finding("subgraphs.Q9").verdict == Verdict.ERROR
        assert report.finding("expander_mixing") is not None
