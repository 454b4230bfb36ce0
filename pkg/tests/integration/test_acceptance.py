"""Desk-scale acceptance scenarios across constructions, audits and experiments."""

import math

import pytest

from src.audits import Verdict, audit_alpha_chi, audit_connectivity, audit_mixing, full_report
from src.constructions import build, lps, paley, random_regular
from src.graphs import Graph, edge_connectivity, vertex_connectivity
from src.randomlab import dual_branching_root, giant_component_experiment, mst_experiment
from src.randomlab.experiments import ZETA_3
from src.utils.config import RunConfig

pytestmark = [pytest.mark.integration, pytest.mark.slow]


def cycle(n: int) -> Graph:
    return Graph.from_edge_list(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def test_mixing_lemma_exhaustive():
    graphs = [random_regular(10, 3, seed=s) for s in range(10)] + [cycle(12)]
    for g in graphs:
        (finding,) = audit_mixing(g)
        assert finding.verdict != Verdict.FAIL, g.label
        assert finding.notes["sets"] == 2**g.n


def test_alpha_chi_bounds_are_attained(paley25):
    found = {f.id: f for f in audit_alpha_chi(paley25)}
    assert found["alpha_upper"].lhs == 5
    assert found["chi_lower"].rhs == 5
    assert found["alpha_upper"].slack == pytest.approx(0.0, abs=1e-9)
    assert found["chi_lower"].slack == pytest.approx(0.0, abs=1e-9)


def test_paley_13_connectivity(paley13):
    assert vertex_connectivity(paley13) == 6
    assert edge_connectivity(paley13) == 6
    found = {f.id: f for f in audit_connectivity(paley13)}
    assert found["edge_connectivity"].verdict == Verdict.PASS


def test_giant_component_on_lps():
    root = dual_branching_root(2.0)
    assert abs(root * math.exp(-root) - 2.0 * math.exp(-2.0)) <= 1e-12
    curve = giant_component_experiment(lps(17, 13), [0.5, 2.0], trials=200, seed=0)
    subcritical, supercritical = curve.points
    assert subcritical.fraction(lambda v: v <= 0.1) >= 0.95
    assert supercritical.reference == pytest.approx(1 - root / 2)
    assert abs(supercritical.mean - supercritical.reference) <= 0.04


def test_mst_on_paley_1009():
    g = paley(1009)
    estimate = mst_experiment(g, trials=30, seed=0)
    assert estimate.reference == pytest.approx(1009 / 504 * ZETA_3)
    assert abs(estimate.mean - estimate.reference) <= 0.10 * estimate.reference


@pytest.mark.parametrize(
    "family,params",
    [("paley", {"q": 13}), ("inner_product", {"k": 5}), ("dgt", {"q": 5, "k": 3})],
)
def test_no_soundness_violations(family, params):
    g, descriptor = build(family, **params)
    report = full_report(g, RunConfig(sample_budget=500), descriptor)
    assert report.violations() == []
    assert report.finding("expander_mixing").verdict == Verdict.PASS
    assert math.isfinite(report.header["lambda"])
