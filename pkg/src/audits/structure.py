"""
Structural Audits
Connectivity, independence and coloring, max-cut and Hamiltonicity against
their spectral bounds, with exact oracles as ground truth.
"""

import math
from typing import List, Optional

import numpy as np

from ..graphs.connectivity import edge_connectivity, vertex_connectivity
from ..graphs.core import Graph
from ..oracles.cuts import exact_maxcut, local_search_maxcut
from ..oracles.hamilton import hamilton_search
from ..oracles.independence import (
    coloring_upper_bound,
    exact_alpha,
    exact_chi,
    greedy_coloring,
    greedy_independent,
    independent_set_lower_bound,
)
from ..oracles.matching import matching
from ..oracles.result import OracleResult, OracleStatus
from ..utils.logging import get_logger
from .context import AuditContext
from .report import Finding, Method, Verdict, check, note, within

logger = get_logger(__name__)

HAMILTON_SEARCH_MAX_N = 40
DENSE_FRACTION = 0.9


def _not_regular(context: AuditContext, ids: List[str]) -> Optional[List[Finding]]:
    if context.regular and context.d > 0:
        return None
    reason = "graph is not regular" if not context.regular else "graph has no edges"
    return [note(i, Verdict.HYPOTHESIS_NOT_MET, notes={"reason": reason}) for i in ids]


def _simple(context: AuditContext) -> Graph:
    return context.memo("simple", context.graph.without_loops)


def _kappa(context: AuditContext) -> int:
    return context.memo("kappa", lambda: vertex_connectivity(_simple(context)))


def _alpha(context: AuditContext, loopless: bool = False) -> Optional[OracleResult]:
    """Exact alpha when n is within the oracle range (loops excluded or removed)."""
    if context.n > context.config.oracle_max_n:
        return None
    g = _simple(context) if loopless else context.graph
    key = "alpha_simple" if loopless else "alpha"
    return context.memo(key, lambda: exact_alpha(g, context.config.alpha_budget))


def _chi(context: AuditContext) -> Optional[OracleResult]:
    if context.n > context.config.oracle_max_n or context.graph.has_loops:
        return None
    return context.memo("chi", lambda: exact_chi(context.graph, context.config.chi_budget))


# Connectivity


def audit_connectivity(
    g: Graph, lam: Optional[float] = None, context: Optional[AuditContext] = None
) -> List[Finding]:
    """kappa >= d - 36 lambda^2 / d (d <= n/2), the codegree route to
    d-connectivity, and d-edge-connectivity plus a perfect matching when
    d - lambda >= 2."""
    context = context or AuditContext.for_graph(g)
    ids = ["codegree_connectivity", "edge_connectivity", "perfect_matching", "vertex_connectivity"]
    skipped = _not_regular(context, ids)
    if skipped:
        return skipped
    if g.has_loops or g.n < 2:
        reason = "graph has loops" if g.has_loops else "n < 2"
        return [note(i, Verdict.HYPOTHESIS_NOT_MET, notes={"reason": reason}) for i in ids]

    n, d, tol = g.n, context.d, context.tol
    lam = context.lam if lam is None else float(lam)
    kappa = _kappa(context)
    kappa_edge = context.memo("kappa_edge", lambda: edge_connectivity(g))
    findings = []

    bound = d - 36 * lam * lam / d
    notes = {"kappa": kappa, "kappa_edge": kappa_edge}
    if d > n / 2 or bound <= 0:
        verdict = Verdict.HYPOTHESIS_NOT_MET if d > n / 2 else Verdict.VACUOUS
        findings.append(
            note("vertex_connectivity", verdict, bound, kappa, Method.ORACLE, notes=notes)
        )
    else:
        findings.append(check("vertex_connectivity", bound, kappa, Method.ORACLE, tol, notes=notes))

    findings.append(_codegree_connectivity(context, kappa))

    edge_notes = {"kappa_edge": kappa_edge, "threshold_margin": kappa_edge * math.log(n) / d}
    gap_ok = d - lam >= 2 - tol
    if gap_ok:
        edge = check("edge_connectivity", d, kappa_edge, Method.ORACLE, tol, notes=edge_notes)
    else:
        edge = note(
            "edge_connectivity",
            Verdict.HYPOTHESIS_NOT_MET,
            d,
            kappa_edge,
            Method.ORACLE,
            notes=edge_notes,
        )
    findings.append(edge)

    if n % 2 or not gap_ok:
        reason = "n odd; matching skipped" if n % 2 else "d - lambda < 2"
        findings.append(
            note("perfect_matching", Verdict.HYPOTHESIS_NOT_MET, notes={"reason": reason})
        )
    else:
        result = matching(g, seed=context.config.seed)
        if result.status == OracleStatus.FOUND:
            verdict = Verdict.PASS
        elif result.randomized:
            verdict = Verdict.INCONCLUSIVE
        else:
            verdict = Verdict.FAIL
        findings.append(
            note(
                "perfect_matching",
                verdict,
                method=Method.ORACLE,
                notes={"exists": bool(result.value), "randomized": result.randomized},
            )
        )
    return findings


def _codegree_connectivity(context: AuditContext, kappa: int) -> Finding:
    """Advisory: sqrt(n) log n < d <= 3n/4 and codegrees (1 + o(1)) d^2 / n give kappa = d."""
    g, n, d = context.graph, context.n, context.d
    adjacency = g.sparse_adjacency()
    square = (adjacency @ adjacency).tocoo()
    upper = square.row < square.col
    values = square.data[upper].astype(np.float64)
    expected = d * d / n
    deviation = float(np.abs(values - expected).max()) if values.size else 0.0
    if values.size < n * (n - 1) // 2:
        # pairs with no common neighbour
        deviation = max(deviation, expected)
    deviation /= expected
    notes = {
        "kappa": kappa,
        "d": d,
        "in_degree_range": math.sqrt(n) * math.log(n) < d <= 0.75 * n,
        "kappa_equals_d": kappa == d,
    }
    return note("codegree_connectivity", Verdict.SCORE, lhs=deviation, notes=notes)


# Independence and coloring


def audit_alpha_chi(g: Graph, context: Optional[AuditContext] = None) -> List[Finding]:
    """alpha <= lambda n/(d + lambda), chi >= 1 + d/lambda, and the greedy
    guarantees for independent sets and colorings when lambda < d <= 0.9 n."""
    context = context or AuditContext.for_graph(g)
    ids = ["alpha_greedy", "alpha_upper", "chi_greedy", "chi_lower"]
    skipped = _not_regular(context, ids)
    if skipped:
        return skipped
    n, d, lam, tol = g.n, context.d, context.lam, context.tol
    findings = []
    alpha = _alpha(context)
    known_alpha = alpha.value if alpha is not None and alpha.is_known else None
    greedy = greedy_independent(g)

    # alpha <= lambda n / (d + lambda)
    bound = lam * n / (d + lam)
    if known_alpha is not None:
        findings.append(check("alpha_upper", known_alpha, bound, Method.ORACLE, tol))
    elif not within(greedy.value, bound, tol):
        findings.append(check("alpha_upper", greedy.value, bound, Method.HEURISTIC, tol))
    else:
        reason = {"reason": "alpha unknown; greedy value is a lower bound"}
        findings.append(
            note(
                "alpha_upper",
                Verdict.INCONCLUSIVE,
                greedy.value,
                bound,
                Method.HEURISTIC,
                notes=reason,
            )
        )

    # chi >= 1 + d / lambda
    loops = {"reason": "graph has loops"}
    if g.has_loops:
        findings.append(note("chi_lower", Verdict.HYPOTHESIS_NOT_MET, notes=loops))
    elif lam <= 0:
        findings.append(note("chi_lower", Verdict.VACUOUS, notes={"reason": "lambda = 0"}))
    else:
        findings.append(_chi_lower(context, 1 + d / lam))

    dense_ok = lam < d <= DENSE_FRACTION * n
    if not dense_ok:
        reason = {"reason": "needs lambda < d <= 0.9 n"}
        findings.append(note("alpha_greedy", Verdict.HYPOTHESIS_NOT_MET, notes=reason))
        findings.append(note("chi_greedy", Verdict.HYPOTHESIS_NOT_MET, notes=reason))
        return findings

    # greedy independent set of size >= n/(2(d - lambda)) ln((d - lambda)/(lambda + 1) + 1)
    floor = independent_set_lower_bound(n, d, lam, n)
    notes = {"greedy": greedy.value}
    if within(floor, greedy.value, tol):
        findings.append(
            check("alpha_greedy", floor, greedy.value, Method.HEURISTIC, tol, notes=notes)
        )
    elif known_alpha is not None:
        findings.append(check("alpha_greedy", floor, known_alpha, Method.ORACLE, tol, notes=notes))
    else:
        findings.append(
            note(
                "alpha_greedy",
                Verdict.INCONCLUSIVE,
                floor,
                greedy.value,
                Method.HEURISTIC,
                notes=notes,
            )
        )

    # coloring with at most 6(d - lambda)/ln((d - lambda)/(lambda + 1) + 1) colors
    if g.has_loops:
        findings.append(note("chi_greedy", Verdict.HYPOTHESIS_NOT_MET, notes=loops))
        return findings
    ceiling = coloring_upper_bound(d, lam)
    colored = greedy_coloring(g, d, lam)
    notes = {"greedy": colored.value, **colored.notes}
    chi = _chi(context)
    if within(colored.value, ceiling, tol):
        findings.append(
            check("chi_greedy", colored.value, ceiling, Method.HEURISTIC, tol, notes=notes)
        )
    elif chi is not None and chi.is_known:
        findings.append(check("chi_greedy", chi.value, ceiling, Method.ORACLE, tol, notes=notes))
    else:
        findings.append(
            note(
                "chi_greedy",
                Verdict.INCONCLUSIVE,
                colored.value,
                ceiling,
                Method.HEURISTIC,
                notes=notes,
            )
        )
    return findings


def _chi_lower(context: AuditContext, bound: float) -> Finding:
    tol = context.tol
    chi = _chi(context)
    if chi is not None and chi.is_known:
        return check("chi_lower", bound, chi.value, Method.ORACLE, tol)
    if chi is not None and chi.bounds is not None:
        lower, upper = chi.bounds
        notes = {"bounds": [lower, upper]}
        if not within(bound, upper, tol):
            return check("chi_lower", bound, upper, Method.ORACLE, tol, notes=notes)
        if within(bound, lower, tol):
            return check("chi_lower", bound, lower, Method.ORACLE, tol, notes=notes)
        return note("chi_lower", Verdict.INCONCLUSIVE, bound, upper, Method.ORACLE, notes=notes)
    # a greedy coloring only bounds chi from above; it can refute but not confirm
    colors = None
    if context.lam < context.d:
        colors = greedy_coloring(context.graph, context.d, context.lam).value
    if colors is not None and not within(bound, colors, tol):
        return check("chi_lower", bound, colors, Method.HEURISTIC, tol)
    return note("chi_lower", Verdict.INCONCLUSIVE, bound, colors, Method.HEURISTIC)


# Max-cut


def audit_maxcut(g: Graph, context: Optional[AuditContext] = None) -> List[Finding]:
    """f(G) <= (d - lambda_n) n / 4, i.e. m/2 - lambda_n n/4 with m = dn/2."""
    context = context or AuditContext.for_graph(g)
    if not context.regular:
        reason = {"reason": "graph is not regular"}
        return [note("maxcut_spectral", Verdict.HYPOTHESIS_NOT_MET, notes=reason)]
    config = context.config
    bound = (context.d - context.lam_min) * g.n / 4
    half = (g.m - g.loop_count) / 2
    if g.n <= config.maxcut_exact_max_n:
        result = exact_maxcut(g, config.maxcut_exact_max_n)
        finding = check("maxcut_spectral", result.value, bound, Method.ORACLE, context.tol)
        lower = result.value
    else:
        result = local_search_maxcut(g, config.seed)
        lower = result.bounds[0]
        finding = check(
            "maxcut_spectral", lower, bound, Method.HEURISTIC, context.tol, seed=config.seed
        )
    finding.notes = {"cut": lower, "half_edges": half, "lambda_min": context.lam_min}
    return [finding, check("maxcut_half", half, lower, finding.method, context.tol)]


# Hamiltonicity


def _search_outcome(context: AuditContext) -> Optional[OracleResult]:
    if context.n > HAMILTON_SEARCH_MAX_N:
        return None
    return context.memo(
        "hamilton", lambda: hamilton_search(_simple(context), context.config.hamilton_budget)
    )


def _implies_hamiltonian(
    finding_id: str, lhs: float, rhs: float, context: AuditContext, notes: dict
) -> Finding:
    """A satisfied sufficient condition; fails only if the search proves no cycle exists."""
    search = _search_outcome(context)
    if search is None or search.status == OracleStatus.UNKNOWN:
        notes["search"] = "skipped" if search is None else "unknown"
        return note(finding_id, Verdict.PASS, lhs, rhs, Method.ANALYTIC, notes=notes)
    notes["search"] = search.status.value
    verdict = Verdict.PASS if search.status == OracleStatus.FOUND else Verdict.FAIL
    return note(finding_id, verdict, lhs, rhs, Method.ORACLE, notes=notes)


def audit_hamiltonicity(g: Graph, context: Optional[AuditContext] = None) -> List[Finding]:
    """Chvatal-Erdos (kappa >= alpha), the spectral condition
    d - 36 lambda^2/d >= lambda n/(d + lambda), and the polylogarithmic
    condition as a margin; a backtracking search confirms up to n = 40."""
    context = context or AuditContext.for_graph(g)
    ids = ["hamilton_chvatal_erdos", "hamilton_polylog", "hamilton_spectral"]
    skipped = _not_regular(context, ids)
    if skipped:
        return skipped
    n, d, lam = g.n, context.d, context.lam
    if n < 3:
        return [note(i, Verdict.HYPOTHESIS_NOT_MET, notes={"reason": "n < 3"}) for i in ids]
    findings = []

    alpha = _alpha(context, loopless=True)
    if alpha is None or not alpha.is_known:
        reason = {"reason": "alpha unavailable"}
        findings.append(note("hamilton_chvatal_erdos", Verdict.INCONCLUSIVE, notes=reason))
    else:
        kappa = _kappa(context)
        notes = {"kappa": kappa, "alpha": alpha.value}
        if kappa >= alpha.value:
            findings.append(
                _implies_hamiltonian("hamilton_chvatal_erdos", alpha.value, kappa, context, notes)
            )
        else:
            search = _search_outcome(context)
            notes["search"] = "skipped" if search is None else search.status.value
            findings.append(
                note(
                    "hamilton_chvatal_erdos",
                    Verdict.HYPOTHESIS_NOT_MET,
                    alpha.value,
                    kappa,
                    Method.ORACLE,
                    notes=notes,
                )
            )

    lhs = lam * n / (d + lam)
    rhs = d - 36 * lam * lam / d
    notes = {"margin": rhs - lhs}
    if g.has_loops:
        notes["reason"] = "graph has loops"
    if not g.has_loops and lhs <= rhs:
        findings.append(_implies_hamiltonian("hamilton_spectral", lhs, rhs, context, notes))
    else:
        findings.append(
            note("hamilton_spectral", Verdict.HYPOTHESIS_NOT_MET, lhs, rhs, notes=notes)
        )

    log_n = math.log(n)
    if log_n <= math.e:
        reason = {"reason": "log log log n undefined or <= 0"}
        findings.append(note("hamilton_polylog", Verdict.HYPOTHESIS_NOT_MET, notes=reason))
    else:
        threshold = math.log(log_n) ** 2 / (1000 * log_n * math.log(math.log(log_n))) * d
        margin = {"margin": lam / threshold}
        findings.append(note("hamilton_polylog", Verdict.SCORE, lam, threshold, notes=margin))
    return findings
