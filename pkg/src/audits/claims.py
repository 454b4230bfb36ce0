"""
Claim Verification
Re-checks the statements a builder attached to its graph: degree, lambda,
spectra, SRG parameters and forbidden subgraphs.
"""

from itertools import combinations
from math import comb
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy import sparse

from ..constructions.algebraic import paley_subfield_witnesses
from ..constructions.cayley import lps_generators
from ..constructions.descriptor import Claim, ConstructionDescriptor, Relation
from ..core.exceptions import ClaimsSchemaError
from ..graphs.connectivity import girth, is_connected
from ..graphs.core import Graph, is_triangle_free
from ..oracles.independence import exact_alpha, exact_clique
from ..oracles.result import OracleStatus, is_clique, is_independent, popcount
from ..spectral.srg import srg_detect
from ..spectral.walks import circuit_count
from ..utils.logging import get_logger
from .context import AuditContext
from .report import Finding, Method, Verdict, error_finding, record, within

logger = get_logger(__name__)

BIPARTITE_SCAN_CAP = 2_000_000

# (holds, measured, method); holds is None when the check could not finish
Outcome = Tuple[Optional[bool], Any, Method]


def _close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(b))


def _spectrum_or_none(context: AuditContext) -> Optional[np.ndarray]:
    spectrum = context.summary.spectrum
    return None if spectrum is None else spectrum.eigenvalues


def _check_n(context: AuditContext, claim: Claim) -> Outcome:
    return context.n == claim.value, context.n, Method.EXHAUSTIVE


def _check_degree(context: AuditContext, claim: Claim) -> Outcome:
    d = context.graph.regular_degree
    return d == claim.value, d, Method.EXHAUSTIVE


def _check_loops(context: AuditContext, claim: Claim) -> Outcome:
    loops = context.graph.loop_count
    return loops == claim.value, loops, Method.EXHAUSTIVE


def _check_loop_bound(context: AuditContext, claim: Claim) -> Outcome:
    loops = context.graph.loop_count
    return loops <= claim.value, loops, Method.EXHAUSTIVE


def _check_generators(context: AuditContext, claim: Claim) -> Outcome:
    params = context.descriptor.params if context.descriptor else {}
    if "p" not in params:
        return None, None, Method.ANALYTIC
    count = len(lps_generators(int(params["p"])))
    return count == claim.value, count, Method.EXHAUSTIVE


def _check_lambda(context: AuditContext, claim: Claim) -> Outcome:
    lam = context.lam
    return _close(lam, float(claim.value), context.config.solver_tolerance), lam, Method.ANALYTIC


def _check_lambda_bound(context: AuditContext, claim: Claim) -> Outcome:
    lam = context.lam
    return within(lam, float(claim.value), context.tol), lam, Method.ANALYTIC


def _check_nontrivial_eigenvalues(context: AuditContext, claim: Claim) -> Outcome:
    eigenvalues = _spectrum_or_none(context)
    if eigenvalues is None:
        return None, None, Method.ANALYTIC
    allowed = [float(v) for v in claim.value]
    stray = [
        float(x)
        for x in eigenvalues[1:]
        if not any(_close(float(x), v, context.tol) for v in allowed)
    ]
    return not stray, stray[:5], Method.ANALYTIC


def _check_nontrivial_abs(context: AuditContext, claim: Claim) -> Outcome:
    eigenvalues = _spectrum_or_none(context)
    if eigenvalues is None:
        return None, None, Method.ANALYTIC
    magnitudes = np.abs(eigenvalues[1:])
    if magnitudes.size == 0:
        return True, [], Method.ANALYTIC
    value = float(claim.value)
    holds = bool(np.all(np.abs(magnitudes - value) <= context.tol * max(1.0, value)))
    return holds, [float(magnitudes.min()), float(magnitudes.max())], Method.ANALYTIC


def _check_spectrum(context: AuditContext, claim: Claim) -> Outcome:
    eigenvalues = _spectrum_or_none(context)
    if eigenvalues is None:
        return None, None, Method.ANALYTIC
    predicted = np.sort(np.asarray(claim.value, dtype=float))[::-1]
    if predicted.size != eigenvalues.size:
        return False, int(eigenvalues.size), Method.ANALYTIC
    scale = max(1.0, float(np.abs(predicted).max()) if predicted.size else 1.0)
    gap = float(np.abs(predicted - eigenvalues).max()) if predicted.size else 0.0
    return gap <= context.tol * scale, gap, Method.ANALYTIC


def _check_square_identity(context: AuditContext, claim: Claim) -> Outcome:
    """A^2 = mu J + (d - mu) I, loops included in A."""
    g = context.graph
    d = g.regular_degree
    if d is None:
        return False, None, Method.EXHAUSTIVE
    if g.n > context.config.dense_cap:
        return None, None, Method.EXHAUSTIVE
    mu = int(claim.value)
    square = (g.sparse_adjacency() @ g.sparse_adjacency()).toarray()
    expected = np.full((g.n, g.n), mu, dtype=np.int64)
    np.fill_diagonal(expected, d)
    mismatches = int(np.count_nonzero(square != expected))
    return mismatches == 0, mismatches, Method.EXHAUSTIVE


def _check_srg(context: AuditContext, claim: Claim) -> Outcome:
    detected = srg_detect(context.graph)
    measured = list(detected.as_tuple()) if detected else None
    return measured == [int(v) for v in claim.value], measured, Method.EXHAUSTIVE


def _check_triangle_free(context: AuditContext, claim: Claim) -> Outcome:
    holds = is_triangle_free(context.graph.without_loops())
    return holds == bool(claim.value), holds, Method.EXHAUSTIVE


def _check_c4_free(context: AuditContext, claim: Claim) -> Outcome:
    adjacency = context.graph.without_loops().sparse_adjacency()
    square = (adjacency @ adjacency).tocsr()
    square = (square - sparse.diags(square.diagonal())).tocsr()
    worst = int(square.max()) if square.nnz else 0
    return (worst <= 1) == bool(claim.value), worst, Method.EXHAUSTIVE


def _check_odd_cycle_free(context: AuditContext, claim: Claim) -> Outcome:
    """No closed walk of odd length <= L means no odd cycle of length <= L."""
    simple = context.graph.without_loops()
    longest = int(claim.value)
    walks = {length: circuit_count(simple, length) for length in range(3, longest + 1, 2)}
    return all(w == 0 for w in walks.values()), walks, Method.EXHAUSTIVE


def _check_bipartite_free(context: AuditContext, claim: Claim) -> Outcome:
    """No K_{s,t}: every s vertices have fewer than t common neighbours."""
    s, t = (int(v) for v in claim.value)
    bits = context.graph.neighbor_bits
    n = context.n
    if comb(n, s) > BIPARTITE_SCAN_CAP:
        return None, None, Method.EXHAUSTIVE
    worst = 0
    for group in combinations(range(n), s):
        common = bits[group[0]]
        for v in group[1:]:
            common &= bits[v]
        worst = max(worst, popcount(common))
    return worst < t, worst, Method.EXHAUSTIVE


def _check_connected(context: AuditContext, claim: Claim) -> Outcome:
    holds = is_connected(context.graph)
    return holds == bool(claim.value), holds, Method.EXHAUSTIVE


def _check_girth(context: AuditContext, claim: Claim) -> Outcome:
    measured = girth(context.graph.without_loops())
    return measured is None or measured >= float(claim.value), measured, Method.EXHAUSTIVE


def _check_alpha(context: AuditContext, claim: Claim) -> Outcome:
    if context.n > context.config.oracle_max_n:
        return None, None, Method.ORACLE
    result = exact_alpha(context.graph, context.config.alpha_budget)
    if result.status != OracleStatus.FOUND:
        return None, None, Method.ORACLE
    return result.value <= claim.value, result.value, Method.ORACLE


def _witness_check(context: AuditContext, claim: Claim, clique: bool) -> Outcome:
    """Subfield witnesses for Paley graphs on p^2 vertices, exact search otherwise."""
    g = context.graph
    descriptor = context.descriptor
    if descriptor is not None and descriptor.family == "paley":
        witnesses = paley_subfield_witnesses(int(descriptor.params["q"]))
        vertices = witnesses[0] if clique else witnesses[1]
        valid = is_clique(g, vertices) if clique else is_independent(g, vertices)
        size = len(vertices) if valid else 0
        return valid and size >= claim.value, size, Method.EXHAUSTIVE
    if context.n > context.config.oracle_max_n:
        return None, None, Method.ORACLE
    solver = exact_clique if clique else exact_alpha
    result = solver(g, context.config.alpha_budget)
    if result.status != OracleStatus.FOUND:
        return None, None, Method.ORACLE
    return result.value >= claim.value, result.value, Method.ORACLE


def _check_clique_at_least(context: AuditContext, claim: Claim) -> Outcome:
    return _witness_check(context, claim, clique=True)


def _check_alpha_at_least(context: AuditContext, claim: Claim) -> Outcome:
    return _witness_check(context, claim, clique=False)


def _check_codegree_deviation(context: AuditContext, claim: Claim) -> Outcome:
    g = context.graph.without_loops()
    if g.n < 2:
        return True, 0.0, Method.EXHAUSTIVE
    if g.n > context.config.codegree_table_cap:
        return None, None, Method.EXHAUSTIVE
    square = (g.sparse_adjacency() @ g.sparse_adjacency()).toarray().astype(float)
    off = ~np.eye(g.n, dtype=bool)
    deviation = float(np.abs(square[off] - context.d**2 / g.n).max())
    return deviation <= float(claim.value), deviation, Method.EXHAUSTIVE


CHECKS: Dict[str, Callable[[AuditContext, Claim], Outcome]] = {
    "n": _check_n,
    "n_formula": _check_n,
    "degree": _check_degree,
    "loops": _check_loops,
    "loop_bound": _check_loop_bound,
    "generators": _check_generators,
    "lambda": _check_lambda,
    "lambda_bound": _check_lambda_bound,
    "nontrivial_eigenvalues": _check_nontrivial_eigenvalues,
    "nontrivial_abs": _check_nontrivial_abs,
    "spectrum": _check_spectrum,
    "square_identity": _check_square_identity,
    "srg": _check_srg,
    "triangle_free": _check_triangle_free,
    "c4_free": _check_c4_free,
    "odd_cycle_free": _check_odd_cycle_free,
    "bipartite_free": _check_bipartite_free,
    "connected": _check_connected,
    "girth": _check_girth,
    "alpha": _check_alpha,
    "clique_at_least": _check_clique_at_least,
    "alpha_at_least": _check_alpha_at_least,
    "codegree_deviation": _check_codegree_deviation,
}


def _scalar(value: Any) -> Optional[float]:
    if isinstance(value, (bool, np.bool_)) or value is None:
        return None
    if isinstance(value, (int, float, np.integer, np.floating)):
        return float(value)
    return None


def _claim_finding(claim: Claim, outcome: Outcome) -> Finding:
    holds, measured, method = outcome
    if holds is None:
        verdict = Verdict.INCONCLUSIVE
    elif claim.advisory:
        verdict = Verdict.SCORE
    else:
        verdict = Verdict.PASS if holds else Verdict.FAIL

    # lhs <= rhs orientation: measured <= claimed, claimed <= measured for lower bounds
    lhs, rhs = _scalar(measured), _scalar(claim.value)
    if claim.relation == Relation.AT_LEAST:
        lhs, rhs = rhs, lhs
    slack = rhs - lhs if lhs is not None and rhs is not None else None
    notes = {
        "relation": claim.relation.value,
        "claimed": claim.value,
        "measured": measured,
        "holds": holds,
    }
    if claim.expression:
        notes["expression"] = claim.expression
    if claim.advisory:
        notes["advisory"] = True
    return record(Finding(f"claim.{claim.name}", lhs, rhs, verdict, slack, method, notes=notes))


def verify_claim(claim: Claim, context: AuditContext) -> Finding:
    """Check one claim against the graph held by the context."""
    check = CHECKS.get(claim.name)
    if check is None:
        raise ClaimsSchemaError(f"Unknown claim {claim.name!r}; known: {', '.join(sorted(CHECKS))}")
    try:
        return _claim_finding(claim, check(context, claim))
    except ClaimsSchemaError:
        raise
    except Exception as exc:
        logger.error(f"Claim {claim.name} could not be checked: {exc}")
        return error_finding(f"claim.{claim.name}", exc)


def claims_verify(
    g: Graph,
    descriptor: ConstructionDescriptor,
    context: Optional[AuditContext] = None,
) -> List[Finding]:
    """Recompute every attached claim; findings are sorted by id.

    Raises:
        ClaimsSchemaError: a claim name has no check
    """
    if context is None:
        context = AuditContext.for_graph(g, descriptor=descriptor)
    elif context.descriptor is None:
        context.descriptor = descriptor
    findings = [verify_claim(claim, context) for claim in descriptor.claims]
    failed = [f.id for f in findings if f.failed]
    if failed:
        logger.error(f"Claims of {descriptor.label} not verified: {', '.join(failed)}")
    else:
        logger.info(f"Claims of {descriptor.label}: {len(findings)} checked")
    return sorted(findings, key=lambda f: f.id)
