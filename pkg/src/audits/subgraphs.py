"""
Subgraph Audits
Small-subgraph counts against m^s (d/n)^r, clique and odd-cycle thresholds,
and Turan numbers inside pseudo-random graphs.
"""

import re
from typing import List, Optional, Sequence

from ..core.exceptions import GraphError
from ..graphs.connectivity import is_connected
from ..graphs.core import Graph
from ..oracles.counting import PATTERN_MAX_N, automorphism_count, count_subgraph_copies
from ..oracles.turan import greedy_turan_partition, turan_exact
from ..utils.logging import get_logger
from .context import AuditContext
from .report import Finding, Method, Verdict, check, note

logger = get_logger(__name__)

PATTERN_RE = re.compile(r"^(?:K(\d+)(?:,(\d+))?|C(\d+)|P(\d+))$")


def pattern_graph(spec: str) -> Graph:
    """Small pattern from a name: K4 (complete), K2,3 (complete bipartite),
    C5 (cycle) or P4 (path on four vertices).

    Raises:
        GraphError: unknown name or more than PATTERN_MAX_N vertices
    """
    match = PATTERN_RE.match(spec.strip().upper())
    if not match:
        raise GraphError(f"Unknown pattern {spec!r}; use Kr, Ka,b, Ck or Pk")
    complete, right, cycle, path = match.groups()
    if complete and right:
        a, b = int(complete), int(right)
        edges = [(i, a + j) for i in range(a) for j in range(b)]
        n = a + b
    elif complete:
        n = int(complete)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif cycle:
        n = int(cycle)
        if n < 3:
            raise GraphError(f"A cycle needs at least 3 vertices, got {n}")
        edges = [(i, (i + 1) % n) for i in range(n)]
    else:
        n = int(path)
        edges = [(i, i + 1) for i in range(n - 1)]
    if n > PATTERN_MAX_N:
        raise GraphError(f"Patterns are limited to {PATTERN_MAX_N} vertices, got {n}")
    return Graph.from_edge_list(n, edges, name=spec.strip().upper())


def _is_complete(h: Graph) -> bool:
    return h.n >= 2 and h.m == h.n * (h.n - 1) // 2


def _is_odd_cycle(h: Graph) -> bool:
    return h.n >= 3 and h.n % 2 == 1 and h.regular_degree == 2 and is_connected(h)


def audit_subgraphs(
    g: Graph,
    h: Graph,
    U: Optional[Sequence[int]] = None,
    context: Optional[AuditContext] = None,
) -> List[Finding]:
    """Labeled copies of h inside U against m^s (d/n)^r, plus the clique
    threshold when h = K_r and the odd-cycle condition when h = C_{2k+1}.

    A labeled copy is an injective map sending edges to edges, so the
    unlabeled count is the labeled one divided by |Aut(h)|.
    """
    context = context or AuditContext.for_graph(g)
    n, d, lam = g.n, context.d, context.lam
    inside = g if U is None else g.induced_subgraph(U)
    m = inside.n
    s, r = h.n, h.m
    delta_h = int(h.degrees.max()) if h.n else 0
    p = d / n if n else 0.0

    labeled = count_subgraph_copies(inside, h)
    induced = count_subgraph_copies(inside, h, induced=True)
    automorphisms = automorphism_count(h)
    predicted = m**s * p**r
    induced_predicted = predicted * (1 - p) ** (s * (s - 1) // 2 - r)
    notes = {
        "pattern": h.label,
        "subset_size": m,
        "automorphisms": automorphisms,
        "copies": labeled // automorphisms,
        "ratio": labeled / predicted if predicted else None,
        "induced": induced,
        "induced_ratio": induced / induced_predicted if induced_predicted else None,
        "size_margin": m / (lam * (n / d) ** delta_h) if lam > 0 and d > 0 else None,
    }
    count_id = f"subgraph_count.{h.label}"
    findings = [note(count_id, Verdict.SCORE, labeled, predicted, Method.EXHAUSTIVE, notes=notes)]

    if _is_complete(h):
        findings.append(_clique_threshold(context, s, m, labeled, f"clique_threshold.{h.label}"))
    if _is_odd_cycle(h):
        k = (s - 1) // 2
        cycle_id = f"odd_cycle_threshold.{h.label}"
        cycle_notes = {"k": k, "contains": labeled > 0}
        if not context.regular or d == 0:
            findings.append(note(cycle_id, Verdict.HYPOTHESIS_NOT_MET, notes=cycle_notes))
        else:
            lhs, rhs = lam ** (2 * k - 1), d ** (2 * k) / n
            cycle_notes["margin"] = odd_cycle_margin(n, d, lam, k)
            findings.append(note(cycle_id, Verdict.SCORE, lhs, rhs, notes=cycle_notes))
    logger.debug(
        f"audit_subgraphs({g.label}, {h.label}): {labeled} labeled copies vs {predicted:.6g}"
    )
    return findings


def _clique_threshold(
    context: AuditContext, r: int, m: int, labeled: int, finding_id: str
) -> Finding:
    """Every set of more than (lambda + 1) n/d (1 + n/d + ... + (n/d)^(r-2))
    vertices spans a K_r."""
    g, n, d, lam = context.graph, context.n, context.d, context.lam
    if not context.regular or d == 0 or g.has_loops:
        return note(finding_id, Verdict.HYPOTHESIS_NOT_MET, notes={"r": r})
    threshold = clique_threshold_value(n, d, lam, r)
    notes = {"r": r, "contains": labeled > 0}
    if m <= threshold:
        return note(finding_id, Verdict.HYPOTHESIS_NOT_MET, threshold, m, notes=notes)
    verdict = Verdict.PASS if labeled > 0 else Verdict.FAIL
    return note(finding_id, verdict, threshold, m, Method.EXHAUSTIVE, notes=notes)


def audit_turan(g: Graph, t: int = 3, context: Optional[AuditContext] = None) -> List[Finding]:
    """ex(G, K_t) against (t-2)/(t-1) |E|: the greedy partition's guarantee,
    the exact value (or interval) from the oracle, and the spectral margin
    d^(t-1) / (n^(t-2) lambda)."""
    context = context or AuditContext.for_graph(g)
    config = context.config
    ids = ["turan", "turan_greedy", "turan_spectral"]
    if not context.regular or context.d == 0:
        reason = {"reason": "needs a regular graph with edges"}
        return [note(i, Verdict.HYPOTHESIS_NOT_MET, notes=reason) for i in ids]
    n, d, lam = g.n, context.d, context.lam
    edges = g.m - g.loop_count
    target = (t - 2) / (t - 1)

    partition = greedy_turan_partition(g, t)
    findings = [
        check(
            "turan_greedy",
            target * edges,
            partition.cross_edges,
            tol=context.tol,
            notes={"moves": partition.moves, "t": t},
        )
    ]

    if n <= config.oracle_max_n:
        exact = turan_exact(g, t, config.turan_budget)
        lower, upper = exact.bounds
        notes = {
            "t": t,
            "interval": [lower, upper],
            "target_ratio": target,
            "status": exact.status.value,
        }
        cross = partition.cross_edges
        if exact.value is not None:
            notes["ratio"] = exact.value / edges
            findings.append(
                check("turan", cross, exact.value, Method.ORACLE, context.tol, notes=notes)
            )
        elif cross > upper:
            findings.append(check("turan", cross, upper, Method.ORACLE, context.tol, notes=notes))
        else:
            findings.append(
                note("turan", Verdict.INCONCLUSIVE, cross, upper, Method.ORACLE, notes=notes)
            )
    else:
        reason = {"reason": "n above oracle range"}
        findings.append(
            note("turan", Verdict.INCONCLUSIVE, partition.cross_edges, edges, notes=reason)
        )

    margin = d ** (t - 1) / (n ** (t - 2) * lam) if lam > 0 else None
    findings.append(note("turan_spectral", Verdict.SCORE, lhs=margin, notes={"t": t}))
    return findings


def clique_threshold_value(n: int, d: float, lam: float, r: int) -> float:
    """Sets larger than this must contain a K_r."""
    ratio = n / d
    return (lam + 1) * ratio * sum(ratio**i for i in range(r - 1))


def odd_cycle_margin(n: int, d: float, lam: float, k: int) -> Optional[float]:
    """d^(2k)/n over lambda^(2k-1); large values force a (2k+1)-cycle."""
    if lam <= 0:
        return None
    return d ** (2 * k) / n / lam ** (2 * k - 1)


__all__ = [
    "audit_subgraphs",
    "audit_turan",
    "clique_threshold_value",
    "odd_cycle_margin",
    "pattern_graph",
]
