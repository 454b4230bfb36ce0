"""
Audit Runner
Runs every applicable audit on one graph and assembles the report.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..constructions.descriptor import ConstructionDescriptor
from ..graphs.core import Graph
from ..spectral.walks import property_scores
from ..utils.config import RunConfig
from ..utils.logging import audit_logger, get_logger, log_performance_metric
from .claims import claims_verify
from .context import AuditContext
from .mixing import SampleMode, audit_jumbledness, audit_mixing
from .report import AuditReport, Finding, Verdict, error_finding, note
from .structure import audit_alpha_chi, audit_connectivity, audit_hamiltonicity, audit_maxcut
from .subgraphs import audit_subgraphs, audit_turan, pattern_graph

logger = get_logger(__name__)

DEFAULT_PATTERNS = ("K3",)
QUASIRANDOM_MAX_N = 512

AuditStep = Callable[[AuditContext], List[Finding]]


def _mixing(context: AuditContext) -> List[Finding]:
    return audit_mixing(context.graph, SampleMode.AUTO, context)


def _jumbledness(context: AuditContext) -> List[Finding]:
    estimate, findings = audit_jumbledness(context.graph, SampleMode.AUTO, context=context)
    context.memo("jumbledness_estimate", lambda: estimate)
    return findings


def _connectivity(context: AuditContext) -> List[Finding]:
    return audit_connectivity(context.graph, context=context)


def _alpha_chi(context: AuditContext) -> List[Finding]:
    return audit_alpha_chi(context.graph, context)


def _maxcut(context: AuditContext) -> List[Finding]:
    return audit_maxcut(context.graph, context)


def _hamiltonicity(context: AuditContext) -> List[Finding]:
    return audit_hamiltonicity(context.graph, context)


def _turan(context: AuditContext) -> List[Finding]:
    return audit_turan(context.graph, 3, context)


def _quasirandom(context: AuditContext) -> List[Finding]:
    """CIRCUIT, EIG, DISC, U(t) and P5-P7 deviations at the graph's own density."""
    g, config = context.graph, context.config
    p = context.d / g.n if g.n else 0.0
    if g.n > QUASIRANDOM_MAX_N or not 0.0 < p < 1.0:
        reason = {"reason": f"density {p:.3g}, n = {g.n}"}
        return [note("quasirandom", Verdict.VACUOUS, notes=reason)]
    scores = property_scores(
        g,
        p,
        sample_budget=config.sample_budget,
        seed=config.seed,
        disc_exhaustive_max_n=config.disc_exhaustive_max_n,
        dense_cap=config.dense_cap,
        table_cap=config.codegree_table_cap,
    )
    chain = scores.chain()
    return [
        note(
            "quasirandom",
            Verdict.SCORE,
            lhs=max(value for _, value in chain),
            seed=config.seed,
            budget=config.sample_budget,
            notes=scores.to_dict(),
        )
    ]


def _subgraph_step(pattern: str) -> AuditStep:
    def run(context: AuditContext) -> List[Finding]:
        return audit_subgraphs(context.graph, pattern_graph(pattern), context=context)

    return run


def audit_steps(patterns: Sequence[str] = DEFAULT_PATTERNS) -> List[Tuple[str, AuditStep]]:
    steps: List[Tuple[str, AuditStep]] = [
        ("mixing", _mixing),
        ("jumbledness", _jumbledness),
        ("connectivity", _connectivity),
        ("alpha_chi", _alpha_chi),
        ("maxcut", _maxcut),
        ("hamiltonicity", _hamiltonicity),
        ("turan", _turan),
        ("quasirandom", _quasirandom),
    ]
    steps.extend((f"subgraphs.{p}", _subgraph_step(p)) for p in patterns)
    return steps


def _run_step(name: str, step: AuditStep, context: AuditContext) -> List[Finding]:
    start = time.perf_counter()
    try:
        findings = step(context)
    except Exception as e:
        logger.error(f"Audit {name} failed on {context.graph.label}: {e}")
        return [error_finding(name, e)]
    log_performance_metric(logger, f"audit.{name}", time.perf_counter() - start)
    return findings


def full_report(
    g: Graph,
    config: Optional[RunConfig] = None,
    descriptor: Optional[ConstructionDescriptor] = None,
    patterns: Sequence[str] = DEFAULT_PATTERNS,
) -> AuditReport:
    """Run every audit, then the descriptor's claims when one is given.

    A failing audit becomes an error finding; the report is never aborted.
    Findings are ordered by id whatever the thread count.
    """
    config = config or RunConfig()
    context = AuditContext.for_graph(g, config, descriptor)
    steps = audit_steps(patterns)

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            batches = list(pool.map(lambda item: _run_step(item[0], item[1], context), steps))
    else:
        batches = [_run_step(name, step, context) for name, step in steps]

    graph_block: Dict[str, object] = {"name": g.label, "n": g.n, "m": g.m}
    if descriptor is not None:
        graph_block["descriptor"] = descriptor.to_dict()
    report = AuditReport(graph=graph_block, header=context.header(), config=config.to_dict())
    for findings in batches:
        report.add(findings)

    estimate = context.memo("jumbledness_estimate", lambda: None)
    if estimate is not None:
        report.extras["jumbledness"] = estimate.to_dict()
    if descriptor is not None:
        report.claims = claims_verify(g, descriptor, context)

    audit_logger.report_summary(g.label, report.verdict_counts())
    return report
