"""
Audit Reports
Findings, verdicts and the tolerance rule every audited inequality goes through.
"""

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from .. import __version__
from ..core.exceptions import SoundnessViolation
from ..utils.logging import audit_logger

DEFAULT_AUDIT_TOLERANCE = 1e-6


class Verdict(str, Enum):
    """Outcome of one audited statement."""

    PASS = "pass"
    FAIL = "fail"
    VACUOUS = "vacuous"  # the bound says nothing at this n (e.g. negative rhs)
    INCONCLUSIVE = "inconclusive"  # an oracle ran out of budget
    HYPOTHESIS_NOT_MET = "hypothesis_not_met"
    ERROR = "error"
    SCORE = "score"  # asymptotic statement rendered as a margin


class Method(str, Enum):
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"
    ORACLE = "oracle"
    ANALYTIC = "analytic"
    HEURISTIC = "heuristic"


@dataclass
class Finding:
    """One audited statement, always read as lhs <= rhs."""

    id: str
    lhs: Optional[float]
    rhs: Optional[float]
    verdict: Verdict
    slack: Optional[float] = None
    method: Method = Method.ANALYTIC
    seed: Optional[int] = None
    budget: Optional[int] = None
    notes: Dict[str, Any] = None

    def __post_init__(self):
        if self.notes is None:
            self.notes = {}

    @property
    def failed(self) -> bool:
        return self.verdict == Verdict.FAIL

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "id": self.id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "verdict": self.verdict.value,
            "slack": self.slack,
            "method": self.method.value,
        }
        if self.seed is not None:
            data["seed"] = self.seed
        if self.budget is not None:
            data["budget"] = self.budget
        if self.notes:
            data["notes"] = self.notes
        return data


def within(lhs: float, rhs: float, tol: float = DEFAULT_AUDIT_TOLERANCE) -> bool:
    """lhs <= rhs + tol * max(1, |rhs|)."""
    return lhs <= rhs + tol * max(1.0, abs(rhs))


def record(finding: Finding) -> Finding:
    """Log a finding, raising the soundness alarm when it failed."""
    audit_logger.finding(finding.id, finding.verdict.value, finding.slack)
    if finding.failed and finding.lhs is not None and finding.rhs is not None:
        audit_logger.soundness_alarm(finding.id, finding.lhs, finding.rhs)
    return finding


def check(
    finding_id: str,
    lhs: float,
    rhs: float,
    method: Method = Method.ANALYTIC,
    tol: float = DEFAULT_AUDIT_TOLERANCE,
    **kwargs: Any,
) -> Finding:
    """Finding for lhs <= rhs, pass or fail under the tolerance rule."""
    lhs, rhs = float(lhs), float(rhs)
    verdict = Verdict.PASS if within(lhs, rhs, tol) else Verdict.FAIL
    return record(Finding(finding_id, lhs, rhs, verdict, rhs - lhs, method, **kwargs))


def note(
    finding_id: str,
    verdict: Verdict,
    lhs: Optional[float] = None,
    rhs: Optional[float] = None,
    method: Method = Method.ANALYTIC,
    **kwargs: Any,
) -> Finding:
    """Finding that is not a pass/fail inequality (vacuous, score, skipped...)."""
    lhs = None if lhs is None else float(lhs)
    rhs = None if rhs is None else float(rhs)
    slack = rhs - lhs if lhs is not None and rhs is not None else None
    return record(Finding(finding_id, lhs, rhs, verdict, slack, method, **kwargs))


def error_finding(finding_id: str, exc: Exception) -> Finding:
    notes = {"error": f"{type(exc).__name__}: {exc}"}
    return record(Finding(finding_id, None, None, Verdict.ERROR, notes=notes))


@dataclass
class JumblednessEstimate:
    """Largest |e(U) - p C(|U|, 2)| / |U| seen over the subsets tried."""

    p: float
    alpha: float
    method: Method
    subsets: int
    worst: List[int] = field(default_factory=list)
    seed: Optional[int] = None
    budget: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "alpha": self.alpha,
            "method": self.method.value,
            "subsets": self.subsets,
            "worst": list(self.worst),
            "seed": self.seed,
            "budget": self.budget,
        }


@dataclass
class AuditReport:
    """Everything the audits found about one graph."""

    graph: Dict[str, Any]
    header: Dict[str, Any]
    findings: List[Finding] = field(default_factory=list)
    claims: List[Finding] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)
    extras: Dict[str, Any] = field(default_factory=dict)
    version: str = __version__

    def __post_init__(self):
        self.findings.sort(key=lambda f: f.id)

    def add(self, findings: List[Finding]):
        self.findings.extend(findings)
        self.findings.sort(key=lambda f: f.id)

    def violations(self) -> List[Finding]:
        """Failed findings plus failed non-advisory claims."""
        return [f for f in self.findings + self.claims if f.failed]

    def verdict_counts(self) -> Dict[str, int]:
        counts = Counter(f.verdict.value for f in self.findings)
        return dict(sorted(counts.items()))

    def finding(self, finding_id: str) -> Optional[Finding]:
        return next((f for f in self.findings if f.id == finding_id), None)

    def raise_for_violations(self):
        failed = self.violations()
        if failed:
            raise SoundnessViolation(
                f"{len(failed)} audited statement(s) violated: {', '.join(f.id for f in failed)}",
                failed,
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "graph": self.graph,
            "header": self.header,
            "findings": [f.to_dict() for f in self.findings],
            "claims": [c.to_dict() for c in self.claims],
            "config": self.config,
            "extras": self.extras,
            "version": self.version,
        }
