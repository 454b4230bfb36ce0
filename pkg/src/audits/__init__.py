# Audits: theorem inequalities checked against spectra and exact oracles
from .claims import claims_verify, verify_claim
from .context import AuditContext
from .mixing import SampleMode, audit_irregular_mixing, audit_jumbledness, audit_mixing
from .report import AuditReport, Finding, JumblednessEstimate, Method, Verdict
from .runner import full_report
from .structure import audit_alpha_chi, audit_connectivity, audit_hamiltonicity, audit_maxcut
from .subgraphs import audit_subgraphs, audit_turan, pattern_graph

__all__ = [
    "AuditContext",
    "AuditReport",
    "Finding",
    "JumblednessEstimate",
    "Method",
    "SampleMode",
    "Verdict",
    "audit_alpha_chi",
    "audit_connectivity",
    "audit_hamiltonicity",
    "audit_irregular_mixing",
    "audit_jumbledness",
    "audit_maxcut",
    "audit_mixing",
    "audit_subgraphs",
    "audit_turan",
    "claims_verify",
    "full_report",
    "pattern_graph",
    "verify_claim",
]
