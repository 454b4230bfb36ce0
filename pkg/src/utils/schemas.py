"""
Artifact Schemas
pydantic models for every JSON document pseudograph reads or writes.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..audits.claims import CHECKS
from ..audits.report import Method, Verdict
from ..constructions.descriptor import Claim, ConstructionDescriptor, Relation, SrgParams
from ..core.exceptions import ClaimsSchemaError

# normalize_for_json writes non-finite floats as strings
Number = Union[float, str]


class ClaimModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    relation: Relation
    value: Any
    expression: str = ""
    advisory: bool = False

    @field_validator("name")
    @classmethod
    def known_claim(cls, name: str) -> str:
        if name not in CHECKS:
            raise ValueError(f"unknown claim {name!r}")
        return name


class ClaimsDocument(BaseModel):
    """A builder's descriptor as written next to its edge list."""

    family: str
    params: Dict[str, Any] = Field(default_factory=dict)
    n: int = Field(ge=0)
    degree: Optional[int] = None
    srg: Optional[List[int]] = None
    vertex_transitive: bool = False
    claims: List[ClaimModel] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
    config: Dict[str, Any] = Field(default_factory=dict)
    version: Optional[str] = None

    @field_validator("srg")
    @classmethod
    def four_parameters(cls, srg: Optional[List[int]]) -> Optional[List[int]]:
        if srg is not None and len(srg) != 4:
            raise ValueError(f"srg needs (n, d, eta, mu), got {srg}")
        return srg

    def to_descriptor(self) -> ConstructionDescriptor:
        return ConstructionDescriptor(
            family=self.family,
            params=dict(self.params),
            n=self.n,
            degree=self.degree,
            claims=[
                Claim(c.name, c.relation, c.value, c.expression, c.advisory) for c in self.claims
            ],
            srg=SrgParams(*self.srg) if self.srg else None,
            vertex_transitive=self.vertex_transitive,
            notes=list(self.notes),
        )

    @classmethod
    def from_descriptor(
        cls,
        descriptor: ConstructionDescriptor,
        config: Optional[Dict[str, Any]] = None,
        version: Optional[str] = None,
    ) -> "ClaimsDocument":
        data = descriptor.to_dict()
        data["config"] = config or {}
        data["version"] = version
        return cls.model_validate(data)


class FindingModel(BaseModel):
    id: str
    lhs: Optional[Number] = None
    rhs: Optional[Number] = None
    verdict: Verdict
    slack: Optional[Number] = None
    method: Method
    seed: Optional[int] = None
    budget: Optional[int] = None
    notes: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def sampled_carry_seed(self) -> "FindingModel":
        if self.method == Method.SAMPLED and self.seed is None:
            raise ValueError(f"sampled finding {self.id} has no seed")
        return self


class AuditReportModel(BaseModel):
    graph: Dict[str, Any]
    header: Dict[str, Any]
    findings: List[FindingModel]
    claims: List[FindingModel] = Field(default_factory=list)
    config: Dict[str, Any]
    extras: Dict[str, Any] = Field(default_factory=dict)
    version: str

    @field_validator("findings")
    @classmethod
    def ordered_by_id(cls, findings: List[FindingModel]) -> List[FindingModel]:
        ids = [f.id for f in findings]
        if ids != sorted(ids):
            raise ValueError("findings must be ordered by id")
        return findings


class CurvePointModel(BaseModel):
    model_config = ConfigDict(extra="allow")

    x: float
    mean: float
    stderr: float = Field(ge=0)
    trials: int = Field(ge=1)


class CurveModel(BaseModel):
    experiment: str
    x: str
    seed: int
    seed_rule: str
    points: List[CurvePointModel]
    summary: Dict[str, Any] = Field(default_factory=dict)
    diagnostics: List[str] = Field(default_factory=list)
    config: Dict[str, Any] = Field(default_factory=dict)
    version: Optional[str] = None

    @field_validator("points")
    @classmethod
    def increasing_grid(cls, points: List[CurvePointModel]) -> List[CurvePointModel]:
        xs = [p.x for p in points]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("curve grid must be strictly increasing")
        return points


class OracleOutputModel(BaseModel):
    oracle: str
    status: str
    value: Any = None
    witness: Any = None
    nodes: int = Field(ge=0)
    randomized: bool = False
    bounds: Optional[List[Number]] = None
    notes: Dict[str, Any] = Field(default_factory=dict)
    graph: Dict[str, Any] = Field(default_factory=dict)
    config: Dict[str, Any] = Field(default_factory=dict)
    version: Optional[str] = None


class SpectrumOutputModel(BaseModel):
    graph: Dict[str, Any]
    method: str
    lambda_1: float
    lambda_2: Optional[float] = None
    lambda_: float = Field(alias="lambda")
    lambda_min: float
    eigenvalues: Optional[List[float]] = None
    multiplicities: Optional[List[List[float]]] = None
    ramanujan: Optional[bool] = None
    srg: Optional[List[int]] = None
    config: Dict[str, Any] = Field(default_factory=dict)
    version: Optional[str] = None

    model_config = ConfigDict(extra="allow", populate_by_name=True)


ARTIFACT_MODELS = {
    "claims": ClaimsDocument,
    "report": AuditReportModel,
    "curve": CurveModel,
    "oracle": OracleOutputModel,
    "spectrum": SpectrumOutputModel,
}


def load_claims(path: Union[str, Path]) -> ClaimsDocument:
    """Read and validate a claims file.

    Raises:
        FileNotFoundError: missing file
        ClaimsSchemaError: not JSON, or not a claims document
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        return ClaimsDocument.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise ClaimsSchemaError(f"{path}: not valid JSON ({e})") from e
    except ValidationError as e:
        raise ClaimsSchemaError(f"{path}: {e.error_count()} schema error(s)\n{e}") from e


def detect_artifact(data: Dict[str, Any]) -> str:
    """Kind of a JSON artifact from its keys."""
    if "findings" in data:
        return "report"
    if "points" in data and "experiment" in data:
        return "curve"
    if "oracle" in data and "status" in data:
        return "oracle"
    if "lambda_1" in data:
        return "spectrum"
    if "family" in data and "claims" in data:
        return "claims"
    raise ValueError("unrecognised artifact: no known key set")


def validate_artifact(data: Dict[str, Any], kind: Optional[str] = None) -> BaseModel:
    """Validate a parsed JSON artifact; raises pydantic.ValidationError."""
    kind = kind or detect_artifact(data)
    return ARTIFACT_MODELS[kind].model_validate(data)
