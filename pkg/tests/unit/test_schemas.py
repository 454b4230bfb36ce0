"""Unit tests for the artifact schemas."""

import json

import pytest
from pydantic import ValidationError

from src.audits import full_report
from src.constructions import build
from src.core.exceptions import ClaimsSchemaError
from src.randomlab import McEstimate, PhaseCurve
from src.utils.config import RunConfig
from src.utils.schemas import (
    AuditReportModel,
    ClaimsDocument,
    CurveModel,
    FindingModel,
    detect_artifact,
    load_claims,
    validate_artifact,
)
from src.utils.serialization import dumps_stable


def as_json(obj):
    return json.loads(dumps_stable(obj))


class TestClaimsDocument:
    """Test claims files written next to edge lists."""

    def test_descriptor_round_trip(self):
        _, descriptor = build("paley", q=13)
        document = ClaimsDocument.from_descriptor(descriptor, config={"seed": 0}, version="0.1.0")
        restored = document.to_descriptor()
        assert restored.family == "paley"
        assert restored.srg == descriptor.srg
        assert [c.name for c in restored.claims] == [c.name for c in descriptor.claims]

    def test_load_claims(self, tmp_path):
        _, descriptor = build("paley", q=13)
        path = tmp_path / "p13.claims.json"
        path.write_text(dumps_stable(ClaimsDocument.from_descriptor(descriptor).model_dump()))
        assert load_claims(path).n == 13

    def test_unknown_claim_name(self, tmp_path):
        path = tmp_path / "bad.claims.json"
        path.write_text(
            json.dumps(
                {
                    "family": "x",
                    "n": 3,
                    "claims": [{"name": "colour", "relation": "==", "value": 1}],
                }
            )
        )
        with pytest.raises(ClaimsSchemaError):
            load_claims(path)

    def test_not_json(self, tmp_path):
        path = tmp_path / "bad.claims.json"
        path.write_text("{")
        with pytest.raises(ClaimsSchemaError):
            load_claims(path)

    def test_srg_needs_four_values(self):
        with pytest.raises(ValidationError):
            ClaimsDocument(family="x", n=3, srg=[3, 2, 1])


class TestArtifacts:
    """Test report, curve and finding validation."""

    def test_report_validates(self, petersen):
        data = as_json(full_report(petersen, RunConfig(sample_budget=200)).to_dict())
        assert detect_artifact(data) == "report"
        assert isinstance(validate_artifact(data), AuditReportModel)

    def test_unordered_findings_rejected(self, petersen):
        data = as_json(full_report(petersen, RunConfig(sample_budget=200)).to_dict())
        data["findings"].reverse()
        with pytest.raises(ValidationError):
            validate_artifact(data)

    def test_curve_validates(self):
        points = [McEstimate.from_values("x", [v, v], seed=0) for v in (0.0, 1.0)]
        data = as_json(PhaseCurve("window", "p", [0.1, 0.2], points, seed=0).to_dict())
        assert detect_artifact(data) == "curve"
        assert isinstance(validate_artifact(data), CurveModel)
        data["points"][1]["x"] = 0.05
        with pytest.raises(ValidationError):
            validate_artifact(data, "curve")

    def test_sampled_finding_needs_seed(self):
        with pytest.raises(ValidationError):
            FindingModel(id="x", verdict="pass", method="sampled")
        assert FindingModel(id="x", verdict="pass", method="sampled", seed=1).seed == 1

    def test_unknown_artifact(self):
        with pytest.raises(ValueError):
            detect_artifact({"hello": 1})
