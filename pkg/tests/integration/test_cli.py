"""Integration tests for the pseudograph command line."""

import json

import pytest

from src.core.application import EXIT_OK, EXIT_SOUNDNESS, EXIT_USAGE, PseudographApp


def run(*argv: str) -> int:
    return PseudographApp().run(list(argv))


@pytest.fixture
def workspace(tmp_path, monkeypatch):
    """Working directory with a small run configuration."""
    monkeypatch.chdir(tmp_path)
    (tmp_path / "run.json").write_text(json.dumps({"sample_budget": 300}), encoding="utf-8")
    return tmp_path


@pytest.fixture
def paley13_files(workspace):
    assert run("gen", "paley", "--q", "13", "--out", "p13.el") == EXIT_OK
    return workspace / "p13.el", workspace / "p13.claims.json"


@pytest.mark.integration
class TestGen:
    """Test graph generation."""

    def test_writes_graph_and_claims(self, paley13_files):
        graph, claims = paley13_files
        assert graph.read_text(encoding="utf-8").splitlines()[0] == "13 39"
        document = json.loads(claims.read_text(encoding="utf-8"))
        assert document["family"] == "paley"
        assert document["srg"] == [13, 6, 2, 3]
        assert document["config"]["builder_params"] == {"q": 13}

    def test_stdout_edge_list(self, workspace, capsys):
        assert run("gen", "circulant", "--n", "5", "--steps", "1") == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == "5 5"

    def test_missing_parameter(self, workspace):
        assert run("gen", "paley") == EXIT_USAGE

    def test_invalid_parameter(self, workspace):
        assert run("gen", "paley", "--q", "21", "--out", "bad.el") == EXIT_USAGE

    def test_unwritable_output(self, workspace, monkeypatch):
        logged = []
        monkeypatch.setattr(
            "src.core.application.log_exception", lambda logger, message: logged.append(message)
        )
        (workspace / "blocker").write_text("", encoding="utf-8")
        assert run("gen", "paley", "--q", "13", "--out", "blocker/p13.el") == EXIT_USAGE
        assert len(logged) == 1
        assert logged[0].startswith("I/O failure")


@pytest.mark.integration
class TestInspection:
    """Test spectrum and oracle output."""

    def test_spectrum_json(self, paley13_files, capsys):
        capsys.readouterr()
        assert run("spectrum", "p13.el", "--json") == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["lambda_1"] == pytest.approx(6.0)
        assert payload["srg"] == [13, 6, 2, 3]
        assert payload["version"]

    def test_spectrum_missing_file(self, workspace):
        assert run("spectrum", "missing.el") == EXIT_USAGE

    def test_oracle(self, paley13_files):
        assert run("oracle", "alpha", "p13.el", "--out", "alpha.json") == EXIT_OK
        payload = json.loads((paley13_files[0].parent / "alpha.json").read_text())
        assert payload["status"] == "found"
        assert payload["value"] == 3

    def test_version(self, workspace):
        assert run("--version") == EXIT_OK


@pytest.mark.integration
@pytest.mark.slow
class TestAudit:
    """Test audits, claim checks and their exit codes."""

    def test_audit_passes(self, paley13_files):
        assert run("--config", "run.json", "audit", "p13.el", "--report", "r.json") == EXIT_OK
        report = json.loads((paley13_files[0].parent / "r.json").read_text())
        assert report["claims"]
        assert report["config"]["sample_budget"] == 300

    def test_reports_are_byte_identical(self, paley13_files):
        report = paley13_files[0].parent / "r.json"
        assert run("--config", "run.json", "audit", "p13.el", "--report", "r.json") == EXIT_OK
        first = report.read_bytes()
        assert run("--config", "run.json", "audit", "p13.el", "--report", "r.json") == EXIT_OK
        assert report.read_bytes() == first

    def test_false_claim_is_a_soundness_violation(self, paley13_files):
        _, claims = paley13_files
        document = json.loads(claims.read_text(encoding="utf-8"))
        for claim in document["claims"]:
            if claim["name"] == "lambda":
                claim["value"] = 1.0
        claims.write_text(json.dumps(document), encoding="utf-8")
        assert run("claims", "p13.el") == EXIT_SOUNDNESS

    def test_claims_pass(self, paley13_files, capsys):
        assert run("claims", "p13.el") == EXIT_OK
        assert "claim.lambda pass" in capsys.readouterr().out

    def test_corrupt_claims(self, paley13_files):
        paley13_files[1].write_text("{", encoding="utf-8")
        assert run("claims", "p13.el") == EXIT_USAGE

    def test_enum(self, workspace):
        argv = ("gen", "circulant", "--n", "6", "--steps", "1,2", "--out", "octahedron.el")
        assert run(*argv) == EXIT_OK
        assert run("enum", "octahedron.el", "--report", "enum.json") == EXIT_OK
        report = json.loads((workspace / "enum.json").read_text())
        assert any(f["id"] == "enum_spanning_trees_upper" for f in report["findings"])


@pytest.mark.integration
class TestMonteCarlo:
    """Test the experiment subcommands."""

    def test_window_needs_grid(self, paley13_files):
        assert run("mc", "window", "--graph", "p13.el") == EXIT_USAGE

    def test_giant_curve(self, paley13_files):
        argv = ["mc", "giant", "--graph", "p13.el", "--trials", "10", "--grid", "0.5,2.0"]
        assert run(*argv, "--out", "giant.json") == EXIT_OK
        curve = json.loads((paley13_files[0].parent / "giant.json").read_text())
        assert [p["x"] for p in curve["points"]] == [0.5, 2.0]
        assert curve["seed_rule"]

    def test_seed_changes_nothing_but_draws(self, paley13_files):
        argv = ["mc", "mst", "--graph", "p13.el", "--trials", "20", "--out"]
        assert run("--seed", "5", *argv, "a.json") == EXIT_OK
        assert run("--seed", "5", *argv, "b.json") == EXIT_OK
        first = json.loads((paley13_files[0].parent / "a.json").read_text())
        second = json.loads((paley13_files[0].parent / "b.json").read_text())
        assert first["points"] == second["points"]
        assert first["seed"] == 5


@pytest.mark.integration
class TestValidate:
    """Test file validation diagnostics."""

    def test_valid_files(self, paley13_files, capsys):
        assert run("validate", "p13.el", "p13.claims.json") == EXIT_OK
        out = capsys.readouterr().out
        assert "ok p13.el n=13 m=39" in out
        assert "ClaimsDocument" in out

    def test_bad_edge_list(self, workspace):
        (workspace / "bad.el").write_text("3 1\n0 5\n", encoding="utf-8")
        assert run("validate", "bad.el") == EXIT_USAGE

    def test_unknown_artifact(self, workspace):
        (workspace / "x.json").write_text("{}", encoding="utf-8")
        assert run("validate", "x.json") == EXIT_USAGE
