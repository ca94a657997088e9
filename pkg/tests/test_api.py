import json

import pytest
from fastapi.testclient import TestClient

from conftest import FIXTURE_DIR
from entrans import cli, scoring
from entrans.api import create_app, load_catalog


@pytest.fixture(scope="module")
def catalog():
    return load_catalog(FIXTURE_DIR)


@pytest.fixture(scope="module")
def client(catalog):
    return TestClient(create_app(catalog))


class TestHealthAndModels:
    def test_health(self, client):
        response = client.get("/api/health")
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "ok"
        assert body["schema_version"] == 1

    def test_models_lists_fixture(self, client):
        body = client.get("/api/models").json()
        assert body["schema_version"] == 1
        ids = [m["id"] for m in body["models"]]
        assert "fixture" in ids
        model = next(m for m in body["models"] if m["id"] == "fixture")
        assert "GDP" in model["input_columns"]
        specs = [s["id"] for s in body["specs"]]
        assert "fixture" in specs


class TestScorecardEndpoint:
    def test_singapore_ceiling(self, client):
        response = client.get("/api/scorecards/singapore/ceiling")
        assert response.status_code == 200
        body = response.json()
        assert body["factor"] == pytest.approx(0.504)
        # body validates against the scorecard file schema
        card = scoring.card_from_doc(body["scorecard"])
        assert scoring.validate_scorecard(card) == []

    def test_unknown_region_404(self, client):
        assert client.get("/api/scorecards/atlantis/ceiling").status_code == 404

    def test_unknown_kind_404(self, client):
        assert client.get("/api/scorecards/singapore/velocity").status_code == 404


class TestFactorEndpoint:
    def test_london_speed(self, client):
        doc = scoring.card_to_doc(scoring.builtin_scorecard("london", "speed"))
        response = client.post("/api/factor", json=doc)
        assert response.status_code == 200
        body = response.json()
        assert body["factor"] == pytest.approx(0.764, abs=0.0005)
        assert body["violations"] == []

    def test_weight_violation_reported_without_factor(self, client):
        doc = scoring.card_to_doc(scoring.builtin_scorecard("london", "ceiling"))
        doc["indices"][0]["weight"] = 0.25  # sum now 0.95
        response = client.post("/api/factor", json=doc)
        assert response.status_code == 200
        body = response.json()
        assert body["factor"] is None
        assert any("0.95" in v for v in body["violations"])

    def test_empty_body_400(self, client):
        response = client.post("/api/factor", content=b"")
        assert response.status_code == 400

    def test_malformed_json_400(self, client):
        response = client.post(
            "/api/factor", content=b"{not json", headers={"content-type": "application/json"}
        )
        assert response.status_code == 400

    def test_unknown_fields_rejected(self, client):
        doc = scoring.card_to_doc(scoring.builtin_scorecard("london", "speed"))
        doc["surprise"] = 1
        response = client.post("/api/factor", json=doc)
        assert response.status_code == 400
        assert "surprise" in response.json()["error"]

    def test_wrong_document_format_400(self, client):
        response = client.post("/api/factor", json={"format": "entrans-scorecard"})
        assert response.status_code == 400


class TestScenarioEndpoint:
    def test_spec_id_composes(self, client):
        response = client.post("/api/scenario", json={"spec_id": "fixture"})
        assert response.status_code == 200
        report = response.json()["report"]
        assert report["years"] == [2021, 2022, 2023, 2024, 2025]

    def test_matches_cli_report_field_for_field(self, client, capsys, tmp_path):
        response = client.post("/api/scenario", json={"spec_id": "fixture"})
        api_report = response.json()["report"]
        code = cli.main([
            "scenario",
            "--spec", str(FIXTURE_DIR / "fixture.spec.json"),
            "--format", "json",
            "--out", str(tmp_path / "report.json"),
        ])
        assert code == 0
        cli_report = json.loads((tmp_path / "report.json").read_text())
        assert api_report == cli_report

    def test_zero_intensity_collapses_policy_to_baseline(self, client):
        response = client.post(
            "/api/scenario",
            json={"spec_id": "fixture", "intensity": {"f_c": 0.0, "f_p": 0.0}},
        )
        report = response.json()["report"]
        assert report["series"]["policy"] == pytest.approx(
            report["series"]["baseline"], abs=1e-12
        )

    def test_unknown_spec_id_404(self, client):
        response = client.post("/api/scenario", json={"spec_id": "ghost"})
        assert response.status_code == 404

    def test_spec_by_value_with_catalog_references(self, client):
        spec = {
            "format": "entrans-scenario",
            "version": 1,
            "region": "fixture",
            "target_kind": "capacity",
            "policy_start": 2021,
            "horizon": 2025,
            "intensity": {"f_c": 0.5, "f_p": 0.5},
            "totals": {str(y): 2000.0 for y in range(2021, 2026)},
            "baseline": {
                "model": "fixture",
                "panel": "fixture",
                "schema": "fixture",
            },
        }
        response = client.post("/api/scenario", json={"spec": spec})
        assert response.status_code == 200

    def test_spec_by_value_unknown_model_404(self, client):
        spec = {
            "format": "entrans-scenario",
            "version": 1,
            "region": "x",
            "target_kind": "capacity",
            "policy_start": 2021,
            "horizon": 2023,
            "intensity": {"f_c": 0.5, "f_p": 0.5},
            "totals": {"2021": 1.0, "2022": 1.0, "2023": 1.0},
            "baseline": {"model": "ghost", "panel": "fixture", "schema": "fixture"},
        }
        response = client.post("/api/scenario", json={"spec": spec})
        assert response.status_code == 404

    def test_infeasible_anchor_422_with_explanation(self, client):
        spec = {
            "format": "entrans-scenario",
            "version": 1,
            "region": "x",
            "target_kind": "capacity",
            "policy_start": 2021,
            "horizon": 2023,
            "intensity": {"f_c": 0.5, "f_p": 0.5},
            "totals": {"2021": 100.0, "2022": 100.0, "2023": 100.0},
            # share 0.3 is above the 0.15 business-as-usual ceiling
            "baseline": {"series": {"2021": 30.0, "2022": 30.0, "2023": 30.0}},
        }
        response = client.post("/api/scenario", json={"spec": spec})
        assert response.status_code == 422
        assert "c_base" in response.json()["error"]

    def test_gap_block_flags_unreachable_target(self, client):
        response = client.post(
            "/api/scenario", json={"spec_id": "fixture", "target": 10_000_000.0}
        )
        assert response.status_code == 200
        gap = response.json()["report"]["gap"]
        assert not gap["required_f_p"]["in_envelope"]
        assert not gap["required_f_c"]["in_envelope"]

    def test_unknown_request_field_400(self, client):
        response = client.post(
            "/api/scenario", json={"spec_id": "fixture", "cache": True}
        )
        assert response.status_code == 400

    def test_needs_exactly_one_of_spec_or_spec_id(self, client):
        assert client.post("/api/scenario", json={}).status_code == 400
        response = client.post(
            "/api/scenario", json={"spec_id": "fixture", "spec": {}}
        )
        assert response.status_code == 400

    def test_idempotent_posts(self, client):
        body = {"spec_id": "fixture", "intensity": {"f_c": 0.3, "f_p": 0.7}}
        first = client.post("/api/scenario", json=body)
        second = client.post("/api/scenario", json=body)
        assert first.json() == second.json()
