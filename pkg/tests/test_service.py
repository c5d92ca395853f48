import json

import pytest
from fastapi.testclient import TestClient

from sei.core import aggregate_evidence
from sei.gateway import FixtureProvider, MetadataGateway
from sei.service import ServiceConfig, create_app, load_config
from sei.store import AssessmentStore

from conftest import make_issn


@pytest.fixture
def app(tmp_path, corpus_registry, corpus_root):
    store = AssessmentStore(tmp_path / "store.jsonl")
    gateway = MetadataGateway(FixtureProvider(corpus_root))
    return create_app(registry=corpus_registry, store=store, gateway=gateway)


@pytest.fixture
def client(app):
    return TestClient(app)


HIGH_BODY = {
    "channel": {"issn": make_issn(2)},  # Journal Two, level 2
    "method": 1,
    "h_indices": [25],
}


class TestPostAssessment:
    def test_valid_high_body(self, client):
        resp = client.post("/assessments", json=HIGH_BODY)
        assert resp.status_code == 201
        body = resp.json()
        assert body["evidence"] == "high"
        assert body["experience"] == "experienced"
        assert body["version"] == 1

    def test_missing_remark_code(self, client):
        resp = client.post(
            "/assessments",
            json={"channel": {"name": "No Such Journal"}, "method": 1, "h_indices": [30]},
        )
        assert resp.status_code == 422
        codes = [e["code"] for e in resp.json()["errors"]]
        assert codes == ["MISSING_REMARK_FOR_UNREVIEWED"]

    def test_unreviewed_with_remark_is_created_low(self, client):
        resp = client.post(
            "/assessments",
            json={
                "channel": "No Such Journal",
                "method": 1,
                "h_indices": [30],
                "remarks": ["preprint, not yet peer reviewed"],
            },
        )
        assert resp.status_code == 201
        assert resp.json()["evidence"] == "low"

    def test_malformed_body_is_400(self, client):
        resp = client.post(
            "/assessments", content=b"{not json", headers={"Content-Type": "application/json"}
        )
        assert resp.status_code == 400
        assert resp.json()["errors"][0]["code"] == "MALFORMED_BODY"
        resp = client.post("/assessments", json=["a", "list"])
        assert resp.status_code == 400

    def test_core_validation_codes_surface(self, client):
        resp = client.post("/assessments", json={"bfi": 9, "method": 0, "h_indices": [5]})
        assert resp.status_code == 422
        codes = sorted(e["code"] for e in resp.json()["errors"])
        assert codes == ["INVALID_BFI_LEVEL", "INVALID_METHOD_RANK"]

    def test_non_integer_author_data_is_422_not_500(self, client):
        resp = client.post(
            "/assessments",
            json={
                "channel": {"issn": make_issn(2)},
                "method": 1,
                "authors": [{"name": "x", "h_index": "33"}],
            },
        )
        assert resp.status_code == 422
        assert [e["code"] for e in resp.json()["errors"]] == ["MALFORMED_CITATION_PROFILE"]

    def test_method_text_classified_like_cli(self, client):
        resp = client.post(
            "/assessments",
            json={"channel": {"issn": make_issn(2)}, "method": "cohort study", "h_indices": [25]},
        )
        assert resp.status_code == 201
        assert resp.json()["assessment"]["method_rank"] == 3

    def test_response_evidence_matches_store_recomputation(self, client, app):
        resp = client.post("/assessments", json=HIGH_BODY)
        ref = resp.json()
        stored = app.state.store.get_assessment(ref["id"], ref["version"])
        recomputed = aggregate_evidence(
            stored.assessment.bfi, stored.assessment.method, stored.assessment.team_max_h
        )
        assert resp.json()["evidence"] == recomputed.token

    def test_reassessment_and_version_conflict(self, client):
        first = client.post("/assessments", json=HIGH_BODY).json()
        body = dict(HIGH_BODY, assessment_id=first["id"], expected_version=1)
        second = client.post("/assessments", json=body)
        assert second.status_code == 201
        assert second.json()["version"] == 2
        stale = client.post("/assessments", json=body)
        assert stale.status_code == 409
        assert stale.json()["errors"][0]["code"] == "VERSION_CONFLICT"

    def test_storage_failure_is_500(self, client, app, monkeypatch):
        def explode(*args, **kwargs):
            raise OSError("disk gone")

        monkeypatch.setattr(app.state.store, "put_assessment", explode)
        resp = client.post("/assessments", json=HIGH_BODY)
        assert resp.status_code == 500
        assert resp.json()["errors"][0]["code"] == "STORAGE_FAILURE"


class TestDraftFromDoi:
    def test_fixture_rct_draft(self, client):
        resp = client.post("/assessments/draft-from-doi", json={"doi": "10.1000/demo-rct"})
        assert resp.status_code == 200
        body = resp.json()
        assert body["evidence"] == "high"
        assert body["needs_review"] == []
        assert body["draft"]["entered_by"] == "automated"

    def test_unknown_doi_404(self, client):
        resp = client.post("/assessments/draft-from-doi", json={"doi": "10.1000/absent"})
        assert resp.status_code == 404
        assert resp.json()["errors"][0]["code"] == "DOI_NOT_FOUND"

    def test_unclassifiable_method_in_review_list(self, client):
        resp = client.post(
            "/assessments/draft-from-doi", json={"doi": "10.1000/unclassifiable"}
        )
        assert resp.status_code == 200
        assert resp.json()["needs_review"] == ["method"]

    def test_draft_is_not_persisted(self, client, app):
        client.post("/assessments/draft-from-doi", json={"doi": "10.1000/demo-rct"})
        assert app.state.store.all_ids() == []

    def test_missing_doi_field(self, client):
        resp = client.post("/assessments/draft-from-doi", json={})
        assert resp.status_code == 400

    def test_no_gateway_configured(self, tmp_path, corpus_registry):
        app = create_app(
            registry=corpus_registry, store=AssessmentStore(tmp_path / "s.jsonl")
        )
        client = TestClient(app)
        resp = client.post("/assessments/draft-from-doi", json={"doi": "10.1/x"})
        assert resp.status_code == 503


class TestIndicators:
    def _create(self, client, article_id="art-1", body=None):
        payload = dict(body or HIGH_BODY, article_id=article_id)
        resp = client.post("/assessments", json=payload)
        assert resp.status_code == 201
        return resp.json()

    def test_compact_payload_shape(self, client):
        self._create(client)
        resp = client.get("/articles/art-1/indicators?view=compact")
        assert resp.status_code == 200
        [payload] = resp.json()
        assert payload["evidence"] == "high"
        assert [s["key"] for s in payload["summaries"]] == [
            "publication",
            "method",
            "experience",
            "remarks",
        ]
        assert [s["label"] for s in payload["summaries"]] == [
            "Scientific publication",
            "Method",
            "Researcher's Experience",
            "Special Remarks",
        ]
        assert payload["summaries"][0]["value"] == "BFI level 2"
        assert payload["summaries"][1]["value"] == "Systematic review / meta-analysis"
        assert payload["summaries"][2]["value"] == "Experienced"
        assert payload["summaries"][3]["value"] == "None"

    def test_expanded_adds_card_fields_and_disclaimer(self, client):
        self._create(client)
        [payload] = client.get("/articles/art-1/indicators?view=expanded").json()
        assert payload["disclaimer"]
        assert payload["bfi_channel_found"] is True
        assert set(payload["explanations"]) == {
            "publication",
            "method",
            "experience",
            "remarks",
        }
        assert [link["key"] for link in payload["links"]] == [
            "assessing_evidence",
            "about_indicator",
        ]

    def test_low_has_no_disclaimer_and_shows_remarks(self, client):
        self._create(
            client,
            body={
                "channel": "Nowhere Gazette",
                "method": 2,
                "h_indices": [5],
                "remarks": [{"text": "not peer reviewed", "severity": "warning"}],
            },
        )
        [payload] = client.get("/articles/art-1/indicators?view=expanded").json()
        assert payload["evidence"] == "low"
        assert payload["disclaimer"] is None
        assert payload["remarks"] == [{"text": "not peer reviewed", "severity": "warning"}]
        assert payload["summaries"][0]["value"] == "Not in the BFI registry"
        assert payload["summaries"][3]["value"] == "1 remark"

    def test_compact_and_expanded_agree(self, client):
        self._create(client)
        [compact] = client.get("/articles/art-1/indicators?view=compact").json()
        [expanded] = client.get("/articles/art-1/indicators?view=expanded").json()
        assert compact["evidence"] == expanded["evidence"]
        assert compact["summaries"] == expanded["summaries"]
        assert compact["assessment_ref"] == expanded["assessment_ref"]

    def test_unknown_article_is_empty_200(self, client):
        resp = client.get("/articles/none/indicators")
        assert resp.status_code == 200
        assert resp.json() == []

    def test_invalid_view_is_400(self, client):
        resp = client.get("/articles/art-1/indicators?view=giant")
        assert resp.status_code == 400
        assert resp.json()["errors"][0]["code"] == "INVALID_VIEW"

    def test_reads_are_byte_identical(self, client):
        self._create(client)
        first = client.get("/articles/art-1/indicators?view=expanded").content
        second = client.get("/articles/art-1/indicators?view=expanded").content
        assert first == second

    def test_multiple_sources_ordered(self, client):
        self._create(client)
        self._create(
            client,
            body={"channel": {"issn": make_issn(1)}, "method": 5, "h_indices": [3]},
        )
        payloads = client.get("/articles/art-1/indicators").json()
        assert [p["evidence"] for p in payloads] == ["high", "medium"]


class TestRegistryAndAssessmentReads:
    def test_channel_search(self, client):
        resp = client.get("/registry/channels?q=journal two")
        assert resp.status_code == 200
        [hit] = resp.json()
        assert hit["canonical_name"] == "Journal Two"
        assert hit["bfi_level"] == 2

    def test_get_assessment_versions(self, client):
        first = client.post("/assessments", json=HIGH_BODY).json()
        client.post(
            "/assessments",
            json=dict(HIGH_BODY, assessment_id=first["id"], h_indices=[60]),
        )
        original = client.get(f"/assessments/{first['id']}?version=1")
        assert original.status_code == 200
        assert original.json()["assessment"]["team_max_h"] == 25
        head = client.get(f"/assessments/{first['id']}")
        assert head.json()["assessment"]["team_max_h"] == 60

    def test_unknown_assessment_404(self, client):
        resp = client.get("/assessments/unknown")
        assert resp.status_code == 404
        assert resp.json()["errors"][0]["code"] == "ASSESSMENT_NOT_FOUND"

    def test_healthz(self, client):
        resp = client.get("/healthz")
        assert resp.status_code == 200
        body = resp.json()
        assert body["status"] == "ok"
        assert body["components"]["registry"]["channels"] == 3
        assert body["components"]["provider"]["configured"] is True


class TestConfig:
    def test_file_and_env_overrides(self, tmp_path):
        config_path = tmp_path / "config.json"
        config_path.write_text(
            json.dumps(
                {
                    "host": "0.0.0.0",
                    "port": 9000,
                    "registry_path": "reg.csv",
                    "store_path": "store.jsonl",
                    "provider": {"kind": "fixture", "fixture_root": "fixtures"},
                    "links": {"about_indicator": "https://example.org/method"},
                }
            ),
            encoding="utf-8",
        )
        config = load_config(config_path, env={"SEI_PORT": "9100"})
        assert config.port == 9100
        assert config.host == "0.0.0.0"
        assert config.provider.kind.value == "fixture"
        assert config.links["about_indicator"] == "https://example.org/method"
        assert config.links["assessing_evidence"] is None

    def test_defaults_without_file(self):
        config = load_config(env={})
        assert config.port == 8000
        assert config.provider is None

    def test_env_only_provider(self):
        config = load_config(
            env={
                "SEI_PROVIDER_KIND": "http",
                "SEI_PROVIDER_BASE_URL": "http://127.0.0.1:9",
                "SEI_PROVIDER_CACHE_TTL": "10",
            }
        )
        assert config.provider.base_url == "http://127.0.0.1:9"
        assert config.provider.cache_ttl == 10.0

    def test_create_app_from_config(self, tmp_path, corpus_root):
        config = ServiceConfig(
            registry_path=None, store_path=str(tmp_path / "s.jsonl"), provider=None
        )
        app = create_app(config)
        client = TestClient(app)
        assert client.get("/healthz").json()["components"]["registry"]["loaded"] is False
