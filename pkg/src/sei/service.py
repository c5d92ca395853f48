"""HTTP facade composing the scoring core, registry, gateway, and store.

Journalists submit the four variables (or ask for an automated draft from a
DOI), readers' pages fetch per-source indicator payloads in compact or
expanded form. Drafts are never persisted by the draft endpoint; the
journalist confirms through POST /assessments, which is the only write path.

Error bodies carry machine-readable codes next to human text; the codes are
shared with the CLI and are part of the public contract.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path

from fastapi import Body, FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from sei.core import (
    AssessmentInvalid,
    EntryMode,
    EvidenceLevel,
    SourceAssessment,
    validate_assessment,
)
from sei.gateway import (
    MetadataGateway,
    MetadataNotFoundError,
    ProviderConfig,
    ProviderError,
    ProviderKind,
    draft_result_to_dict,
)
from sei.intake import parse_variables
from sei.registry import Registry, load_registry, search_channels
from sei.store import (
    AssessmentNotFoundError,
    AssessmentStore,
    StoredAssessment,
    VersionConflictError,
    assessment_to_dict,
    stored_to_dict,
)
from sei.strings import DEFAULT_LOCALE, get_string

LINK_KEYS = ("assessing_evidence", "about_indicator")


@dataclass
class ServiceConfig:
    """Service wiring; a JSON file plus SEI_* environment overrides."""

    host: str = "127.0.0.1"
    port: int = 8000
    registry_path: str | None = None
    store_path: str = "assessments.jsonl"
    provider: ProviderConfig | None = None
    links: dict[str, str | None] = dataclass_field(
        default_factory=lambda: {key: None for key in LINK_KEYS}
    )


def load_config(path: str | Path | None = None, env=None) -> ServiceConfig:
    env = os.environ if env is None else env
    raw: dict = {}
    if path is not None:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))

    def pick(key: str, env_key: str, default=None):
        return env.get(env_key, raw.get(key, default))

    provider_raw = dict(raw.get("provider") or {})
    for key, env_key in (
        ("kind", "SEI_PROVIDER_KIND"),
        ("base_url", "SEI_PROVIDER_BASE_URL"),
        ("fixture_root", "SEI_PROVIDER_FIXTURE_ROOT"),
        ("timeout", "SEI_PROVIDER_TIMEOUT"),
        ("max_retries", "SEI_PROVIDER_MAX_RETRIES"),
        ("cache_ttl", "SEI_PROVIDER_CACHE_TTL"),
    ):
        if env_key in env:
            provider_raw[key] = env[env_key]

    provider = None
    if provider_raw.get("kind"):
        provider = ProviderConfig(
            kind=ProviderKind(provider_raw["kind"]),
            base_url=provider_raw.get("base_url"),
            fixture_root=Path(provider_raw["fixture_root"])
            if provider_raw.get("fixture_root")
            else None,
            timeout=float(provider_raw.get("timeout", 5.0)),
            max_retries=int(provider_raw.get("max_retries", 3)),
            cache_ttl=float(provider_raw.get("cache_ttl", 300.0)),
        )

    links = {key: None for key in LINK_KEYS}
    links.update(raw.get("links") or {})

    return ServiceConfig(
        host=str(pick("host", "SEI_HOST", "127.0.0.1")),
        port=int(pick("port", "SEI_PORT", 8000)),
        registry_path=pick("registry_path", "SEI_REGISTRY_PATH"),
        store_path=str(pick("store_path", "SEI_STORE_PATH", "assessments.jsonl")),
        provider=provider,
        links=links,
    )


def _error_body(code: str, message: str, field: str = "") -> dict:
    return {"errors": [{"code": code, "field": field, "message": message}]}


def _issues_body(issues) -> dict:
    return {
        "errors": [
            {"code": i.code, "field": i.field, "message": i.message} for i in issues
        ]
    }


def compact_payload(stored: StoredAssessment, locale: str = DEFAULT_LOCALE) -> dict:
    """The badge payload: evidence level plus the four variables, fixed order."""
    a = stored.assessment
    return {
        "evidence": a.evidence.token,
        "evidence_label": get_string(f"evidence.{a.evidence.token}.label", locale),
        "summaries": [
            {
                "key": "publication",
                "label": get_string("variable.publication.label", locale),
                "value": _publication_value(a, locale),
            },
            {
                "key": "method",
                "label": get_string("variable.method.label", locale),
                "value": a.method.label,
            },
            {
                "key": "experience",
                "label": get_string("variable.experience.label", locale),
                "value": a.experience.label,
            },
            {
                "key": "remarks",
                "label": get_string("variable.remarks.label", locale),
                "value": _remarks_value(a, locale),
            },
        ],
        "assessment_ref": {"id": a.id, "version": a.version},
    }


def expanded_payload(
    stored: StoredAssessment,
    locale: str = DEFAULT_LOCALE,
    links: dict[str, str | None] | None = None,
) -> dict:
    """The card payload: compact plus explanations, remark texts, link slots,
    and the heuristic disclaimer on Medium and High."""
    a = stored.assessment
    payload = compact_payload(stored, locale)
    payload["explanations"] = {
        key: get_string(f"explanation.{key}", locale)
        for key in ("publication", "method", "experience", "remarks")
    }
    payload["remarks"] = [
        {"text": r.text, "severity": r.severity.value} for r in a.remarks
    ]
    payload["bfi_channel_found"] = a.bfi_channel_found
    payload["links"] = [
        {
            "key": key,
            "label": get_string(f"link.{key}.label", locale),
            "url": (links or {}).get(key),
        }
        for key in LINK_KEYS
    ]
    payload["disclaimer"] = (
        get_string("disclaimer.heuristic", locale)
        if a.evidence != EvidenceLevel.LOW
        else None
    )
    return payload


def _publication_value(a: SourceAssessment, locale: str) -> str:
    if int(a.bfi) == 0:
        key = (
            "publication.value.below_minimum"
            if a.bfi_channel_found
            else "publication.value.not_found"
        )
        return get_string(key, locale)
    return get_string("publication.value.level", locale, level=int(a.bfi))


def _remarks_value(a: SourceAssessment, locale: str) -> str:
    n = len(a.remarks)
    if n == 0:
        return get_string("remarks.value.none", locale)
    if n == 1:
        return get_string("remarks.value.one", locale)
    return get_string("remarks.value.many", locale, count=n)


def create_app(
    config: ServiceConfig | None = None,
    *,
    registry: Registry | None = None,
    store: AssessmentStore | None = None,
    gateway: MetadataGateway | None = None,
) -> FastAPI:
    """Build the application; pass prebuilt components to skip config wiring."""
    config = config or ServiceConfig()
    if registry is None and config.registry_path:
        registry = load_registry(Path(config.registry_path))
    if store is None:
        store = AssessmentStore(config.store_path)
    if gateway is None and config.provider is not None:
        gateway = MetadataGateway.from_config(config.provider)

    app = FastAPI(title="Science Evidence Indicator", version="0.1.0", docs_url=None)
    app.state.registry = registry
    app.state.store = store
    app.state.gateway = gateway
    app.state.links = config.links

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content=_error_body("MALFORMED_BODY", "request does not parse"),
        )

    @app.post("/assessments", status_code=201)
    def post_assessment(payload: dict = Body(...)):
        entered_by = EntryMode.MANUAL
        if payload.get("entered_by") in ("manual", "automated"):
            entered_by = EntryMode(payload["entered_by"])
        draft, issues = parse_variables(payload, app.state.registry, entered_by=entered_by)
        try:
            assessment = validate_assessment(draft)
        except AssessmentInvalid as exc:
            return JSONResponse(status_code=422, content=_issues_body(issues + exc.issues))
        if issues:
            return JSONResponse(status_code=422, content=_issues_body(issues))

        article_id = payload.get("article_id")
        expected_version = payload.get("expected_version")
        try:
            assessment_id, version = app.state.store.put_assessment(
                assessment,
                article_id=article_id if isinstance(article_id, str) else None,
                expected_version=expected_version
                if isinstance(expected_version, int)
                else None,
            )
        except VersionConflictError as exc:
            return JSONResponse(
                status_code=409, content=_error_body("VERSION_CONFLICT", str(exc))
            )
        except OSError as exc:
            return JSONResponse(
                status_code=500, content=_error_body("STORAGE_FAILURE", str(exc))
            )
        stored = app.state.store.get_assessment(assessment_id, version)
        return {
            "id": assessment_id,
            "version": version,
            "evidence": stored.assessment.evidence.token,
            "experience": stored.assessment.experience.token,
            "assessment": assessment_to_dict(stored.assessment),
        }

    @app.post("/assessments/draft-from-doi")
    def draft_from_doi(payload: dict = Body(...)):
        doi = payload.get("doi")
        if not isinstance(doi, str) or not doi.strip():
            return JSONResponse(
                status_code=400,
                content=_error_body("MALFORMED_BODY", "body must carry a doi", "doi"),
            )
        if app.state.gateway is None:
            return JSONResponse(
                status_code=503,
                content=_error_body(
                    "PROVIDER_NOT_CONFIGURED", "no metadata provider is configured"
                ),
            )
        if app.state.registry is None:
            return JSONResponse(
                status_code=503,
                content=_error_body("REGISTRY_NOT_CONFIGURED", "no registry is loaded"),
            )
        try:
            result = app.state.gateway.draft_assessment_from_doi(app.state.registry, doi)
        except MetadataNotFoundError as exc:
            return JSONResponse(status_code=404, content=_error_body("DOI_NOT_FOUND", str(exc)))
        except ProviderError as exc:
            return JSONResponse(
                status_code=502, content=_error_body("UPSTREAM_FAILURE", str(exc))
            )
        return draft_result_to_dict(result)

    @app.get("/articles/{article_id}/indicators")
    def article_indicators(
        article_id: str,
        view: str = Query("compact"),
        locale: str = Query(DEFAULT_LOCALE),
    ):
        if view not in ("compact", "expanded"):
            return JSONResponse(
                status_code=400,
                content=_error_body(
                    "INVALID_VIEW", f"view must be compact or expanded, got {view!r}", "view"
                ),
            )
        heads = app.state.store.list_by_article(article_id)
        if view == "compact":
            return [compact_payload(s, locale) for s in heads]
        return [expanded_payload(s, locale, app.state.links) for s in heads]

    @app.get("/registry/channels")
    def registry_channels(q: str = Query("")):
        if app.state.registry is None:
            return JSONResponse(
                status_code=503,
                content=_error_body("REGISTRY_NOT_CONFIGURED", "no registry is loaded"),
            )
        hits = search_channels(app.state.registry, q)
        return [
            {
                "canonical_name": r.canonical_name,
                "issns": list(r.issns),
                "bfi_level": int(r.bfi_level),
            }
            for r in hits
        ]

    @app.get("/assessments/{assessment_id}")
    def get_assessment(assessment_id: str, version: int | None = Query(None)):
        try:
            stored = app.state.store.get_assessment(assessment_id, version)
        except AssessmentNotFoundError:
            return JSONResponse(
                status_code=404,
                content=_error_body(
                    "ASSESSMENT_NOT_FOUND", f"no assessment {assessment_id!r}"
                ),
            )
        return stored_to_dict(stored)

    @app.get("/healthz")
    def healthz():
        registry = app.state.registry
        return {
            "status": "ok",
            "components": {
                "registry": {
                    "loaded": registry is not None,
                    "channels": len(registry) if registry is not None else 0,
                },
                "store": {
                    "path": str(app.state.store.path),
                    "assessments": len(app.state.store.all_ids()),
                },
                "provider": {
                    "configured": app.state.gateway is not None,
                },
            },
        }

    return app
