#!/usr/bin/env python3
"""End-to-end walkthrough on the bundled demo data.

Drafts an assessment from a fixture DOI, validates and stores it, attaches
it to an article, and prints the compact and expanded indicator payloads a
reader-facing page would receive.
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from sei.core import validate_assessment  # noqa: E402
from sei.gateway import FixtureProvider, MetadataGateway, draft_result_to_dict  # noqa: E402
from sei.registry import load_registry  # noqa: E402
from sei.service import compact_payload, expanded_payload  # noqa: E402
from sei.store import AssessmentStore  # noqa: E402

REPO = Path(__file__).resolve().parents[1]


def show(title: str, obj) -> None:
    print(f"\n=== {title} ===")
    print(json.dumps(obj, indent=2, ensure_ascii=False))


def main() -> int:
    registry = load_registry(REPO / "src" / "sei" / "data" / "demo_registry.csv")
    gateway = MetadataGateway(FixtureProvider(REPO / "fixtures"))

    for doi in ("10.1000/demo-rct", "10.1000/demo-unknown-channel", "10.1000/demo-unclassified"):
        result = gateway.draft_assessment_from_doi(registry, doi)
        show(f"draft for {doi}", draft_result_to_dict(result))

    result = gateway.draft_assessment_from_doi(registry, "10.1000/demo-rct")
    assessment = validate_assessment(result.draft)

    with tempfile.TemporaryDirectory() as tmp:
        store = AssessmentStore(Path(tmp) / "assessments.jsonl")
        store.register_article("article-1", title="New trial changes hip surgery advice")
        assessment_id, version = store.put_assessment(assessment, article_id="article-1")
        print(f"\nstored assessment {assessment_id} version {version}")

        stored = store.get_assessment(assessment_id)
        show("compact indicator payload", compact_payload(stored))
        show("expanded indicator payload", expanded_payload(stored))
    return 0


if __name__ == "__main__":
    sys.exit(main())
