"""Command-line entry point: batch scoring, registry checks, and drafting.

Exit codes follow one convention across subcommands: 0 all rows valid,
1 row-level failures (invalid rows, load diagnostics, unknown DOI),
2 environment failures (unreadable files, bad configuration, transport).

Batch input format (docs/FORMATS.md): UTF-8 CSV, header row exactly
``channel,method,h_indices,remarks``, ``#`` comments allowed. ``channel``
is an ISSN or a channel name; ``method`` is a rank 1..7 or a study-design
text; ``h_indices`` is ``;``-separated, each entry an integer h-index or a
``|``-separated citation list; ``remarks`` is quoted free text.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from sei.core import AssessmentInvalid, MethodRank, validate_assessment
from sei.gateway import (
    MetadataGateway,
    MetadataNotFoundError,
    ProviderConfig,
    ProviderError,
    ProviderKind,
    TransportError,
    draft_result_to_dict,
)
from sei.intake import parse_variables
from sei.jsonutil import canonical_json
from sei.registry import RegistryLoadError, load_registry

INPUT_HEADER = "channel,method,h_indices,remarks"

MALFORMED_ROW = "MALFORMED_ROW"

# Documented shape of `sei score --format json`; tests hold it against the
# actual output.
SCORE_REPORT_SCHEMA = {
    "type": "object",
    "required": ["rows", "summary"],
    "additionalProperties": False,
    "properties": {
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": [
                    "row",
                    "channel",
                    "valid",
                    "bfi",
                    "bfi_channel_found",
                    "method_rank",
                    "method_label",
                    "team_max_h",
                    "experience",
                    "evidence",
                    "errors",
                ],
                "additionalProperties": False,
                "properties": {
                    "row": {"type": "integer"},
                    "channel": {"type": "string"},
                    "valid": {"type": "boolean"},
                    "bfi": {"type": ["integer", "null"]},
                    "bfi_channel_found": {"type": "boolean"},
                    "method_rank": {"type": ["integer", "null"]},
                    "method_label": {"type": ["string", "null"]},
                    "team_max_h": {"type": ["integer", "null"]},
                    "experience": {"type": ["string", "null"]},
                    "evidence": {"type": ["string", "null"]},
                    "errors": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["code", "field", "message"],
                            "additionalProperties": False,
                            "properties": {
                                "code": {"type": "string"},
                                "field": {"type": "string"},
                                "message": {"type": "string"},
                            },
                        },
                    },
                },
            },
        },
        "summary": {
            "type": "object",
            "required": ["total", "valid", "invalid"],
            "additionalProperties": False,
            "properties": {
                "total": {"type": "integer"},
                "valid": {"type": "integer"},
                "invalid": {"type": "integer"},
            },
        },
    },
}


def row_to_payload(fields: list[str]) -> dict:
    """Map one CSV row to the variable-bundle dict the intake parser takes."""
    channel, method, h_cell, remarks = (f.strip() for f in fields)
    payload: dict = {}
    if channel:
        payload["channel"] = channel
    if method:
        payload["method"] = method
    if h_cell:
        h_indices: list = []
        citations: list = []
        for entry in h_cell.split(";"):
            entry = entry.strip()
            if not entry:
                continue
            if "|" in entry:
                citations.append([_int_or_raw(c) for c in entry.split("|")])
            else:
                h_indices.append(_int_or_raw(entry))
        if h_indices:
            payload["h_indices"] = h_indices
        if citations:
            payload["citations"] = citations
    if remarks:
        payload["remarks"] = [remarks]
    return payload


def _int_or_raw(text: str):
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        return text  # intake reports the malformed entry with a code


def score_rows(rows: list[tuple[int, list[str] | None, str]], registry) -> dict:
    """Score parsed input rows; row errors never abort the batch."""
    out_rows = []
    for row_no, fields, channel_text in rows:
        base = {
            "row": row_no,
            "channel": channel_text,
            "valid": False,
            "bfi": None,
            "bfi_channel_found": False,
            "method_rank": None,
            "method_label": None,
            "team_max_h": None,
            "experience": None,
            "evidence": None,
            "errors": [],
        }
        if fields is None:
            base["errors"] = [
                {
                    "code": MALFORMED_ROW,
                    "field": "",
                    "message": "row does not have exactly 4 fields",
                }
            ]
            out_rows.append(base)
            continue
        payload = row_to_payload(fields)
        draft, issues = parse_variables(payload, registry)
        base["bfi"] = draft.bfi
        base["bfi_channel_found"] = draft.bfi_channel_found
        base["method_rank"] = draft.method_rank
        if draft.method_rank is not None and 1 <= draft.method_rank <= 7:
            base["method_label"] = MethodRank(draft.method_rank).label
        errors = list(issues)
        try:
            assessment = validate_assessment(draft)
        except AssessmentInvalid as exc:
            errors.extend(exc.issues)
        else:
            if not errors:
                base.update(
                    valid=True,
                    team_max_h=assessment.team_max_h,
                    experience=assessment.experience.token,
                    evidence=assessment.evidence.token,
                )
        base["errors"] = [
            {"code": i.code, "field": i.field, "message": i.message} for i in errors
        ]
        out_rows.append(base)
    valid = sum(1 for r in out_rows if r["valid"])
    return {
        "rows": out_rows,
        "summary": {"total": len(out_rows), "valid": valid, "invalid": len(out_rows) - valid},
    }


def read_input_rows(path: Path) -> list[tuple[int, list[str] | None, str]]:
    """Parse the batch file into (line number, fields or None, channel text)."""
    text = path.read_text(encoding="utf-8")
    rows: list[tuple[int, list[str] | None, str]] = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != INPUT_HEADER:
                raise ValueError(
                    f"line {lineno}: header must be exactly {INPUT_HEADER!r}"
                )
            header_seen = True
            continue
        try:
            fields = next(csv.reader(io.StringIO(raw)))
        except (csv.Error, StopIteration):
            fields = None
        if fields is not None and len(fields) != 4:
            fields = None
        rows.append((lineno, fields, fields[0].strip() if fields else line[:40]))
    return rows


def _print_table(report: dict, out) -> None:
    header = f"{'row':>4}  {'channel':<28} {'bfi':>3} {'rank':>4} {'h':>5} {'experience':<16} {'evidence':<8} errors"
    print(header, file=out)
    print("-" * len(header), file=out)
    for r in report["rows"]:
        codes = ",".join(e["code"] for e in r["errors"])
        print(
            f"{r['row']:>4}  {r['channel'][:28]:<28} "
            f"{_cell(r['bfi']):>3} {_cell(r['method_rank']):>4} {_cell(r['team_max_h']):>5} "
            f"{_cell(r['experience']):<16} {_cell(r['evidence']):<8} {codes}",
            file=out,
        )
    s = report["summary"]
    print(f"{s['total']} rows: {s['valid']} valid, {s['invalid']} invalid", file=out)


def _cell(value) -> str:
    return "-" if value is None else str(value)


def cmd_score(args) -> int:
    try:
        registry = load_registry(Path(args.registry))
    except OSError as exc:
        print(f"sei: cannot read registry: {exc}", file=sys.stderr)
        return 2
    except RegistryLoadError as exc:
        print(f"sei: registry is invalid: {exc}", file=sys.stderr)
        return 2
    try:
        rows = read_input_rows(Path(args.input))
    except OSError as exc:
        print(f"sei: cannot read input: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"sei: bad input file: {exc}", file=sys.stderr)
        return 2

    report = score_rows(rows, registry)
    if args.format == "json":
        print(json.dumps(report, indent=2, ensure_ascii=False))
    else:
        _print_table(report, sys.stdout)
    return 0 if report["summary"]["invalid"] == 0 else 1


def cmd_registry_check(args) -> int:
    try:
        registry = load_registry(Path(args.file))
    except OSError as exc:
        print(f"sei: cannot read registry: {exc}", file=sys.stderr)
        return 2
    except RegistryLoadError as exc:
        for problem in exc.problems:
            print(f"{args.file}:{problem.line}: {problem.code}: {problem.message}")
        print(f"{len(exc.problems)} problem(s) found", file=sys.stderr)
        return 1
    print(f"OK, {len(registry)} channels")
    return 0


def cmd_draft(args) -> int:
    try:
        registry = load_registry(Path(args.registry))
    except (OSError, RegistryLoadError) as exc:
        print(f"sei: cannot load registry: {exc}", file=sys.stderr)
        return 2
    try:
        if args.provider == "fixture":
            if not args.fixture_root:
                print("sei: --fixture-root is required with --provider fixture", file=sys.stderr)
                return 2
            config = ProviderConfig(
                kind=ProviderKind.FIXTURE, fixture_root=Path(args.fixture_root)
            )
        else:
            if not args.base_url:
                print("sei: --base-url is required with --provider http", file=sys.stderr)
                return 2
            config = ProviderConfig(kind=ProviderKind.HTTP, base_url=args.base_url)
        gateway = MetadataGateway.from_config(config)
        result = gateway.draft_assessment_from_doi(registry, args.doi)
    except MetadataNotFoundError as exc:
        print(f"sei: {exc}", file=sys.stderr)
        return 1
    except (TransportError, ProviderError) as exc:
        print(f"sei: provider failure: {exc}", file=sys.stderr)
        return 2

    data = draft_result_to_dict(result)
    if args.format == "json":
        print(canonical_json(data))
        return 0
    print(f"doi:        {data['doi']}")
    print(f"title:      {data['title']}")
    print(f"channel:    {data['channel_name']}")
    draft = data["draft"]
    print(f"bfi:        {draft['bfi']} (channel found: {draft['bfi_channel_found']})")
    rank = draft["method_rank"]
    method_text = "-" if rank is None else f"{rank} ({draft['method_label']})"
    print(f"method:     {method_text}")
    print(f"team max h: {_cell(draft['team_max_h'])}")
    print(f"experience: {_cell(data['experience'])}")
    print(f"evidence:   {_cell(data['evidence'])}")
    for remark in draft["remarks"]:
        print(f"remark:     [{remark['severity']}] {remark['text']}")
    if data["needs_review"]:
        print(f"needs review: {', '.join(data['needs_review'])}")
        for field_name, note in data["notes"].items():
            print(f"  {field_name}: {note}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from sei.service import create_app, load_config

    try:
        config = load_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"sei: cannot load config: {exc}", file=sys.stderr)
        return 2
    if args.host:
        config.host = args.host
    if args.port:
        config.port = args.port
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sei", description="Score the scientific evidence level of research sources."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_score = sub.add_parser("score", help="score a batch file of sources")
    p_score.add_argument("--registry", required=True, help="channel registry CSV")
    p_score.add_argument("--input", required=True, help="batch input CSV")
    p_score.add_argument("--format", choices=("table", "json"), default="table")
    p_score.set_defaults(func=cmd_score)

    p_registry = sub.add_parser("registry", help="registry maintenance")
    reg_sub = p_registry.add_subparsers(dest="registry_command", required=True)
    p_check = reg_sub.add_parser("check", help="validate a registry file")
    p_check.add_argument("file")
    p_check.set_defaults(func=cmd_registry_check)

    p_draft = sub.add_parser("draft", help="draft an assessment from a DOI")
    p_draft.add_argument("--doi", required=True)
    p_draft.add_argument("--provider", choices=("fixture", "http"), default="fixture")
    p_draft.add_argument("--fixture-root")
    p_draft.add_argument("--base-url")
    p_draft.add_argument("--registry", required=True)
    p_draft.add_argument("--format", choices=("text", "json"), default="text")
    p_draft.set_defaults(func=cmd_draft)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--config", help="JSON config file")
    p_serve.add_argument("--host")
    p_serve.add_argument("--port", type=int)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
