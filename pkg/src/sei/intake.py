"""Turn user-supplied variable bundles into assessment drafts.

The CLI's batch rows and the HTTP service's POST bodies share this parser,
which is what makes their evidence levels and error codes identical by
construction. A bundle may name the publication channel (resolved against
the registry) or carry an explicit channel level; the method may be a rank
or a free-text study design classified by the same rule list the automated
path uses; author data may be h-indices, citation lists, or full profiles.
"""

from __future__ import annotations

import re

from sei.core import (
    AssessmentDraft,
    AssessmentInvalid,
    CitationProfile,
    EntryMode,
    InvalidInputError,
    Severity,
    SourceAssessment,
    SpecialRemark,
    ValidationIssue,
    validate_assessment,
)
from sei.gateway import classify_method_text
from sei.registry import InvalidIssnError, Registry, lookup_channel

# Intake-level codes, joining the core validation codes in the public contract.
MALFORMED_FIELD = "MALFORMED_FIELD"
INVALID_ISSN = "INVALID_ISSN"
UNRECOGNIZED_METHOD_TEXT = "UNRECOGNIZED_METHOD_TEXT"
EMPTY_REMARK_TEXT = "EMPTY_REMARK_TEXT"

_ISSN_SHAPE = re.compile(r"^\d{4}-?\d{3}[\dXx]$")


def looks_like_issn(identifier: str) -> bool:
    return bool(_ISSN_SHAPE.match(identifier.strip()))


def parse_variables(
    payload: dict,
    registry: Registry | None = None,
    entered_by: EntryMode = EntryMode.MANUAL,
) -> tuple[AssessmentDraft, list[ValidationIssue]]:
    """Build a draft from a loose dict; collects intake problems as issues.

    Recognized keys: ``channel`` (identifier string or ``{"issn": ...}`` /
    ``{"name": ...}``), ``bfi``, ``bfi_channel_found``, ``method`` (rank or
    text), ``h_indices``, ``citations``, ``authors``, ``team_max_h``,
    ``remarks``, ``assessment_id``. The returned issues cover only intake
    problems; rule violations surface when the draft is validated.
    """
    issues: list[ValidationIssue] = []
    draft = AssessmentDraft(entered_by=entered_by)

    _parse_channel(payload, registry, draft, issues)
    _parse_method(payload, draft, issues)
    _parse_team(payload, draft, issues)
    _parse_remarks(payload, draft, issues)

    assessment_id = payload.get("assessment_id")
    if assessment_id is not None:
        if isinstance(assessment_id, str) and assessment_id:
            draft.assessment_id = assessment_id
        else:
            issues.append(
                ValidationIssue(MALFORMED_FIELD, "assessment_id", "must be a non-empty string")
            )
    return draft, issues


def assess_variables(
    payload: dict,
    registry: Registry | None = None,
    entered_by: EntryMode = EntryMode.MANUAL,
) -> SourceAssessment:
    """Parse and validate in one step; all intake and rule issues are raised
    together as :class:`AssessmentInvalid`."""
    draft, issues = parse_variables(payload, registry, entered_by)
    try:
        assessment = validate_assessment(draft)
    except AssessmentInvalid as exc:
        raise AssessmentInvalid(issues + exc.issues) from None
    if issues:
        raise AssessmentInvalid(issues)
    return assessment


def _parse_channel(payload, registry, draft, issues) -> None:
    channel = payload.get("channel")
    if channel is not None:
        issn = name = None
        if isinstance(channel, str) and channel.strip():
            if looks_like_issn(channel):
                issn = channel.strip()
            else:
                name = channel.strip()
        elif isinstance(channel, dict) and (channel.get("issn") or channel.get("name")):
            issn = channel.get("issn")
            name = channel.get("name")
        else:
            issues.append(
                ValidationIssue(
                    MALFORMED_FIELD,
                    "channel",
                    "must be an identifier string or {'issn': ...} / {'name': ...}",
                )
            )
            return
        if registry is None:
            issues.append(
                ValidationIssue(
                    MALFORMED_FIELD, "channel", "no registry available to resolve the channel"
                )
            )
            return
        try:
            result = lookup_channel(registry, issn=issn, name=name)
        except InvalidIssnError as exc:
            issues.append(ValidationIssue(INVALID_ISSN, "channel", str(exc)))
            return
        draft.bfi = int(result.bfi)
        draft.bfi_channel_found = result.found
        return

    bfi = payload.get("bfi")
    if bfi is not None:
        if isinstance(bfi, int) and not isinstance(bfi, bool):
            draft.bfi = bfi
        else:
            issues.append(ValidationIssue(MALFORMED_FIELD, "bfi", "must be an integer"))
    found = payload.get("bfi_channel_found")
    if found is not None:
        if isinstance(found, bool):
            draft.bfi_channel_found = found
        else:
            issues.append(
                ValidationIssue(MALFORMED_FIELD, "bfi_channel_found", "must be a boolean")
            )


def _parse_method(payload, draft, issues) -> None:
    method = payload.get("method")
    if method is None:
        return
    if isinstance(method, bool):
        issues.append(ValidationIssue(MALFORMED_FIELD, "method", "must be a rank or text"))
        return
    if isinstance(method, int):
        draft.method_rank = method
        return
    if isinstance(method, str):
        text = method.strip()
        if text.lstrip("-").isdigit():
            draft.method_rank = int(text)
            return
        match = classify_method_text(text, source="method")
        if match is None:
            issues.append(
                ValidationIssue(
                    UNRECOGNIZED_METHOD_TEXT,
                    "method",
                    f"cannot classify study design from {text!r}; give a rank 1..7",
                )
            )
            return
        draft.method_rank = int(match.rank)
        return
    issues.append(ValidationIssue(MALFORMED_FIELD, "method", "must be a rank or text"))


def _parse_team(payload, draft, issues) -> None:
    profiles: list[CitationProfile] = []
    supplied = False

    h_indices = payload.get("h_indices")
    if h_indices is not None:
        supplied = True
        if isinstance(h_indices, list) and all(
            isinstance(h, int) and not isinstance(h, bool) for h in h_indices
        ):
            profiles.extend(
                CitationProfile(author_name=f"author {i + 1}", precomputed_h=h)
                for i, h in enumerate(h_indices)
            )
        else:
            issues.append(
                ValidationIssue(MALFORMED_FIELD, "h_indices", "must be a list of integers")
            )

    citations = payload.get("citations")
    if citations is not None:
        supplied = True
        if isinstance(citations, list) and all(
            isinstance(row, list) and all(isinstance(c, int) and not isinstance(c, bool) for c in row)
            for row in citations
        ):
            offset = len(profiles)
            profiles.extend(
                CitationProfile(author_name=f"author {offset + i + 1}", citations=tuple(row))
                for i, row in enumerate(citations)
            )
        else:
            issues.append(
                ValidationIssue(
                    MALFORMED_FIELD, "citations", "must be a list of integer lists"
                )
            )

    authors = payload.get("authors")
    if authors is not None:
        supplied = True
        if isinstance(authors, list):
            for i, entry in enumerate(authors):
                if not isinstance(entry, dict):
                    issues.append(
                        ValidationIssue(MALFORMED_FIELD, f"authors[{i}]", "must be an object")
                    )
                    continue
                raw_citations = entry.get("citations")
                profiles.append(
                    CitationProfile(
                        author_name=str(entry.get("name", f"author {len(profiles) + 1}")),
                        citations=tuple(raw_citations) if isinstance(raw_citations, list) else None,
                        precomputed_h=entry.get("h_index"),
                    )
                )
        else:
            issues.append(ValidationIssue(MALFORMED_FIELD, "authors", "must be a list"))

    if supplied:
        draft.profiles = profiles
        return

    team_max_h = payload.get("team_max_h")
    if team_max_h is not None:
        if isinstance(team_max_h, int) and not isinstance(team_max_h, bool):
            draft.team_max_h = team_max_h
        else:
            issues.append(
                ValidationIssue(MALFORMED_FIELD, "team_max_h", "must be an integer")
            )


def _parse_remarks(payload, draft, issues) -> None:
    remarks = payload.get("remarks")
    if remarks is None:
        return
    if not isinstance(remarks, list):
        issues.append(ValidationIssue(MALFORMED_FIELD, "remarks", "must be a list"))
        return
    for i, entry in enumerate(remarks):
        if isinstance(entry, str):
            text, severity = entry, Severity.INFO
        elif isinstance(entry, dict) and isinstance(entry.get("text"), str):
            text = entry["text"]
            try:
                severity = Severity(entry.get("severity", "info"))
            except ValueError:
                issues.append(
                    ValidationIssue(
                        MALFORMED_FIELD, f"remarks[{i}]", "severity must be info or warning"
                    )
                )
                continue
        else:
            issues.append(
                ValidationIssue(
                    MALFORMED_FIELD, f"remarks[{i}]", "must be text or {'text': ..., 'severity': ...}"
                )
            )
            continue
        try:
            draft.remarks.append(SpecialRemark(text=text, severity=severity))
        except InvalidInputError:
            issues.append(
                ValidationIssue(EMPTY_REMARK_TEXT, f"remarks[{i}]", "remark text is empty")
            )
