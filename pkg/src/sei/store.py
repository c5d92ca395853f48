"""Durable, versioned persistence of assessments.

One append-only UTF-8 file, one canonical JSON record per line. Records are
immutable once written; re-assessing a source appends the next version, and
team h-indices or channel levels drifting over time is exactly why history
is kept. The in-memory index is rebuilt by replaying the file on open, and
a partially written trailing record (a crash mid-append) is detected and
dropped so the store always reopens at the last complete state.

Single-writer, multi-reader: writes are serialized by an internal lock,
readers see consistent version-head snapshots.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path

from sei.core import (
    BfiLevel,
    EntryMode,
    EvidenceLevel,
    ExperienceLevel,
    MethodRank,
    Severity,
    SourceAssessment,
    SpecialRemark,
)
from sei.jsonutil import canonical_json


class AssessmentNotFoundError(KeyError):
    pass


class VersionConflictError(ValueError):
    """The caller's expected head version is stale."""


class StoreCorruptError(ValueError):
    """A non-trailing record failed to parse; the file needs attention."""


@dataclass(frozen=True)
class StoredAssessment:
    assessment: SourceAssessment
    article_id: str | None = None
    supersedes: tuple[str, int] | None = None


@dataclass(frozen=True)
class ArticleRef:
    article_id: str
    title: str = ""
    url: str | None = None
    assessment_ids: tuple[str, ...] = ()


def assessment_to_dict(assessment: SourceAssessment) -> dict:
    return {
        "id": assessment.id,
        "version": assessment.version,
        "bfi": int(assessment.bfi),
        "bfi_channel_found": assessment.bfi_channel_found,
        "method_rank": int(assessment.method),
        "method_label": assessment.method.label,
        "team_max_h": assessment.team_max_h,
        "experience": assessment.experience.token,
        "remarks": [
            {"text": r.text, "severity": r.severity.value} for r in assessment.remarks
        ],
        "evidence": assessment.evidence.token,
        "entered_by": assessment.entered_by.value,
        "created_at": assessment.created_at.isoformat(),
    }


def assessment_from_dict(data: dict) -> SourceAssessment:
    return SourceAssessment(
        id=data["id"],
        version=data["version"],
        bfi=BfiLevel(data["bfi"]),
        bfi_channel_found=data["bfi_channel_found"],
        method=MethodRank(data["method_rank"]),
        team_max_h=data["team_max_h"],
        experience=ExperienceLevel.from_token(data["experience"]),
        remarks=tuple(
            SpecialRemark(text=r["text"], severity=Severity(r["severity"]))
            for r in data["remarks"]
        ),
        evidence=EvidenceLevel.from_token(data["evidence"]),
        entered_by=EntryMode(data["entered_by"]),
        created_at=datetime.fromisoformat(data["created_at"]),
    )


def stored_to_dict(stored: StoredAssessment) -> dict:
    return {
        "kind": "assessment",
        "assessment": assessment_to_dict(stored.assessment),
        "article_id": stored.article_id,
        "supersedes": list(stored.supersedes) if stored.supersedes else None,
    }


def stored_from_dict(data: dict) -> StoredAssessment:
    supersedes = data.get("supersedes")
    return StoredAssessment(
        assessment=assessment_from_dict(data["assessment"]),
        article_id=data.get("article_id"),
        supersedes=(supersedes[0], supersedes[1]) if supersedes else None,
    )


class AssessmentStore:
    """Append-only store keyed by (assessment id, version)."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        # id -> list of StoredAssessment, index position = version - 1
        self._versions: dict[str, list[StoredAssessment]] = {}
        # article id -> (title, url, ordered attached assessment ids)
        self._articles: dict[str, tuple[str, str | None, list[str]]] = {}
        self._replay()

    # -- loading ---------------------------------------------------------

    def _replay(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        if not self.path.exists():
            self.path.touch()
            return
        raw = self.path.read_bytes()
        good_end = 0
        offset = 0
        for chunk in raw.split(b"\n"):
            if not chunk:
                offset += 1
                continue
            end = offset + len(chunk) + 1
            complete = raw[offset + len(chunk) : end] == b"\n"
            try:
                record = json.loads(chunk.decode("utf-8"))
                if not isinstance(record, dict):
                    raise ValueError("record is not an object")
            except (ValueError, UnicodeDecodeError) as exc:
                if complete:
                    raise StoreCorruptError(
                        f"{self.path}: unreadable record at byte {offset}: {exc}"
                    ) from exc
                break  # partial trailing record from an interrupted append
            if not complete:
                break  # complete JSON but no newline: the append was cut short
            self._apply(record)
            good_end = end
            offset = end
        if good_end < len(raw):
            # Drop the partial tail so the next append starts a clean line.
            with open(self.path, "r+b") as fh:
                fh.truncate(good_end)

    def _apply(self, record: dict) -> None:
        kind = record.get("kind")
        if kind == "assessment":
            stored = stored_from_dict(record)
            chain = self._versions.setdefault(stored.assessment.id, [])
            if stored.assessment.version != len(chain) + 1:
                raise StoreCorruptError(
                    f"non-contiguous version {stored.assessment.version} for "
                    f"assessment {stored.assessment.id}"
                )
            chain.append(stored)
            if stored.article_id is not None:
                self._attach(stored.article_id, stored.assessment.id)
        elif kind == "article":
            title, url, ids = self._articles.get(
                record["article_id"], ("", None, [])
            )
            self._articles[record["article_id"]] = (
                record.get("title", title),
                record.get("url", url),
                ids,
            )
        else:
            raise StoreCorruptError(f"unknown record kind {kind!r}")

    def _attach(self, article_id: str, assessment_id: str) -> None:
        title, url, ids = self._articles.get(article_id, ("", None, []))
        if assessment_id not in ids:
            ids.append(assessment_id)
        self._articles[article_id] = (title, url, ids)

    # -- writing ---------------------------------------------------------

    def _append_line(self, record: dict) -> None:
        line = canonical_json(record) + "\n"
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(line)
            fh.flush()
            os.fsync(fh.fileno())

    def put_assessment(
        self,
        assessment: SourceAssessment,
        article_id: str | None = None,
        expected_version: int | None = None,
    ) -> tuple[str, int]:
        """Append a new version of an assessment; returns (id, version).

        The version on the incoming value is ignored: a new id starts at 1
        and an existing id gets head + 1. ``expected_version`` is optimistic
        concurrency: pass the head you saw (0 for "must be new") and the put
        fails with :class:`VersionConflictError` if someone got there first.
        """
        from dataclasses import replace

        with self._lock:
            chain = self._versions.get(assessment.id, [])
            head = len(chain)
            if expected_version is not None and expected_version != head:
                raise VersionConflictError(
                    f"assessment {assessment.id} is at version {head}, "
                    f"caller expected {expected_version}"
                )
            version = head + 1
            supersedes = (assessment.id, head) if head else None
            stored = StoredAssessment(
                assessment=replace(assessment, version=version),
                article_id=article_id,
                supersedes=supersedes,
            )
            self._append_line(stored_to_dict(stored))
            self._versions.setdefault(assessment.id, []).append(stored)
            if article_id is not None:
                self._attach(article_id, assessment.id)
            return assessment.id, version

    def register_article(
        self, article_id: str, title: str = "", url: str | None = None
    ) -> None:
        """Record an article's display metadata; attachment still happens
        through :meth:`put_assessment`."""
        with self._lock:
            self._append_line(
                {"kind": "article", "article_id": article_id, "title": title, "url": url}
            )
            _, _, ids = self._articles.get(article_id, ("", None, []))
            self._articles[article_id] = (title, url, ids)

    # -- reading ---------------------------------------------------------

    def get_assessment(self, assessment_id: str, version: int | None = None) -> StoredAssessment:
        chain = self._versions.get(assessment_id)
        if not chain:
            raise AssessmentNotFoundError(assessment_id)
        if version is None:
            return chain[-1]
        if not 1 <= version <= len(chain):
            raise AssessmentNotFoundError(f"{assessment_id} version {version}")
        return chain[version - 1]

    def head_version(self, assessment_id: str) -> int:
        return len(self._versions.get(assessment_id, []))

    def list_by_article(self, article_id: str) -> list[StoredAssessment]:
        """Head versions of the article's sources, in attachment order."""
        entry = self._articles.get(article_id)
        if entry is None:
            return []
        _, _, ids = entry
        return [self._versions[a][-1] for a in ids]

    def article_ref(self, article_id: str) -> ArticleRef | None:
        entry = self._articles.get(article_id)
        if entry is None:
            return None
        title, url, ids = entry
        return ArticleRef(
            article_id=article_id, title=title, url=url, assessment_ids=tuple(ids)
        )

    def all_ids(self) -> list[str]:
        return list(self._versions.keys())

    def snapshot(self) -> dict:
        """The full logical state, for replay-equality checks."""
        return {
            "versions": {k: list(v) for k, v in self._versions.items()},
            "articles": {
                k: (t, u, list(ids)) for k, (t, u, ids) in self._articles.items()
            },
        }
