"""Access to publication metadata for the automated assessment path.

A provider answers two questions: what is the publication behind a DOI, and
what are an author's citation counts. Two implementations share one wire
contract (docs/FORMATS.md): a fixture provider reading JSON files from a
local directory tree, and an HTTP provider for a service exposing
``GET {base}/works/{doi}`` and ``GET {base}/authors/{key}`` with the same
JSON shapes. Running the same corpus through either provider must produce
identical drafts.

On top of the providers: a TTL cache, a rule-based classifier that maps
publication metadata to a rank in the evidence hierarchy, and the draft
composer that turns a DOI into an assessment draft plus a list of fields a
journalist still has to resolve by hand.
"""

from __future__ import annotations

import enum
import json
import threading
import time
import urllib.parse
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import requests

from sei.core import (
    AssessmentDraft,
    CitationProfile,
    EntryMode,
    EvidenceLevel,
    ExperienceLevel,
    MethodRank,
    Severity,
    SpecialRemark,
    classify_experience,
    preview_evidence,
)
from sei.registry import InvalidIssnError, Registry, lookup_channel

# Remark attached automatically when the channel scores 0; the journalist is
# expected to edit it before publishing.
UNREVIEWED_REMARK_TEXT = "not peer reviewed per BFI standard"

DEFAULT_TIMEOUT = 5.0
DEFAULT_MAX_RETRIES = 3
DEFAULT_BACKOFF_BASE = 0.25
DEFAULT_CACHE_TTL = 300.0


class ProviderError(Exception):
    """Base class for provider failures."""


class MetadataNotFoundError(ProviderError):
    """The DOI or author is not known to the provider. Terminal, not retried."""


class TransportError(ProviderError):
    """Network-level failure, surfaced after the retry budget is exhausted."""


class UpstreamFormatError(ProviderError):
    """The provider answered with a payload that violates the wire contract."""


class AmbiguousAuthorError(ProviderError):
    """A name matched several authors; candidates are surfaced, never picked."""

    def __init__(self, name: str, candidates: list[dict]):
        self.name = name
        self.candidates = candidates
        listing = ", ".join(f"{c['author_id']} ({c['name']})" for c in candidates)
        super().__init__(f"author name {name!r} is ambiguous: {listing}")


class ProviderKind(enum.Enum):
    FIXTURE = "fixture"
    HTTP = "http"


@dataclass(frozen=True)
class ProviderConfig:
    kind: ProviderKind
    base_url: str | None = None
    fixture_root: Path | None = None
    timeout: float = DEFAULT_TIMEOUT
    max_retries: int = DEFAULT_MAX_RETRIES
    backoff_base: float = DEFAULT_BACKOFF_BASE
    cache_ttl: float = DEFAULT_CACHE_TTL

    def __post_init__(self) -> None:
        if self.kind is ProviderKind.FIXTURE and self.fixture_root is None:
            raise ValueError("fixture provider needs fixture_root")
        if self.kind is ProviderKind.HTTP and not self.base_url:
            raise ValueError("http provider needs base_url")


@dataclass(frozen=True)
class AuthorRef:
    name: str
    provider_author_id: str | None = None


@dataclass(frozen=True)
class PublicationRecord:
    doi: str
    title: str
    channel_name: str
    issns: tuple[str, ...]
    publication_types: tuple[str, ...]
    authors: tuple[AuthorRef, ...]
    abstract: str | None = None
    is_peer_reviewed_flag: bool | None = None


def encode_doi(doi: str) -> str:
    """Path-safe form of a DOI used in fixture filenames and URLs."""
    return urllib.parse.quote(doi, safe="")


class FixtureProvider:
    """Reads the corpus from ``<root>/publications/`` and ``<root>/authors/``."""

    def __init__(self, root: Path):
        self.root = Path(root)
        self.publication_requests = 0
        self.author_requests = 0

    def get_publication(self, doi: str) -> dict:
        self.publication_requests += 1
        path = self.root / "publications" / f"{encode_doi(doi)}.json"
        if not path.is_file():
            raise MetadataNotFoundError(f"no publication for DOI {doi!r}")
        return _load_json(path)

    def get_author(self, author_id: str | None = None, name: str | None = None) -> dict:
        self.author_requests += 1
        authors_dir = self.root / "authors"
        if author_id is not None:
            path = authors_dir / f"{urllib.parse.quote(author_id, safe='')}.json"
            if not path.is_file():
                raise MetadataNotFoundError(f"no author with id {author_id!r}")
            return _load_json(path)
        if name is None:
            raise ValueError("author lookup needs an id or a name")
        matches = []
        if authors_dir.is_dir():
            for path in sorted(authors_dir.glob("*.json")):
                data = _load_json(path)
                if str(data.get("name", "")).casefold() == name.casefold():
                    matches.append(data)
        if not matches:
            raise MetadataNotFoundError(f"no author named {name!r}")
        if len(matches) > 1:
            candidates = sorted(
                ({"author_id": m.get("author_id", ""), "name": m.get("name", "")} for m in matches),
                key=lambda c: c["author_id"],
            )
            raise AmbiguousAuthorError(name, candidates)
        return matches[0]


class HttpProvider:
    """Speaks the documented JSON-over-HTTP contract with retry and backoff.

    Only transport-level failures (connection errors, timeouts, 5xx) are
    retried, with exponential backoff; a 404 is a terminal not-found and a
    300 carries the ambiguous-author candidate list.
    """

    def __init__(
        self,
        base_url: str,
        timeout: float = DEFAULT_TIMEOUT,
        max_retries: int = DEFAULT_MAX_RETRIES,
        backoff_base: float = DEFAULT_BACKOFF_BASE,
        session: requests.Session | None = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.max_retries = max_retries
        self.backoff_base = backoff_base
        self.session = session or requests.Session()
        self.publication_requests = 0
        self.author_requests = 0

    def get_publication(self, doi: str) -> dict:
        self.publication_requests += 1
        return self._get(f"{self.base_url}/works/{encode_doi(doi)}", what=f"DOI {doi!r}")

    def get_author(self, author_id: str | None = None, name: str | None = None) -> dict:
        self.author_requests += 1
        key = author_id if author_id is not None else name
        if key is None:
            raise ValueError("author lookup needs an id or a name")
        return self._get(
            f"{self.base_url}/authors/{urllib.parse.quote(key, safe='')}",
            what=f"author {key!r}",
            ambiguous_name=name if author_id is None else None,
        )

    def _get(self, url: str, what: str, ambiguous_name: str | None = None) -> dict:
        last_exc: Exception | None = None
        for attempt in range(self.max_retries + 1):
            if attempt:
                time.sleep(self.backoff_base * (2 ** (attempt - 1)))
            try:
                resp = self.session.get(url, timeout=self.timeout)
            except requests.RequestException as exc:
                last_exc = exc
                continue
            if resp.status_code == 404:
                raise MetadataNotFoundError(f"{what} not found upstream")
            if resp.status_code == 300:
                body = _parse_body(resp, what)
                raise AmbiguousAuthorError(
                    ambiguous_name or what, body.get("candidates", [])
                )
            if resp.status_code >= 500:
                last_exc = TransportError(f"upstream returned {resp.status_code} for {what}")
                continue
            if resp.status_code != 200:
                raise UpstreamFormatError(
                    f"unexpected status {resp.status_code} for {what}"
                )
            return _parse_body(resp, what)
        raise TransportError(f"giving up on {what} after {self.max_retries + 1} attempts") from last_exc


def _parse_body(resp: requests.Response, what: str) -> dict:
    try:
        data = resp.json()
    except ValueError as exc:
        raise UpstreamFormatError(f"non-JSON payload for {what}") from exc
    if not isinstance(data, dict):
        raise UpstreamFormatError(f"expected a JSON object for {what}")
    return data


def _load_json(path: Path) -> dict:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise UpstreamFormatError(f"cannot read fixture {path.name}: {exc}") from exc
    if not isinstance(data, dict):
        raise UpstreamFormatError(f"fixture {path.name} is not a JSON object")
    return data


def create_provider(config: ProviderConfig):
    if config.kind is ProviderKind.FIXTURE:
        return FixtureProvider(config.fixture_root)
    return HttpProvider(
        config.base_url,
        timeout=config.timeout,
        max_retries=config.max_retries,
        backoff_base=config.backoff_base,
    )


def parse_publication(data: dict) -> PublicationRecord:
    doi = data.get("doi")
    if not isinstance(doi, str) or not doi.startswith("10."):
        raise UpstreamFormatError(f"publication record has a bad doi: {doi!r}")
    for key in ("title", "channel_name"):
        if not isinstance(data.get(key), str):
            raise UpstreamFormatError(f"publication {doi} is missing {key!r}")
    for key in ("issns", "publication_types", "authors"):
        if not isinstance(data.get(key), list):
            raise UpstreamFormatError(f"publication {doi} is missing list field {key!r}")
    authors = []
    for entry in data["authors"]:
        if not isinstance(entry, dict) or not isinstance(entry.get("name"), str):
            raise UpstreamFormatError(f"publication {doi} has a malformed author entry")
        authors.append(
            AuthorRef(name=entry["name"], provider_author_id=entry.get("provider_author_id"))
        )
    return PublicationRecord(
        doi=doi,
        title=data["title"],
        channel_name=data["channel_name"],
        issns=tuple(str(i) for i in data["issns"]),
        publication_types=tuple(str(t) for t in data["publication_types"]),
        authors=tuple(authors),
        abstract=data.get("abstract"),
        is_peer_reviewed_flag=data.get("is_peer_reviewed"),
    )


def parse_author(data: dict) -> CitationProfile:
    name = data.get("name")
    if not isinstance(name, str):
        raise UpstreamFormatError("author record is missing its name")
    citations = data.get("citations")
    if citations is not None:
        if not isinstance(citations, list) or not all(isinstance(c, int) for c in citations):
            raise UpstreamFormatError(f"author {name!r} has malformed citation counts")
        citations = tuple(citations)
    h_index = data.get("h_index")
    if h_index is not None and not isinstance(h_index, int):
        raise UpstreamFormatError(f"author {name!r} has a malformed h_index")
    return CitationProfile(author_name=name, citations=citations, precomputed_h=h_index)


# Ordered keyword rules: earlier rules win, and a rule firing on any
# publication-type tag beats every rule that could fire on the title.
METHOD_RULES: tuple[tuple[int, tuple[str, ...]], ...] = (
    (1, ("meta-analysis", "systematic review")),
    (2, ("randomized controlled trial", "randomised")),
    (3, ("cohort",)),
    (4, ("case-control",)),
    (5, ("cross-sectional",)),
    (6, ("case report", "case series")),
    (7, ("in vitro", "animal", "editorial", "comment", "expert opinion")),
)


@dataclass(frozen=True)
class MethodMatch:
    rank: MethodRank
    keyword: str
    source: str  # "publication_types" or "title"
    matched_text: str


def classify_method_text(text: str, source: str = "title") -> MethodMatch | None:
    """First rule whose keyword occurs in ``text`` (case-insensitive)."""
    lowered = text.casefold()
    for rank, keywords in METHOD_RULES:
        for keyword in keywords:
            if keyword in lowered:
                return MethodMatch(
                    rank=MethodRank(rank), keyword=keyword, source=source, matched_text=text
                )
    return None


def classify_method_from_metadata(record: PublicationRecord) -> MethodMatch | None:
    """Rank the study design from its type tags, falling back to the title.

    The rule list is scanned in order against all type tags first; tag order
    never matters. Only when no tag fires is the title consulted. ``None``
    means manual entry is required; it is a value, not an error.
    """
    lowered_tags = [t.casefold() for t in record.publication_types]
    for rank, keywords in METHOD_RULES:
        for keyword in keywords:
            for tag, lowered in zip(record.publication_types, lowered_tags):
                if keyword in lowered:
                    return MethodMatch(
                        rank=MethodRank(rank),
                        keyword=keyword,
                        source="publication_types",
                        matched_text=tag,
                    )
    return classify_method_text(record.title, source="title")


class _TtlCache:
    """Tiny thread-safe TTL cache; only successful fetches are stored."""

    def __init__(self, ttl: float):
        self.ttl = ttl
        self._lock = threading.Lock()
        self._entries: dict[tuple, tuple[float, object]] = {}

    def get(self, key: tuple):
        if self.ttl <= 0:
            return None
        with self._lock:
            entry = self._entries.get(key)
            if entry is None:
                return None
            expires, value = entry
            if time.monotonic() >= expires:
                del self._entries[key]
                return None
            return value

    def put(self, key: tuple, value) -> None:
        if self.ttl <= 0:
            return
        with self._lock:
            self._entries[key] = (time.monotonic() + self.ttl, value)


class MetadataGateway:
    """Caching facade over a provider, plus the draft composer."""

    def __init__(self, provider, cache_ttl: float = DEFAULT_CACHE_TTL, max_workers: int = 4):
        self.provider = provider
        self._cache = _TtlCache(cache_ttl)
        self._max_workers = max_workers

    @classmethod
    def from_config(cls, config: ProviderConfig) -> "MetadataGateway":
        return cls(create_provider(config), cache_ttl=config.cache_ttl)

    def fetch_publication(self, doi: str) -> PublicationRecord:
        key = ("publication", doi)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        record = parse_publication(self.provider.get_publication(doi))
        self._cache.put(key, record)
        return record

    def fetch_author_citations(
        self, author_id: str | None = None, name: str | None = None
    ) -> CitationProfile:
        key = ("author", "id", author_id) if author_id is not None else ("author", "name", name)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        profile = parse_author(self.provider.get_author(author_id=author_id, name=name))
        self._cache.put(key, profile)
        return profile

    def draft_assessment_from_doi(self, registry: Registry, doi: str) -> "DraftResult":
        return draft_assessment_from_doi(self, registry, doi)


@dataclass(frozen=True)
class DraftResult:
    """An automated draft plus everything a journalist must still resolve."""

    draft: AssessmentDraft
    needs_review: tuple[str, ...]
    notes: dict[str, str]
    doi: str
    title: str
    channel_name: str
    method_match: MethodMatch | None

    @property
    def evidence(self) -> EvidenceLevel | None:
        return preview_evidence(
            self.draft.bfi, self.draft.method_rank, self.draft.team_max_h
        )

    @property
    def experience(self) -> ExperienceLevel | None:
        if self.draft.team_max_h is None:
            return None
        return classify_experience(self.draft.team_max_h)


def draft_assessment_from_doi(
    gateway: MetadataGateway, registry: Registry, doi: str
) -> DraftResult:
    """Compose publication, channel, author, and method data into a draft.

    Unresolved fields (unclassifiable method, ambiguous or missing authors)
    are listed in ``needs_review`` instead of failing the draft; a channel
    level of 0 gets the automatic warning remark that validation demands.
    Per-author fetches run concurrently but results keep publication order,
    so the draft is deterministic.
    """
    publication = gateway.fetch_publication(doi)
    needs_review: list[str] = []
    notes: dict[str, str] = {}

    lookup = _resolve_channel(registry, publication)

    match = classify_method_from_metadata(publication)
    if match is None:
        needs_review.append("method")
        notes["method"] = (
            "the study design could not be classified from the publication "
            "types or title; pick a rank by hand"
        )

    profiles, author_notes = _resolve_authors(gateway, publication)
    if author_notes:
        needs_review.append("authors")
        notes["authors"] = "; ".join(author_notes)

    draft = AssessmentDraft(
        bfi=int(lookup.bfi),
        method_rank=int(match.rank) if match else None,
        remarks=[],
        profiles=profiles if profiles else None,
        team_max_h=max(p.effective_h() for p in profiles) if profiles else None,
        bfi_channel_found=lookup.found,
        entered_by=EntryMode.AUTOMATED,
    )
    if draft.bfi == 0:
        draft.remarks.append(SpecialRemark(UNREVIEWED_REMARK_TEXT, Severity.WARNING))

    return DraftResult(
        draft=draft,
        needs_review=tuple(needs_review),
        notes=notes,
        doi=publication.doi,
        title=publication.title,
        channel_name=publication.channel_name,
        method_match=match,
    )


def _resolve_channel(registry: Registry, publication: PublicationRecord):
    for issn in publication.issns:
        try:
            result = lookup_channel(registry, issn=issn)
        except InvalidIssnError:
            continue
        if result.found:
            return result
    return lookup_channel(registry, name=publication.channel_name)


def _resolve_authors(gateway: MetadataGateway, publication: PublicationRecord):
    """Fetch every author's profile; order and outcome are deterministic."""

    def fetch(ref: AuthorRef):
        if ref.provider_author_id is not None:
            return gateway.fetch_author_citations(author_id=ref.provider_author_id)
        return gateway.fetch_author_citations(name=ref.name)

    if not publication.authors:
        return [], ["the publication record lists no authors"]

    with ThreadPoolExecutor(max_workers=min(4, len(publication.authors))) as pool:
        futures = [pool.submit(fetch, ref) for ref in publication.authors]

    profiles: list[CitationProfile] = []
    author_notes: list[str] = []
    for ref, future in zip(publication.authors, futures):
        try:
            profile = future.result()
        except AmbiguousAuthorError as exc:
            listing = ", ".join(f"{c['author_id']} ({c['name']})" for c in exc.candidates)
            author_notes.append(f"{ref.name}: ambiguous, candidates {listing}")
            continue
        except MetadataNotFoundError:
            author_notes.append(f"{ref.name}: no citation data found")
            continue
        if profile.problems():
            author_notes.append(f"{ref.name}: unusable citation data")
            continue
        profiles.append(profile)
    return profiles, author_notes


def draft_result_to_dict(result: DraftResult) -> dict:
    """JSON-ready form of a draft; canonical serialization makes two drafts
    of the same publication comparable byte-for-byte."""
    draft = result.draft
    evidence = result.evidence
    experience = result.experience
    return {
        "doi": result.doi,
        "title": result.title,
        "channel_name": result.channel_name,
        "draft": {
            "bfi": draft.bfi,
            "bfi_channel_found": draft.bfi_channel_found,
            "method_rank": draft.method_rank,
            "method_label": MethodRank(draft.method_rank).label
            if draft.method_rank is not None
            else None,
            "team_max_h": draft.team_max_h,
            "profiles": [
                {
                    "author_name": p.author_name,
                    "citations": list(p.citations) if p.citations is not None else None,
                    "precomputed_h": p.precomputed_h,
                    "h_index": p.effective_h(),
                }
                for p in (draft.profiles or [])
            ],
            "remarks": [
                {"text": r.text, "severity": r.severity.value} for r in draft.remarks
            ],
            "entered_by": draft.entered_by.value,
        },
        "evidence": evidence.token if evidence is not None else None,
        "experience": experience.token if experience is not None else None,
        "method_match": {
            "keyword": result.method_match.keyword,
            "source": result.method_match.source,
            "matched_text": result.method_match.matched_text,
        }
        if result.method_match is not None
        else None,
        "needs_review": list(result.needs_review),
        "notes": result.notes,
    }
