"""Domain types and scoring rules for the Science Evidence Indicator.

Everything in this module is a pure function over immutable values: no I/O,
no clocks beyond the optional ``created_at`` override, safe to call from any
thread. Persistence and wire formats live in :mod:`sei.store` and
:mod:`sei.service`.

The four recorded variables and the aggregation rule:

* publication channel level 0..3 (0 = below the registry's minimum standard),
* method rank 1..7 in the medical evidence hierarchy (1 = strongest),
* the team's maximum h-index, banded into a four-level experience scale,
* free-text special remarks, mandatory whenever the channel level is 0.

Aggregate evidence level: Low when the channel level is 0; High when the
channel level is 2 or 3, the method ranks in the top two, and the team's
maximum h-index is strictly above 20; Medium otherwise.
"""

from __future__ import annotations

import enum
import numbers
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone


class InvalidInputError(ValueError):
    """Raised when an operation is called with arguments outside its domain."""


class BfiLevel(enum.IntEnum):
    """Publication channel level: 0 below minimum standard, otherwise 1-3."""

    BELOW_MINIMUM = 0
    LEVEL_1 = 1
    LEVEL_2 = 2
    LEVEL_3 = 3


class MethodRank(enum.IntEnum):
    """Position in the 7-point evidence hierarchy, 1 = strongest."""

    SYSTEMATIC_REVIEW = 1
    RANDOMIZED_CONTROLLED_TRIAL = 2
    COHORT_STUDY = 3
    CASE_CONTROL_STUDY = 4
    CROSS_SECTIONAL_STUDY = 5
    CASE_REPORT = 6
    EXPERT_OPINION = 7

    @property
    def label(self) -> str:
        return _METHOD_LABELS[self.value]

    @property
    def is_top_two(self) -> bool:
        return self.value <= 2


_METHOD_LABELS = {
    1: "Systematic review / meta-analysis",
    2: "Randomized controlled trial",
    3: "Cohort study",
    4: "Case-control study",
    5: "Cross-sectional study",
    6: "Case series / case report",
    7: "Expert opinion / in-vitro / animal study",
}


class ExperienceLevel(enum.IntEnum):
    """Four-level experience scale over the team's maximum h-index."""

    LESS_EXPERIENCED = 0
    EXPERIENCED = 1
    VERY_EXPERIENCED = 2
    EXCELLENT = 3

    @property
    def token(self) -> str:
        return self.name.lower()

    @property
    def label(self) -> str:
        return _EXPERIENCE_LABELS[self.value]

    @classmethod
    def from_token(cls, token: str) -> "ExperienceLevel":
        return cls[token.upper()]


_EXPERIENCE_LABELS = {
    0: "Less Experienced",
    1: "Experienced",
    2: "Very Experienced",
    3: "Excellent",
}


class EvidenceLevel(enum.IntEnum):
    """Aggregate scientific evidence level for one source."""

    LOW = 0
    MEDIUM = 1
    HIGH = 2

    @property
    def token(self) -> str:
        return self.name.lower()

    @property
    def label(self) -> str:
        return self.name.capitalize()

    @classmethod
    def from_token(cls, token: str) -> "EvidenceLevel":
        return cls[token.upper()]


class Severity(enum.Enum):
    INFO = "info"
    WARNING = "warning"


class EntryMode(enum.Enum):
    MANUAL = "manual"
    AUTOMATED = "automated"


@dataclass(frozen=True)
class SpecialRemark:
    """Journalist-authored caveat attached to an assessment."""

    text: str
    severity: Severity = Severity.INFO

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise InvalidInputError("remark text must be non-empty")


@dataclass(frozen=True)
class CitationProfile:
    """Per-author citation data: per-paper counts, a precomputed h-index, or both.

    Construction does not validate; malformed profiles are reported by
    :func:`validate_assessment` so a whole draft's problems surface at once.
    """

    author_name: str
    citations: tuple[int, ...] | None = None
    precomputed_h: int | None = None

    def __post_init__(self) -> None:
        if self.citations is not None:
            object.__setattr__(self, "citations", tuple(self.citations))

    def problems(self) -> list[str]:
        """Human-readable reasons this profile cannot be scored."""
        out = []
        if self.citations is None and self.precomputed_h is None:
            out.append("profile carries neither citation counts nor an h-index")
        citations_ok = False
        if self.citations is not None:
            if not all(_is_count(c) for c in self.citations):
                out.append("citation counts must be integers")
            elif any(c < 0 for c in self.citations):
                out.append("citation counts must be non-negative")
            else:
                citations_ok = True
        h_ok = False
        if self.precomputed_h is not None:
            if not _is_count(self.precomputed_h):
                out.append("h-index must be an integer")
            elif self.precomputed_h < 0:
                out.append("h-index must be non-negative")
            else:
                h_ok = True
        if citations_ok and h_ok and self.precomputed_h != compute_h_index(self.citations):
            out.append("precomputed h-index disagrees with the citation counts")
        return out

    def effective_h(self) -> int:
        if self.precomputed_h is not None:
            return self.precomputed_h
        if self.citations is None:
            raise InvalidInputError(
                f"profile for {self.author_name!r} has neither citations nor h-index"
            )
        return compute_h_index(self.citations)


def _is_count(value) -> bool:
    return isinstance(value, numbers.Integral) and not isinstance(value, bool)


def compute_h_index(citations) -> int:
    """Largest h such that at least h entries are >= h; 0 for an empty list."""
    counts = list(citations)
    if not all(_is_count(c) for c in counts):
        raise InvalidInputError("citation counts must be integers")
    if any(c < 0 for c in counts):
        raise InvalidInputError("citation counts must be non-negative")
    h = 0
    for i, c in enumerate(sorted(counts, reverse=True), start=1):
        if c >= i:
            h = i
        else:
            break
    return h


def classify_experience(h: int) -> ExperienceLevel:
    """Band a team's maximum h-index into the four-level experience scale.

    Intervals are half-open on the upper end: [0,20) Less Experienced,
    [20,40) Experienced, [40,60) Very Experienced, 60+ Excellent.
    """
    if h < 0:
        raise InvalidInputError("h-index must be non-negative")
    if h < 20:
        return ExperienceLevel.LESS_EXPERIENCED
    if h < 40:
        return ExperienceLevel.EXPERIENCED
    if h < 60:
        return ExperienceLevel.VERY_EXPERIENCED
    return ExperienceLevel.EXCELLENT


def team_max_h(profiles) -> int:
    """Maximum effective h-index over a non-empty list of author profiles."""
    profiles = list(profiles)
    if not profiles:
        raise InvalidInputError("team has no author profiles")
    return max(p.effective_h() for p in profiles)


def aggregate_evidence(bfi, method, team_max_h: int) -> EvidenceLevel:
    """Aggregate the three scored variables into one evidence level.

    Low when the channel level is 0. High when the channel level is 2 or 3,
    the method is in the top two ranks, and the team's maximum h-index is
    strictly above 20. Medium in every remaining case.
    """
    bfi = BfiLevel(bfi)
    method = MethodRank(method)
    if team_max_h < 0:
        raise InvalidInputError("h-index must be non-negative")
    if bfi == BfiLevel.BELOW_MINIMUM:
        return EvidenceLevel.LOW
    if bfi >= BfiLevel.LEVEL_2 and method.is_top_two and team_max_h > 20:
        return EvidenceLevel.HIGH
    return EvidenceLevel.MEDIUM


# Machine-readable validation codes; part of the public contract shared by
# the CLI and the HTTP service.
MISSING_BFI = "MISSING_BFI"
INVALID_BFI_LEVEL = "INVALID_BFI_LEVEL"
MISSING_METHOD = "MISSING_METHOD"
INVALID_METHOD_RANK = "INVALID_METHOD_RANK"
MISSING_TEAM_DATA = "MISSING_TEAM_DATA"
EMPTY_AUTHOR_LIST = "EMPTY_AUTHOR_LIST"
MALFORMED_CITATION_PROFILE = "MALFORMED_CITATION_PROFILE"
INVALID_TEAM_MAX_H = "INVALID_TEAM_MAX_H"
MISSING_REMARK_FOR_UNREVIEWED = "MISSING_REMARK_FOR_UNREVIEWED"


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    field: str
    message: str


class AssessmentInvalid(ValueError):
    """Validation failed; carries every violated rule, not just the first."""

    def __init__(self, issues: list[ValidationIssue]):
        self.issues = list(issues)
        super().__init__("; ".join(f"{i.code}: {i.message}" for i in self.issues))

    def codes(self) -> list[str]:
        return [i.code for i in self.issues]


@dataclass
class AssessmentDraft:
    """The journalist- or machine-entered variables before validation.

    Fields are deliberately loose (plain ints, optionals) so that a draft can
    hold whatever arrived and :func:`validate_assessment` can report all
    problems in one pass. ``team_max_h`` may be supplied directly or derived
    from ``profiles``; when both are present they must agree.
    """

    bfi: int | None = None
    method_rank: int | None = None
    remarks: list[SpecialRemark] = field(default_factory=list)
    profiles: list[CitationProfile] | None = None
    team_max_h: int | None = None
    bfi_channel_found: bool = False
    entered_by: EntryMode = EntryMode.MANUAL
    assessment_id: str | None = None


@dataclass(frozen=True)
class SourceAssessment:
    """A validated assessment of one scientific source.

    ``evidence`` and ``experience`` are derived values and are re-checked at
    construction, so an instance that disagrees with the scoring rules cannot
    exist.
    """

    id: str
    version: int
    bfi: BfiLevel
    bfi_channel_found: bool
    method: MethodRank
    team_max_h: int
    experience: ExperienceLevel
    remarks: tuple[SpecialRemark, ...]
    evidence: EvidenceLevel
    entered_by: EntryMode
    created_at: datetime

    def __post_init__(self) -> None:
        if self.version < 1:
            raise InvalidInputError("version must be >= 1")
        if self.team_max_h < 0:
            raise InvalidInputError("team_max_h must be non-negative")
        if self.evidence != aggregate_evidence(self.bfi, self.method, self.team_max_h):
            raise InvalidInputError("stored evidence disagrees with the aggregation rule")
        if self.experience != classify_experience(self.team_max_h):
            raise InvalidInputError("stored experience disagrees with the h-index bands")
        if self.bfi == BfiLevel.BELOW_MINIMUM and not self.remarks:
            raise InvalidInputError("a remark is mandatory when the channel level is 0")


def validate_assessment(
    draft: AssessmentDraft,
    *,
    assessment_id: str | None = None,
    version: int = 1,
    created_at: datetime | None = None,
) -> SourceAssessment:
    """Check a draft against every rule and return the validated assessment.

    Derived fields (evidence, experience, team_max_h from profiles) are
    always recomputed here; values supplied on the draft are treated as
    caches and rejected if stale. Raises :class:`AssessmentInvalid` carrying
    one :class:`ValidationIssue` per violated rule.
    """
    issues: list[ValidationIssue] = []

    bfi: BfiLevel | None = None
    if draft.bfi is None:
        issues.append(ValidationIssue(MISSING_BFI, "bfi", "publication channel level is required"))
    else:
        try:
            bfi = BfiLevel(draft.bfi)
        except ValueError:
            issues.append(
                ValidationIssue(
                    INVALID_BFI_LEVEL, "bfi", f"channel level must be 0..3, got {draft.bfi}"
                )
            )

    method: MethodRank | None = None
    if draft.method_rank is None:
        issues.append(ValidationIssue(MISSING_METHOD, "method", "method rank is required"))
    else:
        try:
            method = MethodRank(draft.method_rank)
        except ValueError:
            issues.append(
                ValidationIssue(
                    INVALID_METHOD_RANK,
                    "method",
                    f"method rank must be 1..7, got {draft.method_rank}",
                )
            )

    max_h: int | None = None
    if draft.profiles is not None:
        if len(draft.profiles) == 0:
            issues.append(
                ValidationIssue(
                    EMPTY_AUTHOR_LIST, "profiles", "a source must have at least one author"
                )
            )
        else:
            ok = True
            for i, profile in enumerate(draft.profiles):
                for reason in profile.problems():
                    ok = False
                    issues.append(
                        ValidationIssue(
                            MALFORMED_CITATION_PROFILE,
                            f"profiles[{i}]",
                            f"{profile.author_name or 'author'}: {reason}",
                        )
                    )
            if ok:
                max_h = team_max_h(draft.profiles)
                if draft.team_max_h is not None and draft.team_max_h != max_h:
                    issues.append(
                        ValidationIssue(
                            INVALID_TEAM_MAX_H,
                            "team_max_h",
                            f"supplied team_max_h {draft.team_max_h} disagrees with "
                            f"the profiles' maximum {max_h}",
                        )
                    )
    elif draft.team_max_h is not None:
        if draft.team_max_h < 0:
            issues.append(
                ValidationIssue(
                    INVALID_TEAM_MAX_H, "team_max_h", "team_max_h must be non-negative"
                )
            )
        else:
            max_h = draft.team_max_h
    else:
        issues.append(
            ValidationIssue(
                MISSING_TEAM_DATA,
                "team_max_h",
                "either author citation profiles or a team h-index is required",
            )
        )

    if bfi == BfiLevel.BELOW_MINIMUM and not draft.remarks:
        issues.append(
            ValidationIssue(
                MISSING_REMARK_FOR_UNREVIEWED,
                "remarks",
                "an explanation is required when the source is not peer reviewed "
                "per the registry's minimum standard",
            )
        )

    if issues:
        raise AssessmentInvalid(issues)

    assert bfi is not None and method is not None and max_h is not None
    return SourceAssessment(
        id=assessment_id or draft.assessment_id or str(uuid.uuid4()),
        version=version,
        bfi=bfi,
        bfi_channel_found=draft.bfi_channel_found,
        method=method,
        team_max_h=max_h,
        experience=classify_experience(max_h),
        remarks=tuple(draft.remarks),
        evidence=aggregate_evidence(bfi, method, max_h),
        entered_by=draft.entered_by,
        created_at=created_at or datetime.now(timezone.utc),
    )


def preview_evidence(
    bfi: int | None, method_rank: int | None, team_max_h: int | None
) -> EvidenceLevel | None:
    """Evidence level for a possibly incomplete draft, if already determined.

    A channel level of 0 forces Low regardless of the other variables, so a
    preview exists for such drafts even when method or team data is missing.
    """
    if bfi is None:
        return None
    try:
        level = BfiLevel(bfi)
    except ValueError:
        return None
    if level == BfiLevel.BELOW_MINIMUM:
        return EvidenceLevel.LOW
    if method_rank is None or team_max_h is None or team_max_h < 0:
        return None
    try:
        return aggregate_evidence(level, MethodRank(method_rank), team_max_h)
    except ValueError:
        return None
