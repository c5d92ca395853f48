"""Science Evidence Indicator (SEI).

Rule-based assessment of medical-research sources on four variables
(publication channel level, study method rank, team experience, special
remarks), aggregated to a Low/Medium/High evidence level.
"""

from sei.core import (
    AssessmentDraft,
    AssessmentInvalid,
    BfiLevel,
    CitationProfile,
    EntryMode,
    EvidenceLevel,
    ExperienceLevel,
    MethodRank,
    Severity,
    SourceAssessment,
    SpecialRemark,
    aggregate_evidence,
    classify_experience,
    compute_h_index,
    team_max_h,
    validate_assessment,
)

__all__ = [
    "AssessmentDraft",
    "AssessmentInvalid",
    "BfiLevel",
    "CitationProfile",
    "EntryMode",
    "EvidenceLevel",
    "ExperienceLevel",
    "MethodRank",
    "Severity",
    "SourceAssessment",
    "SpecialRemark",
    "aggregate_evidence",
    "classify_experience",
    "compute_h_index",
    "team_max_h",
    "validate_assessment",
]

__version__ = "0.1.0"
