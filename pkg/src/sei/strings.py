"""User-facing copy, keyed by stable identifiers with a locale hook.

Only English ships; adding a locale means adding a second top-level dict
and passing its code through the service's ``locale`` query parameter.
Missing keys fall back to English so partial translations degrade safely.
"""

from __future__ import annotations

DEFAULT_LOCALE = "en"

STRINGS: dict[str, dict[str, str]] = {
    "en": {
        "variable.publication.label": "Scientific publication",
        "variable.method.label": "Method",
        "variable.experience.label": "Researcher's Experience",
        "variable.remarks.label": "Special Remarks",
        "publication.value.level": "BFI level {level}",
        "publication.value.below_minimum": "Below the BFI minimum standard",
        "publication.value.not_found": "Not in the BFI registry",
        "method.value.unit": "{label}",
        "experience.value": "{label}",
        "remarks.value.none": "None",
        "remarks.value.one": "1 remark",
        "remarks.value.many": "{count} remarks",
        "evidence.low.label": "Low",
        "evidence.medium.label": "Medium",
        "evidence.high.label": "High",
        "explanation.publication": (
            "Whether the study appeared in a peer-reviewed channel recognized "
            "by the national bibliometric registry, scored 1 to 3; 0 means the "
            "channel does not meet the registry's minimum standard."
        ),
        "explanation.method": (
            "Where the study design sits in the seven-level hierarchy of "
            "medical evidence, from systematic reviews (strongest) down to "
            "expert opinion."
        ),
        "explanation.experience": (
            "The publication track record of the study's most-cited author, "
            "measured by h-index and banded into four levels."
        ),
        "explanation.remarks": (
            "Caveats the journalist added about this particular study, such "
            "as missing peer review or conflicts of interest."
        ),
        "disclaimer.heuristic": (
            "The line between Medium and High is a rule of thumb for spotting "
            "sources with an exceptionally strong pedigree, not a scientific "
            "consensus; the Low rating alone rests on the registry's authority."
        ),
        "link.assessing_evidence.label": "How scientists weigh evidence",
        "link.about_indicator.label": "How this indicator works and its limits",
    },
}


def get_string(key: str, locale: str = DEFAULT_LOCALE, **kwargs) -> str:
    table = STRINGS.get(locale, {})
    template = table.get(key) or STRINGS[DEFAULT_LOCALE][key]
    return template.format(**kwargs) if kwargs else template
