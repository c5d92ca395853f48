#!/usr/bin/env python3
"""Regenerate the bundled demo metadata corpus under fixtures/.

The corpus is deterministic: 20 publications plus the author records they
reference, covering every classifier rule, an unknown channel, an
unclassifiable method, an ambiguous author name, and a precomputed-h-only
author. All names and numbers are invented.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from sei.gateway import encode_doi  # noqa: E402
from sei.registry import issn_check_char  # noqa: E402


def synthetic_issn(prefix7: str) -> str:
    return f"{prefix7[:4]}-{prefix7[4:]}{issn_check_char(prefix7)}"


AUTHORS = [
    {"author_id": "A1", "name": "Jonas Lindqvist", "citations": [10, 8, 5, 4, 3]},
    {"author_id": "A2", "name": "Mette Østergaard", "h_index": 33},
    {"author_id": "A10", "name": "Clara Bruun", "h_index": 25},
    {"author_id": "A11", "name": "Henrik Dam", "h_index": 61},
    {"author_id": "A12", "name": "Sofia Almeida", "h_index": 41},
    {"author_id": "A13", "name": "Niels Væver", "h_index": 35},
    {"author_id": "A14", "name": "Ida Kragh", "h_index": 18},
    {"author_id": "A15", "name": "Tomas Berg", "h_index": 12},
    {"author_id": "A16", "name": "Eva Lund", "h_index": 5},
    {"author_id": "A17", "name": "Johan Friis", "h_index": 22},
    {"author_id": "A18", "name": "Karen Holst", "h_index": 48},
    {"author_id": "A19", "name": "Peter Svane", "h_index": 30},
    {"author_id": "A20", "name": "Lea Nordström", "h_index": 28},
    {"author_id": "A21", "name": "Anders Bille", "h_index": 26},
    {"author_id": "A22", "name": "Anne Holm", "h_index": 31},
    {"author_id": "A23", "name": "Anne Holm", "h_index": 9},
    {"author_id": "A24", "name": "Marta Keller", "h_index": 15},
    {"author_id": "A25", "name": "Ole Winther", "h_index": 52},
    {"author_id": "A26", "name": "Rikke Tarp", "h_index": 20},
]


def ref(author_id: str) -> dict:
    name = next(a["name"] for a in AUTHORS if a["author_id"] == author_id)
    return {"name": name, "provider_author_id": author_id}


PUBLICATIONS = [
    {
        "doi": "10.1000/demo-rct",
        "title": "Effect of early mobilization on recovery after hip surgery",
        "channel_name": "Annals of Internal Medicine",
        "issns": ["0003-4819"],
        "publication_types": ["Randomized Controlled Trial"],
        "authors": [ref("A10")],
        "is_peer_reviewed": True,
    },
    {
        "doi": "10.1000/demo-meta",
        "title": "Statin therapy for primary prevention: pooled patient data",
        "channel_name": "Cochrane Database of Systematic Reviews",
        "issns": ["1469-493X"],
        "publication_types": ["Meta-Analysis"],
        "authors": [ref("A11")],
    },
    {
        "doi": "10.1000/demo-sysrev",
        "title": "Interventions against seasonal influenza in care homes",
        "channel_name": "The Lancet",
        "issns": ["0140-6736"],
        "publication_types": ["Systematic Review"],
        "authors": [ref("A12"), ref("A1")],
        "abstract": "We reviewed forty-one trials of influenza interventions.",
    },
    {
        "doi": "10.1000/demo-cohort",
        "title": "Coffee consumption and atrial fibrillation in Danish adults",
        "channel_name": "International Journal of Epidemiology",
        "issns": ["0300-5771"],
        "publication_types": ["Cohort Study"],
        "authors": [ref("A13")],
    },
    {
        "doi": "10.1000/demo-case-control",
        "title": "Sunscreen use and melanoma: a matched comparison",
        "channel_name": "JAMA",
        "issns": ["0098-7484"],
        "publication_types": ["Case-Control Study"],
        "authors": [ref("A14")],
    },
    {
        "doi": "10.1000/demo-cross-sectional",
        "title": "Screen time and sleep quality among adolescents",
        "channel_name": "Scandinavian Journal of Public Health",
        "issns": ["1403-4948"],
        "publication_types": ["Cross-Sectional Study"],
        "authors": [ref("A15")],
    },
    {
        "doi": "10.1000/demo-case-report",
        "title": "Unusual presentation of vitamin B12 deficiency in a marathon runner",
        "channel_name": "Ugeskrift for Læger",
        "issns": ["0041-5782"],
        "publication_types": ["Case Report"],
        "authors": [ref("A16")],
    },
    {
        "doi": "10.1000/demo-in-vitro",
        "title": "Glucose uptake in cultured myocytes under metformin exposure",
        "channel_name": "Diabetologia",
        "issns": ["0012-186X"],
        "publication_types": ["In Vitro"],
        "authors": [ref("A17")],
    },
    {
        "doi": "10.1000/demo-editorial",
        "title": "Why surrogate endpoints keep misleading us",
        "channel_name": "BMJ",
        "issns": ["0959-8138", "1756-1833"],
        "publication_types": ["Editorial"],
        "authors": [ref("A18")],
    },
    {
        "doi": "10.1000/demo-title-rct",
        "title": "A randomised controlled trial of beta-blocker withdrawal in stable heart failure",
        "channel_name": "European Heart Journal",
        "issns": ["0195-668X"],
        "publication_types": ["Journal Article"],
        "authors": [ref("A19")],
    },
    {
        "doi": "10.1000/demo-unknown-channel",
        "title": "Hydration timing and endurance: a randomized controlled trial",
        "channel_name": "Journal of Speculative Wellness",
        "issns": [synthetic_issn("9907001")],
        "publication_types": ["Randomized Controlled Trial"],
        "authors": [ref("A20")],
        "is_peer_reviewed": False,
    },
    {
        "doi": "10.1000/demo-unclassified",
        "title": "Observations on seasonal variation in clinic attendance",
        "channel_name": "Pediatrics",
        "issns": ["0031-4005"],
        "publication_types": ["Journal Article"],
        "authors": [ref("A21")],
    },
    {
        "doi": "10.1000/demo-ambiguous",
        "title": "Breastfeeding duration and early childhood infections",
        "channel_name": "Acta Paediatrica",
        "issns": ["0803-5253"],
        "publication_types": ["Cohort Study"],
        "authors": [{"name": "Anne Holm"}],
    },
    {
        "doi": "10.1000/demo-precomputed",
        "title": "Telemonitoring after myocardial infarction",
        "channel_name": "BMC Medicine",
        "issns": ["1741-7015"],
        "publication_types": ["Randomized Controlled Trial"],
        "authors": [ref("A2")],
    },
    {
        "doi": "10.1000/demo-multi-author",
        "title": "Air pollution exposure and asthma onset in three national registers",
        "channel_name": "Nature Medicine",
        "issns": ["1078-8956"],
        "publication_types": ["Cohort Study"],
        "authors": [ref("A12"), ref("A13"), ref("A16")],
    },
    {
        "doi": "10.1000/demo-case-series",
        "title": "Twelve consecutive cases of pediatric scurvy",
        "channel_name": "Danish Medical Journal",
        "issns": ["2245-1919"],
        "publication_types": ["Case Series"],
        "authors": [ref("A16")],
    },
    {
        "doi": "10.1000/demo-animal",
        "title": "High-salt diet and renal fibrosis in a rat model",
        "channel_name": "Journal of Clinical Epidemiology",
        "issns": ["0895-4356"],
        "publication_types": ["Animal Study"],
        "authors": [ref("A24")],
    },
    {
        "doi": "10.1000/demo-expert-opinion",
        "title": "Priorities for community vaccination programmes",
        "channel_name": "American Journal of Public Health",
        "issns": ["0090-0036"],
        "publication_types": ["Expert Opinion"],
        "authors": [ref("A25")],
    },
    {
        "doi": "10.1000/demo-h20-boundary",
        "title": "Adjuvant therapy sequencing in early breast cancer",
        "channel_name": "The Lancet Oncology",
        "issns": ["1470-2045"],
        "publication_types": ["Randomized Controlled Trial"],
        "authors": [ref("A26")],
    },
    {
        "doi": "10.1000/demo-author-citations",
        "title": "Vitamin D supplementation and fracture risk: updated synthesis",
        "channel_name": "PLOS Medicine",
        "issns": ["1549-1676"],
        "publication_types": ["Meta-Analysis"],
        "authors": [ref("A1")],
    },
]


def main() -> int:
    root = Path(__file__).resolve().parents[1] / "fixtures"
    pub_dir = root / "publications"
    author_dir = root / "authors"
    pub_dir.mkdir(parents=True, exist_ok=True)
    author_dir.mkdir(parents=True, exist_ok=True)

    for author in AUTHORS:
        path = author_dir / f"{author['author_id']}.json"
        path.write_text(json.dumps(author, indent=2, ensure_ascii=False) + "\n", "utf-8")
    for pub in PUBLICATIONS:
        path = pub_dir / f"{encode_doi(pub['doi'])}.json"
        path.write_text(json.dumps(pub, indent=2, ensure_ascii=False) + "\n", "utf-8")

    print(f"wrote {len(PUBLICATIONS)} publications and {len(AUTHORS)} authors to {root}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
