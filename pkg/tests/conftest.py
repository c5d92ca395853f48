import json
from pathlib import Path

import pytest

from sei.gateway import FixtureProvider, MetadataGateway, encode_doi
from sei.registry import issn_check_char, load_registry

REPO_ROOT = Path(__file__).resolve().parents[1]
DEMO_REGISTRY_PATH = REPO_ROOT / "src" / "sei" / "data" / "demo_registry.csv"
DEMO_FIXTURES_ROOT = REPO_ROOT / "fixtures"


def make_issn(n: int) -> str:
    """Valid synthetic ISSN number n, for generated registry fixtures."""
    prefix = f"{n:07d}"
    return f"{prefix[:4]}-{prefix[4:]}{issn_check_char(prefix)}"


def write_registry(path: Path, rows, header: bool = True) -> Path:
    lines = []
    if header:
        lines.append("issn,channel_name,bfi_level")
    lines.extend(rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_corpus(root: Path, publications, authors) -> Path:
    """Author a provider fixture tree under ``root``."""
    (root / "publications").mkdir(parents=True, exist_ok=True)
    (root / "authors").mkdir(parents=True, exist_ok=True)
    for pub in publications:
        path = root / "publications" / f"{encode_doi(pub['doi'])}.json"
        path.write_text(json.dumps(pub, ensure_ascii=False), encoding="utf-8")
    for author in authors:
        path = root / "authors" / f"{author['author_id']}.json"
        path.write_text(json.dumps(author, ensure_ascii=False), encoding="utf-8")
    return root


# A compact corpus exercising every gateway contract; authored here so the
# expected values in the tests are under the suite's control.
CORPUS_PUBLICATIONS = [
    {
        "doi": "10.1000/demo-rct",
        "title": "A trial of something",
        "channel_name": "Journal Two",
        "issns": [make_issn(2)],
        "publication_types": ["Randomized Controlled Trial"],
        "authors": [{"name": "Solo Author", "provider_author_id": "P25"}],
    },
    {
        "doi": "10.1000/unknown-channel",
        "title": "A trial nobody reviewed",
        "channel_name": "Obscure Letters",
        "issns": [make_issn(999)],
        "publication_types": ["Randomized Controlled Trial"],
        "authors": [{"name": "Solo Author", "provider_author_id": "P25"}],
    },
    {
        "doi": "10.1000/unclassifiable",
        "title": "Notes from the field",
        "channel_name": "Journal Two",
        "issns": [make_issn(2)],
        "publication_types": ["Journal Article"],
        "authors": [{"name": "Solo Author", "provider_author_id": "P25"}],
    },
    {
        "doi": "10.1000/ambiguous-author",
        "title": "Cohort study of twins",
        "channel_name": "Journal Two",
        "issns": [make_issn(2)],
        "publication_types": ["Cohort Study"],
        "authors": [{"name": "Kim Larsen"}],
    },
    {
        "doi": "10.1000/title-fallback",
        "title": "A randomised comparison of two splints",
        "channel_name": "Journal Two",
        "issns": [make_issn(2)],
        "publication_types": ["Journal Article"],
        "authors": [{"name": "Counted Author", "provider_author_id": "A1"}],
    },
]

CORPUS_AUTHORS = [
    {"author_id": "A1", "name": "Counted Author", "citations": [10, 8, 5, 4, 3]},
    {"author_id": "P25", "name": "Solo Author", "h_index": 25},
    {"author_id": "P33", "name": "Precomputed Author", "h_index": 33},
    {"author_id": "K1", "name": "Kim Larsen", "h_index": 12},
    {"author_id": "K2", "name": "Kim Larsen", "h_index": 7},
]


@pytest.fixture
def corpus_root(tmp_path):
    return write_corpus(tmp_path / "corpus", CORPUS_PUBLICATIONS, CORPUS_AUTHORS)


@pytest.fixture
def corpus_registry(tmp_path):
    path = write_registry(
        tmp_path / "registry.csv",
        [
            f"{make_issn(1)},Journal One,1",
            f"{make_issn(2)},Journal Two,2",
            f"{make_issn(3)},Journal Three,3",
        ],
    )
    return load_registry(path)


@pytest.fixture
def corpus_gateway(corpus_root):
    return MetadataGateway(FixtureProvider(corpus_root))


@pytest.fixture(scope="session")
def demo_registry():
    return load_registry(DEMO_REGISTRY_PATH)
