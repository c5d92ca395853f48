"""Publication-channel registry: load, index, and query channel levels.

The registry stands in for the national authority list that scores scholarly
publication channels 1-3. A channel absent from the registry scores 0, the
"below minimum standard" state; the ``found`` flag on lookup results keeps
the distinction visible for display without affecting scoring.

File format (see docs/FORMATS.md): UTF-8 CSV with header row exactly
``issn,channel_name,bfi_level``, one row per (ISSN, channel), ``#`` comment
lines allowed. A channel with several ISSNs appears as several rows sharing
the same name and level.
"""

from __future__ import annotations

import csv
import io
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

from sei.core import BfiLevel, InvalidInputError

REGISTRY_HEADER = "issn,channel_name,bfi_level"

_ISSN_RE = re.compile(r"^\d{4}-\d{3}[\dX]$")

# Folding for letters that NFKD decomposition leaves alone. Danish channel
# names make ae/oe/aa folding mandatory.
_FOLD_TABLE = str.maketrans(
    {
        "æ": "ae",
        "ø": "oe",
        "å": "aa",
        "œ": "oe",
        "ð": "d",
        "þ": "th",
    }
)


class InvalidIssnError(InvalidInputError):
    """ISSN does not match NNNN-NNNC or its check character fails."""


@dataclass(frozen=True)
class RegistryProblem:
    line: int
    code: str
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}"


class RegistryLoadError(ValueError):
    """The registry file is malformed; carries every problem with line numbers."""

    def __init__(self, problems: list[RegistryProblem]):
        self.problems = list(problems)
        super().__init__("; ".join(str(p) for p in self.problems))


@dataclass(frozen=True)
class ChannelRecord:
    canonical_name: str
    issns: tuple[str, ...]
    bfi_level: BfiLevel


@dataclass(frozen=True)
class LookupResult:
    bfi: BfiLevel
    found: bool
    matched: ChannelRecord | None = None


@dataclass(frozen=True)
class Registry:
    """Immutable channel table with ISSN and normalized-name indices."""

    records: tuple[ChannelRecord, ...]
    source_version: str = ""
    _by_issn: dict[str, ChannelRecord] = field(default_factory=dict, repr=False)
    _by_name: dict[str, ChannelRecord] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.records)


def issn_check_char(seven_digits: str) -> str:
    """Check character for the first seven ISSN digits (10 renders as X)."""
    if len(seven_digits) != 7 or not seven_digits.isdigit():
        raise InvalidIssnError(f"expected seven digits, got {seven_digits!r}")
    total = sum(int(d) * w for d, w in zip(seven_digits, range(8, 1, -1)))
    rem = (11 - total % 11) % 11
    return "X" if rem == 10 else str(rem)


def normalize_issn(issn: str) -> str:
    """Canonical NNNN-NNNC form; validates the pattern and check character."""
    cleaned = issn.strip().upper()
    if re.fullmatch(r"\d{7}[\dX]", cleaned):
        cleaned = f"{cleaned[:4]}-{cleaned[4:]}"
    if not _ISSN_RE.match(cleaned):
        raise InvalidIssnError(f"malformed ISSN {issn!r}")
    digits = cleaned.replace("-", "")
    if issn_check_char(digits[:7]) != digits[7]:
        raise InvalidIssnError(f"ISSN {issn!r} fails its check character")
    return cleaned


def normalize_channel_name(name: str) -> str:
    """Canonical lookup key: case-folded, diacritics folded, punctuation
    removed, whitespace collapsed.

    The fold runs to a fixed point: NFKD can surface new case-foldable
    characters (e.g. mathematical letters decompose to plain capitals), so
    one pass is not always idempotent.
    """
    text = name
    for _ in range(10):
        folded = text.casefold().translate(_FOLD_TABLE)
        decomposed = unicodedata.normalize("NFKD", folded)
        kept = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
        kept = "".join(ch if (ch.isalnum() or ch.isspace()) else "" for ch in kept)
        collapsed = " ".join(kept.split())
        if collapsed == text:
            break
        text = collapsed
    return text


def load_registry(source, source_version: str = "") -> Registry:
    """Parse a registry file into an immutable, indexed :class:`Registry`.

    ``source`` may be a path, bytes, text, or a file object. All row-level
    problems (bad ISSNs, duplicate ISSNs, invalid levels, name collisions
    across levels) are collected and raised together as
    :class:`RegistryLoadError`.
    """
    text = _read_text(source)
    problems: list[RegistryProblem] = []
    issn_lines: dict[str, int] = {}
    # normalized name -> (raw name, level, [issns]) accumulated across rows
    channels: dict[str, tuple[str, int, list[str], int]] = {}

    lines = text.splitlines()
    header_seen = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != REGISTRY_HEADER:
                problems.append(
                    RegistryProblem(
                        lineno,
                        "BAD_HEADER",
                        f"header must be exactly {REGISTRY_HEADER!r}, got {line!r}",
                    )
                )
                break
            header_seen = True
            continue

        try:
            fields = next(csv.reader(io.StringIO(raw)))
        except (csv.Error, StopIteration):
            problems.append(RegistryProblem(lineno, "PARSE_ERROR", f"cannot parse row {raw!r}"))
            continue
        if len(fields) != 3:
            problems.append(
                RegistryProblem(
                    lineno, "PARSE_ERROR", f"expected 3 fields, got {len(fields)}"
                )
            )
            continue
        issn_raw, name, level_raw = (f.strip() for f in fields)

        try:
            issn = normalize_issn(issn_raw)
        except InvalidIssnError as exc:
            problems.append(RegistryProblem(lineno, "INVALID_ISSN", str(exc)))
            continue

        try:
            level = int(level_raw)
        except ValueError:
            level = -1
        if level not in (1, 2, 3):
            problems.append(
                RegistryProblem(
                    lineno,
                    "INVALID_BFI_LEVEL",
                    f"bfi_level must be 1, 2 or 3, got {level_raw!r}",
                )
            )
            continue

        if issn in issn_lines:
            problems.append(
                RegistryProblem(
                    lineno,
                    "DUPLICATE_ISSN",
                    f"ISSN {issn} already declared on line {issn_lines[issn]}",
                )
            )
            continue
        issn_lines[issn] = lineno

        if not name:
            problems.append(RegistryProblem(lineno, "EMPTY_NAME", "channel name is empty"))
            continue
        key = normalize_channel_name(name)
        if key in channels:
            _, existing_level, existing_issns, first_line = channels[key]
            if existing_level != level:
                problems.append(
                    RegistryProblem(
                        lineno,
                        "NAME_LEVEL_COLLISION",
                        f"channel {name!r} declared at level {level} here but level "
                        f"{existing_level} on line {first_line}",
                    )
                )
                continue
            existing_issns.append(issn)
        else:
            channels[key] = (name, level, [issn], lineno)

    if not header_seen and not problems:
        # Empty files and comment-only files are not registries.
        problems.append(RegistryProblem(1, "BAD_HEADER", "missing header row"))
    if problems:
        raise RegistryLoadError(problems)

    records = []
    by_issn: dict[str, ChannelRecord] = {}
    by_name: dict[str, ChannelRecord] = {}
    for key, (name, level, issns, _) in channels.items():
        record = ChannelRecord(
            canonical_name=name, issns=tuple(issns), bfi_level=BfiLevel(level)
        )
        records.append(record)
        by_name[key] = record
        for issn in issns:
            by_issn[issn] = record

    return Registry(
        records=tuple(records),
        source_version=source_version,
        _by_issn=by_issn,
        _by_name=by_name,
    )


def lookup_channel(
    registry: Registry, issn: str | None = None, name: str | None = None
) -> LookupResult:
    """Resolve a channel by ISSN or name; absence scores level 0, not found.

    When both identifiers are given the ISSN is tried first. A malformed
    ISSN raises :class:`InvalidIssnError` rather than scoring 0, so typos do
    not silently downgrade a source.
    """
    if issn is None and name is None:
        raise InvalidInputError("lookup needs an issn or a name")
    if issn is not None:
        record = registry._by_issn.get(normalize_issn(issn))
        if record is not None:
            return LookupResult(bfi=record.bfi_level, found=True, matched=record)
    if name is not None:
        record = registry._by_name.get(normalize_channel_name(name))
        if record is not None:
            return LookupResult(bfi=record.bfi_level, found=True, matched=record)
    return LookupResult(bfi=BfiLevel.BELOW_MINIMUM, found=False, matched=None)


def search_channels(registry: Registry, query: str, limit: int = 20) -> list[ChannelRecord]:
    """Substring search over normalized names, for channel-picker UIs."""
    needle = normalize_channel_name(query)
    if not needle:
        return []
    hits = [
        record
        for key, record in sorted(registry._by_name.items())
        if needle in key
    ]
    return hits[:limit]


def _read_text(source) -> str:
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8")
    if isinstance(source, str):
        # A short single-line string that names an existing file is a path;
        # anything else is treated as file content.
        if "\n" not in source and Path(source).is_file():
            return Path(source).read_text(encoding="utf-8")
        return source
    if isinstance(source, bytes):
        return source.decode("utf-8")
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data
