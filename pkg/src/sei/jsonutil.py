"""Canonical JSON serialization shared by the store, drafts, and reports.

Sorted keys and no insignificant whitespace, so that persisted histories
diff cleanly and independently produced documents compare byte-for-byte.
"""

from __future__ import annotations

import json


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
