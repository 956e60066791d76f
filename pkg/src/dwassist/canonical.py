"""Canonical JSON encoding.

All persisted documents (traces, drafts, suggestions) are serialized
through this single encoder so that byte-for-byte equality holds for
equal values: keys sorted, compact separators, UTF-8, no trailing
whitespace.
"""

from __future__ import annotations

import json
from typing import Any


def canonical_json(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
