"""Content digests for certificates and reports."""

from __future__ import annotations

import hashlib
import json
from typing import Any


def sha256(data: str | bytes) -> str:
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


def canonical_json(payload: Any) -> str:
    """Compact JSON with sorted keys, stable across runs."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def certificate_digest(payload: dict[str, Any]) -> str:
    """sha256 of the canonical JSON of a certificate payload."""
    return sha256(canonical_json(payload))
