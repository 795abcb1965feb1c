import hashlib
import json
from typing import Any


def canonical_json(payload: Any) -> str:
    """Serialize with sorted keys and fixed separators so equal payloads give equal text."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def payload_digest(payload: Any, *, algo: str = "sha256") -> bytes:
    """
    Digest of the canonical JSON form of a report payload.
    - payload: any JSON-serializable value
    - algo: hashlib algorithm name ('sha256', 'blake2b', ...)
    Returns: raw digest bytes
    """
    try:
        h = hashlib.new(algo)
    except ValueError as e:
        raise ValueError(f"Unsupported hash algorithm: {algo}") from e
    h.update(canonical_json(payload).encode("utf-8"))
    return h.digest()
