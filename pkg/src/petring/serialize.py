"""Canonical JSON encoding shared by the CLI and the disk cache.

Every integer is emitted as a decimal string so that arbitrary-precision
values survive any JSON consumer; booleans stay booleans.  Key order and
separators are fixed, so equal payloads are equal bytes.
"""

from __future__ import annotations

import json
from typing import Any


def stringify_ints(obj: Any) -> Any:
    """Recursively convert ints to decimal strings; floats are rejected."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        raise TypeError("float has no place in exact output")
    if isinstance(obj, (list, tuple)):
        return [stringify_ints(v) for v in obj]
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            if not isinstance(k, str):
                raise TypeError(f"JSON object keys must be str, got {type(k).__name__}")
            out[k] = stringify_ints(v)
        return out
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"not JSON-serializable: {type(obj).__name__}")


def canonical_json_bytes(obj: Any) -> bytes:
    text = json.dumps(stringify_ints(obj), sort_keys=True, separators=(",", ":"))
    return (text + "\n").encode("ascii")


def canonical_json_str(obj: Any) -> str:
    return canonical_json_bytes(obj).decode("ascii")
