"""Content-keyed JSON cache for Smith-form results.

Smith normal form dominates the runtime of every verification suite, so
finished quotient structures are kept on disk.  Keys are sha256 hashes of a
canonical description of the input; payloads are plain JSON.  Writes go
through a temp file and os.replace, so concurrent workers racing on the same
key at worst redo work, never corrupt it.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Optional

from .serialize import canonical_json_bytes

ENV_VAR = "PETRING_CACHE_DIR"
DEFAULT_DIRNAME = ".petring_cache"


def default_cache_dir(explicit: Optional[str] = None) -> Path:
    """Resolution order: explicit argument, PETRING_CACHE_DIR, ./.petring_cache."""
    if explicit:
        return Path(explicit)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(DEFAULT_DIRNAME)


def make_key(*parts: Any) -> str:
    return hashlib.sha256(canonical_json_bytes(list(parts))).hexdigest()


class JsonCache:
    def __init__(self, directory: Optional[Path] = None):
        self.directory = Path(directory) if directory else default_cache_dir()

    def _path(self, key: str) -> Path:
        if not all(c in "0123456789abcdef" for c in key) or len(key) != 64:
            raise ValueError("cache keys are sha256 hex digests")
        return self.directory / f"{key}.json"

    def get(self, key: str) -> Optional[Any]:
        path = self._path(key)
        try:
            with open(path, "r", encoding="ascii") as fh:
                return json.load(fh)
        except FileNotFoundError:
            return None
        except (ValueError, OSError):
            # unreadable entry: treat as a miss and let put() repair it
            return None

    def put(self, key: str, obj: Any) -> None:
        path = self._path(key)
        self.directory.mkdir(parents=True, exist_ok=True)
        data = canonical_json_bytes(obj)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
