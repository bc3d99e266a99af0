"""On-disk result cache under ``$RGC_CACHE_DIR``.

Entries are JSON files named by the SHA-256 of their canonical key, which
always includes ``FORMAT_VERSION``; bumping it invalidates everything.
Without the environment variable the cache is disabled.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

FORMAT_VERSION = 1


def cache_dir() -> Path | None:
    root = os.environ.get("RGC_CACHE_DIR")
    return Path(root) if root else None


def key_digest(key: dict) -> str:
    payload = json.dumps({"format": FORMAT_VERSION, **key}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def load(key: dict):
    root = cache_dir()
    if root is None:
        return None
    path = root / f"{key_digest(key)}.json"
    try:
        with open(path, encoding="utf-8") as fh:
            entry = json.load(fh)
    except (OSError, ValueError):
        return None
    if entry.get("key") != {"format": FORMAT_VERSION, **key}:
        return None
    return entry["value"]


def store(key: dict, value) -> None:
    root = cache_dir()
    if root is None:
        return
    root.mkdir(parents=True, exist_ok=True)
    entry = {"key": {"format": FORMAT_VERSION, **key}, "value": value}
    fd, tmp = tempfile.mkstemp(dir=root, suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        json.dump(entry, fh, sort_keys=True, separators=(",", ":"))
    os.replace(tmp, root / f"{key_digest(key)}.json")
