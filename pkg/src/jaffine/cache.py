"""On-disk cache of weight computations, one JSON file per key."""

from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path

from filelock import FileLock

from .codes import LinearCode
from .weights import WeightReport

__all__ = ["WeightCache", "canonical_digest", "default_cache_dir"]

log = logging.getLogger(__name__)


def canonical_digest(obj) -> str:
    """sha256 of the canonical JSON encoding of ``obj``."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode()).hexdigest()


def default_cache_dir() -> Path:
    env = os.environ.get("JAFFINE_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "jaffine"


def matrix_hash(C: LinearCode, exclude: LinearCode | None) -> str:
    parts = [C.digest]
    if exclude is not None:
        parts.append(exclude.digest)
    return hashlib.sha256("|".join(parts).encode()).hexdigest()


class WeightCache:
    """Maps (field, generator hash, method options) to a WeightReport."""

    def __init__(self, directory: str | os.PathLike | None = None):
        self.dir = Path(directory) if directory is not None else default_cache_dir()
        self.hits = 0
        self.misses = 0
        self.keys: list[str] = []

    def key(self, C: LinearCode, exclude: LinearCode | None, options: dict) -> str:
        return canonical_digest(
            {"field": list(C.field.key), "n": C.n, "matrix": matrix_hash(C, exclude), "options": options}
        )

    def _path(self, key: str) -> Path:
        return self.dir / f"{key}.json"

    def get(self, key: str, C: LinearCode, exclude: LinearCode | None) -> WeightReport | None:
        self.keys.append(key)
        path = self._path(key)
        if not path.exists():
            self.misses += 1
            return None
        with FileLock(str(path) + ".lock"):
            try:
                blob = json.loads(path.read_text())
                if blob["matrix"] != matrix_hash(C, exclude):
                    log.warning("cache entry %s belongs to a different matrix; recomputing", key[:12])
                    self.misses += 1
                    return None
                report = WeightReport.from_dict(blob["report"])
            except (OSError, ValueError, KeyError, TypeError) as exc:
                log.warning("corrupt cache entry %s (%s); recomputing", key[:12], exc)
                self.misses += 1
                return None
        self.hits += 1
        return report

    def put(self, key: str, C: LinearCode, exclude: LinearCode | None, report: WeightReport) -> None:
        self.dir.mkdir(parents=True, exist_ok=True)
        path = self._path(key)
        blob = {"matrix": matrix_hash(C, exclude), "report": report.as_dict()}
        with FileLock(str(path) + ".lock"):
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(blob, sort_keys=True))
            os.replace(tmp, path)
