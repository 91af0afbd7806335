"""Content-addressed verdict cache.

Entries are keyed by a digest of (judge id, prompt text) and persisted
as append-only JSONL, one ``{key, score, judge_id, raw_response,
timestamp}`` record per line. A hit bypasses the judge entirely, which
makes annotation runs resumable and repeat runs free.
"""

from __future__ import annotations

import hashlib
import json
import threading
import time
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .errors import LexiLevelError

if TYPE_CHECKING:
    from .align import SimilarityVerdict


class StorageError(LexiLevelError):
    """The cache file could not be read or written."""


def verdict_key(judge_id: str, prompt: str) -> str:
    """Digest addressing one (judge, prompt) comparison."""
    material = judge_id.encode("utf-8") + b"\x00" + prompt.encode("utf-8")
    return hashlib.sha256(material).hexdigest()


@dataclass
class VerdictCache:
    """Verdicts by key; in-memory when ``path`` is None, JSONL-backed otherwise.

    Writes are serialized by an internal lock; reads need no coordination.
    ``hits``/``misses`` count lookups for run reporting (misses equal the
    number of judge invocations a pipeline run had to make).
    """

    path: str | None = None
    hits: int = 0
    misses: int = 0
    _entries: dict[str, "SimilarityVerdict"] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @classmethod
    def open(cls, path: str) -> VerdictCache:
        """Open (creating if needed) a JSONL-backed cache."""
        from .align import SimilarityVerdict

        cache = cls(path=path)
        try:
            handle = open(path, encoding="utf-8")
        except FileNotFoundError:
            return cache
        except OSError as exc:
            raise StorageError(f"cannot open cache {path}: {exc}") from None
        with handle:
            for lineno, line in enumerate(handle, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    record = json.loads(line)
                    verdict = SimilarityVerdict(
                        score=record["score"],
                        judge_id=record["judge_id"],
                        raw_response=record["raw_response"],
                    )
                    key = record["key"]
                except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                    raise StorageError(f"{path}:{lineno}: corrupt cache entry: {exc}") from None
                cache._entries.setdefault(key, verdict)
        return cache

    def get(self, key: str) -> "SimilarityVerdict | None":
        verdict = self._entries.get(key)
        if verdict is None:
            self.misses += 1
        else:
            self.hits += 1
        return verdict

    def put(self, key: str, verdict: "SimilarityVerdict") -> None:
        """Store a verdict; a second put of the same key is a no-op."""
        with self._lock:
            if key in self._entries:
                return
            self._entries[key] = verdict
            if self.path is None:
                return
            record = {
                "key": key,
                "score": verdict.score,
                "judge_id": verdict.judge_id,
                "raw_response": verdict.raw_response,
                "timestamp": time.time(),
            }
            try:
                with open(self.path, "a", encoding="utf-8") as handle:
                    handle.write(json.dumps(record, ensure_ascii=False) + "\n")
            except OSError as exc:
                raise StorageError(f"cannot append to cache {self.path}: {exc}") from None

    def __len__(self) -> int:
        return len(self._entries)
