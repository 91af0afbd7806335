from __future__ import annotations

import os

import pytest

from lexilevel.align import SimilarityVerdict
from lexilevel.cache import StorageError, VerdictCache, verdict_key

V1 = SimilarityVerdict(score=2, judge_id="j", raw_response="2")


def test_key_is_content_addressed():
    assert verdict_key("j", "prompt") == verdict_key("j", "prompt")
    assert verdict_key("j", "prompt") != verdict_key("k", "prompt")
    assert verdict_key("j", "prompt a") != verdict_key("j", "prompt b")


def test_put_then_get_round_trip(tmp_path):
    cache = VerdictCache.open(str(tmp_path / "cache.jsonl"))
    key = verdict_key("j", "p")
    cache.put(key, V1)
    assert cache.get(key) == V1


def test_cold_get_is_absent(tmp_path):
    cache = VerdictCache.open(str(tmp_path / "cache.jsonl"))
    assert cache.get(verdict_key("j", "p")) is None
    assert cache.misses == 1


def test_double_put_is_idempotent(tmp_path):
    path = str(tmp_path / "cache.jsonl")
    cache = VerdictCache.open(path)
    key = verdict_key("j", "p")
    cache.put(key, V1)
    size_after_first = os.path.getsize(path)
    cache.put(key, V1)
    assert os.path.getsize(path) == size_after_first
    assert len(cache) == 1


def test_persistence_across_open(tmp_path):
    path = str(tmp_path / "cache.jsonl")
    VerdictCache.open(path).put(verdict_key("j", "p"), V1)
    warm = VerdictCache.open(path)
    assert warm.get(verdict_key("j", "p")) == V1
    assert warm.hits == 1 and warm.misses == 0


def test_corrupt_entry_raises_storage_error(tmp_path):
    path = tmp_path / "cache.jsonl"
    path.write_text('{"key": "k", "score": "not-an-int"}\n')
    with pytest.raises(StorageError):
        VerdictCache.open(str(path))


def test_in_memory_mode_without_path():
    cache = VerdictCache()
    key = verdict_key("j", "p")
    cache.put(key, V1)
    assert cache.get(key) == V1


def test_hit_miss_counters(tmp_path):
    cache = VerdictCache()
    key = verdict_key("j", "p")
    cache.get(key)
    cache.put(key, V1)
    cache.get(key)
    assert (cache.hits, cache.misses) == (1, 1)
