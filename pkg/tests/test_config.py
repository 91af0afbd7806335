from __future__ import annotations

import os

import pytest

from lexilevel.config import ConfigError, load_config
from lexilevel.errors import MissingFile


def _write(tmp_path, text: str) -> str:
    path = tmp_path / "config.ini"
    path.write_text(text)
    return str(path)


def test_relative_paths_resolve_against_config_dir(tmp_path):
    path = _write(
        tmp_path,
        "[paths]\nwordnet_dir = wn\nevp_tsv = data/evp.tsv\noutput_dir = out\n",
    )
    config = load_config(path)
    assert config.wordnet_dir == str(tmp_path / "wn")
    assert config.evp_tsv == str(tmp_path / "data" / "evp.tsv")
    assert config.output_dir == str(tmp_path / "out")


def test_defaults(tmp_path):
    config = load_config(_write(tmp_path, "[paths]\noutput_dir = out\n"))
    assert config.annotations == str(tmp_path / "out" / "annotated_wordnet.jsonl")
    assert config.corpus == str(tmp_path / "out" / "semcor_cefr.jsonl")
    assert config.parallelism == 1
    assert config.retry_budget == 2
    assert config.lenient is False
    assert config.split_seed == 13 and config.shot_seed == 17
    assert config.backend_kind == "http"
    assert config.emb_kind == "hashed"
    assert config.api_key_env == "LEXI_API_KEY"
    assert config.temperature is None


def test_explicit_values(tmp_path):
    text = "\n".join(
        [
            "[paths]",
            "output_dir = artifacts",
            "annotations = elsewhere/annotations.jsonl",
            "[backend]",
            "kind = static",
            "static_reply = B2",
            "temperature = 0",
            "reasoning_effort = high",
            "[pipeline]",
            "parallelism = 4",
            "retry_budget = 5",
            "lenient = true",
            "[seeds]",
            "split_seed = 101",
            "shot_seed = 202",
        ]
    )
    config = load_config(_write(tmp_path, text))
    assert config.annotations == str(tmp_path / "elsewhere" / "annotations.jsonl")
    assert config.backend_kind == "static"
    assert config.temperature == 0.0
    assert config.reasoning_effort == "high"
    assert config.parallelism == 4
    assert config.lenient is True
    assert config.seeds == {"split_seed": 101, "shot_seed": 202}


def test_absolute_paths_kept(tmp_path):
    config = load_config(_write(tmp_path, "[paths]\nwordnet_dir = /abs/wn\n"))
    assert config.wordnet_dir == "/abs/wn"


def test_missing_config_file(tmp_path):
    with pytest.raises(MissingFile):
        load_config(str(tmp_path / "absent.ini"))


def test_zero_parallelism_rejected(tmp_path):
    with pytest.raises(ConfigError):
        load_config(_write(tmp_path, "[pipeline]\nparallelism = 0\n"))


def test_bad_numeric_option(tmp_path):
    with pytest.raises(ConfigError):
        load_config(_write(tmp_path, "[pipeline]\nparallelism = many\n"))


def test_digest_tracks_file_content(tmp_path):
    first = load_config(_write(tmp_path, "[paths]\noutput_dir = a\n"))
    second = load_config(_write(tmp_path, "[paths]\noutput_dir = b\n"))
    assert first.digest != second.digest
    assert len(first.digest) == 64
    assert os.path.isabs(first.path)
