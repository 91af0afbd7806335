"""Run configuration.

Plain INI config: a ``[paths]`` table for user-supplied resources and
artifact locations, ``[backend]`` and ``[embeddings]`` for model access,
``[pipeline]`` for parallelism and retry policy, and ``[seeds]`` for all
randomness. API keys come only from the environment, never from here.
Relative paths resolve against the config file's directory.
"""

from __future__ import annotations

import configparser
import hashlib
import os
from dataclasses import dataclass

from .chat import DEFAULT_API_KEY_ENV
from .errors import LexiLevelError, MissingFile


class ConfigError(LexiLevelError):
    """The config file is missing, malformed, or inconsistent."""


@dataclass
class Config:
    path: str
    digest: str
    wordnet_dir: str | None
    evp_tsv: str | None
    semcor_xml: str | None
    semcor_keys: str | None
    complex_tsv: str | None
    cache_file: str | None
    output_dir: str
    annotations: str
    corpus: str
    backend_kind: str
    base_url: str
    model: str
    static_reply: str
    temperature: float | None
    reasoning_effort: str | None
    api_key_env: str
    emb_kind: str
    emb_dimension: int
    emb_tsv: str | None
    emb_url: str | None
    parallelism: int
    retry_budget: int
    lenient: bool
    split_seed: int
    shot_seed: int

    @property
    def seeds(self) -> dict[str, int]:
        return {"split_seed": self.split_seed, "shot_seed": self.shot_seed}


def sha256_file(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def load_config(path: str) -> Config:
    if not os.path.isfile(path):
        raise MissingFile(path)
    parser = configparser.ConfigParser()
    try:
        parser.read(path, encoding="utf-8")
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from None

    base = os.path.dirname(os.path.abspath(path))

    def resolve(value: str | None) -> str | None:
        if not value:
            return None
        return value if os.path.isabs(value) else os.path.normpath(os.path.join(base, value))

    def get(section: str, option: str, fallback: str | None = None) -> str | None:
        return parser.get(section, option, fallback=fallback)

    try:
        parallelism = parser.getint("pipeline", "parallelism", fallback=1)
        retry_budget = parser.getint("pipeline", "retry_budget", fallback=2)
        lenient = parser.getboolean("pipeline", "lenient", fallback=False)
        split_seed = parser.getint("seeds", "split_seed", fallback=13)
        shot_seed = parser.getint("seeds", "shot_seed", fallback=17)
        emb_dimension = parser.getint("embeddings", "dimension", fallback=256)
        temperature_raw = get("backend", "temperature")
        temperature = float(temperature_raw) if temperature_raw not in (None, "") else None
    except ValueError as exc:
        raise ConfigError(f"bad numeric option in {path}: {exc}") from None
    if parallelism < 1:
        raise ConfigError("pipeline.parallelism must be >= 1")

    output_dir = resolve(get("paths", "output_dir", "out"))
    assert output_dir is not None
    annotations = resolve(get("paths", "annotations")) or os.path.join(
        output_dir, "annotated_wordnet.jsonl"
    )
    corpus = resolve(get("paths", "corpus")) or os.path.join(output_dir, "semcor_cefr.jsonl")

    return Config(
        path=os.path.abspath(path),
        digest=sha256_file(path),
        wordnet_dir=resolve(get("paths", "wordnet_dir")),
        evp_tsv=resolve(get("paths", "evp_tsv")),
        semcor_xml=resolve(get("paths", "semcor_xml")),
        semcor_keys=resolve(get("paths", "semcor_keys")),
        complex_tsv=resolve(get("paths", "complex_tsv")),
        cache_file=resolve(get("paths", "cache_file")),
        output_dir=output_dir,
        annotations=annotations,
        corpus=corpus,
        backend_kind=(get("backend", "kind", "http") or "http").lower(),
        base_url=get("backend", "base_url", "") or "",
        model=get("backend", "model", "") or "",
        static_reply=get("backend", "static_reply", "") or "",
        temperature=temperature,
        reasoning_effort=get("backend", "reasoning_effort") or None,
        api_key_env=get("backend", "api_key_env", DEFAULT_API_KEY_ENV) or DEFAULT_API_KEY_ENV,
        emb_kind=(get("embeddings", "kind", "hashed") or "hashed").lower(),
        emb_dimension=emb_dimension,
        emb_tsv=resolve(get("embeddings", "tsv")),
        emb_url=get("embeddings", "url") or None,
        parallelism=parallelism,
        retry_budget=retry_budget,
        lenient=lenient,
        split_seed=split_seed,
        shot_seed=shot_seed,
    )
