"""Embedding providers for the averaged-vector baseline classifier.

Three interchangeable sources: a remote vector endpoint, a precomputed
TSV file keyed by (word, sentence digest), and a deterministic hashed
bag-of-tokens vectorizer that needs no model at all. All return fixed-
dimension float vectors for a (word, sentence) request.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field

import numpy as np
import requests

from .errors import LexiLevelError


class ProviderError(LexiLevelError):
    """The embedding provider could not produce a vector."""


def sentence_digest(sentence: str) -> str:
    """Stable digest used to key precomputed sentence embeddings."""
    return hashlib.sha256(sentence.encode("utf-8")).hexdigest()


class EmbeddingProvider:
    """Interface: embed a target word in its sentence context."""

    dimension: int

    def embed(self, word: str, sentence: str) -> np.ndarray:
        raise NotImplementedError


@dataclass
class PrecomputedEmbeddings(EmbeddingProvider):
    """Vectors from a TSV of ``word<TAB>sentence-digest<TAB>v1 ... vd``."""

    vectors: dict[tuple[str, str], np.ndarray]
    dimension: int

    @classmethod
    def load(cls, path: str) -> PrecomputedEmbeddings:
        vectors: dict[tuple[str, str], np.ndarray] = {}
        dimension = 0
        with open(path, encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                columns = line.split("\t")
                if len(columns) != 3:
                    raise ProviderError(f"{path}:{lineno}: expected 3 tab-separated columns")
                word, digest, values = columns
                try:
                    vector = np.array([float(v) for v in values.split()], dtype=np.float64)
                except ValueError:
                    raise ProviderError(f"{path}:{lineno}: non-numeric vector component") from None
                if dimension == 0:
                    dimension = vector.shape[0]
                elif vector.shape[0] != dimension:
                    raise ProviderError(
                        f"{path}:{lineno}: dimension {vector.shape[0]} != {dimension}"
                    )
                vectors[(word.lower(), digest)] = vector
        if not vectors:
            raise ProviderError(f"{path}: no vectors")
        return cls(vectors=vectors, dimension=dimension)

    def embed(self, word: str, sentence: str) -> np.ndarray:
        key = (word.lower(), sentence_digest(sentence))
        vector = self.vectors.get(key)
        if vector is None:
            raise ProviderError(f"no precomputed vector for {word!r} in context")
        return vector


def write_embeddings_tsv(rows: list[tuple[str, str, np.ndarray]], path: str) -> None:
    """Write (word, sentence, vector) rows in the precomputed TSV layout."""
    with open(path, "w", encoding="utf-8") as handle:
        for word, sentence, vector in rows:
            values = " ".join(repr(float(v)) for v in vector)
            handle.write(f"{word.lower()}\t{sentence_digest(sentence)}\t{values}\n")


@dataclass
class HttpEmbeddingProvider(EmbeddingProvider):
    """POSTs ``{"word": ..., "sentence": ...}`` and expects ``{"vector": [...]}``."""

    url: str
    dimension: int = 0
    timeout: float = 60.0
    _session: requests.Session = field(default_factory=requests.Session, repr=False)

    def embed(self, word: str, sentence: str) -> np.ndarray:
        try:
            response = self._session.post(
                self.url, json={"word": word, "sentence": sentence}, timeout=self.timeout
            )
        except requests.RequestException as exc:
            raise ProviderError(f"embedding request failed: {exc}") from None
        if response.status_code != 200:
            raise ProviderError(f"embedding endpoint returned {response.status_code}")
        try:
            vector = np.array(response.json()["vector"], dtype=np.float64)
        except (ValueError, KeyError, TypeError) as exc:
            raise ProviderError(f"malformed embedding response: {exc}") from None
        if self.dimension == 0:
            self.dimension = vector.shape[0]
        elif vector.shape[0] != self.dimension:
            raise ProviderError(f"dimension {vector.shape[0]} != {self.dimension}")
        return vector


@dataclass
class HashedEmbeddingProvider(EmbeddingProvider):
    """Deterministic hashed bag-of-tokens vectors; no model required.

    The target word is injected as a marked token so the same sentence
    embeds differently for different targets. Hashing uses SHA-256, so
    vectors are identical across processes and platforms.
    """

    dimension: int = 256

    def embed(self, word: str, sentence: str) -> np.ndarray:
        tokens = re.findall(r"[a-z0-9']+", sentence.lower())
        tokens.append(f"target={word.lower()}")
        vector = np.zeros(self.dimension, dtype=np.float64)
        for token in tokens:
            digest = hashlib.sha256(token.encode("utf-8")).digest()
            index = int.from_bytes(digest[:4], "big") % self.dimension
            sign = 1.0 if digest[4] % 2 == 0 else -1.0
            vector[index] += sign
        norm = np.linalg.norm(vector)
        return vector / norm if norm else vector
