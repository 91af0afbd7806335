from __future__ import annotations

import numpy as np
import pytest

from lexilevel.embeddings import (
    HashedEmbeddingProvider,
    PrecomputedEmbeddings,
    ProviderError,
    sentence_digest,
    write_embeddings_tsv,
)


def test_hashed_provider_is_deterministic():
    a = HashedEmbeddingProvider(dimension=64)
    b = HashedEmbeddingProvider(dimension=64)
    va = a.embed("bank", "He sat on the bank.")
    vb = b.embed("bank", "He sat on the bank.")
    assert np.array_equal(va, vb)
    assert va.shape == (64,)
    assert np.isclose(np.linalg.norm(va), 1.0)


def test_hashed_provider_target_word_matters():
    provider = HashedEmbeddingProvider(dimension=64)
    same_sentence = "He sat on the bank of the river."
    assert not np.array_equal(
        provider.embed("bank", same_sentence), provider.embed("river", same_sentence)
    )


def test_precomputed_round_trip(tmp_path):
    rows = [
        ("bank", "He sat on the bank.", np.array([0.25, -1.5, 3.0])),
        ("dog", "The dog barked.", np.array([1.0, 2.0, 3.0])),
    ]
    path = str(tmp_path / "vectors.tsv")
    write_embeddings_tsv(rows, path)
    provider = PrecomputedEmbeddings.load(path)
    assert provider.dimension == 3
    assert np.array_equal(provider.embed("Bank", "He sat on the bank."), rows[0][2])


def test_precomputed_missing_vector(tmp_path):
    path = str(tmp_path / "vectors.tsv")
    write_embeddings_tsv([("dog", "The dog barked.", np.array([1.0]))], path)
    provider = PrecomputedEmbeddings.load(path)
    with pytest.raises(ProviderError):
        provider.embed("dog", "A different sentence.")


def test_precomputed_dimension_mismatch(tmp_path):
    path = tmp_path / "vectors.tsv"
    digest = sentence_digest("s")
    path.write_text(f"a\t{digest}\t1.0 2.0\nb\t{digest}\t1.0\n")
    with pytest.raises(ProviderError):
        PrecomputedEmbeddings.load(str(path))


def test_precomputed_bad_component(tmp_path):
    path = tmp_path / "vectors.tsv"
    path.write_text(f"a\t{sentence_digest('s')}\tx y\n")
    with pytest.raises(ProviderError):
        PrecomputedEmbeddings.load(str(path))


def test_precomputed_empty_file(tmp_path):
    path = tmp_path / "vectors.tsv"
    path.write_text("")
    with pytest.raises(ProviderError):
        PrecomputedEmbeddings.load(str(path))
