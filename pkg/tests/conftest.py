from __future__ import annotations

import os

import pytest

from lexilevel.evp import load_evp
from lexilevel.wordnet import load_wordnet

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture(scope="session")
def data_dir() -> str:
    return DATA_DIR


@pytest.fixture(scope="session")
def wordnet_dir() -> str:
    return os.path.join(DATA_DIR, "mini_wordnet")


@pytest.fixture(scope="session")
def golden_dir() -> str:
    return os.path.join(DATA_DIR, "golden")


@pytest.fixture(scope="session")
def evp_path() -> str:
    return os.path.join(DATA_DIR, "evp_mini.tsv")


@pytest.fixture(scope="session")
def semcor_xml() -> str:
    return os.path.join(DATA_DIR, "semcor_mini.xml")


@pytest.fixture(scope="session")
def semcor_keys() -> str:
    return os.path.join(DATA_DIR, "semcor_mini.key.txt")


@pytest.fixture(scope="session")
def complex_path() -> str:
    return os.path.join(DATA_DIR, "complex_mini.tsv")


# The store and lexicon are immutable after load; session scope is safe.
@pytest.fixture(scope="session")
def store(wordnet_dir):
    return load_wordnet(wordnet_dir)


@pytest.fixture(scope="session")
def lexicon(evp_path):
    return load_evp(evp_path)
