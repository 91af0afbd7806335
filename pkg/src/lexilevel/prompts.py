"""Prompt templates and rendering.

The templates ship as package data and are substituted with a single
regex pass, so placeholder-like text inside glosses or sentences can
never cascade into a second substitution.
"""

from __future__ import annotations

import hashlib
import re
from functools import lru_cache
from importlib import resources

from .levels import CefrLevel

SIMILARITY_SYSTEM = "You are a professional linguist"
CLASSIFY_SYSTEM = (
    "You are an expert rater for the Common European Framework of Reference "
    "for Languages (CEFR)."
)

_PLACEHOLDER = re.compile(r"\{(word|sentence|shots|g'|g)\}")


@lru_cache(maxsize=None)
def load_template(name: str) -> str:
    """Read a template file from package data; the final newline is trimmed."""
    text = resources.files("lexilevel.templates").joinpath(f"{name}.txt").read_text("utf-8")
    return text[:-1] if text.endswith("\n") else text


def template_digest(name: str) -> str:
    """SHA-256 of a template's bytes, recorded in output manifests."""
    return hashlib.sha256(load_template(name).encode("utf-8")).hexdigest()


def _fill(template: str, mapping: dict[str, str]) -> str:
    return _PLACEHOLDER.sub(lambda m: mapping.get(m.group(1), m.group(0)), template)


def render_similarity(word: str, evp_gloss: str, wn_gloss: str) -> str:
    """Seven-point similarity prompt comparing a learner-dictionary gloss
    (slot 1) against a WordNet gloss (slot 2)."""
    return _fill(
        load_template("similarity"),
        {"word": word, "g": evp_gloss, "g'": wn_gloss},
    )


def render_zero_shot(word: str, sentence: str) -> str:
    return _fill(load_template("zero_shot"), {"word": word, "sentence": sentence})


def render_few_shot(
    shots: list[tuple[str, str, CefrLevel]], word: str, sentence: str
) -> str:
    """Few-shot prompt; shots render one per line in their given order."""
    lines = [f"Word: {w}, Text: {s} -> CEFR: {level.name}" for w, s, level in shots]
    return _fill(
        load_template("few_shot"),
        {"shots": "\n".join(lines), "word": word, "sentence": sentence},
    )
