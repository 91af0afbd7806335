"""Core vocabulary shared by every other module: CEFR levels, parts of
speech, and normalized single-word lemma keys.

All types here are immutable values and safe to share across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering

from .errors import LexiLevelError


class NoLevelFound(LexiLevelError):
    """No CEFR level token could be located in a piece of text."""

    def __init__(self, text: str):
        super().__init__(f"no CEFR level token in {text!r}")
        self.text = text


@total_ordering
class CefrLevel(Enum):
    """The six CEFR proficiency levels, totally ordered A1 < ... < C2."""

    A1 = 1
    A2 = 2
    B1 = 3
    B2 = 4
    C1 = 5
    C2 = 6

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, CefrLevel):
            return NotImplemented
        return self.value < other.value

    def __str__(self) -> str:
        return self.name


LEVELS: tuple[CefrLevel, ...] = tuple(CefrLevel)


@total_ordering
class PartOfSpeech(Enum):
    """The four open-class parts of speech used throughout.

    WordNet's satellite-adjective category is folded into ``ADJECTIVE``
    at parse time, so no fifth value ever escapes this module. The order
    (noun < verb < adjective < adverb) exists only so keys sort stably.
    """

    NOUN = "noun"
    VERB = "verb"
    ADJECTIVE = "adjective"
    ADVERB = "adverb"

    def __str__(self) -> str:
        return self.value

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, PartOfSpeech):
            return NotImplemented
        order = ("noun", "verb", "adjective", "adverb")
        return order.index(self.value) < order.index(other.value)

    @classmethod
    def from_text(cls, text: str) -> PartOfSpeech:
        """Parse a full PoS name ("noun", "Verb", ...); raises ValueError."""
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown part of speech: {text!r}") from None

    @classmethod
    def from_wordnet_tag(cls, tag: str) -> PartOfSpeech:
        """Map a WordNet synset-type character (n/v/a/s/r) onto a PoS."""
        mapped = _WN_TAG_TO_POS.get(tag)
        if mapped is None:
            raise ValueError(f"unknown WordNet PoS tag: {tag!r}")
        return mapped

    @classmethod
    def from_sense_type(cls, ss_type: int) -> PartOfSpeech:
        """Map a sense-key synset-type digit (1-5) onto a PoS."""
        mapped = _SS_TYPE_TO_POS.get(ss_type)
        if mapped is None:
            raise ValueError(f"unknown sense-key synset type: {ss_type!r}")
        return mapped


_WN_TAG_TO_POS = {
    "n": PartOfSpeech.NOUN,
    "v": PartOfSpeech.VERB,
    "a": PartOfSpeech.ADJECTIVE,
    "s": PartOfSpeech.ADJECTIVE,
    "r": PartOfSpeech.ADVERB,
}

_SS_TYPE_TO_POS = {
    1: PartOfSpeech.NOUN,
    2: PartOfSpeech.VERB,
    3: PartOfSpeech.ADJECTIVE,
    4: PartOfSpeech.ADVERB,
    5: PartOfSpeech.ADJECTIVE,
}


@dataclass(frozen=True, order=True)
class LemmaKey:
    """A normalized single-word lemma: lowercase surface plus PoS.

    Multiword expressions (anything with internal whitespace or an
    underscore) are never represented by a LemmaKey.
    """

    surface: str
    pos: PartOfSpeech

    def __post_init__(self) -> None:
        if not self.surface:
            raise ValueError("empty lemma surface")
        if self.surface != self.surface.strip().lower():
            raise ValueError(f"lemma surface not normalized: {self.surface!r}")
        if "_" in self.surface or any(c.isspace() for c in self.surface):
            raise ValueError(f"multiword lemma not allowed: {self.surface!r}")


def level_to_int(level: CefrLevel) -> int:
    """Map A1..C2 onto the integers 1..6, preserving order."""
    return level.value


def int_to_level(value: int) -> CefrLevel:
    """Inverse of :func:`level_to_int`; raises ValueError outside 1..6."""
    try:
        return CefrLevel(value)
    except ValueError:
        raise ValueError(f"no CEFR level for integer {value!r}") from None


def render_level(level: CefrLevel) -> str:
    """Canonical text form of a level ("A1", ..., "C2")."""
    return level.name


# A level token counts only when not embedded in a longer alphanumeric run,
# so model chatter like "A1B" or "B2x" is never misread as a level.
_LEVEL_TOKEN = re.compile(r"[ABCabc][12]")


def parse_level(text: str) -> CefrLevel:
    """Extract the first well-formed CEFR level token from free text.

    Matching is case-insensitive; token boundaries are non-alphanumeric
    characters (or the ends of the text). Raises :class:`NoLevelFound`
    when no token occurs.
    """
    for match in _LEVEL_TOKEN.finditer(text):
        start, end = match.start(), match.end()
        before_ok = start == 0 or not text[start - 1].isalnum()
        after_ok = end == len(text) or not text[end].isalnum()
        if before_ok and after_ok:
            return CefrLevel[match.group(0).upper()]
    raise NoLevelFound(text)


def normalize_lemma(raw: str, pos: PartOfSpeech) -> LemmaKey | None:
    """Lowercase and trim a raw lemma; None for MWEs and empty strings.

    Rejection is a value, not a fault: callers use it to skip multiword
    entries while counting them.
    """
    surface = raw.strip().lower()
    if not surface:
        return None
    if "_" in surface or any(c.isspace() for c in surface):
        return None
    return LemmaKey(surface, pos)
