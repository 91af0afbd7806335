"""Ingestion of a user-supplied EVP-schema lexicon and the derived
single-level knowledge base.

The input contract is a UTF-8 TSV with header
``id  lemma  pos  level  gloss  examples`` where ``examples`` is a JSON
array of strings. The lexicon itself cannot be redistributed, so users
export their own file under their license; this module only defines the
schema and enforces the single-word scope.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import LexiLevelError
from .levels import CefrLevel, LemmaKey, PartOfSpeech, normalize_lemma

_HEADER = ("id", "lemma", "pos", "level", "gloss", "examples")


class SchemaError(LexiLevelError):
    """An EVP TSV row violates the documented schema."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


@dataclass(frozen=True)
class EvpSense:
    """One learner-dictionary sense: gloss, gold CEFR level, and examples.

    ``examples`` holds dictionary and learner examples combined.
    """

    id: str
    lemma: LemmaKey
    level: CefrLevel
    gloss: str
    examples: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.gloss:
            raise ValueError(f"EVP sense {self.id!r} has an empty gloss")


@dataclass
class EvpLexicon:
    """Single-word EVP senses indexed by lemma and by id, in file order."""

    senses: list[EvpSense] = field(default_factory=list)
    by_lemma: dict[LemmaKey, list[EvpSense]] = field(default_factory=dict)
    by_id: dict[str, EvpSense] = field(default_factory=dict)
    mwe_skipped: int = 0

    @classmethod
    def from_senses(cls, senses: list[EvpSense], mwe_skipped: int = 0) -> EvpLexicon:
        lexicon = cls(mwe_skipped=mwe_skipped)
        for sense in senses:
            lexicon._add(sense)
        return lexicon

    def _add(self, sense: EvpSense) -> None:
        if sense.id in self.by_id:
            raise ValueError(f"duplicate EVP sense id {sense.id!r}")
        self.senses.append(sense)
        self.by_id[sense.id] = sense
        self.by_lemma.setdefault(sense.lemma, []).append(sense)

    def __len__(self) -> int:
        return len(self.senses)


@dataclass
class KnowledgeBase:
    """Word-form -> level map for words whose senses all share one level."""

    levels: dict[str, CefrLevel] = field(default_factory=dict)

    def lookup(self, word: str) -> CefrLevel | None:
        return self.levels.get(word.strip().lower())

    def __contains__(self, word: str) -> bool:
        return word.strip().lower() in self.levels

    def __len__(self) -> int:
        return len(self.levels)


def load_evp(path: str) -> EvpLexicon:
    """Load an EVP-schema TSV; MWE rows are skipped and counted.

    Raises :class:`SchemaError` with the 1-based line number on a wrong
    column count, a bad PoS name, a bad level token, an empty gloss, a
    non-JSON examples field, or a duplicate id.
    """
    lexicon = EvpLexicon()
    with open(path, encoding="utf-8-sig") as handle:
        header = handle.readline().rstrip("\n")
        if tuple(header.split("\t")) != _HEADER:
            expected = "\t".join(_HEADER)
            raise SchemaError(1, f"expected header {expected!r}")
        for lineno, line in enumerate(handle, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            columns = line.split("\t")
            if len(columns) != len(_HEADER):
                raise SchemaError(lineno, f"expected {len(_HEADER)} columns, got {len(columns)}")
            sense_id, lemma_raw, pos_raw, level_raw, gloss, examples_raw = columns
            try:
                pos = PartOfSpeech.from_text(pos_raw)
            except ValueError as exc:
                raise SchemaError(lineno, str(exc)) from None
            level_token = level_raw.strip().upper()
            if level_token not in CefrLevel.__members__:
                raise SchemaError(lineno, f"bad CEFR level token {level_raw!r}")
            level = CefrLevel[level_token]
            if not gloss.strip():
                raise SchemaError(lineno, "empty gloss")
            try:
                examples = json.loads(examples_raw)
            except json.JSONDecodeError as exc:
                raise SchemaError(lineno, f"examples field is not JSON: {exc}") from None
            if not isinstance(examples, list) or not all(isinstance(x, str) for x in examples):
                raise SchemaError(lineno, "examples must be a JSON array of strings")
            if not lemma_raw.strip():
                raise SchemaError(lineno, "empty lemma")
            lemma = normalize_lemma(lemma_raw, pos)
            if lemma is None:
                lexicon.mwe_skipped += 1
                continue
            try:
                lexicon._add(
                    EvpSense(
                        id=sense_id,
                        lemma=lemma,
                        level=level,
                        gloss=gloss.strip(),
                        examples=tuple(examples),
                    )
                )
            except ValueError as exc:
                raise SchemaError(lineno, str(exc)) from None
    return lexicon


def dump_evp(lexicon: EvpLexicon, path: str) -> None:
    """Re-serialize a lexicon to the TSV schema (round-trips with load_evp)."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\t".join(_HEADER) + "\n")
        for sense in lexicon.senses:
            row = (
                sense.id,
                sense.lemma.surface,
                sense.lemma.pos.value,
                sense.level.name,
                sense.gloss,
                json.dumps(list(sense.examples), ensure_ascii=False),
            )
            handle.write("\t".join(row) + "\n")


def senses_for(lexicon: EvpLexicon, key: LemmaKey) -> list[EvpSense]:
    """Senses of a lemma in stable file order; empty when absent."""
    return list(lexicon.by_lemma.get(key, []))


def build_kb(lexicon: EvpLexicon) -> KnowledgeBase:
    """Keep a word form iff all its senses (across all PoS) share one level."""
    seen: dict[str, set[CefrLevel]] = {}
    for sense in lexicon.senses:
        seen.setdefault(sense.lemma.surface, set()).add(sense.level)
    return KnowledgeBase(
        levels={word: next(iter(levels)) for word, levels in seen.items() if len(levels) == 1}
    )


def load_report(lexicon: EvpLexicon) -> dict:
    """Counts per level and PoS, for the CLI's JSON load report."""
    by_level = {level.name: 0 for level in CefrLevel}
    by_pos = {pos.value: 0 for pos in PartOfSpeech}
    for sense in lexicon.senses:
        by_level[sense.level.name] += 1
        by_pos[sense.lemma.pos.value] += 1
    return {
        "senses": len(lexicon.senses),
        "lemmas": len(lexicon.by_lemma),
        "by_level": by_level,
        "by_pos": by_pos,
        "mwe_skipped": lexicon.mwe_skipped,
    }
