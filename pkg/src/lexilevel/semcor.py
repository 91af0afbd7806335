"""SemCor reader and level-annotated corpus construction.

Reads the WSD-evaluation-framework distribution of SemCor: an XML file of
sentences whose content words are either plain word forms or sense-tagged
``instance`` elements, plus a gold key file mapping instance ids to
WordNet sense keys. Instances are joined onto an annotated WordNet to
produce word-in-context training examples, one per distinct level on the
instance's sense.
"""

from __future__ import annotations

import json
import os
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .align import AnnotatedWordNet
from .errors import FormatError, LexiLevelError
from .evp import EvpLexicon
from .levels import CefrLevel, LemmaKey, PartOfSpeech, normalize_lemma

CORPUS_SOURCES = ("semcor", "evp_example")


class DanglingKey(LexiLevelError):
    """An instance id in the XML has no entry in the gold key file."""

    def __init__(self, instance_id: str):
        super().__init__(f"instance {instance_id!r} missing from key file")
        self.instance_id = instance_id


@dataclass(frozen=True)
class SemcorInstance:
    """One sense-tagged target word in its sentence."""

    instance_id: str
    sentence: str
    target_surface: str
    target_index: int
    lemma: LemmaKey
    sense_key: str
    document_id: str


@dataclass
class SemcorLoad:
    """Parsed instances plus the skip/fallback counters the parse produced."""

    instances: list[SemcorInstance] = field(default_factory=list)
    mwe_skipped: int = 0
    multi_key: int = 0

    def __len__(self) -> int:
        return len(self.instances)


@dataclass(frozen=True)
class CorpusExample:
    """One target-word-in-sentence training/evaluation unit."""

    word: str
    sentence: str
    pos: PartOfSpeech
    sense_key: str
    level: CefrLevel
    source: str

    def __post_init__(self) -> None:
        if self.source not in CORPUS_SOURCES:
            raise ValueError(f"unknown corpus source: {self.source!r}")
        if not _occurs_in(self.word, self.sentence):
            raise ValueError(f"word {self.word!r} does not occur in its sentence")


def _occurs_in(word: str, sentence: str) -> bool:
    # Lookarounds rather than \b so surfaces with non-word edge characters
    # (quotes, hyphens) still match as standalone tokens.
    pattern = rf"(?<!\w){re.escape(word)}(?!\w)"
    return re.search(pattern, sentence, re.IGNORECASE) is not None


_SENSE_KEY_TYPE = re.compile(r"^[^%]+%([1-5]):")


def _pos_of_sense_key(sense_key: str) -> PartOfSpeech | None:
    match = _SENSE_KEY_TYPE.match(sense_key)
    if match is None:
        return None
    return PartOfSpeech.from_sense_type(int(match.group(1)))


def _read_gold_keys(path: str) -> dict[str, tuple[list[str], int]]:
    """Map instance id -> (sense keys, line number)."""
    filename = os.path.basename(path)
    keys: dict[str, tuple[list[str], int]] = {}
    with open(path, encoding="utf-8-sig") as handle:
        for lineno, line in enumerate(handle, start=1):
            fields = line.split()
            if not fields:
                continue
            if len(fields) < 2:
                raise FormatError(filename, lineno, "expected instance id and at least one key")
            keys[fields[0]] = (fields[1:], lineno)
    return keys


def load_semcor(xml_path: str, goldkeys_path: str) -> SemcorLoad:
    """Parse SemCor into instances, one per (instance, first sense key).

    Multiword instances (underscore in the lemma) are skipped and counted;
    instances with several gold keys use the first and are counted. An
    instance with no key-file entry raises :class:`DanglingKey`.
    """
    xml_name = os.path.basename(xml_path)
    key_name = os.path.basename(goldkeys_path)
    gold_keys = _read_gold_keys(goldkeys_path)
    result = SemcorLoad()

    document_id = ""
    try:
        for event, element in ET.iterparse(xml_path, events=("start", "end")):
            if event == "start":
                if element.tag == "text":
                    document_id = element.get("id", "")
                continue
            if element.tag != "sentence":
                continue
            tokens: list[str] = []
            targets: list[tuple[str, str, int, str]] = []  # id, lemma attr, index, surface
            for child in element:
                if child.tag not in ("wf", "instance"):
                    continue
                surface = (child.text or "").strip()
                if not surface:
                    raise FormatError(xml_name, 0, f"empty token in sentence {element.get('id')!r}")
                index = len(tokens)
                tokens.append(surface)
                if child.tag == "instance":
                    instance_id = child.get("id")
                    if not instance_id:
                        raise FormatError(xml_name, 0, "instance element without id")
                    targets.append((instance_id, child.get("lemma", ""), index, surface))
            sentence = " ".join(tokens)
            for instance_id, lemma_attr, index, surface in targets:
                if instance_id not in gold_keys:
                    raise DanglingKey(instance_id)
                keys, key_line = gold_keys[instance_id]
                if len(keys) > 1:
                    result.multi_key += 1
                sense_key = keys[0]
                pos = _pos_of_sense_key(sense_key)
                if pos is None:
                    raise FormatError(key_name, key_line, f"malformed sense key {sense_key!r}")
                lemma = normalize_lemma(lemma_attr, pos)
                if lemma is None:
                    result.mwe_skipped += 1
                    continue
                result.instances.append(
                    SemcorInstance(
                        instance_id=instance_id,
                        sentence=sentence,
                        target_surface=surface,
                        target_index=index,
                        lemma=lemma,
                        sense_key=sense_key,
                        document_id=document_id,
                    )
                )
            element.clear()
    except ET.ParseError as exc:
        line = exc.position[0] if exc.position else 0
        raise FormatError(xml_name, line, f"XML parse error: {exc}") from None
    return result


def build_corpus(
    instances: list[SemcorInstance], annotations: AnnotatedWordNet
) -> list[CorpusExample]:
    """One example per (instance, distinct level on its sense).

    Instances whose sense carries no annotation are dropped. Output order
    is deterministic: instance order, then ascending level.
    """
    corpus = []
    for instance in instances:
        for level in sorted(annotations.levels_for(instance.sense_key)):
            corpus.append(
                CorpusExample(
                    word=instance.target_surface,
                    sentence=instance.sentence,
                    pos=instance.lemma.pos,
                    sense_key=instance.sense_key,
                    level=level,
                    source="semcor",
                )
            )
    return corpus


def evp_examples_to_corpus(lexicon: EvpLexicon) -> tuple[list[CorpusExample], int]:
    """Render lexicon example sentences into corpus examples.

    Examples that do not contain the headword are skipped; the second
    return value counts them.
    """
    corpus = []
    skipped = 0
    for sense in lexicon.senses:
        for sentence in sense.examples:
            if not _occurs_in(sense.lemma.surface, sentence):
                skipped += 1
                continue
            corpus.append(
                CorpusExample(
                    word=sense.lemma.surface,
                    sentence=sentence,
                    pos=sense.lemma.pos,
                    sense_key=sense.id,
                    level=sense.level,
                    source="evp_example",
                )
            )
    return corpus, skipped


@dataclass
class CorpusStats:
    """Word-type and word-instance counts per level, plus totals."""

    types: dict[CefrLevel, int]
    words: dict[CefrLevel, int]

    @property
    def total_types(self) -> int:
        return sum(self.types.values())

    @property
    def total_words(self) -> int:
        return sum(self.words.values())

    def to_tsv(self) -> str:
        lines = ["level\ttypes\twords"]
        for level in CefrLevel:
            lines.append(f"{level.name}\t{self.types[level]}\t{self.words[level]}")
        lines.append(f"total\t{self.total_types}\t{self.total_words}")
        return "\n".join(lines) + "\n"


def corpus_stats(corpus: list[CorpusExample]) -> CorpusStats:
    """#words counts examples; #types counts distinct lowercase forms per level."""
    forms: dict[CefrLevel, set[str]] = {level: set() for level in CefrLevel}
    words = {level: 0 for level in CefrLevel}
    for example in corpus:
        forms[example.level].add(example.word.lower())
        words[example.level] += 1
    return CorpusStats(types={lv: len(forms[lv]) for lv in CefrLevel}, words=words)


def write_corpus(corpus: list[CorpusExample], path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for example in corpus:
            record = {
                "word": example.word,
                "sentence": example.sentence,
                "pos": example.pos.value,
                "sense_key": example.sense_key,
                "level": example.level.name,
                "source": example.source,
            }
            handle.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")


def load_corpus(path: str) -> list[CorpusExample]:
    corpus = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            corpus.append(
                CorpusExample(
                    word=record["word"],
                    sentence=record["sentence"],
                    pos=PartOfSpeech.from_text(record["pos"]),
                    sense_key=record["sense_key"],
                    level=CefrLevel[record["level"]],
                    source=record["source"],
                )
            )
    return corpus
