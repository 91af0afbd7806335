"""Reader for WordNet 3.0 database files.

Parses the standard ``index.{noun,verb,adj,adv}``, ``data.{noun,verb,adj,adv}``
and ``index.sense`` ASCII files into an immutable in-memory store keyed by
lemma, synset id, and sense key. Multiword lemmas (underscore in the index)
are parsed but dropped at indexing time; the synsets themselves remain
available so relation links stay intact.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field

from .errors import FormatError, LexiLevelError, MissingFile
from .levels import LemmaKey, PartOfSpeech

RELATION_KINDS = ("hypernym", "hyponym", "antonym", "synonym")

# Data-file pointer symbols for the relations the store indexes. Instance
# hypernyms/hyponyms (@i, ~i) fold into their plain counterparts.
_POINTER_KINDS = {
    "@": "hypernym",
    "@i": "hypernym",
    "~": "hyponym",
    "~i": "hyponym",
    "!": "antonym",
}

_FILE_SUFFIX = {
    PartOfSpeech.NOUN: "noun",
    PartOfSpeech.VERB: "verb",
    PartOfSpeech.ADJECTIVE: "adj",
    PartOfSpeech.ADVERB: "adv",
}


class UnknownSenseKey(LexiLevelError):
    def __init__(self, sense_key: str):
        super().__init__(f"unknown sense key: {sense_key!r}")
        self.sense_key = sense_key


class UnknownSynset(LexiLevelError):
    def __init__(self, synset: SynsetId):
        super().__init__(f"unknown synset: {synset}")
        self.synset = synset


@dataclass(frozen=True, order=True)
class SynsetId:
    """Identifier of one synset: data-file byte offset plus part of speech."""

    offset: int
    pos: PartOfSpeech

    def __str__(self) -> str:
        return f"{self.offset:08d}-{_FILE_SUFFIX[self.pos]}"


@dataclass(frozen=True)
class Synset:
    """One parsed data-file record."""

    id: SynsetId
    words: tuple[str, ...]
    gloss: str
    examples: tuple[str, ...]
    relations: dict[str, tuple[SynsetId, ...]]


@dataclass(frozen=True)
class WnSense:
    """One lemma's membership in one synset, with its definition gloss."""

    lemma: LemmaKey
    synset: SynsetId
    gloss: str
    sense_key: str
    relations: dict[str, tuple[SynsetId, ...]]


@dataclass
class WordNetStore:
    """Immutable-after-load index over a WordNet release."""

    senses: dict[LemmaKey, list[WnSense]] = field(default_factory=dict)
    synsets: dict[SynsetId, Synset] = field(default_factory=dict)
    sense_index: dict[str, tuple[SynsetId, LemmaKey]] = field(default_factory=dict)

    def lemmas(self) -> list[LemmaKey]:
        return list(self.senses)


def _required_files(directory: str) -> list[str]:
    names = [f"index.{s}" for s in _FILE_SUFFIX.values()]
    names += [f"data.{s}" for s in _FILE_SUFFIX.values()]
    names.append("index.sense")
    return [os.path.join(directory, n) for n in names]


def _data_lines(path: str):
    """Yield (lineno, line) skipping the license header and blank lines.

    Header lines in the official distribution begin with whitespace.
    """
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip() or line[0].isspace():
                continue
            yield lineno, line.rstrip("\n")


def _split_gloss(raw: str) -> tuple[str, tuple[str, ...]]:
    """Split a gloss into its definition and quoted example sentences."""
    quote = raw.find('"')
    definition = raw if quote < 0 else raw[:quote]
    definition = definition.strip().rstrip(";").strip()
    examples = tuple(re.findall(r'"([^"]*)"', raw))
    return definition, examples


def _parse_data_file(path: str, pos: PartOfSpeech, synsets: dict[SynsetId, Synset]) -> None:
    filename = os.path.basename(path)
    for lineno, line in _data_lines(path):
        head, sep, gloss_raw = line.partition("|")
        if not sep:
            raise FormatError(filename, lineno, "no gloss delimiter '|'")
        fields = head.split()
        try:
            offset = int(fields[0])
            ss_type = fields[2]
            PartOfSpeech.from_wordnet_tag(ss_type)
            w_cnt = int(fields[3], 16)
            words = tuple(fields[4 + 2 * i] for i in range(w_cnt))
            cursor = 4 + 2 * w_cnt
            p_cnt = int(fields[cursor])
            cursor += 1
            pointers: list[tuple[str, SynsetId]] = []
            for _ in range(p_cnt):
                symbol, tgt_offset, tgt_pos, _src_tgt = fields[cursor : cursor + 4]
                cursor += 4
                target = SynsetId(int(tgt_offset), PartOfSpeech.from_wordnet_tag(tgt_pos))
                pointers.append((symbol, target))
        except (IndexError, ValueError) as exc:
            raise FormatError(filename, lineno, f"malformed synset record: {exc}") from None
        definition, examples = _split_gloss(gloss_raw)
        if not definition:
            raise FormatError(filename, lineno, "empty gloss definition")
        relations: dict[str, list[SynsetId]] = {}
        for symbol, target in pointers:
            kind = _POINTER_KINDS.get(symbol)
            if kind is not None:
                relations.setdefault(kind, []).append(target)
        sid = SynsetId(offset, pos)
        synsets[sid] = Synset(
            id=sid,
            words=words,
            gloss=definition,
            examples=examples,
            relations={k: tuple(v) for k, v in relations.items()},
        )


def _parse_index_file(
    path: str,
    pos: PartOfSpeech,
    synsets: dict[SynsetId, Synset],
) -> dict[LemmaKey, list[SynsetId]]:
    filename = os.path.basename(path)
    entries: dict[LemmaKey, list[SynsetId]] = {}
    for lineno, line in _data_lines(path):
        fields = line.split()
        try:
            lemma_raw = fields[0]
            synset_cnt = int(fields[2])
            p_cnt = int(fields[3])
            cursor = 4 + p_cnt  # skip the pointer-symbol summary
            cursor += 2  # sense_cnt, tagsense_cnt
            offsets = [int(x) for x in fields[cursor : cursor + synset_cnt]]
            if len(offsets) != synset_cnt:
                raise ValueError("offset count mismatch")
        except (IndexError, ValueError) as exc:
            raise FormatError(filename, lineno, f"malformed index record: {exc}") from None
        if "_" in lemma_raw:
            continue  # MWE lemma: parsed, not indexed
        key = LemmaKey(lemma_raw.lower(), pos)
        ids = []
        for offset in offsets:
            sid = SynsetId(offset, pos)
            if sid not in synsets:
                raise FormatError(filename, lineno, f"index references unknown synset {offset:08d}")
            ids.append(sid)
        entries[key] = ids
    return entries


_SENSE_KEY = re.compile(r"^([^%]+)%([1-5]):\d{2}:\d{2}:[^:]*:(?:\d{2})?$")


def _parse_sense_index(path: str) -> list[tuple[int, str, str, int, int]]:
    """Return (lineno, key, lemma, ss_type, offset) for each index.sense line."""
    filename = os.path.basename(path)
    rows = []
    for lineno, line in _data_lines(path):
        fields = line.split()
        if len(fields) != 4:
            raise FormatError(filename, lineno, "expected 4 fields in sense index")
        key = fields[0]
        match = _SENSE_KEY.match(key)
        if match is None:
            raise FormatError(filename, lineno, f"malformed sense key {key!r}")
        try:
            offset = int(fields[1])
        except ValueError:
            raise FormatError(filename, lineno, "bad synset offset") from None
        rows.append((lineno, key, match.group(1), int(match.group(2)), offset))
    return rows


def load_wordnet(directory: str) -> WordNetStore:
    """Load a WordNet 3.0 database directory into a store.

    Raises :class:`MissingFile` when a required file is absent and
    :class:`FormatError` (with file and line) on malformed records.
    """
    if not os.path.isdir(directory):
        raise MissingFile(directory)
    paths = _required_files(directory)
    for path in paths:
        if not os.path.isfile(path):
            raise MissingFile(path)

    store = WordNetStore()
    for pos, suffix in _FILE_SUFFIX.items():
        _parse_data_file(os.path.join(directory, f"data.{suffix}"), pos, store.synsets)

    index_entries: dict[LemmaKey, list[SynsetId]] = {}
    for pos, suffix in _FILE_SUFFIX.items():
        entries = _parse_index_file(os.path.join(directory, f"index.{suffix}"), pos, store.synsets)
        index_entries.update(entries)

    keyed: dict[tuple[LemmaKey, SynsetId], str] = {}
    for lineno, sense_key, lemma_raw, ss_type, offset in _parse_sense_index(
        os.path.join(directory, "index.sense")
    ):
        if "_" in lemma_raw:
            continue  # MWE sense keys are not indexed
        pos = PartOfSpeech.from_sense_type(ss_type)
        lemma = LemmaKey(lemma_raw.lower(), pos)
        sid = SynsetId(offset, pos)
        if lemma not in index_entries or sid not in index_entries[lemma]:
            raise FormatError(
                "index.sense", lineno, f"sense key {sense_key!r} has no indexed sense"
            )
        keyed[(lemma, sid)] = sense_key
        store.sense_index[sense_key] = (sid, lemma)

    for lemma, ids in index_entries.items():
        sense_list = []
        for sid in ids:
            sense_key = keyed.get((lemma, sid))
            if sense_key is None:
                raise FormatError(
                    "index.sense", 0, f"no sense key for {lemma.surface}/{sid}"
                )
            synset = store.synsets[sid]
            sense_list.append(
                WnSense(
                    lemma=lemma,
                    synset=sid,
                    gloss=synset.gloss,
                    sense_key=sense_key,
                    relations=synset.relations,
                )
            )
        store.senses[lemma] = sense_list

    return store


def glosses_for(store: WordNetStore, key: LemmaKey) -> list[tuple[SynsetId, str]]:
    """All (synset, definition gloss) pairs for a lemma, in index sense order.

    Unknown lemmas yield an empty list, not an error.
    """
    return [(s.synset, s.gloss) for s in store.senses.get(key, [])]


def senses_for(store: WordNetStore, key: LemmaKey) -> list[WnSense]:
    return list(store.senses.get(key, []))


def resolve_sense_key(store: WordNetStore, sense_key: str) -> tuple[SynsetId, LemmaKey]:
    """Resolve a sense key to its (synset, lemma); MWE keys are not indexed."""
    try:
        return store.sense_index[sense_key]
    except KeyError:
        raise UnknownSenseKey(sense_key) from None


def neighbors(store: WordNetStore, synset: SynsetId, kind: str) -> list[SynsetId]:
    """Related synsets of one kind: hypernym, hyponym, antonym, or synonym.

    Synonymy is synset co-membership, so the synonym neighborhood of a
    synset is the synset itself; use :func:`synset_words` for its members.
    """
    if kind not in RELATION_KINDS:
        raise ValueError(f"unknown relation kind: {kind!r}")
    entry = store.synsets.get(synset)
    if entry is None:
        raise UnknownSynset(synset)
    if kind == "synonym":
        return [synset]
    return list(entry.relations.get(kind, ()))


def synset_words(store: WordNetStore, synset: SynsetId) -> tuple[str, ...]:
    """Member words of a synset as written in the data file."""
    entry = store.synsets.get(synset)
    if entry is None:
        raise UnknownSynset(synset)
    return entry.words
