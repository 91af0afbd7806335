"""Gloss alignment pipeline.

For every ⟨word, PoS⟩ present in both the learner lexicon and WordNet,
every lexicon gloss is compared against every WordNet gloss on a
seven-point similarity scale (lower = more similar). Verdicts of 1 or 2
("exactly"/"almost the same meaning") transfer the lexicon sense's CEFR
level onto the WordNet sense; verdicts of 3 or above are mismatches and
contribute nothing. A sense matched by several lexicon senses can end up
carrying several levels.

Two judges ship: a remote chat-completion judge and a deterministic
offline lexical-overlap judge. The offline judge exists so the pipeline
is testable without network or cost; it is a CI substitute, not a
semantic one.
"""

from __future__ import annotations

import json
import logging
import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .cache import VerdictCache, verdict_key
from .chat import BackendError, ChatBackend
from .errors import LexiLevelError
from .evp import EvpLexicon, EvpSense
from .levels import CefrLevel, LemmaKey, PartOfSpeech
from .prompts import SIMILARITY_SYSTEM, render_similarity
from .wordnet import SynsetId, WnSense, WordNetStore

logger = logging.getLogger(__name__)

MATCH_SCORES = frozenset({1, 2})

# Fixed list of 50 English function words; fixed so the offline judge is
# stable across environments.
STOPWORDS = frozenset(
    """a about all an and are as at be been but by can did do does for from
    had has have he her his if in into is it its not of on or she so that
    the their them they this to was were will with you your when""".split()
)


class UnparseableVerdict(LexiLevelError):
    """A judge response contained no integer in the 1-7 range."""

    def __init__(self, raw_response: str):
        super().__init__(f"no 1-7 score in judge response: {raw_response!r}")
        self.raw_response = raw_response


@dataclass
class GlossPair:
    """One (lexicon gloss, WordNet gloss) comparison for a shared lemma."""

    word: LemmaKey
    evp: EvpSense
    wn: WnSense

    def __post_init__(self) -> None:
        if self.evp.lemma != self.word or self.wn.lemma != self.word:
            raise ValueError("gloss pair members must share one lemma")


@dataclass(frozen=True)
class SimilarityVerdict:
    """A judged 1-7 similarity score; lower means more similar."""

    score: int
    judge_id: str
    raw_response: str

    def __post_init__(self) -> None:
        if self.score not in range(1, 8):
            raise ValueError(f"similarity score out of range: {self.score!r}")


@dataclass(frozen=True)
class LevelAnnotation:
    """A CEFR level transferred onto one WordNet sense, with provenance."""

    synset: SynsetId
    lemma: LemmaKey
    sense_key: str
    level: CefrLevel
    evp_id: str
    score: int

    def __post_init__(self) -> None:
        if self.score not in MATCH_SCORES:
            raise ValueError(f"annotation provenance score must be 1 or 2, got {self.score}")


@dataclass
class SenseEntry:
    synset: SynsetId
    lemma: LemmaKey
    levels: dict[CefrLevel, list[tuple[str, int]]] = field(default_factory=dict)


@dataclass
class AnnotatedWordNet:
    """Level annotations indexed by sense key.

    Duplicate (sense, level) contributions merge into one entry whose
    provenance lists every (lexicon sense id, score) that produced it, so
    the distinct-pair count and the raw record count stay distinguishable.
    """

    entries: dict[str, SenseEntry] = field(default_factory=dict)

    def add(self, annotation: LevelAnnotation) -> None:
        entry = self.entries.get(annotation.sense_key)
        if entry is None:
            entry = SenseEntry(synset=annotation.synset, lemma=annotation.lemma)
            self.entries[annotation.sense_key] = entry
        provenance = entry.levels.setdefault(annotation.level, [])
        item = (annotation.evp_id, annotation.score)
        if item not in provenance:
            provenance.append(item)

    def levels_for(self, sense_key: str) -> set[CefrLevel]:
        entry = self.entries.get(sense_key)
        return set(entry.levels) if entry else set()

    @property
    def annotation_count(self) -> int:
        """Distinct (sense, level) pairs."""
        return sum(len(e.levels) for e in self.entries.values())

    @property
    def provenance_count(self) -> int:
        """Raw annotation records before (sense, level) deduplication."""
        return sum(len(p) for e in self.entries.values() for p in e.levels.values())

    @property
    def sense_count(self) -> int:
        return len(self.entries)

    @property
    def lemma_count(self) -> int:
        return len({e.lemma for e in self.entries.values()})

    def to_records(self) -> list[dict]:
        """Canonical serialization: one record per (sense key, level)."""
        records = []
        for sense_key in sorted(self.entries):
            entry = self.entries[sense_key]
            for level in sorted(entry.levels):
                provenance = sorted(entry.levels[level])
                records.append(
                    {
                        "sense_key": sense_key,
                        "lemma": entry.lemma.surface,
                        "pos": entry.lemma.pos.value,
                        "synset_offset": entry.synset.offset,
                        "level": level.name,
                        "provenance": [
                            {"evp_id": evp_id, "score": score} for evp_id, score in provenance
                        ],
                    }
                )
        return records

    @classmethod
    def from_records(cls, records: list[dict]) -> AnnotatedWordNet:
        annotated = cls()
        for record in records:
            pos = PartOfSpeech.from_text(record["pos"])
            lemma = LemmaKey(record["lemma"], pos)
            synset = SynsetId(record["synset_offset"], pos)
            for item in record["provenance"]:
                annotated.add(
                    LevelAnnotation(
                        synset=synset,
                        lemma=lemma,
                        sense_key=record["sense_key"],
                        level=CefrLevel[record["level"]],
                        evp_id=item["evp_id"],
                        score=item["score"],
                    )
                )
        return annotated


def enumerate_pairs(evp_senses: list[EvpSense], wn_senses: list[WnSense]) -> list[GlossPair]:
    """All m×n gloss pairs for one lemma, lexicon-major, WordNet-minor."""
    lemmas = {s.lemma for s in evp_senses} | {s.lemma for s in wn_senses}
    if len(lemmas) > 1:
        raise ValueError(f"senses span multiple lemmas: {sorted(lemmas)}")
    return [
        GlossPair(word=evp.lemma, evp=evp, wn=wn) for evp in evp_senses for wn in wn_senses
    ]


def _content_tokens(text: str) -> set[str]:
    return {t for t in re.findall(r"[a-z0-9]+", text.lower()) if t not in STOPWORDS}


def jaccard(a: set[str], b: set[str]) -> float:
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    return len(a & b) / len(a | b)


def offline_judge_score(gloss_a: str, gloss_b: str) -> int:
    """Deterministic 1-7 score from content-token overlap.

    score = 7 - round(6*J) with ties rounding half up, where J is the
    Jaccard similarity of lowercased content-token sets (stopwords
    removed). J=1 gives 1, J=0 gives 7; symmetric in its arguments.
    """
    similarity = jaccard(_content_tokens(gloss_a), _content_tokens(gloss_b))
    return 7 - int(6 * similarity + 0.5)


class SimilarityJudge:
    """Interface: rate one gloss pair on the 1-7 similarity scale."""

    judge_id: str

    def judge(self, pair: GlossPair) -> SimilarityVerdict:
        raise NotImplementedError


@dataclass
class OfflineJaccardJudge(SimilarityJudge):
    """Pure lexical-overlap judge; the pipeline's deterministic CI oracle."""

    judge_id: str = "offline-jaccard-v1"

    def judge(self, pair: GlossPair) -> SimilarityVerdict:
        overlap = jaccard(_content_tokens(pair.evp.gloss), _content_tokens(pair.wn.gloss))
        return SimilarityVerdict(
            score=7 - int(6 * overlap + 0.5),
            judge_id=self.judge_id,
            raw_response=f"jaccard={overlap:.6f}",
        )


def parse_verdict_score(text: str) -> int:
    """First integer in the response, which must lie in 1..7."""
    match = re.search(r"\d+", text)
    if match is None or not 1 <= int(match.group(0)) <= 7:
        raise UnparseableVerdict(text)
    return int(match.group(0))


@dataclass
class RemoteJudge(SimilarityJudge):
    """Chat-backed judge using the seven-point similarity prompt.

    The system message and prompt template are fixed; callers pin the
    backend's sampling temperature to zero for reproducible verdicts.
    """

    backend: ChatBackend
    judge_id: str = ""

    def __post_init__(self) -> None:
        if not self.judge_id:
            self.judge_id = getattr(self.backend, "model", "remote")

    def judge(self, pair: GlossPair) -> SimilarityVerdict:
        prompt = render_similarity(pair.word.surface, pair.evp.gloss, pair.wn.gloss)
        text = self.backend.complete(SIMILARITY_SYSTEM, prompt)
        return SimilarityVerdict(
            score=parse_verdict_score(text), judge_id=self.judge_id, raw_response=text
        )


def judge_pair(pair: GlossPair, judge: SimilarityJudge) -> SimilarityVerdict:
    return judge.judge(pair)


def transfer_levels(
    pairs: list[GlossPair], verdicts: list[SimilarityVerdict]
) -> list[LevelAnnotation]:
    """One annotation per matched pair (score 1 or 2); mismatches yield none."""
    if len(pairs) != len(verdicts):
        raise ValueError("pairs and verdicts must align one-to-one")
    annotations = []
    for pair, verdict in zip(pairs, verdicts):
        if verdict.score in MATCH_SCORES:
            annotations.append(
                LevelAnnotation(
                    synset=pair.wn.synset,
                    lemma=pair.wn.lemma,
                    sense_key=pair.wn.sense_key,
                    level=pair.evp.level,
                    evp_id=pair.evp.id,
                    score=verdict.score,
                )
            )
    return annotations


def shared_lemmas(lexicon: EvpLexicon, store: WordNetStore) -> list[LemmaKey]:
    """Lemmas present in both resources, in stable sorted order."""
    return sorted(set(lexicon.by_lemma) & set(store.senses))


def annotate_all(
    lexicon: EvpLexicon,
    store: WordNetStore,
    judge: SimilarityJudge,
    cache: VerdictCache,
    *,
    parallelism: int = 1,
    retry_budget: int = 2,
    lenient: bool = False,
    _sleep=time.sleep,
) -> AnnotatedWordNet:
    """Judge every gloss pair for every shared lemma and transfer levels.

    Every fresh verdict is persisted to the cache before use, so an
    interrupted run resumes where it stopped. The result is a canonical
    function of the verdicts alone: processing order, parallelism width,
    and cache state never change it. Transport errors are retried with
    exponential backoff up to ``retry_budget`` times, then propagated.
    With ``lenient`` set, unparseable verdicts degrade to mismatches
    (logged and counted) instead of failing the run.
    """
    if parallelism < 1:
        raise ValueError("parallelism must be >= 1")
    tasks = []
    for lemma in shared_lemmas(lexicon, store):
        for pair in enumerate_pairs(lexicon.by_lemma[lemma], store.senses[lemma]):
            tasks.append(pair)

    lenient_failures: list[str] = []  # list append is atomic under threads

    def resolve(pair: GlossPair) -> tuple[GlossPair, SimilarityVerdict | None]:
        prompt = render_similarity(pair.word.surface, pair.evp.gloss, pair.wn.gloss)
        key = verdict_key(judge.judge_id, prompt)
        cached = cache.get(key)
        if cached is not None:
            return pair, cached
        attempt = 0
        while True:
            try:
                verdict = judge.judge(pair)
                break
            except UnparseableVerdict:
                if not lenient:
                    raise
                lenient_failures.append(pair.wn.sense_key)
                logger.warning(
                    "unparseable verdict for %r pair (%s, %s); treating as mismatch",
                    pair.word.surface,
                    pair.evp.id,
                    pair.wn.sense_key,
                )
                return pair, None
            except BackendError:
                if attempt >= retry_budget:
                    raise
                _sleep(0.5 * (2**attempt))
                attempt += 1
        cache.put(key, verdict)
        return pair, verdict

    if parallelism == 1:
        resolved = [resolve(pair) for pair in tasks]
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            resolved = list(pool.map(resolve, tasks))

    judged_pairs = [pair for pair, verdict in resolved if verdict is not None]
    verdicts = [verdict for _, verdict in resolved if verdict is not None]
    annotated = AnnotatedWordNet()
    for annotation in transfer_levels(judged_pairs, verdicts):
        annotated.add(annotation)
    if lenient_failures:
        logger.warning("%d unparseable verdicts degraded to mismatches", len(lenient_failures))
    return annotated


def annotation_summary(annotated: AnnotatedWordNet) -> dict[PartOfSpeech, dict[CefrLevel, int]]:
    """Distinct (sense, level) counts per PoS and level."""
    counts = {pos: {level: 0 for level in CefrLevel} for pos in PartOfSpeech}
    for entry in annotated.entries.values():
        for level in entry.levels:
            counts[entry.lemma.pos][level] += 1
    return counts


def write_annotations(annotated: AnnotatedWordNet, path: str) -> None:
    """One JSON line per (sense key, level), in canonical order."""
    with open(path, "w", encoding="utf-8") as handle:
        for record in annotated.to_records():
            handle.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")


def load_annotations(path: str) -> AnnotatedWordNet:
    records = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    return AnnotatedWordNet.from_records(records)


def format_summary(annotated: AnnotatedWordNet) -> str:
    """PoS-by-level count table with totals and percentage shares."""
    counts = annotation_summary(annotated)
    level_totals = {level: 0 for level in CefrLevel}
    rows = []
    grand_total = 0
    for pos in PartOfSpeech:
        row_counts = [counts[pos][level] for level in CefrLevel]
        for level, n in zip(CefrLevel, row_counts):
            level_totals[level] += n
        grand_total += sum(row_counts)
        rows.append((pos.value, row_counts))

    def share(n: int) -> str:
        return f"{100.0 * n / grand_total:.2f}" if grand_total else "0.00"

    header = ["pos", *(level.name for level in CefrLevel), "total", "share_pct"]
    lines = ["\t".join(header)]
    for name, row_counts in rows:
        total = sum(row_counts)
        lines.append("\t".join([name, *map(str, row_counts), str(total), share(total)]))
    totals = [level_totals[level] for level in CefrLevel]
    lines.append("\t".join(["total", *map(str, totals), str(grand_total), share(grand_total)]))
    lines.append("\t".join(["share_pct", *(share(n) for n in totals), share(grand_total), ""]))
    return "\n".join(lines) + "\n"


def write_summary_tsv(annotated: AnnotatedWordNet, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(format_summary(annotated))
