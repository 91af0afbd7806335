"""Shared helpers for building in-memory fixtures and independent oracles.

The oracle functions here deliberately reimplement the pinned formulas
from scratch (own tokenizer, own stopword copy, own rounding) so tests
check the library against an independent computation path, not against
itself.
"""

from __future__ import annotations

import math
import re

from lexilevel.align import AnnotatedWordNet, GlossPair, LevelAnnotation
from lexilevel.evp import EvpLexicon, EvpSense
from lexilevel.levels import CefrLevel, LemmaKey, PartOfSpeech
from lexilevel.wordnet import SynsetId, WnSense, WordNetStore

# Frozen copy of the offline judge's stopword list; a drift in the
# package list should fail the oracle comparison, not silently follow it.
ORACLE_STOPWORDS = frozenset(
    """a about all an and are as at be been but by can did do does for from
    had has have he her his if in into is it its not of on or she so that
    the their them they this to was were will with you your when""".split()
)


def oracle_tokens(text: str) -> set[str]:
    return {t for t in re.findall(r"[a-z0-9]+", text.lower()) if t not in ORACLE_STOPWORDS}


def oracle_offline_score(gloss_a: str, gloss_b: str) -> int:
    a, b = oracle_tokens(gloss_a), oracle_tokens(gloss_b)
    if not a and not b:
        similarity = 1.0
    elif not a or not b:
        similarity = 0.0
    else:
        similarity = len(a & b) / len(a | b)
    return 7 - math.floor(6 * similarity + 0.5)


def make_evp_sense(
    sense_id: str,
    surface: str,
    pos: PartOfSpeech,
    level: CefrLevel,
    gloss: str,
    examples: tuple[str, ...] = (),
) -> EvpSense:
    return EvpSense(
        id=sense_id, lemma=LemmaKey(surface, pos), level=level, gloss=gloss, examples=examples
    )


def make_wn_sense(
    surface: str, pos: PartOfSpeech, offset: int, gloss: str, sense_key: str | None = None
) -> WnSense:
    lemma = LemmaKey(surface, pos)
    return WnSense(
        lemma=lemma,
        synset=SynsetId(offset, pos),
        gloss=gloss,
        sense_key=sense_key or f"{surface}%{_SS_TYPE[pos]}:00:{offset % 100:02d}::",
        relations={},
    )


_SS_TYPE = {
    PartOfSpeech.NOUN: 1,
    PartOfSpeech.VERB: 2,
    PartOfSpeech.ADJECTIVE: 3,
    PartOfSpeech.ADVERB: 4,
}


def make_store(senses: list[WnSense]) -> WordNetStore:
    store = WordNetStore()
    for sense in senses:
        store.senses.setdefault(sense.lemma, []).append(sense)
        store.sense_index[sense.sense_key] = (sense.synset, sense.lemma)
    return store


def make_lexicon(senses: list[EvpSense]) -> EvpLexicon:
    return EvpLexicon.from_senses(senses)


def oracle_annotate(lexicon: EvpLexicon, store: WordNetStore) -> AnnotatedWordNet:
    """Brute-force re-derivation of the offline annotation output."""
    annotated = AnnotatedWordNet()
    for lemma in set(lexicon.by_lemma) & set(store.senses):
        for evp in lexicon.by_lemma[lemma]:
            for wn in store.senses[lemma]:
                score = oracle_offline_score(evp.gloss, wn.gloss)
                if score <= 2:
                    annotated.add(
                        LevelAnnotation(
                            synset=wn.synset,
                            lemma=wn.lemma,
                            sense_key=wn.sense_key,
                            level=evp.level,
                            evp_id=evp.id,
                            score=score,
                        )
                    )
    return annotated


class CountingJudge:
    """Wraps a judge and counts invocations (for pair-count invariants)."""

    def __init__(self, inner):
        self.inner = inner
        self.judge_id = inner.judge_id
        self.calls = 0

    def judge(self, pair: GlossPair):
        self.calls += 1
        return self.inner.judge(pair)


# ------------------------------------------------- metric oracles (tests)


def oracle_counts(gold, pred):
    """O(n*k) counting oracle over plain dicts."""
    counts = {g: {p: 0 for p in CefrLevel} for g in CefrLevel}
    for g, p in zip(gold, pred):
        counts[g][p] += 1
    return counts


def oracle_score(gold, pred):
    counts = oracle_counts(gold, pred)
    f1 = {}
    for level in CefrLevel:
        tp = counts[level][level]
        fp = sum(counts[g][level] for g in CefrLevel) - tp
        fn = sum(counts[level][p] for p in CefrLevel) - tp
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1[level] = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    macro = sum(f1[level] for level in CefrLevel) / 6
    micro = sum(counts[level][level] for level in CefrLevel) / len(gold)
    return f1, macro, micro


def oracle_rank(values):
    """O(n^2) average ranks: 1 + (# smaller) + (# equal - 1) / 2."""
    ranks = []
    for v in values:
        smaller = sum(1 for u in values if u < v)
        equal = sum(1 for u in values if u == v)
        ranks.append(1 + smaller + (equal - 1) / 2)
    return ranks


def oracle_spearman(x, y):
    """Rank with average ties, then Pearson, all from first principles."""
    rx, ry = oracle_rank(x), oracle_rank(y)
    n = len(rx)
    mean_x = sum(rx) / n
    mean_y = sum(ry) / n
    cov = sum((a - mean_x) * (b - mean_y) for a, b in zip(rx, ry))
    var_x = sum((a - mean_x) ** 2 for a in rx)
    var_y = sum((b - mean_y) ** 2 for b in ry)
    return cov / math.sqrt(var_x * var_y)
