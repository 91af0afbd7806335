"""The alignment pipeline, end to end.

For each word present in both resources, every (lexicon gloss, WordNet
gloss) pair is judged on a seven-point similarity scale where lower means
more similar. Scores of 1 or 2 transfer the lexicon sense's CEFR level
onto the WordNet sense. This demo runs the deterministic offline judge;
swap in RemoteJudge for a real model.
"""

import tempfile

from lexilevel import (
    CefrLevel,
    EvpLexicon,
    EvpSense,
    LemmaKey,
    OfflineJaccardJudge,
    PartOfSpeech,
    SynsetId,
    VerdictCache,
    WnSense,
    WordNetStore,
    annotate_all,
    enumerate_pairs,
    offline_judge_score,
)
from lexilevel.align import format_summary

NOUN = PartOfSpeech.NOUN
VERB = PartOfSpeech.VERB


def wn_sense(word, pos, offset, gloss, key):
    return WnSense(
        lemma=LemmaKey(word, pos), synset=SynsetId(offset, pos), gloss=gloss,
        sense_key=key, relations={},
    )


# --- Two resources sharing the lemmas "run" (verb) and "bank" (noun).

lexicon = EvpLexicon.from_senses([
    EvpSense("r1", LemmaKey("run", VERB), CefrLevel.A1, "to move fast on foot"),
    EvpSense("r2", LemmaKey("run", VERB), CefrLevel.B1, "to move fast on foot in a race"),
    EvpSense("b1", LemmaKey("bank", NOUN), CefrLevel.A1, "a place that keeps and lends money"),
])
store = WordNetStore()
for sense in [
    wn_sense("run", VERB, 1926311, "move fast on foot", "run%2:38:00::"),
    wn_sense("bank", NOUN, 8420278, "a place that keeps and lends money", "bank%1:14:00::"),
    wn_sense("bank", NOUN, 9217230, "sloping land beside a body of water", "bank%1:17:00::"),
]:
    store.senses.setdefault(sense.lemma, []).append(sense)
    store.sense_index[sense.sense_key] = (sense.synset, sense.lemma)

# --- Pair enumeration is an m x n cartesian product per word.

pairs = enumerate_pairs(lexicon.by_lemma[LemmaKey("bank", NOUN)], store.senses[LemmaKey("bank", NOUN)])
print(f"bank/noun: m=1 lexicon gloss x n=2 WordNet glosses -> {len(pairs)} pairs")

# --- The offline judge scores by content-token overlap: identical token
# sets score 1, disjoint ones 7.

print("identical glosses ->", offline_judge_score("move fast on foot", "to move fast on foot"))
print("related glosses   ->", offline_judge_score("move fast on foot", "move fast on foot in a race"))
print("unrelated glosses ->", offline_judge_score("move fast on foot", "sloping land beside water"))

# --- The full pipeline: judged pairs with scores <= 2 yield annotations.
# Verdicts persist in a cache, so reruns make zero judge calls.

with tempfile.NamedTemporaryFile(suffix=".jsonl") as cache_file:
    cache = VerdictCache.open(cache_file.name)
    annotated = annotate_all(lexicon, store, OfflineJaccardJudge(), cache)
    print(f"\nfirst run: {cache.misses} judge calls, {annotated.annotation_count} annotations")

    warm = VerdictCache.open(cache_file.name)
    annotate_all(lexicon, store, OfflineJaccardJudge(), warm)
    print(f"second run: {warm.misses} judge calls (all {warm.hits} verdicts cached)")

# The run verb picked up BOTH levels: its one WordNet sense matched two
# lexicon senses of different levels (a granularity mismatch the
# seven-point scale is designed to tolerate).
print("\nrun%2:38:00:: carries:", sorted(l.name for l in annotated.levels_for("run%2:38:00::")))
print("bank money sense:     ", sorted(l.name for l in annotated.levels_for("bank%1:14:00::")))
print("bank river sense:     ", sorted(l.name for l in annotated.levels_for("bank%1:17:00::")))

print("\nPoS x level summary:")
print(format_summary(annotated))
