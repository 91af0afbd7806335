"""Level vocabulary and lexicon ingestion.

Walks through the shared domain types: the six ordered CEFR levels, level
token parsing from free-form model output, single-word lemma
normalization, and loading a leveled lexicon TSV into a knowledge base.
"""

import json
import os
import tempfile

from lexilevel import (
    CefrLevel,
    PartOfSpeech,
    build_kb,
    level_to_int,
    load_evp,
    normalize_lemma,
    parse_level,
)

# --- The six levels form a total order and map onto the integers 1..6.

print("levels:", [level.name for level in CefrLevel])
print("as integers:", [level_to_int(level) for level in CefrLevel])
print("A2 < B1:", CefrLevel.A2 < CefrLevel.B1)

# --- parse_level pulls the first well-formed token out of model chatter.
# Tokens embedded in longer alphanumeric runs never match.

for reply in ["B2", " c1.\n", "The level is A2, I think.", "A1B is not a level"]:
    try:
        print(f"parse_level({reply!r:35}) -> {parse_level(reply).name}")
    except Exception as exc:
        print(f"parse_level({reply!r:35}) -> {type(exc).__name__}")

# --- Lemma normalization enforces the single-word scope: multiword
# entries come back as None (a value, not an error) so loaders can skip
# and count them.

for raw in ["Bank", "  run ", "credit_card", "give up"]:
    print(f"normalize_lemma({raw!r:14}) ->", normalize_lemma(raw, PartOfSpeech.NOUN))

# --- A leveled lexicon ships as a TSV: id, lemma, pos, level, gloss, and
# a JSON array of example sentences. Users export their own file; this
# demo fabricates a tiny one.

rows = [
    ("d1", "dog", "noun", "A1", "a domesticated animal that barks", ["The dog barked."]),
    ("d2", "bank", "noun", "A1", "a place that keeps money", ["I went to the bank."]),
    ("d3", "bank", "noun", "B2", "raised land along a river", ["We sat on the bank."]),
    ("d4", "entity", "noun", "C2", "something with separate existence", ["A legal entity."]),
]
with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "lexicon.tsv")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("id\tlemma\tpos\tlevel\tgloss\texamples\n")
        for r in rows:
            fh.write("\t".join([*r[:5], json.dumps(r[5])]) + "\n")
    lexicon = load_evp(path)
    print(f"\nloaded {len(lexicon)} senses, {lexicon.mwe_skipped} multiword rows skipped")

    # The knowledge base keeps only words whose senses all share one
    # level, so "bank" (A1 and B2) stays out.
    kb = build_kb(lexicon)
    for word in ["dog", "bank", "entity"]:
        print(f"kb.lookup({word!r}) ->", kb.lookup(word))
