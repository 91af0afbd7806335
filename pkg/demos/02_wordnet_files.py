"""Reading WordNet database files.

Builds a three-synset database in the standard on-disk format (index
files, data files, and the sense index), loads it, and walks the lemma,
gloss, sense-key, and relation surfaces. Point load_wordnet at a real
WordNet 3.0 ``dict`` directory for the full experience.
"""

import os
import tempfile

from lexilevel import (
    LemmaKey,
    PartOfSpeech,
    SynsetId,
    glosses_for,
    load_wordnet,
    neighbors,
    resolve_sense_key,
    synset_words,
)

NOUN = PartOfSpeech.NOUN

# --- A minimal but format-correct database: animal with two hyponyms.
# Gloss text follows the '|' delimiter; quoted sentences are examples and
# are stripped from the definition at load time.

DATA_NOUN = """\
00015388 05 n 02 animal 0 creature 1 002 ~ 02084071 n 0000 ~ 02121620 n 0000 | a living organism that can move; "the animal stirred"
02084071 05 n 01 dog 0 001 @ 00015388 n 0000 | a domesticated animal that barks; "the dog barked all night"
02121620 05 n 01 cat 0 001 @ 00015388 n 0000 | a small furry animal kept as a pet
"""
INDEX_NOUN = """\
animal n 1 2 @ ~ 1 1 00015388
cat n 1 1 @ 1 1 02121620
creature n 1 2 @ ~ 1 0 00015388
dog n 1 1 @ 1 1 02084071
"""
INDEX_SENSE = """\
animal%1:05:00:: 00015388 1 20
cat%1:05:00:: 02121620 1 8
creature%1:05:01:: 00015388 1 0
dog%1:05:00:: 02084071 1 12
"""

with tempfile.TemporaryDirectory() as tmp:
    for pos in ("noun", "verb", "adj", "adv"):
        open(os.path.join(tmp, f"index.{pos}"), "w").write(
            INDEX_NOUN if pos == "noun" else ""
        )
        open(os.path.join(tmp, f"data.{pos}"), "w").write(
            DATA_NOUN if pos == "noun" else ""
        )
    open(os.path.join(tmp, "index.sense"), "w").write(INDEX_SENSE)

    store = load_wordnet(tmp)
    print(f"loaded {len(store.synsets)} synsets, {len(store.senses)} lemmas")

    # Glosses per lemma come back in the index file's sense order, with
    # example sentences already stripped from the definition.
    for synset, gloss in glosses_for(store, LemmaKey("dog", NOUN)):
        print("dog ->", synset, "->", gloss)

    # Sense keys round-trip through the sense index.
    print("dog%1:05:00:: ->", resolve_sense_key(store, "dog%1:05:00::"))

    # Semantic relations for network export. Synonymy is synset
    # co-membership, so a synset is its own synonym class.
    animal = SynsetId(15388, NOUN)
    print("animal hyponyms:", [str(s) for s in neighbors(store, animal, "hyponym")])
    print("dog hypernyms:  ", [str(s) for s in neighbors(store, SynsetId(2084071, NOUN), "hypernym")])
    print("animal members: ", synset_words(store, animal))
