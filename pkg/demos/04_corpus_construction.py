"""From a sense-tagged corpus to a level-annotated training corpus.

SemCor-style input: sentences whose content words carry WordNet sense
keys, plus a gold key file. Each instance whose sense has annotated
levels becomes one training example per distinct level.
"""

import os
import tempfile

from lexilevel import (
    AnnotatedWordNet,
    CefrLevel,
    LemmaKey,
    PartOfSpeech,
    SynsetId,
    build_corpus,
    corpus_stats,
    load_semcor,
)
from lexilevel.align import LevelAnnotation

NOUN = PartOfSpeech.NOUN
VERB = PartOfSpeech.VERB

XML = """<?xml version="1.0" encoding="UTF-8" ?>
<corpus lang="en" source="demo">
<text id="d000">
<sentence id="d000.s000">
<wf lemma="the" pos="DET">The</wf>
<instance id="d000.s000.t000" lemma="dog" pos="NOUN">dog</instance>
<instance id="d000.s000.t001" lemma="run" pos="VERB">ran</instance>
<wf lemma="home" pos="ADV">home</wf>
<wf lemma="." pos=".">.</wf>
</sentence>
<sentence id="d000.s001">
<wf lemma="a" pos="DET">A</wf>
<instance id="d000.s001.t002" lemma="cat" pos="NOUN">cat</instance>
<wf lemma="slept" pos="VERB">slept</wf>
<wf lemma="." pos=".">.</wf>
</sentence>
</text>
</corpus>
"""
KEYS = """d000.s000.t000 dog%1:05:00::
d000.s000.t001 run%2:38:00::
d000.s001.t002 cat%1:05:00::
"""

with tempfile.TemporaryDirectory() as tmp:
    xml_path = os.path.join(tmp, "corpus.xml")
    key_path = os.path.join(tmp, "corpus.key.txt")
    open(xml_path, "w").write(XML)
    open(key_path, "w").write(KEYS)
    loaded = load_semcor(xml_path, key_path)

print(f"parsed {len(loaded.instances)} instances "
      f"({loaded.mwe_skipped} multiword skipped, {loaded.multi_key} multi-key)")
for inst in loaded.instances:
    print(f"  {inst.instance_id}: {inst.target_surface!r} at token {inst.target_index} "
          f"-> {inst.sense_key}")

# --- Annotations drive the join. "run" carries two levels here, so its
# instance fans out into two training examples; "cat" has none and drops.


def annotation(key, word, pos, offset, level):
    return LevelAnnotation(
        synset=SynsetId(offset, pos), lemma=LemmaKey(word, pos),
        sense_key=key, level=level, evp_id="demo", score=1,
    )


annotated = AnnotatedWordNet()
annotated.add(annotation("dog%1:05:00::", "dog", NOUN, 2084071, CefrLevel.A1))
annotated.add(annotation("run%2:38:00::", "run", VERB, 1926311, CefrLevel.A1))
annotated.add(annotation("run%2:38:00::", "run", VERB, 1926311, CefrLevel.B1))

corpus = build_corpus(loaded.instances, annotated)
print(f"\ncorpus examples ({len(corpus)}):")
for example in corpus:
    print(f"  [{example.level.name}] {example.word!r} in: {example.sentence}")

stats = corpus_stats(corpus)
print("\nper-level distribution (types / words):")
print(stats.to_tsv())
