"""The classifier routes.

Knowledge-base lookup for unambiguous words, prompt-based classification
against a chat backend (a fixed-reply stub here), hybrid routing, the
fine-tune dataset export, and the averaged-embedding prototype baseline.
"""

import json
import os
import tempfile

from lexilevel import (
    CefrLevel,
    ClassifyRequest,
    CorpusExample,
    HashedEmbeddingProvider,
    KnowledgeBase,
    PartOfSpeech,
    StaticChatBackend,
    export_finetune,
    few_shot_classify,
    hybrid_classify,
    kb_classify,
    predict_prototype,
    sample_shots,
    train_prototype,
    zero_shot_classify,
)

NOUN = PartOfSpeech.NOUN

# --- Route 1: knowledge base. Words whose lexicon senses all share one
# level are answered directly, no model involved.

kb = KnowledgeBase(levels={"dog": CefrLevel.A1, "entity": CefrLevel.C2})
print("kb:", kb_classify(ClassifyRequest("dog", "The dog barked."), kb))
print("kb miss:", kb_classify(ClassifyRequest("bank", "By the bank."), kb))

# --- Route 2: zero-shot prompting. The backend here is a stub that
# always answers "B2"; the HTTP backend drops in unchanged.

backend = StaticChatBackend("B2")
prediction = zero_shot_classify(ClassifyRequest("bank", "He sat on the bank."), backend)
print("zero-shot:", prediction)

# --- Route 3: few-shot prompting. Shots are sampled per level from a
# training corpus with a fixed seed, so prompts reproduce exactly.


def example(word, level, sentence):
    return CorpusExample(word=word, sentence=sentence, pos=NOUN,
                         sense_key=f"{word}%1:00:00::", level=level, source="evp_example")


train = [
    example("cat", CefrLevel.A1, "The cat sat on the mat."),
    example("horse", CefrLevel.A2, "She rode a horse."),
    example("race", CefrLevel.B1, "He won the race."),
    example("slope", CefrLevel.B2, "They skied down the slope."),
    example("audit", CefrLevel.C1, "The audit found errors."),
    example("entity", CefrLevel.C2, "Each firm is an entity."),
] * 2
shots = sample_shots(train, k_per_level=1, seed=17)
print("few-shot:", few_shot_classify(ClassifyRequest("bank", "By the bank."), shots, backend))

# --- Route 4: hybrid. A knowledge-base hit short-circuits (the backend
# is never called); a miss delegates to any fallback classifier.

fallback_calls = 0


def fallback(request):
    global fallback_calls
    fallback_calls += 1
    return zero_shot_classify(request, backend)


print("hybrid kb word:  ", hybrid_classify(ClassifyRequest("dog", "A dog."), kb, fallback))
print("hybrid miss:     ", hybrid_classify(ClassifyRequest("bank", "A bank."), kb, fallback))
print("fallback calls:  ", fallback_calls)

# --- Fine-tune export: one chat transcript per training example (the
# zero-shot prompt as user turn, the gold level as assistant turn), split
# 90/10 into train/validation files plus a manifest.

with tempfile.TemporaryDirectory() as tmp:
    total = export_finetune(train, tmp, seed=13, preset="evp")
    manifest = json.load(open(os.path.join(tmp, "manifest.json")))
    print(f"\nexported {total} records "
          f"({manifest['n_train']} train / {manifest['n_valid']} validation)")
    print("provider settings:", manifest["hyperparameters"])

# --- Route 5: prototype baseline. Embeddings are averaged per
# (word, level) pair and a linear margin classifier runs on top. The
# hashed provider makes this fully offline and deterministic.

provider = HashedEmbeddingProvider(dimension=128)
model = train_prototype(train, provider)
print("\nprototype model:", model.manifest)
request = ClassifyRequest("cat", "The cat sat on the mat.")
print("prototype:", predict_prototype(model, request, provider))
