"""Contextual lexical CEFR-level classifiers.

Routes: knowledge-base lookup for words whose level is unambiguous,
zero-shot and few-shot prompting against a chat backend, export of a
fine-tuning dataset for provider-side training, a hybrid that answers
from the knowledge base and falls back to a model otherwise, and an
averaged-embedding baseline (one prototype vector per word-level pair,
classified by a linear margin model).
"""

from __future__ import annotations

import json
import os
import random
import re
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from sklearn.svm import LinearSVC

from .embeddings import EmbeddingProvider
from .errors import LexiLevelError
from .evp import KnowledgeBase
from .levels import CefrLevel, int_to_level, level_to_int, parse_level
from .metrics import split_examples
from .prompts import (
    CLASSIFY_SYSTEM,
    render_few_shot,
    render_zero_shot,
    template_digest,
)
from .semcor import CorpusExample

# Provider-side fine-tuning settings recorded in the export manifest for
# provenance; training itself happens on the provider side.
FINETUNE_HYPERPARAMETERS = {
    "method": "supervised",
    "epochs": 1,
    "learning_rate_multiplier": 2,
    "presets": {
        "evp": {"seed": 1900973879, "batch_size": 17},
        "semcor_cefr": {"seed": 105188566, "batch_size": 69},
        "mixture": {"seed": 112279849, "batch_size": 86},
    },
}


class InsufficientExamples(LexiLevelError):
    """The training pool cannot supply k examples for some level."""

    def __init__(self, level: CefrLevel, available: int, needed: int):
        super().__init__(f"level {level.name}: need {needed} examples, have {available}")
        self.level = level


class DegenerateTraining(LexiLevelError):
    """Training data covers fewer than two distinct levels."""


@dataclass
class ClassifyRequest:
    """A target word in a sentence; flags requests whose word is absent."""

    word: str
    sentence: str
    warning: bool = field(init=False, default=False)

    def __post_init__(self) -> None:
        if not self.word:
            raise ValueError("empty target word")
        pattern = rf"(?<!\w){re.escape(self.word)}(?!\w)"
        if re.search(pattern, self.sentence, re.IGNORECASE) is None:
            self.warning = True


@dataclass(frozen=True)
class Prediction:
    level: CefrLevel
    route: str  # kb | model | prototype
    raw: str | None = None

    def __post_init__(self) -> None:
        if self.route not in ("kb", "model", "prototype"):
            raise ValueError(f"unknown route: {self.route!r}")


Classifier = Callable[[ClassifyRequest], Prediction]


def kb_classify(request: ClassifyRequest, kb: KnowledgeBase) -> Prediction | None:
    """Lowercase lookup; None when the word is absent from the knowledge base."""
    level = kb.lookup(request.word)
    if level is None:
        return None
    return Prediction(level=level, route="kb")


def zero_shot_classify(request: ClassifyRequest, backend) -> Prediction:
    """Single-request level prediction from the zero-shot prompt."""
    prompt = render_zero_shot(request.word, request.sentence)
    text = backend.complete(CLASSIFY_SYSTEM, prompt)
    return Prediction(level=parse_level(text), route="model", raw=text)


@dataclass
class ShotSet:
    """k in-context examples per level, drawn from the training split."""

    shots: list[tuple[str, str, CefrLevel]]
    k_per_level: int
    seed: int

    def __post_init__(self) -> None:
        counts = {level: 0 for level in CefrLevel}
        for _, _, level in self.shots:
            counts[level] += 1
        if any(count != self.k_per_level for count in counts.values()):
            raise ValueError("shot set must hold exactly k shots per level")


def sample_shots(train: list[CorpusExample], k_per_level: int, seed: int) -> ShotSet:
    """Seeded uniform sampling without replacement, k per level."""
    if k_per_level < 1:
        raise ValueError("k_per_level must be >= 1")
    pools = {level: [ex for ex in train if ex.level == level] for level in CefrLevel}
    rng = random.Random(seed)
    shots: list[tuple[str, str, CefrLevel]] = []
    for level in CefrLevel:
        pool = pools[level]
        if len(pool) < k_per_level:
            raise InsufficientExamples(level, len(pool), k_per_level)
        for example in rng.sample(pool, k_per_level):
            shots.append((example.word, example.sentence, example.level))
    return ShotSet(shots=shots, k_per_level=k_per_level, seed=seed)


def few_shot_classify(request: ClassifyRequest, shots: ShotSet, backend) -> Prediction:
    """Level prediction from the few-shot prompt, shots in sampled order."""
    prompt = render_few_shot(shots.shots, request.word, request.sentence)
    text = backend.complete(CLASSIFY_SYSTEM, prompt)
    return Prediction(level=parse_level(text), route="model", raw=text)


def finetune_record(example: CorpusExample) -> dict:
    """One chat transcript: zero-shot prompt filled in, level as the answer."""
    return {
        "messages": [
            {"role": "system", "content": CLASSIFY_SYSTEM},
            {"role": "user", "content": render_zero_shot(example.word, example.sentence)},
            {"role": "assistant", "content": example.level.name},
        ]
    }


def export_finetune(
    train: list[CorpusExample], out_dir: str, *, seed: int = 0, preset: str = "evp"
) -> int:
    """Write fine-tuning files: 90/10 train/validation split plus manifest.

    Returns the total record count (which equals ``len(train)``; nothing
    is dropped). The manifest records the seed, split sizes, the prompt
    template digest, and the provider-side hyperparameters.
    """
    if preset not in FINETUNE_HYPERPARAMETERS["presets"]:
        raise ValueError(f"unknown fine-tune preset: {preset!r}")
    os.makedirs(out_dir, exist_ok=True)
    if train:
        split = split_examples(train, test_fraction=0.1, seed=seed)
        ft_train, ft_valid = split.train, split.test
    else:
        ft_train, ft_valid = [], []

    def write(examples: list[CorpusExample], name: str) -> None:
        with open(os.path.join(out_dir, name), "w", encoding="utf-8") as handle:
            for example in examples:
                handle.write(json.dumps(finetune_record(example), ensure_ascii=False) + "\n")

    write(ft_train, "finetune_train.jsonl")
    write(ft_valid, "finetune_valid.jsonl")
    manifest = {
        "seed": seed,
        "n_train": len(ft_train),
        "n_valid": len(ft_valid),
        "template_digest": template_digest("zero_shot"),
        "preset": preset,
        "hyperparameters": {
            "method": FINETUNE_HYPERPARAMETERS["method"],
            "epochs": FINETUNE_HYPERPARAMETERS["epochs"],
            "learning_rate_multiplier": FINETUNE_HYPERPARAMETERS["learning_rate_multiplier"],
            **FINETUNE_HYPERPARAMETERS["presets"][preset],
        },
    }
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return len(ft_train) + len(ft_valid)


def hybrid_classify(
    request: ClassifyRequest, kb: KnowledgeBase, fallback: Classifier
) -> Prediction:
    """Answer from the knowledge base when possible; otherwise delegate.

    A knowledge-base hit never invokes the fallback, so fallback errors
    can only surface on misses.
    """
    hit = kb_classify(request, kb)
    if hit is not None:
        return hit
    return fallback(request)


@dataclass
class PrototypeModel:
    """Mean embedding per (word, level) plus a linear multiclass head."""

    prototypes: dict[tuple[str, CefrLevel], np.ndarray]
    head: LinearSVC
    provider_id: str
    dimension: int
    manifest: dict = field(default_factory=dict)


def train_prototype(train: list[CorpusExample], provider: EmbeddingProvider) -> PrototypeModel:
    """Average embeddings per (lowercased word, level) and fit a linear head.

    The head is a one-vs-rest margin classifier at default regularization
    (C=1.0); any deviation from defaults is recorded in the manifest.
    """
    groups: dict[tuple[str, CefrLevel], list[np.ndarray]] = {}
    for example in train:
        key = (example.word.lower(), example.level)
        groups.setdefault(key, []).append(provider.embed(example.word, example.sentence))
    if len({level for _, level in groups}) < 2:
        raise DegenerateTraining("training data must span at least two levels")

    prototypes = {key: np.mean(np.stack(vectors), axis=0) for key, vectors in groups.items()}
    keys = sorted(prototypes, key=lambda k: (k[0], k[1].value))
    matrix = np.stack([prototypes[key] for key in keys])
    labels = np.array([level_to_int(level) for _, level in keys])
    head = LinearSVC(C=1.0, random_state=0)
    head.fit(matrix, labels)
    return PrototypeModel(
        prototypes=prototypes,
        head=head,
        provider_id=type(provider).__name__,
        dimension=matrix.shape[1],
        manifest={
            "classifier": "linear_svc",
            "C": 1.0,
            "decomposition": "one_vs_rest",
            "random_state": 0,
            "provider": type(provider).__name__,
            "dimension": int(matrix.shape[1]),
            "prototype_count": len(keys),
        },
    )


def predict_prototype(
    model: PrototypeModel, request: ClassifyRequest, provider: EmbeddingProvider
) -> Prediction:
    """Embed the request and take the head's argmax; ties break low."""
    vector = provider.embed(request.word, request.sentence)
    scores = model.head.decision_function(vector.reshape(1, -1))[0]
    classes = model.head.classes_
    if np.ndim(scores) == 0:
        # Binary head: positive margin means the second (higher) class.
        label = classes[1] if float(scores) > 0 else classes[0]
    else:
        # argmax returns the first maximum; classes_ is ascending, so a
        # tie resolves to the lower CEFR level.
        label = classes[int(np.argmax(scores))]
    return Prediction(level=int_to_level(int(label)), route="prototype")
