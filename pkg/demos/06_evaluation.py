"""The evaluation kit.

Deterministic splits, per-level/macro/micro F1, row-normalized confusion
matrices whose diagonal is per-level recall, adjacency accuracy for this
ordinal label space, and Spearman correlation against continuous
lexical-complexity scores.
"""

import random

from lexilevel import (
    CefrLevel,
    ComplexRecord,
    adjacent_accuracy,
    confusion,
    correlate_complex,
    int_to_level,
    score,
    spearman,
    split_examples,
)

A1, A2, B1, B2, C1, C2 = CefrLevel

# --- Splits are seeded shuffles with an auditable manifest of ids.

items = [f"example-{i}" for i in range(20)]
result = split_examples(items, test_fraction=0.1, seed=13)
print(f"split 20 items -> {len(result.train)} train / {len(result.test)} test")
print("test ids:", result.manifest["test_ids"])

# --- Scoring. The label space is fixed at six levels: levels with no
# gold items still contribute F1 = 0 to the macro average and get
# flagged, which keeps averages comparable across runs.

gold = [A1, A1, B2]
pred = [A1, B2, B2]
report = score(gold, pred)
print("\nper-level F1:", {l.name: round(f, 4) for l, f in report.per_level_f1.items()})
print(f"macro {report.macro_f1:.4f} (= 2/9), micro {report.micro_f1:.4f}")
print("zero-support levels:", [l.name for l in report.zero_support])

matrix = confusion(gold, pred)
print("\nconfusion row for gold A1 (half right, half one level high):")
print("  counts:", matrix.counts[0].tolist(), " probabilities:", matrix.probabilities[0].tolist())

# --- Adjacency accuracy credits near misses, which matter less for an
# ordinal scale: B1 predicted as B2 is far less disruptive than as C2.

print("\nadjacent accuracy:", adjacent_accuracy(gold, pred))
print("A1 predicted C2 everywhere:", adjacent_accuracy([A1, A1], [C2, C2]))

# --- Spearman handles ties with average ranks.

print("\nspearman ties:", round(spearman([1, 2, 2, 3], [0.1, 0.4, 0.2, 0.9]), 6))
print("monotone:", spearman([1, 2, 3], [10, 20, 30]))

# --- External validation: correlate predicted levels (as integers 1..6)
# against continuous complexity judgments. A classifier that tracks the
# complexity quantile correlates near 1; per-genre breakdowns come free.

rng = random.Random(6)
complexity = {f"w{i}": rng.random() for i in range(300)}
records = [
    ComplexRecord(id=f"r{i:03d}", word=w, sentence=f"text with {w} .",
                  genre=("europarl", "bible", "biomed")[i % 3], complexity=c)
    for i, (w, c) in enumerate(complexity.items())
]


def quantile_classifier(word, sentence):
    return int_to_level(min(5, int(complexity[word] * 6)) + 1)


correlation = correlate_complex(quantile_classifier, records)
print(f"\ncomplexity correlation over {correlation.n} records: {correlation.overall:.3f}")
for genre, value in correlation.per_genre.items():
    print(f"  {genre}: {value:.3f}")
