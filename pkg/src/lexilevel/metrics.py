"""Evaluation harness: splits, per-level/macro/micro F1, row-normalized
confusion matrices, adjacency accuracy, and Spearman correlation against
continuous lexical-complexity scores.

The six-level label space is fixed a priori: levels with zero support
still occupy their row/column, contribute F1 = 0 to the macro average,
and are flagged rather than silently excluded.
"""

from __future__ import annotations

import json
import math
import os
import random
from dataclasses import dataclass
from typing import Callable, Sequence, TypeVar

import numpy as np
from scipy import stats as scipy_stats

from .errors import FormatError, LexiLevelError
from .levels import LEVELS, CefrLevel, level_to_int

T = TypeVar("T")


class LengthMismatch(LexiLevelError):
    def __init__(self, n_gold: int, n_pred: int):
        super().__init__(f"gold has {n_gold} items, predictions have {n_pred}")


class DegenerateInput(LexiLevelError):
    """Correlation is undefined (constant vector or too few points)."""


@dataclass
class SplitResult:
    """Disjoint, exhaustive train/test split plus its audit manifest."""

    train: list
    test: list
    manifest: dict


def split_examples(
    examples: Sequence[T], test_fraction: float, seed: int
) -> SplitResult:
    """Seeded uniform shuffle, then ceil(N*fraction) items to the test side.

    The manifest lists the input indices on each side so the partition is
    auditable; both sides keep the input's relative order.
    """
    if not 0 < test_fraction < 1:
        raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction}")
    n = len(examples)
    indices = list(range(n))
    random.Random(seed).shuffle(indices)
    n_test = math.ceil(n * test_fraction)
    test_ids = sorted(indices[:n_test])
    train_ids = sorted(indices[n_test:])
    return SplitResult(
        train=[examples[i] for i in train_ids],
        test=[examples[i] for i in test_ids],
        manifest={
            "seed": seed,
            "test_fraction": test_fraction,
            "n": n,
            "train_ids": train_ids,
            "test_ids": test_ids,
        },
    )


@dataclass
class ConfusionMatrix:
    """Counts and row-normalized probabilities over the six levels.

    ``probabilities[i, j]`` is the share of gold-level-i items predicted
    as level j; the diagonal equals per-level recall. Rows with no gold
    items stay all-zero and are flagged in ``zero_rows``.
    """

    counts: np.ndarray
    probabilities: np.ndarray
    row_totals: np.ndarray
    zero_rows: tuple[CefrLevel, ...]


@dataclass
class EvalReport:
    per_level_f1: dict[CefrLevel, float]
    macro_f1: float
    micro_f1: float
    support: dict[CefrLevel, int]
    zero_support: tuple[CefrLevel, ...] = ()


def _check_lengths(gold: Sequence, pred: Sequence) -> None:
    if len(gold) != len(pred):
        raise LengthMismatch(len(gold), len(pred))
    if not gold:
        raise LengthMismatch(0, 0)


def confusion(gold: Sequence[CefrLevel], pred: Sequence[CefrLevel]) -> ConfusionMatrix:
    _check_lengths(gold, pred)
    counts = np.zeros((6, 6), dtype=np.int64)
    for g, p in zip(gold, pred):
        counts[level_to_int(g) - 1, level_to_int(p) - 1] += 1
    row_totals = counts.sum(axis=1)
    probabilities = np.zeros((6, 6), dtype=np.float64)
    nonzero = row_totals > 0
    probabilities[nonzero] = counts[nonzero] / row_totals[nonzero, None]
    zero_rows = tuple(level for level, total in zip(LEVELS, row_totals) if total == 0)
    return ConfusionMatrix(
        counts=counts,
        probabilities=probabilities,
        row_totals=row_totals,
        zero_rows=zero_rows,
    )


def score(gold: Sequence[CefrLevel], pred: Sequence[CefrLevel]) -> EvalReport:
    """Per-level precision/recall/F1 with the 0/0 -> 0 convention.

    Macro-F1 is the unweighted mean over all six levels; micro-F1 comes
    from pooled counts and equals accuracy for this single-label task.
    """
    matrix = confusion(gold, pred)
    counts = matrix.counts
    per_level_f1: dict[CefrLevel, float] = {}
    for i, level in enumerate(LEVELS):
        tp = int(counts[i, i])
        fp = int(counts[:, i].sum()) - tp
        fn = int(counts[i, :].sum()) - tp
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        per_level_f1[level] = (
            2 * precision * recall / (precision + recall) if precision + recall else 0.0
        )
    macro = sum(per_level_f1.values()) / len(LEVELS)
    micro = float(np.trace(counts)) / float(counts.sum())
    support = {level: int(matrix.row_totals[i]) for i, level in enumerate(LEVELS)}
    return EvalReport(
        per_level_f1=per_level_f1,
        macro_f1=macro,
        micro_f1=micro,
        support=support,
        zero_support=matrix.zero_rows,
    )


def adjacent_accuracy(gold: Sequence[CefrLevel], pred: Sequence[CefrLevel]) -> float:
    """Share of items predicted within one level of gold."""
    _check_lengths(gold, pred)
    near = sum(1 for g, p in zip(gold, pred) if abs(level_to_int(g) - level_to_int(p)) <= 1)
    return near / len(gold)


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Spearman rank correlation with average ranks on ties."""
    if len(x) != len(y):
        raise LengthMismatch(len(x), len(y))
    if len(x) < 2:
        raise DegenerateInput("need at least two points")
    xs = np.asarray(x, dtype=np.float64)
    ys = np.asarray(y, dtype=np.float64)
    if np.all(xs == xs[0]) or np.all(ys == ys[0]):
        raise DegenerateInput("constant input vector")
    return float(scipy_stats.spearmanr(xs, ys).statistic)


@dataclass(frozen=True)
class ComplexRecord:
    """One continuous-complexity item: a target word in context."""

    id: str
    word: str
    sentence: str
    genre: str
    complexity: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.complexity <= 1.0:
            raise ValueError(f"complexity must be in [0,1], got {self.complexity}")


_COMPLEX_COLUMNS = ("id", "corpus", "sentence", "token", "complexity")


def read_complex(path: str) -> list[ComplexRecord]:
    """Read the published complexity TSV layout (id, corpus, sentence,
    token, complexity); the file is user-supplied, never vendored."""
    filename = os.path.basename(path)
    records = []
    with open(path, encoding="utf-8-sig") as handle:
        header = handle.readline().rstrip("\n")
        names = [c.strip().lower() for c in header.split("\t")]
        try:
            positions = {column: names.index(column) for column in _COMPLEX_COLUMNS}
        except ValueError:
            raise FormatError(filename, 1, f"header must contain {_COMPLEX_COLUMNS}") from None
        for lineno, line in enumerate(handle, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            columns = line.split("\t")
            if len(columns) < len(names):
                raise FormatError(filename, lineno, "short row")
            try:
                complexity = float(columns[positions["complexity"]])
                record = ComplexRecord(
                    id=columns[positions["id"]],
                    word=columns[positions["token"]],
                    sentence=columns[positions["sentence"]],
                    genre=columns[positions["corpus"]],
                    complexity=complexity,
                )
            except ValueError as exc:
                raise FormatError(filename, lineno, str(exc)) from None
            records.append(record)
    return records


@dataclass
class CorrelationReport:
    overall: float
    per_genre: dict[str, float | None]
    n: int


def correlate_complex(
    classify: Callable[[str, str], CefrLevel], records: Sequence[ComplexRecord]
) -> CorrelationReport:
    """Spearman correlation between predicted levels (as integers 1-6) and
    the records' complexity scores, plus a per-genre breakdown.

    ``classify`` maps (word, sentence) to a level; classifier errors
    propagate. Genres too small or degenerate to correlate report None.
    """
    ordered = sorted(records, key=lambda r: r.id)
    levels = [level_to_int(classify(r.word, r.sentence)) for r in ordered]
    complexities = [r.complexity for r in ordered]
    overall = spearman(levels, complexities)
    per_genre: dict[str, float | None] = {}
    for genre in sorted({r.genre for r in ordered}):
        member = [i for i, r in enumerate(ordered) if r.genre == genre]
        try:
            per_genre[genre] = spearman(
                [levels[i] for i in member], [complexities[i] for i in member]
            )
        except DegenerateInput:
            per_genre[genre] = None
    return CorrelationReport(overall=overall, per_genre=per_genre, n=len(ordered))


def load_predictions(path: str) -> tuple[list[CefrLevel], list[CefrLevel]]:
    """Read a two-column predictions TSV with header ``gold<TAB>pred``."""
    filename = os.path.basename(path)
    gold: list[CefrLevel] = []
    pred: list[CefrLevel] = []
    with open(path, encoding="utf-8-sig") as handle:
        header = handle.readline().rstrip("\n")
        if [c.strip().lower() for c in header.split("\t")] != ["gold", "pred"]:
            raise FormatError(filename, 1, "header must be 'gold<TAB>pred'")
        for lineno, line in enumerate(handle, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            columns = line.split("\t")
            if len(columns) != 2:
                raise FormatError(filename, lineno, "expected two columns")
            try:
                gold.append(CefrLevel[columns[0].strip().upper()])
                pred.append(CefrLevel[columns[1].strip().upper()])
            except KeyError as exc:
                raise FormatError(filename, lineno, f"bad level token {exc}") from None
    return gold, pred


def report_to_dict(report: EvalReport, matrix: ConfusionMatrix) -> dict:
    return {
        "per_level_f1": {level.name: report.per_level_f1[level] for level in LEVELS},
        "macro_f1": report.macro_f1,
        "micro_f1": report.micro_f1,
        "support": {level.name: report.support[level] for level in LEVELS},
        "zero_support": [level.name for level in report.zero_support],
        "confusion": {
            "levels": [level.name for level in LEVELS],
            "counts": matrix.counts.tolist(),
            "probabilities": matrix.probabilities.tolist(),
            "row_totals": matrix.row_totals.tolist(),
        },
    }


def write_report_json(report: EvalReport, matrix: ConfusionMatrix, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(report_to_dict(report, matrix), handle, indent=2, sort_keys=True)
        handle.write("\n")


def write_confusion_tsv(matrix: ConfusionMatrix, path: str) -> None:
    """Row-normalized probability table, gold levels down, predicted across."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("gold\t" + "\t".join(level.name for level in LEVELS) + "\n")
        for i, level in enumerate(LEVELS):
            row = "\t".join(f"{matrix.probabilities[i, j]:.6f}" for j in range(6))
            handle.write(f"{level.name}\t{row}\n")
