"""Seeded train/test splitting and multiclass scoring.

Precision and recall are reported per group and macro-averaged over the
groups where they are defined; a group with no predictions has undefined
precision (None, never zero) and is simply left out of the macro mean.
Micro-averaged precision and recall both collapse to accuracy for
single-label classification, and both are still reported.
"""

import random
from collections.abc import Sequence
from dataclasses import dataclass
from typing import TypeVar

from .errors import UsageError

GROUP_COUNT = 15

T = TypeVar("T")


def split(items: Sequence[T], test_count: int, seed: int) -> tuple[list[T], list[T]]:
    """Hold out test_count items chosen uniformly without replacement.

    Both halves preserve the original relative order; the same seed
    always selects the same items.
    """
    pool = list(items)
    n = len(pool)
    if not 0 < test_count < n:
        raise UsageError(f"test_count must be in 1..{n - 1}, got {test_count}")
    rng = random.Random(seed)
    chosen = set(rng.sample(range(n), test_count))
    test = [pool[i] for i in range(n) if i in chosen]
    train = [pool[i] for i in range(n) if i not in chosen]
    return train, test


@dataclass(frozen=True)
class ClassMetrics:
    """Counts and (possibly undefined) precision/recall for one group."""

    true_count: int
    predicted_count: int
    correct: int

    @property
    def precision(self) -> float | None:
        if self.predicted_count == 0:
            return None
        return self.correct / self.predicted_count

    @property
    def recall(self) -> float | None:
        if self.true_count == 0:
            return None
        return self.correct / self.true_count


@dataclass(frozen=True)
class EvaluationReport:
    """Confusion matrix and derived scores for one prediction run."""

    counts: int
    confusion: tuple[tuple[int, ...], ...]
    accuracy: float
    per_class: dict[int, ClassMetrics]
    macro_precision: float
    macro_recall: float
    micro_precision: float
    micro_recall: float

    def to_dict(self) -> dict:
        """JSON-ready form; undefined metrics serialize as null."""
        return {
            "counts": self.counts,
            "accuracy": self.accuracy,
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "micro_precision": self.micro_precision,
            "micro_recall": self.micro_recall,
            "per_class": {
                str(gid): {
                    "true_count": m.true_count,
                    "predicted_count": m.predicted_count,
                    "correct": m.correct,
                    "precision": m.precision,
                    "recall": m.recall,
                }
                for gid, m in sorted(self.per_class.items())
            },
            "confusion": [list(row) for row in self.confusion],
        }

    def format_table(self) -> str:
        """Fixed-width per-group summary for terminal output."""
        lines = [f"{'group':>5}  {'true':>5}  {'pred':>5}  {'precision':>9}  {'recall':>9}"]
        for gid in range(1, GROUP_COUNT + 1):
            m = self.per_class[gid]
            precision = "-" if m.precision is None else f"{m.precision:.3f}"
            recall = "-" if m.recall is None else f"{m.recall:.3f}"
            lines.append(
                f"{gid:>5}  {m.true_count:>5}  {m.predicted_count:>5}"
                f"  {precision:>9}  {recall:>9}"
            )
        lines.append(
            f"accuracy {self.accuracy:.4f} over {self.counts} items; "
            f"macro precision {self.macro_precision:.4f}, "
            f"macro recall {self.macro_recall:.4f}"
        )
        return "\n".join(lines)


def evaluate(truth: Sequence[int], predicted: Sequence[int]) -> EvaluationReport:
    """Score predictions against ground truth over groups 1..15."""
    if len(truth) != len(predicted):
        raise UsageError("truth and predicted must have equal length")
    if not truth:
        raise UsageError("cannot evaluate zero items")
    for label in list(truth) + list(predicted):
        if not 1 <= label <= GROUP_COUNT:
            raise UsageError(f"label {label} outside 1..{GROUP_COUNT}")

    matrix = [[0] * GROUP_COUNT for _ in range(GROUP_COUNT)]
    for t, p in zip(truth, predicted):
        matrix[t - 1][p - 1] += 1

    per_class: dict[int, ClassMetrics] = {}
    for gid in range(1, GROUP_COUNT + 1):
        true_count = sum(matrix[gid - 1])
        predicted_count = sum(row[gid - 1] for row in matrix)
        per_class[gid] = ClassMetrics(
            true_count=true_count,
            predicted_count=predicted_count,
            correct=matrix[gid - 1][gid - 1],
        )

    total = len(truth)
    correct = sum(matrix[i][i] for i in range(GROUP_COUNT))
    accuracy = correct / total
    precisions = [m.precision for m in per_class.values() if m.precision is not None]
    recalls = [m.recall for m in per_class.values() if m.recall is not None]
    # Micro averages are pooled over the matrix margins rather than set to
    # accuracy outright; the equality is a property, not a definition.
    predicted_total = sum(m.predicted_count for m in per_class.values())
    true_total = sum(m.true_count for m in per_class.values())
    return EvaluationReport(
        counts=total,
        confusion=tuple(tuple(row) for row in matrix),
        accuracy=accuracy,
        per_class=per_class,
        macro_precision=sum(precisions) / len(precisions),
        macro_recall=sum(recalls) / len(recalls),
        micro_precision=correct / predicted_total,
        micro_recall=correct / true_total,
    )
