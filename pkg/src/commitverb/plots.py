"""Figure rendering for analysis and evaluation reports.

Figures land next to the JSON report they describe, named after its stem,
so a report and its plots travel together. The Agg backend keeps this
usable on headless machines.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .evaluation import GROUP_COUNT, EvaluationReport
from .textanalysis import CorpusStats

TOP_VERBS = 20


def _sibling(report_path, suffix: str) -> Path:
    base = Path(report_path)
    return base.with_name(f"{base.stem}_{suffix}.png")


def save_stats_figures(stats: CorpusStats, report_path) -> list[Path]:
    """Sentence-count and leading-verb histograms as PNG files."""
    paths = []

    fig, ax = plt.subplots(figsize=(6, 4))
    keys = sorted(stats.sentence_histogram)
    ax.bar([str(k) for k in keys], [stats.sentence_histogram[k] for k in keys], color="#4878a8")
    ax.set_xlabel("sentences per message")
    ax.set_ylabel("messages")
    ax.set_title(f"Sentence counts over {stats.messages} messages")
    fig.tight_layout()
    out = _sibling(report_path, "sentence_histogram")
    fig.savefig(out, dpi=150)
    plt.close(fig)
    paths.append(out)

    top = sorted(stats.verb_histogram.items(), key=lambda kv: (-kv[1], kv[0]))[:TOP_VERBS]
    fig, ax = plt.subplots(figsize=(6, 5))
    if top:
        lemmas = [lemma for lemma, _ in reversed(top)]
        counts = [count for _, count in reversed(top)]
        ax.barh(lemmas, counts, color="#4878a8")
    ax.set_xlabel("messages")
    ax.set_title(f"Leading verbs (top {min(len(top), TOP_VERBS)})")
    fig.tight_layout()
    out = _sibling(report_path, "verb_histogram")
    fig.savefig(out, dpi=150)
    plt.close(fig)
    paths.append(out)
    return paths


def save_confusion_figure(report: EvaluationReport, report_path) -> Path:
    """Confusion-matrix heatmap as a PNG file."""
    matrix = np.array(report.confusion)
    fig, ax = plt.subplots(figsize=(7, 6))
    image = ax.imshow(matrix, cmap="Blues")
    fig.colorbar(image, ax=ax, label="commits")
    ticks = np.arange(GROUP_COUNT)
    labels = [str(g) for g in range(1, GROUP_COUNT + 1)]
    ax.set_xticks(ticks, labels)
    ax.set_yticks(ticks, labels)
    ax.set_xlabel("predicted group")
    ax.set_ylabel("true group")
    ax.set_title(f"Confusion over {report.counts} items (accuracy {report.accuracy:.2f})")
    fig.tight_layout()
    out = _sibling(report_path, "confusion_matrix")
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out
