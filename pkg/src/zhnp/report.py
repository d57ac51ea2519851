"""Figure rendering for the report-producing CLI paths.

Each function writes one PNG next to the delimited/JSON artifact it
illustrates: label distribution bars for the stats report, a confusion
heatmap for evaluation, weighted-F1 lines for the context sweep, and
implicit-vs-explicit bars for subset evaluation.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def fig_label_distribution(stats, path) -> None:
    """Grouped bars of label counts per split."""
    splits = [s for s in ("train", "dev", "test", "unsplit") if s in stats.by_split]
    fig, axes = plt.subplots(1, 2, figsize=(8, 3.2), sharey=True)
    for ax, dim, labels in (
        (axes[0], "plurality", ("singular", "plural")),
        (axes[1], "definiteness", ("definite", "indefinite")),
    ):
        x = np.arange(len(splits))
        width = 0.38
        for off, label in zip((-width / 2, width / 2), labels):
            counts = [stats.by_split[s][dim][label] for s in splits]
            ax.bar(x + off, counts, width, label=label)
        ax.set_xticks(x, splits)
        ax.set_title(dim)
        ax.legend(fontsize=8)
    axes[0].set_ylabel("NPs")
    _save(fig, path)


def fig_confusion(matrix, path) -> None:
    """Heatmap of the confusion matrix with counts annotated."""
    counts = np.asarray(matrix.counts)
    n = len(matrix.classes)
    fig, ax = plt.subplots(figsize=(1.2 * n + 2.2, 1.2 * n + 1.6))
    im = ax.imshow(counts, cmap="Blues")
    ax.set_xticks(range(n), matrix.classes, rotation=30, ha="right", fontsize=8)
    ax.set_yticks(range(n), matrix.classes, fontsize=8)
    ax.set_xlabel("predicted")
    ax.set_ylabel("gold")
    threshold = counts.max() / 2 if counts.max() else 0.5
    for g in range(n):
        for p in range(n):
            color = "white" if counts[g, p] > threshold else "black"
            ax.text(p, g, str(counts[g, p]), ha="center", va="center",
                    color=color, fontsize=9)
    fig.colorbar(im, ax=ax, shrink=0.8)
    _save(fig, path)


def fig_context_sweep(rows, path) -> None:
    """Weighted and macro F1 as a function of the context size k."""
    ks = [row["k"] for row in rows]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot(ks, [row["weighted_f1"] for row in rows], marker="o", label="weighted F1")
    ax.plot(ks, [row["macro_f1"] for row in rows], marker="s", label="macro F1")
    ax.set_xlabel("context size (sentences around the target)")
    ax.set_ylabel("F1")
    ax.set_xticks(ks)
    ax.set_ylim(0, 1.02)
    ax.legend()
    _save(fig, path)


def fig_subset_compare(subset_report, path) -> None:
    """Macro F1 on implicit vs explicit expressions, side by side."""
    names = ["implicit", "explicit"]
    values = [
        subset_report[n]["macro"]["f1"] if subset_report[n] else 0.0 for n in names
    ]
    fig, ax = plt.subplots(figsize=(3.6, 3.2))
    ax.bar(names, values, color=["tab:blue", "tab:orange"])
    for i, v in enumerate(values):
        ax.text(i, v + 0.01, f"{v:.3f}", ha="center", fontsize=9)
    ax.set_ylabel("macro F1")
    ax.set_ylim(0, 1.08)
    _save(fig, path)
