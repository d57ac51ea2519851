"""Evaluation metrics: confusion matrices, macro/weighted P/R/F, binary-to-
4-way merging, explicit/implicit subset scoring, and import of externally
produced prediction files.

Zero-denominator components (a class never predicted, or absent from gold)
score 0 and set a flag in the report, matching the convention of the common
evaluation libraries so imported results stay comparable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

PLURALITY_CLASSES = ("singular", "plural")
DEFINITENESS_CLASSES = ("definite", "indefinite")
# Fixed 4-way order: indefinite singular, indefinite plural, definite
# singular, definite plural.
FOURWAY_CLASSES = (
    "indefinite-singular",
    "indefinite-plural",
    "definite-singular",
    "definite-plural",
)

TASK_CLASSES = {
    "plurality": PLURALITY_CLASSES,
    "definiteness": DEFINITENESS_CLASSES,
    "fourway": FOURWAY_CLASSES,
}


class EvaluationError(ValueError):
    pass


def fourway_label(definiteness: str, plurality: str) -> str:
    label = f"{definiteness}-{plurality}"
    if label not in FOURWAY_CLASSES:
        raise EvaluationError(f"bad label pair ({definiteness!r}, {plurality!r})")
    return label


def fourway_components(label: str) -> tuple:
    """(definiteness, plurality) parts of a 4-way label."""
    if label not in FOURWAY_CLASSES:
        raise EvaluationError(f"unknown 4-way label {label!r}")
    definiteness, plurality = label.split("-")
    return definiteness, plurality


@dataclass(frozen=True)
class ConfusionMatrix:
    """Square count matrix; entry [g][p] counts gold class g predicted as p."""

    classes: tuple
    counts: tuple  # tuple of tuples of int, row = gold

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    def row(self, cls) -> tuple:
        return self.counts[self.classes.index(cls)]

    def to_csv(self) -> str:
        lines = ["gold\\pred," + ",".join(self.classes)]
        for cls, row in zip(self.classes, self.counts):
            lines.append(cls + "," + ",".join(str(c) for c in row))
        return "\n".join(lines) + "\n"


def confusion(golds, preds, classes) -> ConfusionMatrix:
    golds, preds = list(golds), list(preds)
    if len(golds) != len(preds):
        raise EvaluationError(f"{len(golds)} gold labels vs {len(preds)} predictions")
    classes = tuple(classes)
    index = {c: k for k, c in enumerate(classes)}
    counts = [[0] * len(classes) for _ in classes]
    for g, p in zip(golds, preds):
        if g not in index:
            raise EvaluationError(f"unknown gold label {g!r}")
        if p not in index:
            raise EvaluationError(f"unknown predicted label {p!r}")
        counts[index[g]][index[p]] += 1
    return ConfusionMatrix(classes=classes, counts=tuple(tuple(r) for r in counts))


def per_class_prf(matrix: ConfusionMatrix) -> dict:
    """Per-class precision/recall/F1/support with the zero-as-0 convention."""
    out = {}
    n = len(matrix.classes)
    for k, cls in enumerate(matrix.classes):
        tp = matrix.counts[k][k]
        fp = sum(matrix.counts[g][k] for g in range(n)) - tp
        fn = sum(matrix.counts[k]) - tp
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        out[cls] = {
            "precision": precision,
            "recall": recall,
            "f1": f1,
            "support": tp + fn,
            "zero_denominator": (tp + fp == 0) or (tp + fn == 0) or (precision + recall == 0),
        }
    return out


def prf(matrix: ConfusionMatrix, averaging: str) -> tuple:
    """(precision, recall, F1) under macro or gold-support-weighted averaging."""
    if averaging not in ("macro", "weighted"):
        raise EvaluationError(f"unknown averaging {averaging!r}")
    per_class = per_class_prf(matrix)
    if averaging == "macro":
        weights = {cls: 1 / len(matrix.classes) for cls in matrix.classes}
    else:
        total = matrix.total
        if total == 0:
            raise EvaluationError("empty confusion matrix")
        weights = {cls: per_class[cls]["support"] / total for cls in matrix.classes}
    p = sum(weights[c] * per_class[c]["precision"] for c in matrix.classes)
    r = sum(weights[c] * per_class[c]["recall"] for c in matrix.classes)
    f = sum(weights[c] * per_class[c]["f1"] for c in matrix.classes)
    return p, r, f


def metric_report(matrix: ConfusionMatrix) -> dict:
    """Full report: per-class block plus macro and weighted averages."""
    per_class = per_class_prf(matrix)
    macro = prf(matrix, "macro")
    weighted = prf(matrix, "weighted")
    return {
        "n": matrix.total,
        "classes": list(matrix.classes),
        "per_class": per_class,
        "macro": {"precision": macro[0], "recall": macro[1], "f1": macro[2]},
        "weighted": {"precision": weighted[0], "recall": weighted[1], "f1": weighted[2]},
        "zero_denominator": any(v["zero_denominator"] for v in per_class.values()),
    }


def merge_binary(plurality_preds: dict, definiteness_preds: dict) -> dict:
    """Pair per-id binary predictions into 4-way labels.

    Both inputs must cover exactly the same instance ids.
    """
    missing_def = sorted(set(plurality_preds) - set(definiteness_preds))
    missing_plur = sorted(set(definiteness_preds) - set(plurality_preds))
    if missing_def or missing_plur:
        raise EvaluationError(
            "instance id mismatch: "
            f"missing from definiteness={missing_def}, missing from plurality={missing_plur}"
        )
    return {
        iid: fourway_label(definiteness_preds[iid], plurality_preds[iid])
        for iid in plurality_preds
    }


def marginalize(matrix: ConfusionMatrix, dimension: str) -> ConfusionMatrix:
    """Collapse a 4-way confusion matrix onto one binary dimension."""
    if dimension == "plurality":
        classes = PLURALITY_CLASSES
        component = 1
    elif dimension == "definiteness":
        classes = DEFINITENESS_CLASSES
        component = 0
    else:
        raise EvaluationError(f"unknown dimension {dimension!r}")
    index = {c: k for k, c in enumerate(classes)}
    counts = [[0] * 2 for _ in range(2)]
    for g, gold_cls in enumerate(matrix.classes):
        for p, pred_cls in enumerate(matrix.classes):
            gi = index[fourway_components(gold_cls)[component]]
            pi = index[fourway_components(pred_cls)[component]]
            counts[gi][pi] += matrix.counts[g][p]
    return ConfusionMatrix(classes=classes, counts=tuple(tuple(r) for r in counts))


def subset_eval(golds, preds, mask, classes) -> dict:
    """Score the explicit (mask True) and implicit subsets independently.

    An empty subset reports None instead of raising.
    """
    golds, preds, mask = list(golds), list(preds), list(mask)
    if not (len(golds) == len(preds) == len(mask)):
        raise EvaluationError("golds, preds and mask must be aligned")
    out = {}
    for name, keep in (("explicit", True), ("implicit", False)):
        sub_g = [g for g, m in zip(golds, mask) if m is keep]
        sub_p = [p for p, m in zip(preds, mask) if m is keep]
        out[name] = metric_report(confusion(sub_g, sub_p, classes)) if sub_g else None
        out[f"n_{name}"] = len(sub_g)
    return out


@dataclass
class PredictionSet:
    task: str
    labels: dict  # id -> label
    scores: dict  # id -> {class: score}, empty when absent


def import_predictions(path, task: Optional[str] = None) -> PredictionSet:
    """Read a prediction file: one {"id","task","label","scores"?} per line.

    Duplicate ids, unknown labels, task mismatches and missing fields raise
    located errors; this is how externally produced model outputs enter the
    scoring pipeline.
    """
    labels = {}
    scores = {}
    file_task = task
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise EvaluationError(f"{path}:{lineno}: malformed JSON ({e.msg})") from e
            for fieldname in ("id", "task", "label"):
                if fieldname not in obj:
                    raise EvaluationError(f"{path}:{lineno}: missing field {fieldname!r}")
            if file_task is None:
                file_task = obj["task"]
                if file_task not in TASK_CLASSES:
                    raise EvaluationError(f"{path}:{lineno}: unknown task {file_task!r}")
            if obj["task"] != file_task:
                raise EvaluationError(
                    f"{path}:{lineno}: task {obj['task']!r} does not match {file_task!r}"
                )
            if obj["label"] not in TASK_CLASSES[file_task]:
                raise EvaluationError(f"{path}:{lineno}: unknown label {obj['label']!r}")
            if obj["id"] in labels:
                raise EvaluationError(f"{path}:{lineno}: duplicate id {obj['id']!r}")
            labels[obj["id"]] = obj["label"]
            if "scores" in obj:
                scores[obj["id"]] = obj["scores"]
    if file_task is None:
        raise EvaluationError(f"{path}: empty prediction file")
    return PredictionSet(task=file_task, labels=labels, scores=scores)
