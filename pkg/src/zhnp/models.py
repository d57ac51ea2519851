"""Context-window classifiers for plurality, definiteness, and joint 4-way
prediction.

Instances are the Chinese sentence with the target NP delimited by two `*`
markers, optionally flanked by k sentences of document context on each side.
Features are word-level n-grams (orders 1..4 by default, markers included)
over the full marked sequence. Training is deliberately full-batch and
deterministic: the same data, config and seed produce bit-identical weights,
which keeps every downstream artifact reproducible.
"""

from __future__ import annotations

import json
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, asdict
from typing import Iterable, Optional

import numpy as np
from scipy import sparse

from .corpus import AnnotatedNP, ParallelSentence
from .metrics import TASK_CLASSES, fourway_label

MARKER = "*"


class TrainingError(ValueError):
    pass


@dataclass(frozen=True)
class MarkedInstance:
    """Token sequence with the target NP delimited by two `*` markers."""

    id: str
    tokens: tuple
    label: Optional[str]
    context_size: int

    def __post_init__(self):
        marks = [i for i, t in enumerate(self.tokens) if t == MARKER]
        if len(marks) != 2:
            raise ValueError(f"instance {self.id}: expected 2 markers, got {len(marks)}")
        if marks[1] - marks[0] < 2:
            raise ValueError(f"instance {self.id}: empty NP between markers")


class CorpusIndex:
    """Sentence lookup by id and by document order, for context windows."""

    def __init__(self, sentences: Iterable[ParallelSentence]):
        self.by_id = {}
        self._by_doc_pos = {}
        self._doc_positions = {}
        for sent in sentences:
            self.by_id[sent.id] = sent
            self._by_doc_pos[(sent.doc_id, sent.position)] = sent
            self._doc_positions.setdefault(sent.doc_id, []).append(sent.position)
        for positions in self._doc_positions.values():
            positions.sort()

    def sentence(self, sent_id: str) -> ParallelSentence:
        if sent_id not in self.by_id:
            raise KeyError(f"unresolvable sentence id {sent_id!r}")
        return self.by_id[sent_id]

    def window(self, sent: ParallelSentence, k: int) -> tuple:
        """The k nearest preceding and following sentences within the document."""
        positions = self._doc_positions[sent.doc_id]
        at = bisect_left(positions, sent.position)
        before = [self._by_doc_pos[(sent.doc_id, p)] for p in positions[max(0, at - k):at]]
        after = [self._by_doc_pos[(sent.doc_id, p)] for p in positions[at + 1:at + 1 + k]]
        return before, after


def build_context(record: AnnotatedNP, index: CorpusIndex, k: int) -> MarkedInstance:
    """Marked token sequence: k sentences before, the marked target sentence,
    k sentences after, truncated at document boundaries."""
    if k < 0:
        raise ValueError("context size must be >= 0")
    sent = index.sentence(record.sent_id)
    if MARKER in sent.zh_tokens:
        raise ValueError(f"sentence {sent.id} already contains the marker token")
    span = record.zh_span
    target = list(sent.zh_tokens)
    target.insert(span.end, MARKER)
    target.insert(span.start, MARKER)
    tokens = []
    if k > 0:
        before, after = index.window(sent, k)
        for s in before:
            tokens.extend(s.zh_tokens)
        tokens.extend(target)
        for s in after:
            tokens.extend(s.zh_tokens)
    else:
        tokens = target
    return MarkedInstance(id=record.id, tokens=tuple(tokens), label=None, context_size=k)


def task_label(record: AnnotatedNP, task: str) -> str:
    if task == "plurality":
        return record.plurality.value
    if task == "definiteness":
        return record.definiteness.value
    if task == "fourway":
        return fourway_label(record.definiteness.value, record.plurality.value)
    raise ValueError(f"unknown task {task!r}")


def labeled_instances(records, index: CorpusIndex, k: int, task: str) -> list:
    out = []
    for record in records:
        inst = build_context(record, index, k)
        out.append(MarkedInstance(inst.id, inst.tokens, task_label(record, task), k))
    return out


def featurize(instance: MarkedInstance, orders=(1, 2, 3, 4)) -> dict:
    """N-gram counts over the marked token sequence.

    Feature ids carry an order prefix ("2|我 爱"); markers participate like
    any other token. Sequences shorter than an order contribute nothing for
    it. Counts are accumulation-order independent by construction.
    """
    counts = Counter()
    tokens = instance.tokens
    for n in orders:
        for i in range(len(tokens) - n + 1):
            counts[f"{n}|" + " ".join(tokens[i:i + n])] += 1
    return dict(counts)


def build_vocabulary(instances, orders, min_freq: int) -> dict:
    """Feature -> column index, from training instances only.

    Features occurring fewer than min_freq times in total are cut; the
    surviving features are indexed in sorted order for determinism.
    """
    totals = Counter()
    for inst in instances:
        totals.update(featurize(inst, orders))
    kept = sorted(f for f, c in totals.items() if c >= min_freq)
    return {f: i for i, f in enumerate(kept)}


def vectorize(instances, vocab: dict, orders) -> sparse.csr_matrix:
    """Sparse count matrix; features outside the vocabulary are dropped."""
    indptr = [0]
    indices = []
    data = []
    for inst in instances:
        feats = featurize(inst, orders)
        cols = sorted(
            (vocab[f], c) for f, c in feats.items() if f in vocab
        )
        indices.extend(i for i, _ in cols)
        data.extend(c for _, c in cols)
        indptr.append(len(indices))
    return sparse.csr_matrix(
        (np.asarray(data, dtype=np.float64), indices, indptr),
        shape=(len(instances), len(vocab)),
    )


@dataclass
class TrainConfig:
    learning_rate: float = 0.5
    epochs: int = 300
    l2: float = 1e-4
    seed: int = 0
    min_freq: int = 2
    orders: tuple = (1, 2, 3, 4)

    def to_json(self) -> dict:
        obj = asdict(self)
        obj["orders"] = list(self.orders)
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "TrainConfig":
        obj = dict(obj)
        obj["orders"] = tuple(obj["orders"])
        return cls(**obj)


def logistic_loss_and_grad(weights, bias, X, y_index, l2):
    """L2-regularized multiclass negative log-likelihood and its gradient.

    weights is (C, D), bias (C,), X (n, D) sparse, y_index (n,) int class
    indices. Returns (loss, grad_weights, grad_bias). The bias is not
    regularized.
    """
    n = X.shape[0]
    scores = X @ weights.T + bias  # (n, C)
    scores -= scores.max(axis=1, keepdims=True)
    exp = np.exp(scores)
    probs = exp / exp.sum(axis=1, keepdims=True)
    log_lik = np.log(probs[np.arange(n), y_index])
    loss = -log_lik.mean() + 0.5 * l2 * float((weights * weights).sum())
    delta = probs.copy()
    delta[np.arange(n), y_index] -= 1.0
    grad_w = (delta.T @ X) / n + l2 * weights
    grad_w = np.asarray(grad_w)
    grad_b = delta.mean(axis=0)
    return loss, grad_w, grad_b


def hinge_loss_and_subgrad(weights, bias, X, y_sign, l2):
    """One-vs-rest L2-regularized hinge loss and a subgradient.

    y_sign is (n, C) with +1 for the gold class and -1 elsewhere. Margins at
    exactly 1 are treated as satisfied, which fixes the subgradient choice
    and keeps training deterministic.
    """
    n = X.shape[0]
    scores = X @ weights.T + bias
    margins = y_sign * scores
    hinge = np.maximum(0.0, 1.0 - margins)
    loss = hinge.sum() / n + 0.5 * l2 * float((weights * weights).sum())
    active = (margins < 1.0).astype(np.float64) * y_sign  # (n, C)
    grad_w = -(active.T @ X) / n + l2 * weights
    grad_w = np.asarray(grad_w)
    grad_b = -active.sum(axis=0) / n
    return loss, grad_w, grad_b


@dataclass
class LinearModel:
    task: str
    kind: str  # "logistic" | "linear-svm"
    classes: tuple
    vocab: dict
    weights: np.ndarray  # (C, D)
    bias: np.ndarray  # (C,)
    config: TrainConfig
    context_size: int = 0

    def save(self, path) -> None:
        obj = {
            "task": self.task,
            "kind": self.kind,
            "classes": list(self.classes),
            "context_size": self.context_size,
            "config": self.config.to_json(),
            "vocab": [f for f, _ in sorted(self.vocab.items(), key=lambda kv: kv[1])],
            "weights": self.weights.tolist(),
            "bias": self.bias.tolist(),
        }
        with open(path, "w", encoding="utf-8") as f:
            json.dump(obj, f, ensure_ascii=False)
            f.write("\n")

    @classmethod
    def load(cls, path) -> "LinearModel":
        with open(path, encoding="utf-8") as f:
            obj = json.load(f)
        return cls(
            task=obj["task"],
            kind=obj["kind"],
            classes=tuple(obj["classes"]),
            vocab={f: i for i, f in enumerate(obj["vocab"])},
            weights=np.asarray(obj["weights"], dtype=np.float64),
            bias=np.asarray(obj["bias"], dtype=np.float64),
            config=TrainConfig.from_json(obj["config"]),
            context_size=obj["context_size"],
        )


def train(instances, task: str, kind: str, config: Optional[TrainConfig] = None) -> LinearModel:
    """Fit a logistic or linear-SVM model by deterministic full-batch descent.

    The vocabulary is built from these (training) instances only. Training
    data must contain at least two classes; a non-finite loss aborts with
    diagnostics rather than returning garbage weights.
    """
    config = config or TrainConfig()
    if kind not in ("logistic", "linear-svm"):
        raise ValueError(f"unknown model kind {kind!r}")
    instances = list(instances)
    classes = TASK_CLASSES[task]
    present = {inst.label for inst in instances}
    unknown = present - set(classes)
    if unknown:
        raise TrainingError(f"labels {sorted(unknown)} not valid for task {task!r}")
    if len(present) < 2:
        raise TrainingError(f"training data contains a single class {sorted(present)}")
    vocab = build_vocabulary(instances, config.orders, config.min_freq)
    X = vectorize(instances, vocab, config.orders)
    class_index = {c: k for k, c in enumerate(classes)}
    y = np.asarray([class_index[inst.label] for inst in instances], dtype=np.int64)
    C, D = len(classes), len(vocab)
    weights = np.zeros((C, D), dtype=np.float64)
    bias = np.zeros(C, dtype=np.float64)
    if kind == "linear-svm":
        y_sign = -np.ones((len(instances), C), dtype=np.float64)
        y_sign[np.arange(len(instances)), y] = 1.0
    for epoch in range(config.epochs):
        if kind == "logistic":
            loss, grad_w, grad_b = logistic_loss_and_grad(weights, bias, X, y, config.l2)
        else:
            loss, grad_w, grad_b = hinge_loss_and_subgrad(weights, bias, X, y_sign, config.l2)
        if not np.isfinite(loss):
            raise TrainingError(
                f"non-finite loss at epoch {epoch} "
                f"(kind={kind}, lr={config.learning_rate}, l2={config.l2})"
            )
        weights -= config.learning_rate * grad_w
        bias -= config.learning_rate * grad_b
    return LinearModel(
        task=task,
        kind=kind,
        classes=tuple(classes),
        vocab=vocab,
        weights=weights,
        bias=bias,
        config=config,
        context_size=instances[0].context_size if instances else 0,
    )


def predict(model: LinearModel, instance: MarkedInstance) -> tuple:
    """(label, per-class scores) for one instance.

    Features missing from the model vocabulary are dropped. Logistic scores
    are probabilities; SVM scores are margins. Ties resolve to the first
    class in the model's fixed class order.
    """
    X = vectorize([instance], model.vocab, model.config.orders)
    scores = np.asarray(X @ model.weights.T).ravel() + model.bias
    if model.kind == "logistic":
        shifted = scores - scores.max()
        exp = np.exp(shifted)
        scores = exp / exp.sum()
    best = int(np.argmax(scores))
    return model.classes[best], {c: float(s) for c, s in zip(model.classes, scores)}


def write_predictions(model: LinearModel, instances, path) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as f:
        for inst in instances:
            label, scores = predict(model, inst)
            obj = {"id": inst.id, "task": model.task, "label": label, "scores": scores}
            f.write(json.dumps(obj, ensure_ascii=False) + "\n")
            count += 1
    return count
