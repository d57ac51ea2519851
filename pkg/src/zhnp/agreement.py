"""Scoring of human-assessment sessions: Acc=2, Acc>=1, percentage
agreement, and Cohen's kappa.

Yes/no answers are first translated into the label space ("the corpus says
plural, the annotator said yes" becomes an annotation of plural); kappa is
computed on these translated labels, never on the raw yes/no decisions,
whose skewed marginals would distort it. Items with a skip answer or
without exactly two judgments are excluded from all statistics and tallied.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional

from .corpus import AssessmentRecord

DIMENSIONS = ("np_identification", "plurality", "definiteness")

_OPPOSITE = {
    "singular": "plural",
    "plural": "singular",
    "definite": "indefinite",
    "indefinite": "definite",
    "yes": "no",
    "no": "yes",
}


def translate_decisions(record: AssessmentRecord, dataset_label: str,
                        dimension: str) -> Optional[str]:
    """Annotator's label for one dimension, or None for a skipped answer.

    A1: a positive answer means the annotator agrees with the dataset label,
    a negative one means the opposite label. A2 labels pass through.
    """
    if dimension not in DIMENSIONS:
        raise ValueError(f"unknown dimension {dimension!r}")
    if record.protocol == "A1":
        answer = {
            "np_identification": record.np_ok,
            "plurality": record.plurality_ok,
            "definiteness": record.definiteness_ok,
        }[dimension]
        if answer == "none":
            return None
        return dataset_label if answer == "yes" else _OPPOSITE[dataset_label]
    if dimension == "np_identification":
        raise ValueError("NP identification is only assessed under protocol A1")
    label = record.plurality_label if dimension == "plurality" else record.definiteness_label
    return None if label == "none" else label


@dataclass
class ItemLabels:
    """Translated annotator labels per item, with exclusion tallies."""

    labels: dict  # item_id -> [annotator labels]
    skipped_answers: int


def collect_item_labels(records: Iterable[AssessmentRecord], dataset_labels: dict,
                        dimension: str) -> ItemLabels:
    labels = defaultdict(list)
    skipped = 0
    for rec in records:
        translated = translate_decisions(rec, dataset_labels[rec.item_id], dimension)
        if translated is None:
            skipped += 1
            continue
        labels[rec.item_id].append(translated)
    return ItemLabels(labels=dict(labels), skipped_answers=skipped)


def _valid_items(item_labels: ItemLabels):
    valid = {iid: ls for iid, ls in item_labels.labels.items() if len(ls) == 2}
    excluded = len(item_labels.labels) - len(valid)
    return valid, excluded


@dataclass
class AccResult:
    acc_2: Optional[float]
    acc_ge1: Optional[float]
    n_items: int
    excluded_items: int


def acc_k(item_labels: ItemLabels, dataset_labels: dict) -> AccResult:
    """Acc=2 and Acc>=1 against the dataset labels.

    Acc=2 is the fraction of items where both annotator labels equal the
    dataset label, Acc>=1 where at least one does. Items without exactly two
    labels are excluded and counted.
    """
    valid, excluded = _valid_items(item_labels)
    if not valid:
        return AccResult(acc_2=None, acc_ge1=None, n_items=0, excluded_items=excluded)
    both = sum(1 for iid, ls in valid.items() if all(l == dataset_labels[iid] for l in ls))
    one = sum(1 for iid, ls in valid.items() if any(l == dataset_labels[iid] for l in ls))
    n = len(valid)
    return AccResult(acc_2=both / n, acc_ge1=one / n, n_items=n, excluded_items=excluded)


def percent_agreement(item_labels: ItemLabels) -> Optional[float]:
    """Fraction of items on which the two annotators gave the same label."""
    valid, _ = _valid_items(item_labels)
    if not valid:
        return None
    return sum(1 for ls in valid.values() if ls[0] == ls[1]) / len(valid)


def kappa_pairs(item_labels: ItemLabels) -> list:
    valid, _ = _valid_items(item_labels)
    return [tuple(ls) for _, ls in sorted(valid.items())]


def cohens_kappa(pairs) -> Optional[float]:
    """Chance-corrected agreement (p_o - p_e) / (1 - p_e) over label pairs.

    p_e comes from the two annotators' marginal label distributions. Returns
    None when p_e = 1 (both annotators constant and identical), where kappa
    is undefined.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("cohens_kappa requires at least one label pair")
    n = len(pairs)
    p_o = sum(1 for a, b in pairs if a == b) / n
    marg_a = defaultdict(int)
    marg_b = defaultdict(int)
    for a, b in pairs:
        marg_a[a] += 1
        marg_b[b] += 1
    classes = set(marg_a) | set(marg_b)
    p_e = sum((marg_a[c] / n) * (marg_b[c] / n) for c in classes)
    if p_e == 1.0:
        return None
    return (p_o - p_e) / (1.0 - p_e)


def assessment_report(records: Iterable[AssessmentRecord], dataset: dict) -> dict:
    """Report with one row per (protocol, dimension): Acc=2, Acc>=1,
    percentage agreement, and kappa.

    `dataset` maps item id to its AnnotatedNP. NP identification rows use
    "yes" as the reference label and carry no kappa (their yes/no answers
    have no label translation of their own).
    """
    by_protocol = defaultdict(list)
    for rec in records:
        by_protocol[rec.protocol].append(rec)
    report = {}
    for protocol in ("A1", "A2"):
        if protocol not in by_protocol:
            continue
        recs = by_protocol[protocol]
        rows = {}
        dims = DIMENSIONS if protocol == "A1" else ("plurality", "definiteness")
        for dim in dims:
            if dim == "np_identification":
                labels = {rec.item_id: "yes" for rec in recs}
            elif dim == "plurality":
                labels = {rec.item_id: dataset[rec.item_id].plurality.value for rec in recs}
            else:
                labels = {rec.item_id: dataset[rec.item_id].definiteness.value for rec in recs}
            item_labels = collect_item_labels(recs, labels, dim)
            acc = acc_k(item_labels, labels)
            pairs = kappa_pairs(item_labels)
            rows[dim] = {
                "acc_2": acc.acc_2,
                "acc_ge1": acc.acc_ge1,
                "iaa_pct": percent_agreement(item_labels),
                "iaa_kappa": (
                    None if dim == "np_identification" or not pairs
                    else cohens_kappa(pairs)
                ),
                "n_items": acc.n_items,
                "excluded_items": acc.excluded_items,
                "skipped_answers": item_labels.skipped_answers,
            }
        report[protocol] = rows
    return report
