"""Evaluation: per-entry macro scores, label metrics, inter-annotator
agreement.

Alignment quality is scored per entry pair and averaged, so small and
large entries count equally: an entry's precision and recall come from
its own link sets, undefined ratios score 0, and accuracy counts
unlinked candidate pairs as true negatives.  Label-level metrics and a
chance-corrected agreement coefficient (observed versus expected
disagreement over a coincidence matrix) cover classifier outputs and
multi-annotator studies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from .errors import EmptyInput, InsufficientData, LengthMismatch, UnknownLabel
from .lexdata import EntryPair, SemanticRelation


@dataclass
class EntryCounts:
    """Link-level contingency counts for one entry pair."""

    tp: int
    fp: int
    fn: int
    tn: int

    def precision(self) -> float:
        return self.tp / (self.tp + self.fp) if (self.tp + self.fp) else 0.0

    def recall(self) -> float:
        return self.tp / (self.tp + self.fn) if (self.tp + self.fn) else 0.0

    def f_measure(self) -> float:
        p, r = self.precision(), self.recall()
        return 2 * p * r / (p + r) if (p + r) else 0.0

    def accuracy(self) -> float:
        total = self.tp + self.fp + self.fn + self.tn
        return (self.tp + self.tn) / total if total else 1.0


def macro_scores(entries: list[EntryCounts]) -> dict[str, float]:
    """Arithmetic means of the per-entry scores."""
    if not entries:
        raise EmptyInput("no entries to average")
    return {
        "precision": sum(e.precision() for e in entries) / len(entries),
        "recall": sum(e.recall() for e in entries) / len(entries),
        "f_measure": sum(e.f_measure() for e in entries) / len(entries),
        "accuracy": sum(e.accuracy() for e in entries) / len(entries),
    }


def entry_counts(gold: EntryPair, predicted: EntryPair, typed: bool = True) -> EntryCounts:
    """Contingency counts between two versions of one entry.

    With ``typed`` a predicted link must also carry the gold relation
    to count as a true positive; otherwise endpoints suffice.
    """
    if gold.n_left != predicted.n_left or gold.n_right != predicted.n_right:
        raise LengthMismatch(
            f"entry {gold.lemma!r}: sense inventories disagree between gold and prediction"
        )

    def link_set(pair: EntryPair) -> set:
        if typed:
            return {(l.source, l.target, l.relation) for l in pair.links}
        return {(l.source, l.target) for l in pair.links}

    g = link_set(gold)
    p = link_set(predicted)
    tp = len(g & p)
    fp = len(p - g)
    fn = len(g - p)
    covered = {(x[0], x[1]) for x in (g | p)}
    tn = gold.candidate_count - len(covered)
    return EntryCounts(tp=tp, fp=fp, fn=fn, tn=tn)


def evaluate_alignment(
    gold_pairs: list[EntryPair],
    predicted_pairs: list[EntryPair],
    typed: bool = True,
) -> dict[str, float]:
    """Macro scores over parallel lists of gold and predicted entries."""
    if len(gold_pairs) != len(predicted_pairs):
        raise LengthMismatch("gold and prediction differ in entry count")
    counts = [
        entry_counts(g, p, typed=typed) for g, p in zip(gold_pairs, predicted_pairs)
    ]
    return macro_scores(counts)


@dataclass
class ConfusionMatrix:
    """Counts[gold class, predicted class] with a fixed class order."""

    classes: tuple
    counts: np.ndarray

    def row(self, cls) -> np.ndarray:
        return self.counts[self.classes.index(cls)]


def classification_metrics(
    gold: Sequence[Hashable],
    predicted: Sequence[Hashable],
    classes: Sequence[Hashable],
) -> tuple[dict[str, float], ConfusionMatrix]:
    """Micro accuracy, macro precision and recall, mean per-class F,
    plus the confusion matrix.

    Per-class ratios with empty denominators score 0 and still enter
    the macro averages.
    """
    if len(gold) != len(predicted):
        raise LengthMismatch("gold and prediction differ in length")
    if len(gold) == 0:
        raise EmptyInput("no labels to score")
    classes = tuple(classes)
    index = {c: i for i, c in enumerate(classes)}
    counts = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for g, p in zip(gold, predicted):
        if g not in index:
            raise UnknownLabel(f"gold label {g!r} is outside the class set")
        if p not in index:
            raise UnknownLabel(f"predicted label {p!r} is outside the class set")
        counts[index[g], index[p]] += 1
    accuracy = float(np.trace(counts)) / float(counts.sum())
    precisions, recalls, fs = [], [], []
    for i in range(len(classes)):
        tp = float(counts[i, i])
        fp = float(counts[:, i].sum() - tp)
        fn = float(counts[i, :].sum() - tp)
        p = tp / (tp + fp) if (tp + fp) else 0.0
        r = tp / (tp + fn) if (tp + fn) else 0.0
        f = 2 * p * r / (p + r) if (p + r) else 0.0
        precisions.append(p)
        recalls.append(r)
        fs.append(f)
    metrics = {
        "accuracy": accuracy,
        "macro_precision": float(np.mean(precisions)),
        "macro_recall": float(np.mean(recalls)),
        "mean_f_measure": float(np.mean(fs)),
    }
    return metrics, ConfusionMatrix(classes=classes, counts=counts)


def krippendorff_alpha(table: Sequence[Sequence[Hashable | None]]) -> float:
    """Agreement coefficient for nominal labels with missing values.

    ``table`` holds one row per unit and one column per annotator;
    ``None`` marks a missing judgement.  Units with fewer than two
    labels are ignored; fewer than two usable units raise
    :class:`InsufficientData`.  The coefficient is one minus the ratio
    of observed to expected disagreement, both read off the label
    coincidence matrix; identical labels disagree with weight 0,
    distinct ones with weight 1.  When expected disagreement vanishes
    (a single label value overall) the coefficient is 1.
    """
    usable = []
    for row in table:
        labels = [v for v in row if v is not None]
        if len(labels) >= 2:
            usable.append(labels)
    if len(usable) < 2:
        raise InsufficientData("need at least two units with two or more labels")
    coincidence: dict[tuple[Hashable, Hashable], float] = {}
    marginals: dict[Hashable, float] = {}
    for labels in usable:
        m_u = len(labels)
        share = 1.0 / (m_u - 1)
        for a in range(m_u):
            for b in range(m_u):
                if a == b:
                    continue
                key = (labels[a], labels[b])
                coincidence[key] = coincidence.get(key, 0.0) + share
    for (c, _), v in coincidence.items():
        marginals[c] = marginals.get(c, 0.0) + v
    n = sum(marginals.values())
    observed = sum(v for (c, k), v in coincidence.items() if c != k) / n
    expected = sum(
        marginals[c] * marginals[k]
        for c in marginals
        for k in marginals
        if c != k
    ) / (n * (n - 1))
    if expected == 0.0:
        return 1.0
    return 1.0 - observed / expected


def agreement_table_from_annotations(
    annotator_pairs: list[list[EntryPair]],
) -> list[list[str | None]]:
    """Units-by-annotators label table from parallel annotation files.

    Entries are matched across annotators by (lemma, pos); units are
    the candidate sense pairs of every entry seen by any annotator.
    An annotator who has the entry labels each candidate pair with the
    linked relation or "none"; an annotator missing the entry
    contributes missing values.
    """
    if not annotator_pairs:
        raise EmptyInput("no annotators")
    maps = []
    for pairs in annotator_pairs:
        by_key: dict[tuple, dict[tuple, str]] = {}
        for pair in pairs:
            labels: dict[tuple, str] = {}
            for i, src in enumerate(pair.left):
                for j, tgt in enumerate(pair.right):
                    labels[(src.text, tgt.text)] = SemanticRelation.NONE.value
            for link in pair.links:
                labels[(pair.left[link.source].text, pair.right[link.target].text)] = (
                    link.relation.value
                )
            by_key[(pair.lemma, pair.pos.value)] = labels
        maps.append(by_key)
    unit_keys: list[tuple] = []
    seen = set()
    for by_key in maps:
        for entry_key, labels in by_key.items():
            for pair_key in labels:
                unit = entry_key + pair_key
                if unit not in seen:
                    seen.add(unit)
                    unit_keys.append(unit)
    table: list[list[str | None]] = []
    for unit in unit_keys:
        entry_key, pair_key = unit[:2], unit[2:]
        row: list[str | None] = []
        for by_key in maps:
            labels = by_key.get(entry_key)
            row.append(labels.get(pair_key) if labels else None)
        table.append(row)
    return table
