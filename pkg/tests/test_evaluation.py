"""Entry-level alignment scoring, label metrics, and the agreement
coefficient, each checked against hand-computed values or a raw
pair-counting oracle."""

from collections import Counter

import numpy as np
import pytest

from sensealign.errors import EmptyInput, InsufficientData, LengthMismatch, UnknownLabel
from sensealign.evaluation import (
    ConfusionMatrix,
    EntryCounts,
    agreement_table_from_annotations,
    classification_metrics,
    entry_counts,
    evaluate_alignment,
    krippendorff_alpha,
    macro_scores,
)
from sensealign.lexdata import EntryPair, Link, PartOfSpeech, SemanticRelation, Sense


def alpha_oracle(table) -> float:
    """Chance-corrected agreement by counting raw label pairs."""
    units = [[v for v in row if v is not None] for row in table]
    units = [u for u in units if len(u) >= 2]
    n = sum(len(u) for u in units)
    d_o = 0.0
    for u in units:
        m = len(u)
        disagreements = sum(
            1.0 for a in range(m) for b in range(m) if a != b and u[a] != u[b]
        )
        d_o += disagreements / (m - 1)
    d_o /= n
    counts = Counter(v for u in units for v in u)
    d_e = sum(
        counts[c] * counts[k] for c in counts for k in counts if c != k
    ) / (n * (n - 1))
    if d_e == 0.0:
        return 1.0
    return 1.0 - d_o / d_e


def entry(n_left: int, n_right: int, links) -> EntryPair:
    return EntryPair(
        lemma="word",
        pos=PartOfSpeech.NOUN,
        left=tuple(Sense(text=f"left {i}") for i in range(n_left)),
        right=tuple(Sense(text=f"right {j}") for j in range(n_right)),
        links=[Link(source=s, target=t, relation=r) for s, t, r in links],
    )


E = SemanticRelation.EXACT
N = SemanticRelation.NARROWER
R = SemanticRelation.RELATED


class TestEntryCounts:
    def test_ratios_and_zero_conventions(self):
        c = EntryCounts(tp=3, fp=1, fn=2, tn=4)
        assert c.precision() == pytest.approx(3 / 4)
        assert c.recall() == pytest.approx(3 / 5)
        assert c.f_measure() == pytest.approx(2 * (3 / 4) * (3 / 5) / (3 / 4 + 3 / 5))
        assert c.accuracy() == pytest.approx(7 / 10)
        empty = EntryCounts(tp=0, fp=0, fn=0, tn=0)
        assert empty.precision() == 0.0
        assert empty.recall() == 0.0
        assert empty.f_measure() == 0.0
        assert empty.accuracy() == 1.0

    def test_typed_counting(self):
        gold = entry(2, 3, [(0, 0, E), (1, 1, N)])
        pred = entry(2, 3, [(0, 0, E), (1, 1, R), (1, 2, E)])
        c = entry_counts(gold, pred, typed=True)
        assert (c.tp, c.fp, c.fn, c.tn) == (1, 2, 1, 3)
        assert c.precision() == pytest.approx(1 / 3)
        assert c.recall() == pytest.approx(1 / 2)

    def test_untyped_counting(self):
        gold = entry(2, 3, [(0, 0, E), (1, 1, N)])
        pred = entry(2, 3, [(0, 0, E), (1, 1, R), (1, 2, E)])
        c = entry_counts(gold, pred, typed=False)
        assert (c.tp, c.fp, c.fn, c.tn) == (2, 1, 0, 3)

    def test_perfect_prediction(self):
        gold = entry(2, 2, [(0, 0, E), (1, 1, N)])
        c = entry_counts(gold, gold, typed=True)
        assert (c.tp, c.fp, c.fn, c.tn) == (2, 0, 0, 2)
        assert c.accuracy() == 1.0

    def test_inventory_disagreement_rejected(self):
        with pytest.raises(LengthMismatch):
            entry_counts(entry(2, 2, []), entry(2, 3, []))


class TestMacroScores:
    def test_averages(self):
        a = EntryCounts(tp=1, fp=0, fn=0, tn=0)  # p=r=1
        b = EntryCounts(tp=0, fp=1, fn=1, tn=0)  # p=r=0
        scores = macro_scores([a, b])
        assert scores["precision"] == pytest.approx(0.5)
        assert scores["recall"] == pytest.approx(0.5)
        assert scores["f_measure"] == pytest.approx(0.5)
        assert scores["accuracy"] == pytest.approx(0.5)

    def test_empty_rejected(self):
        with pytest.raises(EmptyInput):
            macro_scores([])

    def test_evaluate_alignment_wraps_entries(self):
        gold = [entry(1, 1, [(0, 0, E)]), entry(2, 2, [(0, 0, E)])]
        pred = [entry(1, 1, [(0, 0, E)]), entry(2, 2, [(0, 1, E)])]
        scores = evaluate_alignment(gold, pred)
        assert scores["precision"] == pytest.approx((1.0 + 0.0) / 2)
        with pytest.raises(LengthMismatch):
            evaluate_alignment(gold, pred[:1])


class TestClassificationMetrics:
    def test_hand_computed(self):
        gold = ["a", "a", "b", "c"]
        pred = ["a", "b", "b", "b"]
        metrics, cm = classification_metrics(gold, pred, classes=("a", "b", "c"))
        assert metrics["accuracy"] == pytest.approx(0.5)
        assert metrics["macro_precision"] == pytest.approx((1 + 1 / 3 + 0) / 3)
        assert metrics["macro_recall"] == pytest.approx((0.5 + 1 + 0) / 3)
        assert metrics["mean_f_measure"] == pytest.approx((2 / 3 + 0.5 + 0) / 3)
        np.testing.assert_array_equal(cm.counts, [[1, 1, 0], [0, 1, 0], [0, 1, 0]])
        np.testing.assert_array_equal(cm.row("a"), [1, 1, 0])

    def test_perfect_prediction(self):
        metrics, _ = classification_metrics([0, 1, 0], [0, 1, 0], classes=(0, 1))
        assert metrics["accuracy"] == 1.0
        assert metrics["macro_precision"] == 1.0
        assert metrics["mean_f_measure"] == 1.0

    def test_validation(self):
        with pytest.raises(LengthMismatch):
            classification_metrics([0], [0, 1], classes=(0, 1))
        with pytest.raises(EmptyInput):
            classification_metrics([], [], classes=(0, 1))
        with pytest.raises(UnknownLabel):
            classification_metrics([0, 2], [0, 0], classes=(0, 1))
        with pytest.raises(UnknownLabel):
            classification_metrics([0, 0], [0, 9], classes=(0, 1))

    def test_confusion_matrix_is_dataclass(self):
        _, cm = classification_metrics([0, 1], [1, 0], classes=(0, 1))
        assert isinstance(cm, ConfusionMatrix)
        assert cm.classes == (0, 1)


class TestKrippendorffAlpha:
    def test_perfect_agreement(self):
        table = [["a", "a"], ["b", "b"], ["a", "a"]]
        assert krippendorff_alpha(table) == pytest.approx(1.0)

    def test_systematic_flip_scores_minus_half(self):
        table = [["a", "b"], ["b", "a"]]
        assert krippendorff_alpha(table) == pytest.approx(-0.5)

    def test_half_agreement_scores_zero(self):
        table = [["a", "a"], ["a", "b"]]
        assert krippendorff_alpha(table) == pytest.approx(0.0)

    def test_single_value_overall(self):
        table = [["a", "a"], ["a", "a"]]
        assert krippendorff_alpha(table) == 1.0

    def test_missing_values_ignored_per_unit(self):
        table = [
            ["a", None, "a"],
            [None, "b", "b"],
            ["x", None, None],  # single label: dropped
            ["a", "b", None],
        ]
        trimmed = [["a", "a"], ["b", "b"], ["a", "b"]]
        assert krippendorff_alpha(table) == pytest.approx(alpha_oracle(trimmed))

    def test_insufficient_data(self):
        with pytest.raises(InsufficientData):
            krippendorff_alpha([["a", "a"]])
        with pytest.raises(InsufficientData):
            krippendorff_alpha([["a", None], [None, "b"]])

    def test_matches_oracle_on_random_tables(self):
        rng = np.random.RandomState(223)
        labels = ["w", "x", "y", "z"]
        for _ in range(100):
            n_units = rng.randint(2, 12)
            n_ann = rng.randint(2, 5)
            table = []
            for _ in range(n_units):
                row = [
                    labels[rng.randint(len(labels))] if rng.rand() > 0.2 else None
                    for _ in range(n_ann)
                ]
                table.append(row)
            usable = sum(1 for row in table if sum(v is not None for v in row) >= 2)
            if usable < 2:
                continue
            assert krippendorff_alpha(table) == pytest.approx(
                alpha_oracle(table), abs=1e-9
            )

    def test_three_annotators_hand_value(self):
        # 3 annotators, 2 units; second unit splits two against one
        table = [["a", "a", "a"], ["a", "a", "b"]]
        assert krippendorff_alpha(table) == pytest.approx(alpha_oracle(table), abs=1e-12)
        # observed: unit2 has 4 disagreeing ordered pairs of 6, share 1/2 each
        # pooled counts a=5 b=1: expected = 10/30
        assert krippendorff_alpha(table) == pytest.approx(1 - (2 / 6) / (10 / 30))


class TestAgreementTable:
    def ann(self, relation: SemanticRelation, with_extra_entry: bool = True):
        pairs = [entry(1, 2, [(0, 0, relation)])]
        if with_extra_entry:
            extra = EntryPair(
                lemma="sail",
                pos=PartOfSpeech.VERB,
                left=(Sense(text="move by wind"),),
                right=(Sense(text="travel on water"),),
                links=[Link(source=0, target=0, relation=E)],
            )
            pairs.append(extra)
        return pairs

    def test_units_and_labels(self):
        table = agreement_table_from_annotations([self.ann(E), self.ann(N)])
        # 2 candidate pairs for "word" + 1 for "sail"
        assert len(table) == 3
        assert ["exact", "narrower"] in table
        assert ["none", "none"] in table
        assert ["exact", "exact"] in table

    def test_missing_entry_gives_missing_labels(self):
        table = agreement_table_from_annotations(
            [self.ann(E), self.ann(E, with_extra_entry=False)]
        )
        rows_with_none = [row for row in table if row[1] is None]
        assert len(rows_with_none) == 1
        assert rows_with_none[0][0] == "exact"

    def test_no_annotators_rejected(self):
        with pytest.raises(EmptyInput):
            agreement_table_from_annotations([])

    def test_feeds_alpha(self):
        table = agreement_table_from_annotations([self.ann(E), self.ann(E)])
        assert krippendorff_alpha(table) == 1.0
