"""Instance construction and the tabular feature set for sense pairs.

Every candidate sense pair becomes one instance.  Gold links carry
their label; the rest of the cross product is labelled NONE.  Labelled
instances can be augmented by mirroring: the reversed pair carries the
inverse relation, so narrower links seen from the other side become
broader ones.  The numeric table has 18 input columns (part of speech
one-hot, raw and content token counts for both sides, seven relation
weights, two embedding similarities) and three target columns (binary
link, five-class label, four-class label for linked pairs only).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .embeddings import EmbeddingTable, definition_similarity
from .errors import EmptyInput
from .lexdata import (
    ALL_RELATIONS,
    EntryPair,
    PartOfSpeech,
    SemanticRelation,
    Sense,
    SKOS_RELATIONS,
    content_tokens,
)
from .relations import RelationKind, RelationStore, relation_weight_features

POS_ORDER = tuple(PartOfSpeech)

FEATURE_COLUMNS = (
    "pos_noun",
    "pos_verb",
    "pos_adjective",
    "pos_adverb",
    "pos_other",
    "s_len_1",
    "s_len_2",
    "s_len_no_func_1",
    "s_len_no_func_2",
    "hypernymy",
    "hyponymy",
    "relatedness",
    "synonymy",
    "antonymy",
    "meronymy",
    "similarity",
    "sem_sim",
    "sem_sim_no_func",
)

TARGET_COLUMNS = ("sem_bin_rel", "sem_rel_with_none", "sem_rel")

N_FEATURES = len(FEATURE_COLUMNS)


@dataclass(frozen=True)
class Instance:
    """One labelled candidate pair, directional: source from the left
    inventory, target from the right (or swapped by augmentation)."""

    lemma: str
    pos: PartOfSpeech
    source: Sense
    target: Sense
    relation: SemanticRelation

    def key(self) -> tuple:
        """Identity used for deduplication."""
        return (self.pos, self.source.text, self.target.text, self.relation)


def build_instances(pairs: list[EntryPair], include_none: bool = True) -> list[Instance]:
    """One instance per candidate sense pair of every entry.

    Pairs covered by a gold link take its relation; the rest of the
    cross product is labelled NONE when ``include_none`` is set and
    dropped otherwise.
    """
    out: list[Instance] = []
    for pair in pairs:
        gold: dict[tuple[int, int], SemanticRelation] = {}
        for link in pair.links:
            gold.setdefault((link.source, link.target), link.relation)
        for i, src in enumerate(pair.left):
            for j, tgt in enumerate(pair.right):
                rel = gold.get((i, j))
                if rel is None:
                    if not include_none:
                        continue
                    rel = SemanticRelation.NONE
                out.append(Instance(pair.lemma, pair.pos, src, tgt, rel))
    return out


def augment(instances: list[Instance]) -> list[Instance]:
    """Mirror labelled instances and deduplicate.

    Every instance with a non-NONE relation also appears reversed with
    the inverse relation.  Exact duplicate tuples (pos, source text,
    target text, relation) are kept once, first occurrence wins.
    """
    seen: set[tuple] = set()
    out: list[Instance] = []

    def push(inst: Instance) -> None:
        k = inst.key()
        if k not in seen:
            seen.add(k)
            out.append(inst)

    for inst in instances:
        push(inst)
        if inst.relation is not SemanticRelation.NONE:
            push(
                Instance(
                    lemma=inst.lemma,
                    pos=inst.pos,
                    source=inst.target,
                    target=inst.source,
                    relation=inst.relation.inverse(),
                )
            )
    return out


class FeatureExtractor:
    """Maps instances to the fixed numeric column layout.

    Embeddings and the relation store are optional; absent resources
    contribute zero-valued columns so the layout never changes.
    """

    def __init__(
        self,
        embeddings: EmbeddingTable | None = None,
        relations: RelationStore | None = None,
        stopwords: frozenset[str] = frozenset(),
    ):
        self.embeddings = embeddings
        self.relations = relations if relations is not None else RelationStore()
        self.stopwords = stopwords

    def extract(self, inst: Instance) -> np.ndarray:
        row = np.zeros(N_FEATURES, dtype=np.float64)
        row[POS_ORDER.index(inst.pos)] = 1.0
        src_tokens = inst.source.tokens
        tgt_tokens = inst.target.tokens
        row[5] = len(src_tokens)
        row[6] = len(tgt_tokens)
        row[7] = len(content_tokens(src_tokens, self.stopwords))
        row[8] = len(content_tokens(tgt_tokens, self.stopwords))
        rel_weights = relation_weight_features(src_tokens, tgt_tokens, self.relations, self.stopwords)
        for offset, kind in enumerate(RelationKind):
            row[9 + offset] = rel_weights[kind]
        if self.embeddings is not None:
            row[16] = definition_similarity(src_tokens, tgt_tokens, self.embeddings)
            row[17] = definition_similarity(src_tokens, tgt_tokens, self.embeddings, self.stopwords)
        return row

    def targets(self, inst: Instance) -> np.ndarray:
        """(binary link, five-class index, four-class index or -1)."""
        is_link = inst.relation is not SemanticRelation.NONE
        with_none = ALL_RELATIONS.index(inst.relation)
        skos = SKOS_RELATIONS.index(inst.relation) if is_link else -1
        return np.asarray([int(is_link), with_none, skos], dtype=np.int64)

    def extract_matrix(self, instances: list[Instance]) -> tuple[np.ndarray, np.ndarray]:
        if not instances:
            raise EmptyInput("no instances to extract")
        X = np.stack([self.extract(inst) for inst in instances])
        Y = np.stack([self.targets(inst) for inst in instances])
        return X, Y


def write_csv(instances: list[Instance], extractor: FeatureExtractor, path: str) -> None:
    """Write the feature table with a header row; the four-class target
    is blank for NONE rows."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(FEATURE_COLUMNS + TARGET_COLUMNS)
        for inst in instances:
            row = [repr(float(v)) for v in extractor.extract(inst)]
            t = extractor.targets(inst)
            row.append(str(int(t[0])))
            row.append(ALL_RELATIONS[t[1]].value)
            row.append(SKOS_RELATIONS[t[2]].value if t[2] >= 0 else "")
            writer.writerow(row)


class MinMaxScaler:
    """Column-wise min-max scaling fitted on one split.

    Constant columns map to 0; transforms of unseen data are clamped
    to [0, 1].  ``inverse_transform`` undoes the scaling exactly for
    values seen at fit time.
    """

    def __init__(self) -> None:
        self.mins_: np.ndarray | None = None
        self.maxs_: np.ndarray | None = None

    def fit(self, X: np.ndarray) -> "MinMaxScaler":
        X = np.asarray(X, dtype=np.float64)
        if X.size == 0:
            raise EmptyInput("cannot fit a scaler on an empty matrix")
        self.mins_ = X.min(axis=0)
        self.maxs_ = X.max(axis=0)
        return self

    def _ranges(self) -> np.ndarray:
        ranges = self.maxs_ - self.mins_
        return np.where(ranges == 0, 1.0, ranges)

    def transform(self, X: np.ndarray) -> np.ndarray:
        if self.mins_ is None:
            raise ValueError("scaler is not fitted")
        X = np.asarray(X, dtype=np.float64)
        scaled = (X - self.mins_) / self._ranges()
        return np.clip(scaled, 0.0, 1.0)

    def fit_transform(self, X: np.ndarray) -> np.ndarray:
        return self.fit(X).transform(X)

    def inverse_transform(self, X: np.ndarray) -> np.ndarray:
        if self.mins_ is None:
            raise ValueError("scaler is not fitted")
        return np.asarray(X, dtype=np.float64) * self._ranges() + self.mins_


@dataclass
class ScaledDataset:
    """Shuffled, scaled and split feature table."""

    X_train: np.ndarray
    X_valid: np.ndarray
    X_test: np.ndarray
    y_train: np.ndarray
    y_valid: np.ndarray
    y_test: np.ndarray
    train_idx: np.ndarray
    valid_idx: np.ndarray
    test_idx: np.ndarray
    scaler: MinMaxScaler = field(repr=False, default_factory=MinMaxScaler)


def scale_and_split(
    X: np.ndarray,
    Y: np.ndarray,
    seed: int = 0,
    ratios: tuple[float, float, float] = (0.8, 0.1, 0.1),
) -> ScaledDataset:
    """Shuffle rows with a seeded permutation, split into train,
    validation and test partitions, and min-max scale every partition
    with statistics taken from the training columns only.

    Split sizes are floors of the ratios; the test partition absorbs
    the remainder.
    """
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y)
    n = X.shape[0]
    if n == 0:
        raise EmptyInput("cannot split an empty table")
    if abs(sum(ratios) - 1.0) > 1e-9 or any(r < 0 for r in ratios):
        raise ValueError(f"ratios must be non-negative and sum to 1, got {ratios}")
    rng = np.random.RandomState(seed)
    perm = rng.permutation(n)
    n_train = int(n * ratios[0])
    n_valid = int(n * ratios[1])
    train_idx = perm[:n_train]
    valid_idx = perm[n_train : n_train + n_valid]
    test_idx = perm[n_train + n_valid :]
    scaler = MinMaxScaler().fit(X[train_idx]) if len(train_idx) else MinMaxScaler().fit(X)
    return ScaledDataset(
        X_train=scaler.transform(X[train_idx]),
        X_valid=scaler.transform(X[valid_idx]) if len(valid_idx) else X[valid_idx].reshape(0, X.shape[1]),
        X_test=scaler.transform(X[test_idx]) if len(test_idx) else X[test_idx].reshape(0, X.shape[1]),
        y_train=Y[train_idx],
        y_valid=Y[valid_idx],
        y_test=Y[test_idx],
        train_idx=train_idx,
        valid_idx=valid_idx,
        test_idx=test_idx,
        scaler=scaler,
    )
