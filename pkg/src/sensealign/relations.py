"""Weighted lexical-semantic relations between tokens.

The store holds edge weights of seven kinds drawn from lexical graphs
such as wordnets or commonsense networks.  Symmetric kinds (synonymy,
relatedness, antonymy, similarity) are canonicalised on ingest so both
lookup orders agree; hypernymy, hyponymy and meronymy stay directional.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .errors import BadColumnCount, BadWeight, MissingFile
from .lexdata import EntryPair, Link, SemanticRelation, content_tokens


class RelationKind(Enum):
    """Feature column order follows the declaration order."""

    HYPERNYMY = "hypernymy"
    HYPONYMY = "hyponymy"
    RELATEDNESS = "relatedness"
    SYNONYMY = "synonymy"
    ANTONYMY = "antonymy"
    MERONYMY = "meronymy"
    SIMILARITY = "similarity"


SYMMETRIC_KINDS = frozenset(
    {
        RelationKind.RELATEDNESS,
        RelationKind.SYNONYMY,
        RelationKind.ANTONYMY,
        RelationKind.SIMILARITY,
    }
)


@dataclass
class RelationStore:
    """Accumulated edge weights keyed by (token, token, kind)."""

    language: str | None = None
    weights: dict[tuple[str, str, RelationKind], float] = field(default_factory=dict)
    skipped_kinds: Counter = field(default_factory=Counter)

    def _key(self, t1: str, t2: str, kind: RelationKind) -> tuple[str, str, RelationKind]:
        if kind in SYMMETRIC_KINDS and t2 < t1:
            t1, t2 = t2, t1
        return (t1, t2, kind)

    def add(self, kind: RelationKind, t1: str, t2: str, weight: float) -> None:
        """Accumulate weight onto an edge; repeated rows sum."""
        key = self._key(t1.strip().lower(), t2.strip().lower(), kind)
        self.weights[key] = self.weights.get(key, 0.0) + float(weight)

    def weight(self, t1: str, t2: str, kind: RelationKind) -> float:
        return self.weights.get(self._key(t1.lower(), t2.lower(), kind), 0.0)

    def __len__(self) -> int:
        return len(self.weights)


def ingest_edges(path: str, language: str | None = None, store: RelationStore | None = None) -> RelationStore:
    """Read a 4-column TSV of (kind, token, token, weight) rows.

    Rows with unknown kinds are skipped and counted on the returned
    store; a weight that fails to parse raises :class:`BadWeight`.
    """
    if store is None:
        store = RelationStore(language=language)
    kinds = {k.value: k for k in RelationKind}
    try:
        fh = open(path, encoding="utf-8")
    except FileNotFoundError as exc:
        raise MissingFile(str(exc)) from exc
    with fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) != 4:
                raise BadColumnCount(f"{path}:{lineno}: expected 4 columns, got {len(cols)}")
            kind_raw, t1, t2, weight_raw = cols
            kind = kinds.get(kind_raw.strip().lower())
            if kind is None:
                store.skipped_kinds[kind_raw.strip().lower()] += 1
                continue
            try:
                weight = float(weight_raw)
            except ValueError as exc:
                raise BadWeight(f"{path}:{lineno}: bad weight {weight_raw!r}") from exc
            store.add(kind, t1, t2, weight)
    return store


def relation_weight_features(
    a_tokens: Sequence[str],
    b_tokens: Sequence[str],
    store: RelationStore,
    stopwords: frozenset[str] = frozenset(),
) -> dict[RelationKind, float]:
    """Per-kind total weight over all ordered content-token pairs
    (left token, right token), counting repeated tokens once per
    occurrence."""
    a_counts = Counter(content_tokens(tuple(a_tokens), stopwords))
    b_counts = Counter(content_tokens(tuple(b_tokens), stopwords))
    out = {kind: 0.0 for kind in RelationKind}
    for ta, ca in a_counts.items():
        for tb, cb in b_counts.items():
            for kind in RelationKind:
                w = store.weight(ta, tb, kind)
                if w != 0.0:
                    out[kind] += ca * cb * w
    return out


def synonym_flag(t1: str, t2: str, store: RelationStore) -> float:
    """1 when the store carries positive synonymy weight for the pair."""
    return 1.0 if store.weight(t1, t2, RelationKind.SYNONYMY) > 0 else 0.0


def hapax_link(pair: EntryPair) -> Link | None:
    """The forced link for single-sense inventories.

    When both dictionaries list exactly one sense for the headword the
    two senses are taken to match exactly; otherwise None.
    """
    if pair.n_left == 1 and pair.n_right == 1:
        return Link(source=0, target=0, relation=SemanticRelation.EXACT, score=1.0)
    return None
