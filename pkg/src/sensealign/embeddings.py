"""Word vector tables and embedding based definition similarity."""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .errors import EmptyFile, InconsistentDimension, MissingFile


class EmbeddingTable:
    """Immutable token to vector map with case-folded lookup."""

    def __init__(self, vectors: dict[str, np.ndarray], dim: int):
        self.dim = dim
        self._vectors = vectors

    def __len__(self) -> int:
        return len(self._vectors)

    def __contains__(self, token: str) -> bool:
        return token.lower() in self._vectors

    def lookup(self, token: str) -> np.ndarray | None:
        return self._vectors.get(token.lower())


def load_embeddings(path: str, limit: int | None = None) -> EmbeddingTable:
    """Read a text embedding file: one token plus its components per line,
    whitespace separated, with an optional two-integer count/dim header.

    The first occurrence of a token wins.  ``limit`` caps the number of
    vectors read.
    """
    vectors: dict[str, np.ndarray] = {}
    dim: int | None = None
    try:
        fh = open(path, encoding="utf-8")
    except FileNotFoundError as exc:
        raise MissingFile(str(exc)) from exc
    with fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.rstrip("\n").split()
            if not parts:
                continue
            if lineno == 1 and len(parts) == 2:
                try:
                    int(parts[0]), int(parts[1])
                    continue  # header row
                except ValueError:
                    pass
            token = parts[0].lower()
            try:
                vec = np.asarray([float(x) for x in parts[1:]], dtype=np.float64)
            except ValueError as exc:
                raise InconsistentDimension(f"{path}:{lineno}: bad component: {exc}") from exc
            if vec.size == 0:
                raise InconsistentDimension(f"{path}:{lineno}: no vector components")
            if dim is None:
                dim = int(vec.size)
            elif vec.size != dim:
                raise InconsistentDimension(
                    f"{path}:{lineno}: dimension {vec.size} != {dim}"
                )
            if token not in vectors:
                vectors[token] = vec
                if limit is not None and len(vectors) >= limit:
                    break
    if not vectors or dim is None:
        raise EmptyFile(f"{path}: no vectors found")
    return EmbeddingTable(vectors, dim)


def load_stopwords(path: str) -> frozenset[str]:
    """One lowercased token per line; blank lines ignored."""
    try:
        fh = open(path, encoding="utf-8")
    except FileNotFoundError as exc:
        raise MissingFile(str(exc)) from exc
    with fh:
        return frozenset(w.strip().lower() for w in fh if w.strip())


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity, zero when either vector has zero norm."""
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def mean_vector(tokens: Sequence[str], table: EmbeddingTable) -> np.ndarray | None:
    """Mean of the vectors of in-vocabulary tokens, None when all are OOV."""
    found = [table.lookup(t) for t in tokens]
    found = [v for v in found if v is not None]
    if not found:
        return None
    return np.mean(np.stack(found), axis=0)


def definition_similarity(
    a_tokens: Sequence[str],
    b_tokens: Sequence[str],
    table: EmbeddingTable,
    stopwords: frozenset[str] = frozenset(),
) -> float:
    """Clamped cosine between the mean vectors of two token lists.

    Tokens listed in ``stopwords`` are dropped first; if either side
    has no in-vocabulary token left the similarity is 0.
    """
    if stopwords:
        a_tokens = [t for t in a_tokens if t not in stopwords]
        b_tokens = [t for t in b_tokens if t not in stopwords]
    va = mean_vector(a_tokens, table)
    vb = mean_vector(b_tokens, table)
    if va is None or vb is None:
        return 0.0
    return min(1.0, max(0.0, cosine(va, vb)))


def make_word_sim(table: EmbeddingTable) -> Callable[[str, str], float]:
    """Token-level similarity for alignment matrices.

    Identical tokens score 1 even when out of vocabulary; otherwise the
    clamped cosine of their vectors, 0 when either is missing.
    """

    def word_sim(a: str, b: str) -> float:
        if a == b:
            return 1.0
        va = table.lookup(a)
        vb = table.lookup(b)
        if va is None or vb is None:
            return 0.0
        return min(1.0, max(0.0, cosine(va, vb)))

    return word_sim
