"""Word alignment matrices between two definitions and the scalar
features read off them.

A matrix S holds word similarities s_ij in [0, 1] for the i-th token of
the left definition against the j-th token of the right one.  Feature
extractors summarise S into bounded scalars: row and column precision
fractions, p-norm summaries, and a Gaussian entropy that is low when
the matrix has sharp structure.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .errors import EmptyDefinition

WordSim = Callable[[str, str], float]


def build_matrix(a_tokens: Sequence[str], b_tokens: Sequence[str], word_sim: WordSim) -> np.ndarray:
    """Pairwise word similarity matrix, shape (len(a), len(b)).

    word_sim must return finite values in [0, 1]; entries are validated.
    """
    if len(a_tokens) == 0 or len(b_tokens) == 0:
        raise EmptyDefinition("cannot build an alignment matrix from an empty definition")
    S = np.empty((len(a_tokens), len(b_tokens)), dtype=np.float64)
    for i, ta in enumerate(a_tokens):
        for j, tb in enumerate(b_tokens):
            S[i, j] = word_sim(ta, tb)
    if not np.all(np.isfinite(S)) or np.any(S < 0):
        raise ValueError("word similarities must be finite and non-negative")
    return S


def precision_features(S: np.ndarray) -> dict[str, float]:
    """Fraction of rows (columns) holding a dominant cell, plus their
    harmonic mean.

    A row counts when some cell exceeds half of the row's mass;
    zero-mass rows never count.  The harmonic mean is 0 when both
    fractions are 0.
    """
    S = np.asarray(S, dtype=np.float64)
    n, m = S.shape

    def dominant_fraction(M: np.ndarray) -> float:
        hits = 0
        for row in M:
            total = float(row.sum())
            if total > 0 and float(row.max()) / total > 0.5:
                hits += 1
        return hits / M.shape[0]

    f = dominant_fraction(S)
    b = dominant_fraction(S.T)
    h = 0.0 if (f + b) == 0 else 2 * f * b / (f + b)
    return {"forward": f, "backward": b, "harmonic": h}


def _col_pmax(S: np.ndarray, p: float) -> float:
    n, m = S.shape
    total = 0.0
    for j in range(m):
        col = S[:, j]
        mass = float(col.sum())
        if mass > 0:
            total += (float(col.max()) / mass) ** p
    return (total ** (1.0 / p)) / m


def _col_pnorm(S: np.ndarray, p: float) -> float:
    n, m = S.shape
    total = 0.0
    for i in range(n):
        total += float(np.sum(S[i, :] ** p)) ** (1.0 / p)
    return total / n


def norm_features(S: np.ndarray, p: float = 2.0) -> dict[str, float]:
    """p-norm summaries of the matrix.

    ``col_pmax`` averages, over columns, the p-th powers of the largest
    column-normalised entry and takes the p-th root; ``col_pnorm``
    averages the p-norms of the rows.  Row variants apply the same two
    maps to the transpose.
    """
    if p <= 0:
        raise ValueError(f"p must be > 0, got {p}")
    S = np.asarray(S, dtype=np.float64)
    return {
        "col_pmax": _col_pmax(S, p),
        "col_pnorm": _col_pnorm(S, p),
        "row_pmax": _col_pmax(S.T, p),
        "row_pnorm": _col_pnorm(S.T, p),
    }


def gaussian_entropy(S: np.ndarray, eps: float = 1e-10) -> float:
    """Mean of -log(s^2) over all cells, with entries floored at ``eps``
    so zeros stay finite."""
    S = np.asarray(S, dtype=np.float64)
    clipped = np.maximum(S, eps)
    return float(np.mean(-2.0 * np.log(clipped)))


def monolingual_align(
    a_tokens: Sequence[str],
    b_tokens: Sequence[str],
    word_sim: WordSim,
    omega: float = 0.5,
    window: int = 2,
) -> np.ndarray:
    """Alignment matrix blending word similarity with the similarity of
    the surrounding context windows.

    s_ij = omega * word_sim(a_i, b_j) + (1 - omega) * context_sim where
    context_sim averages word_sim over the two windows of up to
    ``window`` tokens on each side of the focus tokens (clipped at the
    boundaries, focus excluded).  An empty window on either side makes
    context_sim 0.
    """
    if not 0.0 <= omega <= 1.0:
        raise ValueError(f"omega must be in [0, 1], got {omega}")
    if window < 0:
        raise ValueError(f"window must be >= 0, got {window}")
    if len(a_tokens) == 0 or len(b_tokens) == 0:
        raise EmptyDefinition("cannot align empty definitions")

    def ctx(tokens: Sequence[str], idx: int) -> list[str]:
        lo = max(0, idx - window)
        return list(tokens[lo:idx]) + list(tokens[idx + 1 : idx + 1 + window])

    S = np.empty((len(a_tokens), len(b_tokens)), dtype=np.float64)
    for i, ta in enumerate(a_tokens):
        wa = ctx(a_tokens, i)
        for j, tb in enumerate(b_tokens):
            wb = ctx(b_tokens, j)
            if wa and wb:
                total = 0.0
                for x in wa:
                    for y in wb:
                        total += word_sim(x, y)
                context = total / (len(wa) * len(wb))
            else:
                context = 0.0
            S[i, j] = omega * word_sim(ta, tb) + (1.0 - omega) * context
    return S
