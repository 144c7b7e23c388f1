"""Matching strategies that turn candidate scores into link sets.

Four strategies cover the toolkit:

* a greedy weighted bipartite b-matching that honours per-node degree
  upper bounds while sweeping edges by descending weight and fails
  loudly when degree lower bounds end up unsatisfied,
* an optimal one-to-one assignment (Hungarian method),
* a thresholded greedy one-to-one sweep,
* a beam search over typed link assignments with a taxonomic
  constraint on exact links.

All sweeps share one tie break: higher weight first, then lower left
index, then lower right index, so results are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import BadBounds, MatchingImpossible
from .lexdata import ALL_RELATIONS, EntryPair, Link, SemanticRelation
from .textsim import jaccard

_LOG_FLOOR = 1e-300


@dataclass
class DegreeBounds:
    """Per-node degree intervals for a bipartite matching."""

    left_lower: np.ndarray
    left_upper: np.ndarray
    right_lower: np.ndarray
    right_upper: np.ndarray

    @classmethod
    def uniform(cls, n_left: int, n_right: int, lower: int = 0, upper: int = 1) -> "DegreeBounds":
        return cls(
            left_lower=np.full(n_left, lower, dtype=np.int64),
            left_upper=np.full(n_left, upper, dtype=np.int64),
            right_lower=np.full(n_right, lower, dtype=np.int64),
            right_upper=np.full(n_right, upper, dtype=np.int64),
        )

    def validate(self, n_left: int, n_right: int) -> None:
        for name, lower, upper, size in (
            ("left", self.left_lower, self.left_upper, n_left),
            ("right", self.right_lower, self.right_upper, n_right),
        ):
            lower = np.asarray(lower)
            upper = np.asarray(upper)
            if lower.shape != (size,) or upper.shape != (size,):
                raise BadBounds(f"{name} bounds must have length {size}")
            if np.any(lower < 0) or np.any(upper < lower):
                raise BadBounds(f"{name} bounds need 0 <= lower <= upper")


def _check_weights(weights: np.ndarray) -> np.ndarray:
    W = np.asarray(weights, dtype=np.float64)
    if W.ndim != 2:
        raise ValueError("weights must be a 2d matrix")
    if not np.all(np.isfinite(W)):
        raise ValueError("weights must be finite")
    return W


def _sorted_edges(W: np.ndarray) -> list[tuple[int, int]]:
    n, m = W.shape
    edges = [(i, j) for i in range(n) for j in range(m)]
    edges.sort(key=lambda e: (-W[e[0], e[1]], e[0], e[1]))
    return edges


def wbbm_greedy(weights: np.ndarray, bounds: DegreeBounds) -> list[tuple[int, int]]:
    """Greedy b-matching: sweep edges by descending weight, keep an
    edge whenever both endpoints are below their degree upper bound.

    After the sweep every node must meet its lower bound, otherwise
    :class:`MatchingImpossible` is raised.  The sweep is heuristic: a
    feasible matching may exist even when the greedy order misses it.
    """
    W = _check_weights(weights)
    n, m = W.shape
    bounds.validate(n, m)
    deg_left = np.zeros(n, dtype=np.int64)
    deg_right = np.zeros(m, dtype=np.int64)
    kept: list[tuple[int, int]] = []
    for i, j in _sorted_edges(W):
        if deg_left[i] < bounds.left_upper[i] and deg_right[j] < bounds.right_upper[j]:
            kept.append((i, j))
            deg_left[i] += 1
            deg_right[j] += 1
    if np.any(deg_left < bounds.left_lower) or np.any(deg_right < bounds.right_lower):
        raise MatchingImpossible("degree lower bounds unsatisfied after the greedy sweep")
    return kept


def hungarian(weights: np.ndarray) -> list[tuple[int, int]]:
    """Maximum-total-weight one-to-one assignment.

    Rectangular inputs behave as if padded with zero-weight dummy rows
    or columns whose matches are dropped: min(N, M) real pairs return.
    """
    W = _check_weights(weights)
    rows, cols = linear_sum_assignment(W, maximize=True)
    return sorted(zip(rows.tolist(), cols.tolist()))


def greedy_bijective(weights: np.ndarray, threshold: float = 0.0) -> list[tuple[int, int]]:
    """Greedy one-to-one sweep keeping pairs at or above the threshold."""
    W = _check_weights(weights)
    n, m = W.shape
    used_left = np.zeros(n, dtype=bool)
    used_right = np.zeros(m, dtype=bool)
    kept: list[tuple[int, int]] = []
    for i, j in _sorted_edges(W):
        if W[i, j] < threshold:
            break
        if not used_left[i] and not used_right[j]:
            kept.append((i, j))
            used_left[i] = True
            used_right[j] = True
    return kept


class TaxonomicConstraint:
    """Each source sense may carry at most one exact link."""

    def initial(self) -> frozenset:
        return frozenset()

    def allows(self, used_exact: frozenset, i: int, j: int, rel: SemanticRelation) -> bool:
        if rel is SemanticRelation.EXACT and i in used_exact:
            return False
        return True

    def update(self, used_exact: frozenset, i: int, j: int, rel: SemanticRelation) -> frozenset:
        if rel is SemanticRelation.EXACT:
            return used_exact | {i}
        return used_exact


class NoConstraint:
    """Every assignment is allowed."""

    def initial(self) -> frozenset:
        return frozenset()

    def allows(self, state: frozenset, i: int, j: int, rel: SemanticRelation) -> bool:
        return True

    def update(self, state: frozenset, i: int, j: int, rel: SemanticRelation) -> frozenset:
        return state


def beam_match(
    class_scores: np.ndarray,
    beam_width: int = 4,
    constraint: TaxonomicConstraint | NoConstraint | None = None,
) -> list[Link]:
    """Jointly label every candidate pair with a relation (NONE allowed)
    maximising the summed log scores, subject to the constraint.

    ``class_scores`` has shape (n_left, n_right, n_classes) with class
    order matching the relation declaration order.  Pairs are visited
    in row-major order with a fixed-width beam; with width one this is
    a greedy constrained argmax per pair.  Ties prefer the earlier
    relation.  Links are emitted for non-NONE assignments; the class
    breakdown is attached when the chosen relation is its argmax.
    """
    scores = np.asarray(class_scores, dtype=np.float64)
    if scores.ndim != 3 or scores.shape[2] != len(ALL_RELATIONS):
        raise ValueError(f"class_scores must be (n, m, {len(ALL_RELATIONS)})")
    if beam_width < 1:
        raise ValueError(f"beam_width must be >= 1, got {beam_width}")
    if constraint is None:
        constraint = TaxonomicConstraint()
    n, m, _ = scores.shape
    pairs = [(i, j) for i in range(n) for j in range(m)]
    # state: (total log score, relation indices chosen so far, constraint state)
    beam: list[tuple[float, tuple[int, ...], frozenset]] = [(0.0, (), constraint.initial())]
    for i, j in pairs:
        grown: list[tuple[float, tuple[int, ...], frozenset]] = []
        for total, chosen, state in beam:
            for k, rel in enumerate(ALL_RELATIONS):
                if not constraint.allows(state, i, j, rel):
                    continue
                grown.append(
                    (
                        total + math.log(max(float(scores[i, j, k]), _LOG_FLOOR)),
                        chosen + (k,),
                        constraint.update(state, i, j, rel),
                    )
                )
        grown.sort(key=lambda s: (-s[0], s[1]))
        beam = grown[:beam_width]
    if not beam:
        raise MatchingImpossible("constraint rejected every assignment")
    _, best, _ = beam[0]
    links: list[Link] = []
    for (i, j), k in zip(pairs, best):
        rel = ALL_RELATIONS[k]
        if rel is SemanticRelation.NONE:
            continue
        dist = {r: float(scores[i, j, idx]) for idx, r in enumerate(ALL_RELATIONS)}
        total_mass = sum(dist.values())
        attach = None
        if abs(total_mass - 1.0) <= 1e-9:
            best_val = max(dist.values())
            argmax = next(r for r in ALL_RELATIONS if dist[r] == best_val)
            if argmax is rel:
                attach = dist
        links.append(Link(source=i, target=j, relation=rel, score=float(scores[i, j, k]), scores_by_class=attach))
    return links


def baseline_align(pair: EntryPair, threshold: float = 0.1) -> list[Link]:
    """Token overlap baseline: Jaccard weights between definitions,
    optimal one-to-one assignment, then links above the threshold kept
    as exact matches."""
    if pair.n_left == 0 or pair.n_right == 0:
        return []
    W = np.zeros((pair.n_left, pair.n_right))
    for i, a in enumerate(pair.left):
        for j, b in enumerate(pair.right):
            W[i, j] = jaccard(a.tokens, b.tokens)
    links = []
    for i, j in hungarian(W):
        if W[i, j] > threshold:
            links.append(Link(source=i, target=j, relation=SemanticRelation.EXACT, score=float(W[i, j])))
    return links
