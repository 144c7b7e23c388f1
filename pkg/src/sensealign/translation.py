"""Translation inference over multilingual word graphs.

Words are graph nodes tagged with language and part of speech; known
translation pairs are undirected edges.  Two inference routes propose
new pairs between a source and a target language:

* cycle completion: inside every 4-cycle, a missing diagonal between
  the two languages is a candidate pair,
* path enumeration: every simple path from a source-language word to a
  target-language word of the same part of speech contributes
  alpha ** length, and the per-word totals are normalised into a
  distribution over candidate translations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadColumnCount, BadWeight, EmptyGold, MissingFile, NonPositiveAlpha
from .lexdata import PartOfSpeech, WordNode


class TranslationGraph:
    """Undirected graph over :class:`WordNode` vertices."""

    def __init__(self) -> None:
        self._adj: dict[WordNode, set[WordNode]] = {}

    @classmethod
    def from_edges(cls, edges: list[tuple[WordNode, WordNode]]) -> "TranslationGraph":
        g = cls()
        for a, b in edges:
            g.add_edge(a, b)
        return g

    def add_node(self, node: WordNode) -> None:
        self._adj.setdefault(node, set())

    def add_edge(self, a: WordNode, b: WordNode) -> None:
        if a == b:
            return
        self._adj.setdefault(a, set()).add(b)
        self._adj.setdefault(b, set()).add(a)

    def has_edge(self, a: WordNode, b: WordNode) -> bool:
        return b in self._adj.get(a, set())

    def neighbors(self, node: WordNode) -> set[WordNode]:
        return self._adj.get(node, set())

    @property
    def nodes(self) -> list[WordNode]:
        return sorted(self._adj, key=WordNode.sort_key)

    @property
    def n_edges(self) -> int:
        return sum(len(v) for v in self._adj.values()) // 2

    def languages(self) -> list[str]:
        return sorted({n.lang for n in self._adj})


@dataclass(frozen=True)
class InferredTranslation:
    """One proposed pair with its evidence summary."""

    source: WordNode
    target: WordNode
    weight: float
    n_paths: int
    min_length: int
    provenance: str  # "cycle" or "path"


def _order_pair(a: WordNode, b: WordNode, src_lang: str) -> tuple[WordNode, WordNode]:
    if a.lang == src_lang and b.lang != src_lang:
        return a, b
    if b.lang == src_lang and a.lang != src_lang:
        return b, a
    return (a, b) if a.sort_key() <= b.sort_key() else (b, a)


def infer_cycles(g: TranslationGraph, src_lang: str, tgt_lang: str) -> list[InferredTranslation]:
    """Missing diagonals of 4-cycles between the two languages.

    Every simple cycle of four distinct nodes is inspected once; a
    diagonal qualifies when it is absent from the graph, connects the
    requested language pair (both ends in that language when source
    and target coincide) and preserves part of speech.  The weight is
    1 per proposal; ``n_paths`` counts the distinct cycles proposing
    the same pair.
    """
    nodes = g.nodes
    seen_cycles: set[tuple] = set()
    proposals: dict[tuple[WordNode, WordNode], int] = {}
    want = {src_lang, tgt_lang}
    for x in nodes:
        for z in nodes:
            if z.sort_key() <= x.sort_key():
                continue
            common = sorted(g.neighbors(x) & g.neighbors(z), key=WordNode.sort_key)
            for yi in range(len(common)):
                for wi in range(yi + 1, len(common)):
                    y, w = common[yi], common[wi]
                    cycle_key = tuple(sorted([x, y, z, w], key=WordNode.sort_key))
                    if cycle_key in seen_cycles:
                        continue
                    seen_cycles.add(cycle_key)
                    for p, q in ((x, z), (y, w)):
                        if g.has_edge(p, q):
                            continue
                        if {p.lang, q.lang} != want or p.pos != q.pos:
                            continue
                        src, tgt = _order_pair(p, q, src_lang)
                        proposals[(src, tgt)] = proposals.get((src, tgt), 0) + 1
    out = [
        InferredTranslation(
            source=src,
            target=tgt,
            weight=1.0,
            n_paths=count,
            min_length=2,
            provenance="cycle",
        )
        for (src, tgt), count in proposals.items()
    ]
    out.sort(key=lambda t: (t.source.sort_key(), t.target.sort_key()))
    return out


def infer_paths(
    g: TranslationGraph,
    src_lang: str,
    tgt_lang: str,
    alpha: float = 0.5,
    max_len: int = 8,
) -> list[InferredTranslation]:
    """Candidate translations scored by decayed simple-path counts.

    For each source-language word, every simple path of at most
    ``max_len`` edges that reaches a target-language word with the same
    part of speech adds alpha ** path_length to that word's total.
    Totals are normalised per source word, so the weights of one word's
    candidates sum to one.  Known direct translations are excluded.
    """
    if not 0.0 < alpha:
        raise NonPositiveAlpha(f"alpha must be > 0, got {alpha}")
    if max_len < 1:
        raise ValueError(f"max_len must be >= 1, got {max_len}")
    out: list[InferredTranslation] = []
    for start in g.nodes:
        if start.lang != src_lang:
            continue
        totals: dict[WordNode, float] = {}
        counts: dict[WordNode, int] = {}
        min_len: dict[WordNode, int] = {}

        def walk(node: WordNode, visited: set[WordNode], length: int) -> None:
            for nxt in sorted(g.neighbors(node), key=WordNode.sort_key):
                if nxt in visited:
                    continue
                depth = length + 1
                if nxt.lang == tgt_lang and nxt.pos == start.pos and not g.has_edge(start, nxt):
                    totals[nxt] = totals.get(nxt, 0.0) + alpha**depth
                    counts[nxt] = counts.get(nxt, 0) + 1
                    min_len[nxt] = min(min_len.get(nxt, depth), depth)
                if depth < max_len:
                    visited.add(nxt)
                    walk(nxt, visited, depth)
                    visited.discard(nxt)

        walk(start, {start}, 0)
        mass = sum(totals.values())
        if mass <= 0:
            continue
        for tgt in sorted(totals, key=WordNode.sort_key):
            out.append(
                InferredTranslation(
                    source=start,
                    target=tgt,
                    weight=totals[tgt] / mass,
                    n_paths=counts[tgt],
                    min_length=min_len[tgt],
                    provenance="path",
                )
            )
    out.sort(key=lambda t: (t.source.sort_key(), -t.weight, t.target.sort_key()))
    return out


def write_lexicon(translations: list[InferredTranslation], path: str) -> None:
    """7-column TSV: source, source language, part of speech, target,
    target language, weight, provenance."""
    with open(path, "w", encoding="utf-8") as fh:
        for t in translations:
            fh.write(
                "\t".join(
                    [
                        t.source.lemma,
                        t.source.lang,
                        t.source.pos.value,
                        t.target.lemma,
                        t.target.lang,
                        repr(float(t.weight)),
                        t.provenance,
                    ]
                )
                + "\n"
            )


def load_gold_lexicon(path: str) -> set[tuple[str, PartOfSpeech, str]]:
    """3-column TSV of (source lemma, part of speech, target lemma)."""
    try:
        fh = open(path, encoding="utf-8")
    except FileNotFoundError as exc:
        raise MissingFile(str(exc)) from exc
    gold = set()
    with fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) != 3:
                raise BadColumnCount(f"{path}:{lineno}: expected 3 columns, got {len(cols)}")
            gold.add((cols[0].strip().lower(), PartOfSpeech.parse(cols[1]), cols[2].strip().lower()))
    return gold


def evaluate_inference(
    translations: list[InferredTranslation],
    gold: set[tuple[str, PartOfSpeech, str]],
    threshold: float = 0.0,
) -> dict[str, float]:
    """Precision, recall, F1 and source coverage at a weight threshold.

    Coverage is the share of gold source words that receive at least
    one kept proposal.
    """
    if not gold:
        raise EmptyGold("gold lexicon is empty")
    kept = [t for t in translations if t.weight >= threshold]
    predicted = {(t.source.lemma, t.source.pos, t.target.lemma) for t in kept}
    hits = len(predicted & gold)
    precision = hits / len(predicted) if predicted else 0.0
    recall = hits / len(gold)
    f1 = 2 * precision * recall / (precision + recall) if (precision + recall) > 0 else 0.0
    gold_sources = {(s, p) for (s, p, _) in gold}
    covered = {(t.source.lemma, t.source.pos) for t in kept} & gold_sources
    coverage = len(covered) / len(gold_sources)
    return {"precision": precision, "recall": recall, "f1": f1, "coverage": coverage}


def threshold_sweep(
    translations: list[InferredTranslation],
    gold: set[tuple[str, PartOfSpeech, str]],
    thresholds: list[float],
) -> list[dict[str, float]]:
    """Inference metrics at each threshold, in the given order."""
    rows = []
    for t in thresholds:
        row = {"threshold": t}
        row.update(evaluate_inference(translations, gold, t))
        rows.append(row)
    return rows
