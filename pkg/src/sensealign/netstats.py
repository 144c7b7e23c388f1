"""Structural statistics of bipartite alignment graphs.

Senses of the left dictionary form one node class, senses of the right
one the other, and links are the edges.  Besides degree and density
summaries the module computes the bipartite clustering coefficient:
neighbourhood overlap between same-side nodes, averaged over the nodes
reachable in two steps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EmptyGraph
from .lexdata import EntryPair, SemanticRelation, SKOS_RELATIONS


@dataclass
class BipartiteGraph:
    """Edges between ``n_left`` left nodes and ``n_right`` right nodes."""

    n_left: int
    n_right: int
    edges: set[tuple[int, int]] = field(default_factory=set)

    def __post_init__(self) -> None:
        if self.n_left < 0 or self.n_right < 0:
            raise ValueError("node counts must be non-negative")
        for i, j in self.edges:
            if not (0 <= i < self.n_left and 0 <= j < self.n_right):
                raise ValueError(f"edge ({i}, {j}) is out of range")

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def left_neighbors(self, i: int) -> set[int]:
        return {j for (a, j) in self.edges if a == i}

    def right_neighbors(self, j: int) -> set[int]:
        return {i for (i, b) in self.edges if b == j}


def entry_graph(pair: EntryPair) -> BipartiteGraph:
    """The link graph of a single entry pair."""
    return BipartiteGraph(
        n_left=pair.n_left,
        n_right=pair.n_right,
        edges={(l.source, l.target) for l in pair.links},
    )


def degree_density(g: BipartiteGraph) -> dict[str, float]:
    """Mean degrees per side, overall mean degree and edge density."""
    if g.n_left == 0 or g.n_right == 0:
        raise EmptyGraph("degree statistics need nodes on both sides")
    m = g.n_edges
    return {
        "mean_degree_left": m / g.n_left,
        "mean_degree_right": m / g.n_right,
        "mean_degree": 2 * m / (g.n_left + g.n_right),
        "density": m / (g.n_left * g.n_right),
    }


def pair_clustering(neigh_u: set, neigh_v: set) -> float:
    """Neighbourhood overlap of two same-side nodes, 0 when both
    neighbourhoods are empty."""
    union = neigh_u | neigh_v
    if not union:
        return 0.0
    return len(neigh_u & neigh_v) / len(union)


def _side_neighbor_maps(g: BipartiteGraph, side: str) -> tuple[int, dict[int, set[int]], dict[int, set[int]]]:
    if side == "left":
        own = {i: set() for i in range(g.n_left)}
        other = {j: set() for j in range(g.n_right)}
        for i, j in g.edges:
            own[i].add(j)
            other[j].add(i)
        return g.n_left, own, other
    own = {j: set() for j in range(g.n_right)}
    other = {i: set() for i in range(g.n_left)}
    for i, j in g.edges:
        own[j].add(i)
        other[i].add(j)
    return g.n_right, own, other


def node_clustering(g: BipartiteGraph, node: int, side: str = "left") -> float:
    """Mean neighbourhood overlap with the other nodes reachable in two
    steps (the node itself excluded); 0 when there are none."""
    count, own, other = _side_neighbor_maps(g, side)
    if not (0 <= node < count):
        raise ValueError(f"no such {side} node: {node}")
    two_step = set()
    for mid in own[node]:
        two_step |= other[mid]
    two_step.discard(node)
    if not two_step:
        return 0.0
    return sum(pair_clustering(own[node], own[v]) for v in sorted(two_step)) / len(two_step)


def side_clustering(g: BipartiteGraph, side: str = "left") -> float:
    """Average node clustering over every node of one side."""
    count = g.n_left if side == "left" else g.n_right
    if count == 0:
        raise EmptyGraph(f"no {side} nodes")
    return sum(node_clustering(g, v, side) for v in range(count)) / count


@dataclass
class AlignmentStats:
    """Corpus-level link statistics over a list of entry pairs."""

    n_entries: int
    n_left: int
    n_right: int
    n_links: int
    mean_degree_left: float
    mean_degree_right: float
    mean_degree: float
    density: float
    histogram: dict[str, int]


def alignment_stats(pairs: list[EntryPair]) -> AlignmentStats:
    """Aggregate degrees, density and the relation histogram.

    Density divides the total link count by the summed per-entry
    candidate spaces, so entries of different sizes pool correctly.
    """
    if not pairs:
        raise EmptyGraph("no entries")
    n_left = sum(p.n_left for p in pairs)
    n_right = sum(p.n_right for p in pairs)
    if n_left == 0 or n_right == 0:
        raise EmptyGraph("entries carry no senses on one side")
    links = [l for p in pairs for l in p.links]
    m = len(links)
    candidate_space = sum(p.candidate_count for p in pairs)
    histogram = {rel.value: 0 for rel in SemanticRelation}
    for l in links:
        histogram[l.relation.value] += 1
    histogram["all"] = sum(histogram[rel.value] for rel in SKOS_RELATIONS)
    return AlignmentStats(
        n_entries=len(pairs),
        n_left=n_left,
        n_right=n_right,
        n_links=m,
        mean_degree_left=m / n_left,
        mean_degree_right=m / n_right,
        mean_degree=2 * m / (n_left + n_right),
        density=m / candidate_space if candidate_space else 0.0,
        histogram=histogram,
    )
