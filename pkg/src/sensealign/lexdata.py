"""Domain model and file formats for dictionary sense alignment.

The unit of work is an entry pair: one headword with its sense inventory
from each of two dictionaries, plus zero or more typed links between the
two inventories.  Loaders normalise four input formats:

* benchmark JSON documents (entry pairs with gold alignments),
* plain dictionary TSV exports (one sense per row),
* translation pair TSVs listed in a manifest,
* stop word and embedding resources (see :mod:`sensealign.embeddings`).
"""

from __future__ import annotations

import json
import os
import unicodedata
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

from .errors import (
    BadColumnCount,
    EmptyLemma,
    MalformedDocument,
    MissingFile,
)

_APOSTROPHES = {"'", "’"}


def tokenize(text: str) -> tuple[str, ...]:
    """Lowercase, drop characters that are not letters, digits or
    apostrophes, and split on whitespace.

    Input is composed to NFC first so accented letters tokenize the
    same whichever normal form the source file used.  The same routine
    backs every token-level feature so that lexicon lookups, stop word
    filtering and length counts all agree.
    """
    cleaned = []
    for ch in unicodedata.normalize("NFC", text).lower():
        if ch.isalnum() or ch in _APOSTROPHES or ch.isspace():
            cleaned.append(ch)
    return tuple("".join(cleaned).split())


def content_tokens(tokens: tuple[str, ...], stopwords: frozenset[str] | set[str]) -> tuple[str, ...]:
    """Tokens with function words removed."""
    return tuple(t for t in tokens if t not in stopwords)


class PartOfSpeech(Enum):
    NOUN = "noun"
    VERB = "verb"
    ADJECTIVE = "adjective"
    ADVERB = "adverb"
    OTHER = "other"

    @classmethod
    def parse(cls, raw: str) -> "PartOfSpeech":
        key = raw.strip().lower()
        return _POS_ALIASES.get(key, cls.OTHER)


_POS_ALIASES = {
    "noun": PartOfSpeech.NOUN,
    "n": PartOfSpeech.NOUN,
    "nn": PartOfSpeech.NOUN,
    "verb": PartOfSpeech.VERB,
    "v": PartOfSpeech.VERB,
    "vb": PartOfSpeech.VERB,
    "adjective": PartOfSpeech.ADJECTIVE,
    "adj": PartOfSpeech.ADJECTIVE,
    "a": PartOfSpeech.ADJECTIVE,
    "adverb": PartOfSpeech.ADVERB,
    "adv": PartOfSpeech.ADVERB,
    "r": PartOfSpeech.ADVERB,
    "other": PartOfSpeech.OTHER,
}


class SemanticRelation(Enum):
    """Typed link labels, SKOS mapping vocabulary plus NONE.

    Declaration order is the canonical class order used for one-hot
    encodings and for deterministic argmax tie breaks.
    """

    EXACT = "exact"
    BROADER = "broader"
    NARROWER = "narrower"
    RELATED = "related"
    NONE = "none"

    def inverse(self) -> "SemanticRelation":
        """Label of the same link read in the opposite direction."""
        if self is SemanticRelation.BROADER:
            return SemanticRelation.NARROWER
        if self is SemanticRelation.NARROWER:
            return SemanticRelation.BROADER
        return self

    @classmethod
    def parse(cls, raw: str) -> "SemanticRelation":
        key = raw.strip().lower()
        for member in cls:
            if member.value == key:
                return member
        raise MalformedDocument(f"unknown semantic relationship: {raw!r}")


SKOS_RELATIONS = (
    SemanticRelation.EXACT,
    SemanticRelation.BROADER,
    SemanticRelation.NARROWER,
    SemanticRelation.RELATED,
)

ALL_RELATIONS = SKOS_RELATIONS + (SemanticRelation.NONE,)


@dataclass(frozen=True)
class Sense:
    """One sense: its definition text plus an optional source identifier."""

    text: str
    external_id: str | None = None
    tokens: tuple[str, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tokenize(self.text))


@dataclass
class Link:
    """A typed link between sense ``source`` on the left inventory and
    ``target`` on the right, with an optional per-class score breakdown.

    When ``scores_by_class`` is present the label must be its argmax
    (ties resolved by class declaration order) and the scores must sum
    to one.
    """

    source: int
    target: int
    relation: SemanticRelation
    score: float = 1.0
    scores_by_class: dict[SemanticRelation, float] | None = None

    def __post_init__(self) -> None:
        if self.source < 0 or self.target < 0:
            raise ValueError("sense indices must be non-negative")
        if self.scores_by_class is not None:
            total = sum(self.scores_by_class.values())
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"class scores sum to {total}, expected 1")
            best = max(self.scores_by_class.values())
            for rel in ALL_RELATIONS:
                if rel in self.scores_by_class and self.scores_by_class[rel] == best:
                    if rel is not self.relation:
                        raise ValueError(
                            f"relation {self.relation.value} is not the argmax of scores_by_class"
                        )
                    break


@dataclass
class EntryPair:
    """One headword with its sense inventories from both dictionaries."""

    lemma: str
    pos: PartOfSpeech
    left: tuple[Sense, ...]
    right: tuple[Sense, ...]
    links: list[Link] = field(default_factory=list)
    gender: str | None = None
    meta_id: str | None = None

    @property
    def n_left(self) -> int:
        return len(self.left)

    @property
    def n_right(self) -> int:
        return len(self.right)

    @property
    def candidate_count(self) -> int:
        return len(self.left) * len(self.right)


class WordNode(NamedTuple):
    """A word in one language, the vertex type of translation graphs."""

    lemma: str
    lang: str
    pos: PartOfSpeech

    def sort_key(self) -> tuple[str, str, str]:
        return (self.lemma, self.lang, self.pos.value)


class DanglingAlignmentWarning(UserWarning):
    """An alignment row references sense text absent from the inventories."""


def _parse_sense(obj, where: str) -> Sense:
    if isinstance(obj, str):
        return Sense(text=obj)
    if isinstance(obj, dict):
        text = obj.get("#text")
        if not isinstance(text, str):
            raise MalformedDocument(f"{where}: sense object lacks a '#text' string")
        ext = obj.get("external_ID")
        if ext is not None:
            ext = str(ext)
        return Sense(text=text, external_id=ext)
    raise MalformedDocument(f"{where}: sense must be a string or object")


def _find_sense(senses: tuple[Sense, ...], text: str) -> int | None:
    """Index of the first sense whose text equals ``text`` exactly."""
    for i, s in enumerate(senses):
        if s.text == text:
            return i
    return None


def _parse_entry(obj: dict, where: str) -> EntryPair:
    lemma = obj.get("lemma")
    if not isinstance(lemma, str) or not lemma.strip():
        raise MalformedDocument(f"{where}: entry lacks a lemma")
    pos = PartOfSpeech.parse(str(obj.get("POS_tag", "other")))
    gender = obj.get("gender")
    meta_id = obj.get("meta_ID")
    left_raw = obj.get("resource_1_senses", [])
    right_raw = obj.get("resource_2_senses", [])
    if not isinstance(left_raw, list) or not isinstance(right_raw, list):
        raise MalformedDocument(f"{where}: sense inventories must be lists")
    left = tuple(_parse_sense(s, where) for s in left_raw)
    right = tuple(_parse_sense(s, where) for s in right_raw)

    links: list[Link] = []
    alignment = obj.get("alignment", [])
    if not isinstance(alignment, list):
        raise MalformedDocument(f"{where}: alignment must be a list")
    for row in alignment:
        if not isinstance(row, dict):
            raise MalformedDocument(f"{where}: alignment rows must be objects")
        try:
            src_text = row["sense_source"]
            tgt_text = row["sense_target"]
            rel_raw = row["semantic_relationship"]
        except KeyError as exc:
            raise MalformedDocument(f"{where}: alignment row missing {exc}") from exc
        relation = SemanticRelation.parse(str(rel_raw))
        src = _find_sense(left, str(src_text))
        tgt = _find_sense(right, str(tgt_text))
        if src is None or tgt is None:
            warnings.warn(
                DanglingAlignmentWarning(
                    f"{where}: lemma {lemma!r} has an alignment whose text matches no sense; link dropped"
                ),
                stacklevel=3,
            )
            continue
        scores = None
        if isinstance(row.get("scores_by_class"), dict):
            scores = {
                SemanticRelation.parse(k): float(v)
                for k, v in row["scores_by_class"].items()
            }
        links.append(
            Link(
                source=src,
                target=tgt,
                relation=relation,
                score=float(row.get("score", 1.0)),
                scores_by_class=scores,
            )
        )
    return EntryPair(
        lemma=lemma,
        pos=pos,
        left=left,
        right=right,
        links=links,
        gender=str(gender) if gender is not None else None,
        meta_id=str(meta_id) if meta_id is not None else None,
    )


def load_benchmark(path: str) -> list[EntryPair]:
    """Read a benchmark JSON document into entry pairs.

    Alignment rows are resolved to sense indices by exact text match
    (first match wins).  Rows whose text matches no sense are dropped
    with a :class:`DanglingAlignmentWarning`.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError as exc:
        raise MissingFile(str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"{path}: invalid JSON: {exc}") from exc
    if isinstance(doc, dict):
        doc = [doc]
    if not isinstance(doc, list):
        raise MalformedDocument(f"{path}: expected a JSON array of entries")
    pairs = []
    for idx, obj in enumerate(doc):
        if not isinstance(obj, dict):
            raise MalformedDocument(f"{path}[{idx}]: entry must be an object")
        pairs.append(_parse_entry(obj, f"{path}[{idx}]"))
    return pairs


def _sense_to_json(sense: Sense) -> dict:
    out: dict = {"#text": sense.text}
    if sense.external_id is not None:
        out["external_ID"] = sense.external_id
    return out


def entry_to_json(pair: EntryPair) -> dict:
    """Benchmark JSON object for one entry pair."""
    obj: dict = {"lemma": pair.lemma, "POS_tag": pair.pos.value}
    if pair.gender is not None:
        obj["gender"] = pair.gender
    if pair.meta_id is not None:
        obj["meta_ID"] = pair.meta_id
    obj["resource_1_senses"] = [_sense_to_json(s) for s in pair.left]
    obj["resource_2_senses"] = [_sense_to_json(s) for s in pair.right]
    rows = []
    for link in pair.links:
        row: dict = {
            "sense_source": pair.left[link.source].text,
            "sense_target": pair.right[link.target].text,
            "semantic_relationship": link.relation.value,
            "score": link.score,
        }
        if link.scores_by_class is not None:
            row["scores_by_class"] = {
                rel.value: score for rel, score in link.scores_by_class.items()
            }
        rows.append(row)
    obj["alignment"] = rows
    return obj


def dump_annotations(pairs: list[EntryPair]) -> str:
    """Serialise entry pairs to the benchmark JSON text, deterministically."""
    doc = [entry_to_json(p) for p in pairs]
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def save_annotations(pairs: list[EntryPair], path: str) -> None:
    """Write entry pairs as a benchmark JSON document.

    ``load_benchmark(save_annotations(pairs))`` reproduces the same
    pairs: texts and labels exactly, scores within float round-trip.
    """
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_annotations(pairs))


@dataclass
class DictionaryEntry:
    """Sense inventory of one headword in a single dictionary."""

    lemma: str
    pos: PartOfSpeech
    senses: list[Sense] = field(default_factory=list)


@dataclass
class Dictionary:
    """One dictionary half, keyed by (normalised lemma, pos)."""

    entries: dict[tuple[str, PartOfSpeech], DictionaryEntry] = field(default_factory=dict)

    def keys(self):
        return self.entries.keys()


def load_dictionary_tsv(path: str) -> Dictionary:
    """Read a dictionary export with 5 tab-separated columns per row:
    entry id, sense id, lemma, part of speech, definition text.

    Rows are grouped into sense inventories per (lowercased lemma, pos)
    in file order.
    """
    dictionary = Dictionary()
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
            if len(cols) != 5:
                raise BadColumnCount(f"{path}:{lineno}: expected 5 columns, got {len(cols)}")
            _, sense_id, lemma, pos_raw, text = cols
            if not lemma.strip():
                raise EmptyLemma(f"{path}:{lineno}: empty lemma")
            pos = PartOfSpeech.parse(pos_raw)
            key = (lemma.strip().lower(), pos)
            if key not in dictionary.entries:
                dictionary.entries[key] = DictionaryEntry(lemma=lemma.strip(), pos=pos)
            dictionary.entries[key].senses.append(
                Sense(text=text, external_id=sense_id.strip() or None)
            )
    return dictionary


def pair_dictionaries(left: Dictionary, right: Dictionary) -> list[EntryPair]:
    """Entry pairs for every (lemma, pos) present in both dictionaries,
    sorted by lemma then part of speech for deterministic output."""
    shared = sorted(
        set(left.entries) & set(right.entries),
        key=lambda k: (k[0], k[1].value),
    )
    pairs = []
    for key in shared:
        le = left.entries[key]
        re = right.entries[key]
        pairs.append(
            EntryPair(
                lemma=le.lemma,
                pos=le.pos,
                left=tuple(le.senses),
                right=tuple(re.senses),
            )
        )
    return pairs


def load_translation_pairs(manifest_path: str) -> list[tuple[WordNode, WordNode]]:
    """Read a translation manifest and the pair files it lists.

    The manifest has 3 tab-separated columns per row: language one,
    language two, and a path (relative paths resolve against the
    manifest's directory).  Each pair file has 4 tab-separated columns:
    source lemma, source pos, target lemma, target pos.  The result is
    a deduplicated, sorted list of undirected edges.
    """
    try:
        fh = open(manifest_path, encoding="utf-8")
    except FileNotFoundError as exc:
        raise MissingFile(str(exc)) from exc
    base = os.path.dirname(os.path.abspath(manifest_path))
    edges: set[tuple[WordNode, WordNode]] = set()
    with fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) != 3:
                raise BadColumnCount(
                    f"{manifest_path}:{lineno}: expected 3 columns, got {len(cols)}"
                )
            lang1, lang2, rel_path = (c.strip() for c in cols)
            pair_path = rel_path if os.path.isabs(rel_path) else os.path.join(base, rel_path)
            if not os.path.exists(pair_path):
                raise MissingFile(f"{manifest_path}:{lineno}: no such file: {pair_path}")
            with open(pair_path, encoding="utf-8") as pfh:
                for plineno, pline in enumerate(pfh, start=1):
                    pline = pline.rstrip("\n")
                    if not pline.strip():
                        continue
                    pcols = pline.split("\t")
                    if len(pcols) != 4:
                        raise BadColumnCount(
                            f"{pair_path}:{plineno}: expected 4 columns, got {len(pcols)}"
                        )
                    src = WordNode(pcols[0].strip().lower(), lang1, PartOfSpeech.parse(pcols[1]))
                    tgt = WordNode(pcols[2].strip().lower(), lang2, PartOfSpeech.parse(pcols[3]))
                    if src == tgt:
                        continue
                    if tgt.sort_key() < src.sort_key():
                        src, tgt = tgt, src
                    edges.add((src, tgt))
    return sorted(edges, key=lambda e: (e[0].sort_key(), e[1].sort_key()))
