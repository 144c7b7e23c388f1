"""End-to-end alignment runs driven by a JSON config.

A run flows through fixed stages: block entry pairs by headword and
part of speech, apply the lens (full or token-capped definition text),
score every candidate sense pair into a distribution over relations,
then let a matcher turn scores into typed links.  Configs are checked
up front so an unknown component name fails before any data work.
"""

from __future__ import annotations

import json
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .classifier import RelationClassifier, Task
from .embeddings import EmbeddingTable, definition_similarity, load_embeddings, load_stopwords
from .errors import ConfigError, MissingFile
from .features import FeatureExtractor, Instance, MinMaxScaler, augment, build_instances, scale_and_split
from .lexdata import (
    ALL_RELATIONS,
    Dictionary,
    EntryPair,
    Link,
    SemanticRelation,
    Sense,
    pair_dictionaries,
)
from .matching import (
    DegreeBounds,
    NoConstraint,
    TaxonomicConstraint,
    beam_match,
    greedy_bijective,
    hungarian,
    wbbm_greedy,
)
from .relations import RelationStore, hapax_link, ingest_edges
from .textsim import string_features

_SCORERS = ("jaccard", "embedding", "model")
_MATCHERS = ("hungarian", "greedy", "wbbm", "beam")
_CONSTRAINTS = ("taxonomic", "none")
_LENSES = ("definition",)

_TEXT_FEATURES = (
    "jaccard",
    "dice",
    "containment",
    "smoothed_jaccard",
    "lcs_subsequence",
    "lcs_substring",
    "common_prefix",
    "common_suffix",
    "ngram",
    "levenshtein",
    "jaro",
    "jaro_winkler",
    "monge_elkan",
    "slr",
    "avg_word_len_ratio",
    "negation",
    "number",
    "bag_of_words",
)


@dataclass
class PipelineConfig:
    """Validated run parameters."""

    scorer: dict = field(default_factory=lambda: {"name": "jaccard"})
    matcher: dict = field(default_factory=lambda: {"name": "hungarian", "threshold": 0.1})
    constraint: str = "taxonomic"
    lens: dict = field(default_factory=lambda: {"name": "definition", "max_tokens": None})
    text_features: list = field(default_factory=list)
    resources: dict = field(default_factory=dict)
    hapax_prelink: bool = False
    workers: int = 1
    seed: int = 0


_TOP_KEYS = {
    "scorer",
    "matcher",
    "constraint",
    "lens",
    "text_features",
    "resources",
    "hapax_prelink",
    "workers",
    "seed",
}

_RESOURCE_KEYS = {"embeddings", "relations", "stopwords"}


def parse_config(raw: dict) -> PipelineConfig:
    """Validate a config mapping; every unknown name is an error."""
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    cfg = PipelineConfig()

    scorer = raw.get("scorer", cfg.scorer)
    if not isinstance(scorer, dict) or scorer.get("name") not in _SCORERS:
        raise ConfigError(f"scorer must name one of {_SCORERS}")
    if scorer["name"] == "model" and not scorer.get("path"):
        raise ConfigError("model scorer needs a 'path'")
    cfg.scorer = scorer

    matcher = raw.get("matcher", cfg.matcher)
    if not isinstance(matcher, dict) or matcher.get("name") not in _MATCHERS:
        raise ConfigError(f"matcher must name one of {_MATCHERS}")
    threshold = matcher.get("threshold", 0.1)
    if not isinstance(threshold, (int, float)) or not 0.0 <= float(threshold) <= 1.0:
        raise ConfigError(f"matcher threshold must lie in [0, 1], got {threshold!r}")
    matcher = dict(matcher)
    matcher["threshold"] = float(threshold)
    if matcher["name"] == "beam":
        width = matcher.get("beam_width", 4)
        if not isinstance(width, int) or width < 1:
            raise ConfigError(f"beam_width must be a positive integer, got {width!r}")
        matcher["beam_width"] = width
    if matcher["name"] == "wbbm":
        lower = matcher.get("lower", 0)
        upper = matcher.get("upper", 1)
        if not (isinstance(lower, int) and isinstance(upper, int)) or lower < 0 or upper < lower:
            raise ConfigError(f"wbbm bounds need 0 <= lower <= upper, got {lower!r}, {upper!r}")
        matcher["lower"] = lower
        matcher["upper"] = upper
    cfg.matcher = matcher

    constraint = raw.get("constraint", cfg.constraint)
    if constraint not in _CONSTRAINTS:
        raise ConfigError(f"constraint must be one of {_CONSTRAINTS}")
    cfg.constraint = constraint

    lens = raw.get("lens", cfg.lens)
    if not isinstance(lens, dict) or lens.get("name", "definition") not in _LENSES:
        raise ConfigError(f"lens must name one of {_LENSES}")
    max_tokens = lens.get("max_tokens")
    if max_tokens is not None and (not isinstance(max_tokens, int) or max_tokens < 1):
        raise ConfigError(f"lens max_tokens must be a positive integer or null, got {max_tokens!r}")
    cfg.lens = {"name": lens.get("name", "definition"), "max_tokens": max_tokens}

    feats = raw.get("text_features", [])
    if not isinstance(feats, list):
        raise ConfigError("text_features must be a list")
    for f in feats:
        name = f.get("name") if isinstance(f, dict) else f
        if name not in _TEXT_FEATURES:
            raise ConfigError(f"unknown text feature: {name!r}")
    cfg.text_features = feats

    resources = raw.get("resources", {})
    if not isinstance(resources, dict) or set(resources) - _RESOURCE_KEYS:
        raise ConfigError(f"resources accepts only {sorted(_RESOURCE_KEYS)}")
    cfg.resources = resources

    cfg.hapax_prelink = bool(raw.get("hapax_prelink", False))
    workers = raw.get("workers", 1)
    if not isinstance(workers, int) or workers < 1:
        raise ConfigError(f"workers must be a positive integer, got {workers!r}")
    cfg.workers = workers
    seed = raw.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError(f"seed must be an integer, got {seed!r}")
    cfg.seed = seed
    return cfg


def load_config(path: str) -> PipelineConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError as exc:
        raise MissingFile(str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    return parse_config(raw)


def truncate_senses(pairs: list[EntryPair], max_tokens: int | None) -> list[EntryPair]:
    """Token-capped copies of the entries; None means keep everything.

    Truncated definition text is rebuilt by joining the first
    ``max_tokens`` tokens, so downstream features and serialisation see
    a consistent view.
    """
    if max_tokens is None:
        return pairs
    if max_tokens < 1:
        raise ValueError(f"max_tokens must be >= 1, got {max_tokens}")

    def cut(sense: Sense) -> Sense:
        return Sense(text=" ".join(sense.tokens[:max_tokens]), external_id=sense.external_id)

    return [
        EntryPair(
            lemma=p.lemma,
            pos=p.pos,
            left=tuple(cut(s) for s in p.left),
            right=tuple(cut(s) for s in p.right),
            links=list(p.links),
            gender=p.gender,
            meta_id=p.meta_id,
        )
        for p in pairs
    ]


# ---- model bundle: scaler + classifier, shipped as one JSON file ----

BUNDLE_FORMAT = "sensealign-model v1"


def save_bundle(path: str, classifier: RelationClassifier, scaler: MinMaxScaler, stopwords: frozenset[str]) -> None:
    fd, tmp = tempfile.mkstemp(suffix=".clf")
    os.close(fd)
    try:
        classifier.save(tmp)
        with open(tmp, encoding="utf-8") as fh:
            clf_text = fh.read()
    finally:
        os.unlink(tmp)
    doc = {
        "format": BUNDLE_FORMAT,
        "classifier": clf_text,
        "scaler": {
            "mins": [repr(float(x)) for x in scaler.mins_],
            "maxs": [repr(float(x)) for x in scaler.maxs_],
        },
        "stopwords": sorted(stopwords),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_bundle(path: str) -> tuple[RelationClassifier, MinMaxScaler, frozenset[str]]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError as exc:
        raise MissingFile(str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    if doc.get("format") != BUNDLE_FORMAT:
        raise ConfigError(f"{path}: not a {BUNDLE_FORMAT} bundle")
    fd, tmp = tempfile.mkstemp(suffix=".clf")
    os.close(fd)
    try:
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(doc["classifier"])
        clf = RelationClassifier.load(tmp)
    finally:
        os.unlink(tmp)
    scaler = MinMaxScaler()
    scaler.mins_ = np.asarray([float(x) for x in doc["scaler"]["mins"]])
    scaler.maxs_ = np.asarray([float(x) for x in doc["scaler"]["maxs"]])
    return clf, scaler, frozenset(doc.get("stopwords", []))


@dataclass
class Runtime:
    """Loaded resources plus the parsed config."""

    config: PipelineConfig
    embeddings: EmbeddingTable | None = None
    relations: RelationStore | None = None
    stopwords: frozenset[str] = frozenset()
    classifier: RelationClassifier | None = None
    scaler: MinMaxScaler | None = None


def build_runtime(cfg: PipelineConfig) -> Runtime:
    """Load every resource the config references."""
    rt = Runtime(config=cfg)
    res = cfg.resources
    if res.get("embeddings"):
        rt.embeddings = load_embeddings(res["embeddings"])
    if res.get("relations"):
        rt.relations = ingest_edges(res["relations"])
    if res.get("stopwords"):
        rt.stopwords = load_stopwords(res["stopwords"])
    if cfg.scorer["name"] == "embedding" and rt.embeddings is None:
        raise ConfigError("embedding scorer needs resources.embeddings")
    if cfg.scorer["name"] == "model":
        clf, scaler, bundle_stops = load_bundle(cfg.scorer["path"])
        rt.classifier = clf
        rt.scaler = scaler
        if not rt.stopwords:
            rt.stopwords = bundle_stops
    return rt


def _score_pair(pair: EntryPair, rt: Runtime) -> np.ndarray:
    """Distribution over relations for every candidate pair,
    shape (n_left, n_right, n_classes)."""
    cfg = rt.config
    k = len(ALL_RELATIONS)
    none_idx = ALL_RELATIONS.index(SemanticRelation.NONE)
    exact_idx = ALL_RELATIONS.index(SemanticRelation.EXACT)
    scores = np.zeros((pair.n_left, pair.n_right, k))
    name = cfg.scorer["name"]
    if name in ("jaccard", "embedding"):
        for i, src in enumerate(pair.left):
            for j, tgt in enumerate(pair.right):
                if name == "jaccard":
                    sim = string_features(src.text, tgt.text)["jaccard"]
                else:
                    sim = definition_similarity(src.tokens, tgt.tokens, rt.embeddings, rt.stopwords)
                scores[i, j, exact_idx] = sim
                scores[i, j, none_idx] = 1.0 - sim
        return scores
    # model scorer
    extractor = FeatureExtractor(
        embeddings=rt.embeddings, relations=rt.relations, stopwords=rt.stopwords
    )
    instances = [
        Instance(pair.lemma, pair.pos, src, tgt, SemanticRelation.NONE)
        for src in pair.left
        for tgt in pair.right
    ]
    X = np.stack([extractor.extract(inst) for inst in instances])
    X = rt.scaler.transform(X)
    proba = rt.classifier.predict_proba(X)
    classes = rt.classifier.classes_
    flat = scores.reshape(-1, k)
    for row, p in zip(flat, proba):
        if rt.classifier.task is Task.BINARY:
            row[none_idx] = p[0]
            row[exact_idx] = p[1]
        else:
            for cls, value in zip(classes, p):
                row[ALL_RELATIONS.index(cls)] = value
    return scores


def _links_from_assignment(
    assignment: list[tuple[int, int]],
    scores: np.ndarray,
    weights: np.ndarray,
    threshold: float,
    strict: bool,
) -> list[Link]:
    none_idx = ALL_RELATIONS.index(SemanticRelation.NONE)
    links = []
    for i, j in assignment:
        w = float(weights[i, j])
        if strict and not w > threshold:
            continue
        dist = scores[i, j]
        typed = [(idx, rel) for idx, rel in enumerate(ALL_RELATIONS) if idx != none_idx]
        best_idx, best_rel = max(typed, key=lambda t: (dist[t[0]], -t[0]))
        attach = None
        if abs(float(dist.sum()) - 1.0) <= 1e-9 and float(dist[best_idx]) >= float(dist.max()):
            attach = {rel: float(dist[idx]) for idx, rel in enumerate(ALL_RELATIONS)}
        links.append(
            Link(
                source=i,
                target=j,
                relation=best_rel,
                score=w,
                scores_by_class=attach,
            )
        )
    return links


def align_entry(pair: EntryPair, rt: Runtime) -> EntryPair:
    """Predict links for one entry pair."""
    cfg = rt.config
    out = EntryPair(
        lemma=pair.lemma,
        pos=pair.pos,
        left=pair.left,
        right=pair.right,
        links=[],
        gender=pair.gender,
        meta_id=pair.meta_id,
    )
    if pair.n_left == 0 or pair.n_right == 0:
        return out
    if cfg.hapax_prelink:
        forced = hapax_link(pair)
        if forced is not None:
            out.links = [forced]
            return out
    scores = _score_pair(pair, rt)
    none_idx = ALL_RELATIONS.index(SemanticRelation.NONE)
    weights = 1.0 - scores[:, :, none_idx]
    name = cfg.matcher["name"]
    threshold = cfg.matcher["threshold"]
    if name == "hungarian":
        assignment = hungarian(weights)
        out.links = _links_from_assignment(assignment, scores, weights, threshold, strict=True)
    elif name == "greedy":
        assignment = greedy_bijective(weights, threshold)
        out.links = _links_from_assignment(assignment, scores, weights, threshold=0.0, strict=False)
    elif name == "wbbm":
        bounds = DegreeBounds.uniform(
            pair.n_left, pair.n_right, cfg.matcher["lower"], cfg.matcher["upper"]
        )
        assignment = wbbm_greedy(weights, bounds)
        out.links = _links_from_assignment(assignment, scores, weights, threshold=0.0, strict=False)
    else:
        constraint = TaxonomicConstraint() if cfg.constraint == "taxonomic" else NoConstraint()
        out.links = beam_match(scores, cfg.matcher["beam_width"], constraint)
    return out


def run_alignment(pairs: list[EntryPair], rt: Runtime) -> list[EntryPair]:
    """Align every entry; a bounded worker pool keeps the input order."""
    cfg = rt.config
    pairs = truncate_senses(pairs, cfg.lens["max_tokens"])
    if cfg.workers == 1:
        return [align_entry(p, rt) for p in pairs]
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(lambda p: align_entry(p, rt), pairs))


def align_dictionaries(left: Dictionary, right: Dictionary, rt: Runtime) -> list[EntryPair]:
    """Block two dictionary halves into entry pairs and align them."""
    return run_alignment(pair_dictionaries(left, right), rt)


def train_from_pairs(
    pairs: list[EntryPair],
    task: Task,
    rt_resources: Runtime | None = None,
    seed: int = 0,
    n_epochs: int = 50,
    learning_rate: float = 0.1,
    kernel: str = "linear",
    augment_instances: bool = True,
):
    """Build the feature table from gold entries and fit a classifier.

    Returns (classifier, scaler, split) so callers can evaluate on the
    held-out partitions or persist a bundle.
    """
    stopwords = rt_resources.stopwords if rt_resources else frozenset()
    extractor = FeatureExtractor(
        embeddings=rt_resources.embeddings if rt_resources else None,
        relations=rt_resources.relations if rt_resources else None,
        stopwords=stopwords,
    )
    instances = build_instances(pairs, include_none=task is not Task.SKOS)
    if augment_instances:
        instances = augment(instances)
    X, Y = extractor.extract_matrix(instances)
    target_col = {Task.BINARY: 0, Task.SKOS_PLUS_NONE: 1, Task.SKOS: 2}[task]
    y = Y[:, target_col]
    split = scale_and_split(X, y, seed=seed)
    clf = RelationClassifier(
        task=task,
        kernel=kernel,
        learning_rate=learning_rate,
        n_epochs=n_epochs,
        random_state=seed,
    )
    clf.fit(split.X_train, split.y_train)
    return clf, split.scaler, split
