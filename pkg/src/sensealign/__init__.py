"""Sense alignment toolkit for pairs of monolingual dictionaries.

The package links senses of shared headwords across two dictionaries,
types each link with a mapping relation, and ships the surrounding
machinery: similarity features, a feature-table classifier, bipartite
matching strategies, translation inference over multilingual graphs,
evaluation including inter-annotator agreement, a config-driven
pipeline, a CLI and an HTTP curation service.
"""

from .classifier import RelationClassifier, Task, task_classes
from .embeddings import (
    EmbeddingTable,
    cosine,
    definition_similarity,
    load_embeddings,
    load_stopwords,
    make_word_sim,
)
from .errors import SenseAlignError
from .features import (
    FEATURE_COLUMNS,
    TARGET_COLUMNS,
    FeatureExtractor,
    Instance,
    MinMaxScaler,
    ScaledDataset,
    augment,
    build_instances,
    scale_and_split,
    write_csv,
)
from .lexdata import (
    ALL_RELATIONS,
    SKOS_RELATIONS,
    DanglingAlignmentWarning,
    Dictionary,
    EntryPair,
    Link,
    PartOfSpeech,
    SemanticRelation,
    Sense,
    WordNode,
    dump_annotations,
    load_benchmark,
    load_dictionary_tsv,
    load_translation_pairs,
    pair_dictionaries,
    save_annotations,
    tokenize,
)
from .matching import (
    DegreeBounds,
    NoConstraint,
    TaxonomicConstraint,
    baseline_align,
    beam_match,
    greedy_bijective,
    hungarian,
    wbbm_greedy,
)
from .netstats import AlignmentStats, BipartiteGraph, alignment_stats, degree_density
from .pipeline import (
    PipelineConfig,
    Runtime,
    align_dictionaries,
    build_runtime,
    load_config,
    parse_config,
    run_alignment,
    truncate_senses,
)
from .rbm import BernoulliRbm
from .relations import RelationKind, RelationStore, hapax_link, ingest_edges
from .translation import (
    InferredTranslation,
    TranslationGraph,
    evaluate_inference,
    infer_cycles,
    infer_paths,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_RELATIONS",
    "AlignmentStats",
    "BernoulliRbm",
    "BipartiteGraph",
    "DanglingAlignmentWarning",
    "DegreeBounds",
    "Dictionary",
    "EmbeddingTable",
    "EntryPair",
    "FEATURE_COLUMNS",
    "FeatureExtractor",
    "InferredTranslation",
    "Instance",
    "Link",
    "MinMaxScaler",
    "NoConstraint",
    "PartOfSpeech",
    "PipelineConfig",
    "RelationClassifier",
    "RelationKind",
    "RelationStore",
    "Runtime",
    "SKOS_RELATIONS",
    "ScaledDataset",
    "SemanticRelation",
    "Sense",
    "SenseAlignError",
    "TARGET_COLUMNS",
    "Task",
    "TaxonomicConstraint",
    "TranslationGraph",
    "WordNode",
    "align_dictionaries",
    "alignment_stats",
    "augment",
    "baseline_align",
    "beam_match",
    "build_instances",
    "build_runtime",
    "cosine",
    "definition_similarity",
    "degree_density",
    "dump_annotations",
    "evaluate_inference",
    "greedy_bijective",
    "hapax_link",
    "hungarian",
    "infer_cycles",
    "infer_paths",
    "ingest_edges",
    "load_benchmark",
    "load_config",
    "load_dictionary_tsv",
    "load_embeddings",
    "load_stopwords",
    "load_translation_pairs",
    "make_word_sim",
    "pair_dictionaries",
    "parse_config",
    "run_alignment",
    "save_annotations",
    "scale_and_split",
    "task_classes",
    "tokenize",
    "truncate_senses",
    "wbbm_greedy",
    "write_csv",
]
