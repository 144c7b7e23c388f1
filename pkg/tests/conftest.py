"""Shared fixtures: a small benchmark document, dictionary TSVs and an
embedding table, all synthetic."""

from __future__ import annotations

import json

import pytest

BENCHMARK_DOC = [
    {
        "lemma": "lantern",
        "POS_tag": "noun",
        "gender": None,
        "meta_ID": "fx-001",
        "resource_1_senses": [
            {"#text": "a portable case with a light inside", "external_ID": "L1"},
            {"#text": "the glassed upper room of a lighthouse", "external_ID": "L2"},
        ],
        "resource_2_senses": [
            {"#text": "a portable lamp in a case", "external_ID": "R1"},
            {"#text": "a roofed tower room with windows", "external_ID": "R2"},
        ],
        "alignment": [
            {
                "sense_source": "a portable case with a light inside",
                "sense_target": "a portable lamp in a case",
                "semantic_relationship": "exact",
            },
            {
                "sense_source": "the glassed upper room of a lighthouse",
                "sense_target": "a roofed tower room with windows",
                "semantic_relationship": "narrower",
            },
        ],
    },
    {
        "lemma": "brisk",
        "POS_tag": "adjective",
        "gender": None,
        "meta_ID": "fx-002",
        "resource_1_senses": [
            {"#text": "quick and energetic in movement", "external_ID": "L1"}
        ],
        "resource_2_senses": [
            {"#text": "moving or acting with speed", "external_ID": "R1"}
        ],
        "alignment": [
            {
                "sense_source": "quick and energetic in movement",
                "sense_target": "moving or acting with speed",
                "semantic_relationship": "exact",
            }
        ],
    },
    {
        "lemma": "mast",
        "POS_tag": "noun",
        "gender": "m",
        "meta_ID": "fx-003",
        "resource_1_senses": [
            {"#text": "a tall upright pole carrying sails", "external_ID": "L1"},
            {"#text": "fallen nuts eaten by forest animals", "external_ID": "L2"},
        ],
        "resource_2_senses": [
            {"#text": "a pole that holds up the sails of a ship", "external_ID": "R1"},
            {"#text": "a vertical support for an antenna", "external_ID": "R2"},
            {"#text": "acorns and beechnuts on the woodland floor", "external_ID": "R3"},
        ],
        "alignment": [
            {
                "sense_source": "a tall upright pole carrying sails",
                "sense_target": "a pole that holds up the sails of a ship",
                "semantic_relationship": "exact",
            },
            {
                "sense_source": "a tall upright pole carrying sails",
                "sense_target": "a vertical support for an antenna",
                "semantic_relationship": "related",
            },
            {
                "sense_source": "fallen nuts eaten by forest animals",
                "sense_target": "acorns and beechnuts on the woodland floor",
                "semantic_relationship": "broader",
            },
        ],
    },
]


@pytest.fixture
def benchmark_path(tmp_path):
    path = tmp_path / "benchmark.json"
    path.write_text(json.dumps(BENCHMARK_DOC, ensure_ascii=False, indent=2), encoding="utf-8")
    return str(path)


LEFT_TSV = """\
e1\ts1\tbank\tnoun\tthe sloping land beside a river
e1\ts2\tbank\tnoun\tan establishment keeping money safe
e2\ts1\tsage\tnoun\ta person of deep wisdom
e3\ts1\tbank\tverb\tto tilt an aircraft sideways
"""

RIGHT_TSV = """\
f1\ta\tbank\tnoun\tground at the edge of a watercourse
f1\tb\tbank\tnoun\ta firm that stores and lends money
f1\tc\tbank\tnoun\ta long raised mound or ridge
f2\ta\tlantern\tnoun\ta lamp you can carry
"""


@pytest.fixture
def dictionary_paths(tmp_path):
    left = tmp_path / "left.tsv"
    right = tmp_path / "right.tsv"
    left.write_text(LEFT_TSV, encoding="utf-8")
    right.write_text(RIGHT_TSV, encoding="utf-8")
    return str(left), str(right)


EMBEDDINGS_TXT = """\
8 4
river 1.0 0.0 0.0 0.0
water 0.9 0.1 0.0 0.0
money 0.0 1.0 0.0 0.0
coin 0.0 0.9 0.1 0.0
pole 0.0 0.0 1.0 0.0
sail 0.0 0.1 0.9 0.0
the 0.2 0.2 0.2 0.2
of 0.2 0.2 0.2 0.2
"""


@pytest.fixture
def embeddings_path(tmp_path):
    path = tmp_path / "vectors.txt"
    path.write_text(EMBEDDINGS_TXT, encoding="utf-8")
    return str(path)


@pytest.fixture
def stopwords_path(tmp_path):
    path = tmp_path / "stopwords.txt"
    path.write_text("the\na\nan\nof\nwith\nin\nby\nor\nand\nto\n", encoding="utf-8")
    return str(path)


RELATIONS_TSV = """\
synonymy\tquick\tfast\t2.0
synonymy\tfast\tquick\t1.5
hypernymy\tpole\tmast\t1.0
relatedness\triver\twater\t0.8
antonymy\tquick\tslow\t1.0
meronymy\tsail\tship\t0.5
similarity\tlamp\tlantern\t0.7
hyponymy\tmast\tpole\t0.25
unknown_kind\tfoo\tbar\t1.0
"""


@pytest.fixture
def relations_path(tmp_path):
    path = tmp_path / "relations.tsv"
    path.write_text(RELATIONS_TSV, encoding="utf-8")
    return str(path)
