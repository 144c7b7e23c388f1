"""Curation service endpoints, exercised through the ASGI test client."""

import pytest
from fastapi.testclient import TestClient

from sensealign.lexdata import (
    EntryPair,
    Link,
    PartOfSpeech,
    SemanticRelation,
    Sense,
    load_benchmark,
)
from sensealign.service import create_app


def sample_pairs() -> list[EntryPair]:
    return [
        EntryPair(
            lemma="lantern",
            pos=PartOfSpeech.NOUN,
            left=(Sense(text="portable lamp"), Sense(text="signal light")),
            right=(Sense(text="lamp carried by hand"),),
            links=[
                Link(
                    source=0,
                    target=0,
                    relation=SemanticRelation.EXACT,
                    score=0.9,
                    scores_by_class={
                        SemanticRelation.EXACT: 0.9,
                        SemanticRelation.NONE: 0.1,
                    },
                )
            ],
        ),
        EntryPair(
            lemma="brisk",
            pos=PartOfSpeech.ADJECTIVE,
            left=(Sense(text="quick and active"),),
            right=(Sense(text="sharp in manner"),),
            links=[],
        ),
    ]


@pytest.fixture()
def client():
    return TestClient(create_app(sample_pairs()))


class TestReads:
    def test_health(self, client):
        body = client.get("/api/health").json()
        assert body == {"status": "ok", "entries": 2, "version": 0}

    def test_entry_listing(self, client):
        rows = client.get("/api/entries").json()
        assert [r["lemma"] for r in rows] == ["lantern", "brisk"]
        assert rows[0]["n_left"] == 2 and rows[0]["n_right"] == 1
        assert rows[0]["n_links"] == 1 and rows[0]["n_decided"] == 0

    def test_entry_detail_includes_all_candidates(self, client):
        body = client.get("/api/entries/0").json()
        assert body["lemma"] == "lantern"
        assert len(body["candidates"]) == 2  # full 2x1 grid
        linked = body["candidates"][0]
        assert linked["relation"] == "exact"
        assert linked["score"] == pytest.approx(0.9)
        assert linked["scores_by_class"]["exact"] == pytest.approx(0.9)
        unlinked = body["candidates"][1]
        assert unlinked["relation"] is None and unlinked["decided"] is None

    def test_missing_entry_is_404(self, client):
        assert client.get("/api/entries/5").status_code == 404


class TestDecisions:
    def test_accept_creates_link_and_bumps_version(self, client):
        resp = client.post(
            "/api/entries/1/decision",
            json={"source": 0, "target": 0, "relation": "narrower", "accepted": True},
        )
        assert resp.status_code == 200
        assert resp.json() == {"version": 1}
        body = client.get("/api/entries/1").json()
        cand = body["candidates"][0]
        assert cand["relation"] == "narrower"
        assert cand["decided"] == {"relation": "narrower", "accepted": True}
        assert client.get("/api/health").json()["version"] == 1

    def test_reject_removes_existing_link(self, client):
        client.post(
            "/api/entries/0/decision",
            json={"source": 0, "target": 0, "relation": "exact", "accepted": False},
        )
        body = client.get("/api/entries/0").json()
        assert body["candidates"][0]["relation"] is None
        assert body["candidates"][0]["decided"]["accepted"] is False

    def test_last_write_wins_per_candidate(self, client):
        for rel, accepted in [("exact", True), ("broader", True), ("exact", False)]:
            client.post(
                "/api/entries/1/decision",
                json={"source": 0, "target": 0, "relation": rel, "accepted": accepted},
            )
        body = client.get("/api/entries/1").json()
        assert body["candidates"][0]["relation"] is None
        assert client.get("/api/health").json()["version"] == 3

    def test_accepting_none_means_reject(self, client):
        client.post(
            "/api/entries/0/decision",
            json={"source": 0, "target": 0, "relation": "none", "accepted": True},
        )
        body = client.get("/api/entries/0").json()
        assert body["candidates"][0]["relation"] is None

    def test_bad_indices_and_relations_are_400(self, client):
        out_of_range = client.post(
            "/api/entries/0/decision",
            json={"source": 9, "target": 0, "relation": "exact", "accepted": True},
        )
        assert out_of_range.status_code == 400
        bad_rel = client.post(
            "/api/entries/0/decision",
            json={"source": 0, "target": 0, "relation": "kinda", "accepted": True},
        )
        assert bad_rel.status_code == 400
        missing = client.post(
            "/api/entries/7/decision",
            json={"source": 0, "target": 0, "relation": "exact", "accepted": True},
        )
        assert missing.status_code == 404


class TestExportAndPersistence:
    def load_export(self, client, tmp_path):
        path = tmp_path / "export.json"
        path.write_bytes(client.get("/api/export").content)
        return load_benchmark(str(path))

    def test_export_is_loadable_and_deterministic(self, client, tmp_path):
        first = client.get("/api/export")
        assert first.headers["content-type"].startswith("application/json")
        assert first.content == client.get("/api/export").content
        doc = self.load_export(client, tmp_path)
        assert [p.lemma for p in doc] == ["lantern", "brisk"]
        assert doc[0].links[0].relation is SemanticRelation.EXACT

    def test_cross_origin_requests_are_allowed(self, client):
        resp = client.get("/api/health", headers={"Origin": "http://localhost:5173"})
        assert resp.headers["access-control-allow-origin"] == "*"

    def test_export_reflects_decisions(self, client, tmp_path):
        client.post(
            "/api/entries/1/decision",
            json={"source": 0, "target": 0, "relation": "related", "accepted": True},
        )
        doc = self.load_export(client, tmp_path)
        assert doc[1].links[0].relation is SemanticRelation.RELATED
        assert doc[1].links[0].score == pytest.approx(1.0)

    def test_decisions_persist_to_annotation_file(self, tmp_path):
        path = tmp_path / "review.json"
        client = TestClient(create_app(sample_pairs(), annotation_path=str(path)))
        client.post(
            "/api/entries/0/decision",
            json={"source": 1, "target": 0, "relation": "broader", "accepted": True},
        )
        saved = load_benchmark(str(path))
        pairs = {(l.source, l.target): l.relation for l in saved[0].links}
        assert pairs == {
            (0, 0): SemanticRelation.EXACT,
            (1, 0): SemanticRelation.BROADER,
        }
