"""HTTP curation service for reviewing alignment output.

The service holds a list of entry pairs (usually an alignment run) and
lets reviewers accept, reject or relabel candidate links.  Every write
bumps a monotonically increasing version, applies last-write-wins per
candidate pair, and persists the current state to the annotation file
when one is configured.  The export endpoint returns exactly the bytes
the file serialiser would write, so a downloaded document and a saved
one are interchangeable.
"""

from __future__ import annotations

import threading

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import Response
from pydantic import BaseModel

from .lexdata import (
    EntryPair,
    Link,
    SemanticRelation,
    dump_annotations,
    save_annotations,
)


class DecisionRequest(BaseModel):
    source: int
    target: int
    relation: str
    accepted: bool


class CurationState:
    """Entries plus reviewer decisions, guarded by one lock."""

    def __init__(self, pairs: list[EntryPair], annotation_path: str | None = None):
        self.pairs = pairs
        self.annotation_path = annotation_path
        self.version = 0
        self.decided: list[dict[tuple[int, int], dict]] = [dict() for _ in pairs]
        self._original_links = [list(p.links) for p in pairs]
        self._lock = threading.Lock()

    def _rebuild_links(self, idx: int) -> None:
        pair = self.pairs[idx]
        base: dict[tuple[int, int], Link] = {}
        for link in self._original_links[idx]:
            base.setdefault((link.source, link.target), link)
        for key, decision in self.decided[idx].items():
            if decision["accepted"]:
                base[key] = Link(
                    source=key[0],
                    target=key[1],
                    relation=SemanticRelation.parse(decision["relation"]),
                    score=1.0,
                )
            else:
                base.pop(key, None)
        pair.links = [base[k] for k in sorted(base)]

    def record(self, idx: int, source: int, target: int, relation: str, accepted: bool) -> int:
        with self._lock:
            pair = self.pairs[idx]
            if not (0 <= source < pair.n_left and 0 <= target < pair.n_right):
                raise IndexError("sense index out of range")
            rel = SemanticRelation.parse(relation)
            if accepted and rel is SemanticRelation.NONE:
                accepted = False
            self.decided[idx][(source, target)] = {
                "relation": rel.value,
                "accepted": accepted,
            }
            self._rebuild_links(idx)
            self.version += 1
            if self.annotation_path:
                save_annotations(self.pairs, self.annotation_path)
            return self.version

    def export_text(self) -> str:
        with self._lock:
            return dump_annotations(self.pairs)


def create_app(pairs: list[EntryPair], annotation_path: str | None = None) -> FastAPI:
    """Build the service around one entry list."""
    state = CurationState(pairs, annotation_path)
    app = FastAPI(title="sensealign curation service")
    app.state.curation = state
    # the review page is often served from another port during development
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "entries": len(state.pairs), "version": state.version}

    @app.get("/api/entries")
    def list_entries() -> list[dict]:
        return [
            {
                "id": idx,
                "lemma": p.lemma,
                "pos": p.pos.value,
                "n_left": p.n_left,
                "n_right": p.n_right,
                "n_links": len(p.links),
                "n_decided": len(state.decided[idx]),
            }
            for idx, p in enumerate(state.pairs)
        ]

    @app.get("/api/entries/{entry_id}")
    def get_entry(entry_id: int) -> dict:
        if not (0 <= entry_id < len(state.pairs)):
            raise HTTPException(status_code=404, detail="no such entry")
        p = state.pairs[entry_id]
        links_by_pair = {(l.source, l.target): l for l in p.links}
        candidates = []
        for i in range(p.n_left):
            for j in range(p.n_right):
                link = links_by_pair.get((i, j))
                decision = state.decided[entry_id].get((i, j))
                candidates.append(
                    {
                        "source": i,
                        "target": j,
                        "relation": link.relation.value if link else None,
                        "score": link.score if link else None,
                        "scores_by_class": (
                            {r.value: s for r, s in link.scores_by_class.items()}
                            if link and link.scores_by_class
                            else None
                        ),
                        "decided": decision,
                    }
                )
        return {
            "id": entry_id,
            "lemma": p.lemma,
            "pos": p.pos.value,
            "gender": p.gender,
            "meta_id": p.meta_id,
            "left_senses": [{"text": s.text, "external_id": s.external_id} for s in p.left],
            "right_senses": [{"text": s.text, "external_id": s.external_id} for s in p.right],
            "candidates": candidates,
            "version": state.version,
        }

    @app.post("/api/entries/{entry_id}/decision")
    def post_decision(entry_id: int, decision: DecisionRequest) -> dict:
        if not (0 <= entry_id < len(state.pairs)):
            raise HTTPException(status_code=404, detail="no such entry")
        try:
            version = state.record(
                entry_id, decision.source, decision.target, decision.relation, decision.accepted
            )
        except IndexError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except Exception as exc:  # malformed relation string
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return {"version": version}

    @app.get("/api/export")
    def export() -> Response:
        return Response(content=state.export_text(), media_type="application/json")

    return app
