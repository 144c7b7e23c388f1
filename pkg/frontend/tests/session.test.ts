import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { ReviewSession, orderCandidates } from "../src/session.js";
import { FakeService, fixtureEntries } from "./fake-service.js";

function makeSession(fake?: FakeService): { session: ReviewSession; fake: FakeService } {
  const service = fake ?? new FakeService(fixtureEntries());
  return { session: new ReviewSession(new ApiClient("", service.fetchLike)), fake: service };
}

describe("loading", () => {
  it("loads a three entry session with zero progress", async () => {
    const { session } = makeSession();
    expect(await session.load()).toBe(true);
    expect(session.status).toBe("ready");
    expect(session.entries).toHaveLength(3);
    expect(session.entries.every((e) => e.n_decided === 0)).toBe(true);
    expect(session.detail?.lemma).toBe("beacon");
    expect(session.version).toBe(0);
    expect(session.canExport).toBe(false);
  });

  it("shows the empty state for a service with no entries", async () => {
    const { session } = makeSession(new FakeService([]));
    await session.load();
    expect(session.status).toBe("empty");
    expect(session.detail).toBeNull();
  });

  it("reports an error when the first load cannot reach the service", async () => {
    const { session, fake } = makeSession();
    fake.offline = true;
    expect(await session.load()).toBe(false);
    expect(session.status).toBe("error");
    expect(session.lastError).toMatch(/unreachable/);
    fake.offline = false;
    expect(await session.load()).toBe(true);
    expect(session.status).toBe("ready");
    expect(session.lastError).toBeNull();
  });

  it("keeps loaded state when a later reload fails", async () => {
    const { session, fake } = makeSession();
    await session.load();
    const before = structuredClone(session.entries);
    fake.offline = true;
    expect(await session.load()).toBe(false);
    expect(session.status).toBe("ready");
    expect(session.entries).toEqual(before);
    expect(session.detail?.lemma).toBe("beacon");
    expect(session.lastError).toMatch(/unreachable/);
  });

  it("orders candidates by descending score with the grid as tie break", async () => {
    const { session } = makeSession();
    await session.load();
    await session.open(2);
    const order = session.orderedCandidates().map((c) => [c.source, c.target, c.score]);
    expect(order[0]).toEqual([0, 0, 0.61]);
    expect(order[1]).toEqual([1, 2, 0.58]);
    expect(order.slice(2).map((row) => row[2])).toEqual([null, null, null, null]);
    expect(order.slice(2).map((row) => [row[0], row[1]])).toEqual([
      [0, 1],
      [0, 2],
      [1, 0],
      [1, 1],
    ]);
  });

  it("never reorders in place", () => {
    const grid = [
      { source: 0, target: 0, relation: null, score: null, scores_by_class: null, decided: null },
      { source: 0, target: 1, relation: "exact", score: 1, scores_by_class: null, decided: null },
    ];
    const copy = structuredClone(grid);
    orderCandidates(grid);
    expect(grid).toEqual(copy);
  });
});

describe("decisions", () => {
  it("round trips a full review: accept, reject, two relabels, reload, export", async () => {
    const { session, fake } = makeSession();
    await session.load();

    // accept the top beacon proposal as it stands
    expect(
      await session.decide(0, { source: 0, target: 0, relation: "exact", accepted: true }),
    ).toBe("acked");
    expect(session.version).toBe(1);
    // reject the weaker one
    await session.decide(0, { source: 1, target: 1, relation: "none", accepted: false });
    // relabel the meadow proposal twice; the last write wins
    await session.open(2);
    await session.decide(2, { source: 0, target: 0, relation: "related", accepted: true });
    await session.decide(2, { source: 0, target: 0, relation: "narrower", accepted: true });
    expect(session.version).toBe(4);
    expect(session.conflict).toBe(false);

    // the view reflects the server acknowledgments
    const meadow = session.detail!;
    const relabeled = meadow.candidates.find((c) => c.source === 0 && c.target === 0)!;
    expect(relabeled.decided).toEqual({ relation: "narrower", accepted: true });
    expect(relabeled.relation).toBe("narrower");
    expect(relabeled.score).toBe(1.0);
    await session.open(0);
    const rejected = session.detail!.candidates.find((c) => c.source === 1 && c.target === 1)!;
    expect(rejected.decided).toEqual({ relation: "none", accepted: false });
    expect(rejected.relation).toBeNull();
    expect(rejected.score).toBeNull();
    expect(session.decidedTotal).toBe(3);

    // a fresh session sees the identical state
    const reloaded = new ReviewSession(new ApiClient("", fake.fetchLike));
    await reloaded.load();
    expect(reloaded.entries).toEqual(session.entries);
    expect(reloaded.version).toBe(session.version);
    for (const id of [0, 1, 2]) {
      await session.open(id);
      await reloaded.open(id);
      expect(reloaded.detail).toEqual(session.detail);
    }

    // the export is the server's document, byte for byte, and stable
    const exported = await session.exportText();
    expect(exported).toBe(fake.exportText());
    expect(await reloaded.exportText()).toBe(exported);

    const doc = JSON.parse(exported) as Array<{
      lemma: string;
      alignment: Array<Record<string, unknown>>;
    }>;
    expect(doc.map((e) => e.lemma)).toEqual(["beacon", "thicket", "meadow"]);
    expect(doc[0]!.alignment).toEqual([
      {
        sense_source: "a light set up high as a warning or signal",
        sense_target: "a warning fire or light on a hill or tower",
        semantic_relationship: "exact",
        score: 1.0,
      },
    ]);
    expect(doc[1]!.alignment).toEqual([]);
    const meadowRows = doc[2]!.alignment;
    expect(meadowRows.map((r) => r["semantic_relationship"])).toEqual(["narrower", "exact"]);
  });

  it("refuses to export before any decision exists", async () => {
    const { session } = makeSession();
    await session.load();
    await expect(session.exportText()).rejects.toThrow(/no decisions/);
    await session.decide(1, { source: 0, target: 0, relation: "exact", accepted: true });
    expect(session.canExport).toBe(true);
    expect(await session.exportText()).toContain('"semantic_relationship": "exact"');
  });

  it("treats an accepted none as a rejection", async () => {
    const { session } = makeSession();
    await session.load();
    await session.decide(0, { source: 0, target: 0, relation: "none", accepted: true });
    const cell = session.detail!.candidates.find((c) => c.source === 0 && c.target === 0)!;
    expect(cell.decided).toEqual({ relation: "none", accepted: false });
    expect(cell.relation).toBeNull();
  });

  it("rejects pairs outside the open entry's grid before posting", async () => {
    const { session, fake } = makeSession();
    await session.load();
    const posts = fake.requests.filter((r) => r.startsWith("POST")).length;
    await expect(
      session.decide(0, { source: 5, target: 0, relation: "exact", accepted: true }),
    ).rejects.toThrow(RangeError);
    expect(fake.requests.filter((r) => r.startsWith("POST"))).toHaveLength(posts);
  });

  it("updates progress counts as decisions land", async () => {
    const { session } = makeSession();
    await session.load();
    await session.decide(0, { source: 0, target: 1, relation: "broader", accepted: true });
    expect(session.entries.find((e) => e.id === 0)?.n_decided).toBe(1);
    expect(session.entries.find((e) => e.id === 2)?.n_decided).toBe(0);
  });
});

describe("offline queue", () => {
  it("queues decisions while unreachable and replays them on reload", async () => {
    const { session, fake } = makeSession();
    await session.load();
    fake.offline = true;
    expect(
      await session.decide(0, { source: 0, target: 0, relation: "exact", accepted: true }),
    ).toBe("queued");
    expect(session.pending).toHaveLength(1);
    expect(session.lastError).toMatch(/queued/);
    // nothing is faked locally: the view still shows the cell undecided
    const cell = session.detail!.candidates.find((c) => c.source === 0 && c.target === 0)!;
    expect(cell.decided).toBeNull();
    expect(session.version).toBe(0);

    fake.offline = false;
    await session.load();
    expect(session.pending).toHaveLength(0);
    expect(session.version).toBe(1);
    const acked = session.detail!.candidates.find((c) => c.source === 0 && c.target === 0)!;
    expect(acked.decided).toEqual({ relation: "exact", accepted: true });
  });

  it("drops queued decisions the server rejects outright", async () => {
    const { session, fake } = makeSession();
    await session.load();
    fake.offline = true;
    // entry 2 is not open, so only the server can rule on the bounds
    await session.decide(2, { source: 7, target: 0, relation: "exact", accepted: true });
    await session.decide(2, { source: 0, target: 0, relation: "exact", accepted: true });
    expect(session.pending).toHaveLength(2);
    fake.offline = false;
    expect(await session.replay()).toBe(1);
    expect(session.pending).toHaveLength(0);
    expect(session.lastError).toMatch(/dropped/);
  });
});

describe("versioning", () => {
  it("flags writes made outside this session", async () => {
    const fake = new FakeService(fixtureEntries());
    const a = new ReviewSession(new ApiClient("", fake.fetchLike));
    const b = new ReviewSession(new ApiClient("", fake.fetchLike));
    await a.load();
    await b.load();
    await a.decide(0, { source: 0, target: 0, relation: "exact", accepted: true });
    expect(a.conflict).toBe(false);
    await b.decide(0, { source: 1, target: 1, relation: "none", accepted: false });
    expect(b.conflict).toBe(true);
    // the refetch after the ack already brought b up to date
    expect(b.version).toBe(2);
    expect(b.entries.find((e) => e.id === 0)?.n_decided).toBe(2);
  });

  it("never lets the version move backwards", async () => {
    const { session } = makeSession();
    await session.load();
    await session.decide(0, { source: 0, target: 0, relation: "exact", accepted: true });
    const seen = session.version;
    await session.open(1);
    expect(session.version).toBeGreaterThanOrEqual(seen);
  });
});

describe("cursor driven review", () => {
  it("accepts the proposal under the cursor, falling back to exact", async () => {
    const { session } = makeSession();
    await session.load();
    // beacon: top of the ordering is the 0.82 exact proposal
    await session.acceptCurrent();
    let cell = session.detail!.candidates.find((c) => c.source === 0 && c.target === 0)!;
    expect(cell.decided).toEqual({ relation: "exact", accepted: true });

    // thicket has no proposal at all; accept defaults to exact
    await session.open(1);
    await session.acceptCurrent();
    cell = session.detail!.candidates.find((c) => c.source === 0 && c.target === 0)!;
    expect(cell.decided).toEqual({ relation: "exact", accepted: true });
  });

  it("moves the cursor within bounds and rejects under it", async () => {
    const { session } = makeSession();
    await session.load();
    session.moveCursor(1);
    expect(session.cursor).toBe(1);
    session.moveCursor(100);
    expect(session.cursor).toBe(3);
    session.moveCursor(-100);
    expect(session.cursor).toBe(0);
    session.moveCursor(1);
    await session.rejectCurrent();
    const cell = session.detail!.candidates.find((c) => c.source === 1 && c.target === 1)!;
    expect(cell.decided).toEqual({ relation: "none", accepted: false });
  });

  it("relabelling to none records a rejection", async () => {
    const { session } = makeSession();
    await session.load();
    await session.relabelCurrent("none");
    const cell = session.detail!.candidates.find((c) => c.source === 0 && c.target === 0)!;
    expect(cell.decided).toEqual({ relation: "none", accepted: false });
  });

  it("steps across entries in listing order", async () => {
    const { session } = makeSession();
    await session.load();
    await session.openByStep(1);
    expect(session.detail?.lemma).toBe("thicket");
    await session.openByStep(1);
    expect(session.detail?.lemma).toBe("meadow");
    await session.openByStep(1);
    expect(session.detail?.lemma).toBe("meadow");
    await session.openByStep(-5);
    expect(session.detail?.lemma).toBe("beacon");
  });
});
