/** Client-side session state for reviewing an alignment run.
 *
 * The server is the single source of truth: a decision only changes what
 * the reviewer sees after the service acknowledged it, and every ack
 * carries the server's version counter, which must never move backwards.
 * Decisions made while the service is unreachable wait in a replay queue
 * instead of being lost or faked into the view.
 */

import { ApiClient, ApiError } from "./api.js";
import type { Candidate, Decision, EntryDetail, EntrySummary, Relation } from "./types.js";

export type SessionStatus = "loading" | "ready" | "empty" | "error";

export interface PendingDecision {
  entryId: number;
  decision: Decision;
}

function errorMessage(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}

/** Candidates ordered for review: best score first, undecidable (linkless,
 * scoreless) cells last, grid order as the tie break. */
export function orderCandidates(candidates: readonly Candidate[]): Candidate[] {
  return [...candidates].sort((a, b) => {
    const sa = a.score ?? -Infinity;
    const sb = b.score ?? -Infinity;
    if (sa !== sb) return sb - sa;
    if (a.source !== b.source) return a.source - b.source;
    return a.target - b.target;
  });
}

export class ReviewSession {
  status: SessionStatus = "loading";
  lastError: string | null = null;
  /** Set when an ack reveals writes this session did not make. */
  conflict = false;

  entries: EntrySummary[] = [];
  detail: EntryDetail | null = null;
  cursor = 0;

  /** Highest server version acknowledged so far; -1 before first contact. */
  version = -1;
  pending: PendingDecision[] = [];

  constructor(private readonly client: ApiClient) {}

  get decidedTotal(): number {
    return this.entries.reduce((sum, e) => sum + e.n_decided, 0);
  }

  /** Export stays disabled until the server holds at least one decision. */
  get canExport(): boolean {
    return this.decidedTotal > 0;
  }

  orderedCandidates(): Candidate[] {
    return this.detail ? orderCandidates(this.detail.candidates) : [];
  }

  currentCandidate(): Candidate | null {
    return this.orderedCandidates()[this.cursor] ?? null;
  }

  moveCursor(step: number): void {
    const last = Math.max(0, this.orderedCandidates().length - 1);
    this.cursor = Math.min(last, Math.max(0, this.cursor + step));
  }

  /** Fetch (or refetch) everything. A failure leaves existing state alone so
   * the view can keep showing it behind a retry banner. */
  async load(): Promise<boolean> {
    const firstLoad = this.entries.length === 0 && this.detail === null;
    try {
      await this.replay();
      const entries = await this.client.listEntries();
      this.entries = entries;
      if (entries.length === 0) {
        this.detail = null;
        this.status = "empty";
      } else {
        const current = this.detail?.id;
        const keep = entries.some((e) => e.id === current) ? (current as number) : entries[0]!.id;
        await this.open(keep);
        this.status = "ready";
      }
      this.lastError = null;
      return true;
    } catch (err) {
      this.lastError = errorMessage(err);
      if (firstLoad) this.status = "error";
      return false;
    }
  }

  async open(entryId: number): Promise<void> {
    const detail = await this.client.getEntry(entryId);
    if (this.detail?.id !== entryId) this.cursor = 0;
    this.detail = detail;
    this.noteVersion(detail.version);
    this.moveCursor(0);
  }

  /** Open the entry `step` places away in the listing order. */
  async openByStep(step: number): Promise<void> {
    if (!this.entries.length) return;
    const ids = this.entries.map((e) => e.id);
    const at = this.detail ? ids.indexOf(this.detail.id) : 0;
    const next = Math.min(ids.length - 1, Math.max(0, at + step));
    await this.open(ids[next]!);
  }

  /** Record one decision. Resolves to "acked" once the server confirmed it
   * (local state is then refetched, never locally patched), or "queued"
   * when the service is unreachable. Validation errors are thrown. */
  async decide(entryId: number, decision: Decision): Promise<"acked" | "queued"> {
    if (this.detail && this.detail.id === entryId) {
      const inGrid =
        decision.source >= 0 &&
        decision.source < this.detail.left_senses.length &&
        decision.target >= 0 &&
        decision.target < this.detail.right_senses.length;
      if (!inGrid) throw new RangeError("pair outside the entry grid");
    }
    let ack: { version: number };
    try {
      ack = await this.client.postDecision(entryId, decision);
    } catch (err) {
      if (err instanceof ApiError && err.unreachable) {
        this.pending.push({ entryId, decision });
        this.lastError = "service unreachable, decision queued for replay";
        return "queued";
      }
      throw err;
    }
    this.conflict = this.version >= 0 && ack.version !== this.version + 1;
    this.noteVersion(ack.version);
    try {
      await this.refresh();
    } catch (err) {
      // the decision is recorded server-side; only the resync failed
      this.lastError = errorMessage(err);
    }
    return "acked";
  }

  /** Decision helpers for the pair under the cursor. Accepting keeps the
   * proposed relation unless the proposal is absent or "none". */
  async acceptCurrent(): Promise<void> {
    const c = this.requireCurrent();
    const proposed = c.relation && c.relation !== "none" ? (c.relation as Relation) : "exact";
    await this.decide(this.detail!.id, {
      source: c.source,
      target: c.target,
      relation: proposed,
      accepted: true,
    });
  }

  async rejectCurrent(): Promise<void> {
    const c = this.requireCurrent();
    await this.decide(this.detail!.id, {
      source: c.source,
      target: c.target,
      relation: "none",
      accepted: false,
    });
  }

  async relabelCurrent(relation: Relation): Promise<void> {
    const c = this.requireCurrent();
    await this.decide(this.detail!.id, {
      source: c.source,
      target: c.target,
      relation,
      accepted: relation !== "none",
    });
  }

  /** Push queued decisions through in order. Stops quietly while the
   * service stays unreachable; drops queue entries the server rejects
   * outright, since retrying those can never succeed. */
  async replay(): Promise<number> {
    let flushed = 0;
    while (this.pending.length > 0) {
      const item = this.pending[0]!;
      try {
        const ack = await this.client.postDecision(item.entryId, item.decision);
        this.noteVersion(ack.version);
        this.pending.shift();
        flushed += 1;
      } catch (err) {
        if (err instanceof ApiError && err.unreachable) break;
        this.pending.shift();
        this.lastError = `queued decision dropped: ${errorMessage(err)}`;
      }
    }
    return flushed;
  }

  /** The exported text is the server's bytes, untouched. */
  async exportText(): Promise<string> {
    if (!this.canExport) throw new Error("no decisions recorded yet");
    return this.client.exportText();
  }

  private async refresh(): Promise<void> {
    this.entries = await this.client.listEntries();
    if (this.detail) await this.open(this.detail.id);
    this.status = this.entries.length ? "ready" : "empty";
    this.lastError = null;
  }

  private noteVersion(version: number): void {
    if (version < this.version) this.conflict = true;
    this.version = Math.max(this.version, version);
  }

  private requireCurrent(): Candidate {
    const c = this.currentCandidate();
    if (!c || !this.detail) throw new Error("no candidate under review");
    return c;
  }
}
