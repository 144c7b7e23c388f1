/** Typed client for the curation service. All state lives on the server;
 * this module only moves JSON back and forth. */

import type { Decision, EntryDetail, EntrySummary, HealthInfo } from "./types.js";

/** status 0 means the service was unreachable (network error, no response). */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }

  get unreachable(): boolean {
    return this.status === 0;
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

// fetch must not be called as a bare reference: browsers require the
// global as its this-binding.
const defaultFetch: FetchLike = (input, init) => fetch(input, init);

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = defaultFetch,
  ) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    let resp: Response;
    try {
      resp = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, `service unreachable: ${String(err)}`);
    }
    if (!resp.ok) {
      let detail = `${resp.status} ${resp.statusText}`;
      try {
        const body = (await resp.json()) as { detail?: string };
        if (body && typeof body.detail === "string") detail = body.detail;
      } catch {
        // non-JSON error body, keep the status line
      }
      throw new ApiError(resp.status, detail);
    }
    return resp;
  }

  async health(): Promise<HealthInfo> {
    return (await this.request("/api/health")).json();
  }

  async listEntries(): Promise<EntrySummary[]> {
    return (await this.request("/api/entries")).json();
  }

  async getEntry(id: number): Promise<EntryDetail> {
    return (await this.request(`/api/entries/${id}`)).json();
  }

  async postDecision(entryId: number, decision: Decision): Promise<{ version: number }> {
    return (
      await this.request(`/api/entries/${entryId}/decision`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(decision),
      })
    ).json();
  }

  /** Raw export text. Never reparse and restringify this: the download must
   * stay byte-identical to what the server's file serialiser writes. */
  async exportText(): Promise<string> {
    return (await this.request("/api/export")).text();
  }
}
