/** Typed client for the workbench HTTP API. No algebra happens here:
 * every number shown in the UI comes back from the service verbatim. */

import { SessionDoc } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(readonly status: number, readonly reason: string) {
    super(`${status}: ${reason}`);
  }
}

export class WorkbenchClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
      init.headers = { "Content-Type": "application/json" };
    }
    const response = await this.fetchImpl(this.base + path, init);
    const text = await response.text();
    let doc: unknown = null;
    try {
      doc = text ? JSON.parse(text) : null;
    } catch {
      throw new ApiError(response.status, "malformed response");
    }
    if (!response.ok) {
      const reason =
        doc && typeof doc === "object" && "reason" in doc
          ? String((doc as { reason: unknown }).reason)
          : `http ${response.status}`;
      throw new ApiError(response.status, reason);
    }
    return doc as T;
  }

  listExamples(): Promise<{ examples: string[]; seeds: string[] }> {
    return this.request("GET", "/api/examples");
  }

  createSession(payload: Record<string, unknown>): Promise<SessionDoc> {
    return this.request("POST", "/api/sessions", payload);
  }

  getSession(id: string): Promise<SessionDoc> {
    return this.request("GET", `/api/sessions/${id}`);
  }

  /** index is 1-based, matching the service wire format. */
  mutate(id: string, index: number): Promise<SessionDoc> {
    return this.request("POST", `/api/sessions/${id}/mutations`, { index });
  }

  undo(id: string): Promise<SessionDoc> {
    return this.request("POST", `/api/sessions/${id}/undo`);
  }

  exchange(id: string, depth: number): Promise<Record<string, unknown>> {
    return this.request("GET", `/api/sessions/${id}/exchange?depth=${depth}`);
  }
}
