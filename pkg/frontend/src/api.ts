/** Typed service client with stale-response suppression.
 *
 * At most one forecast request is considered live: each call gets a
 * monotonically increasing sequence number, the previous in-flight
 * request is aborted, and a response whose sequence number is no longer
 * the latest resolves as { stale: true } instead of delivering data.
 */

import type { ApiError, DefaultsResponse, ForecastRequest, ForecastResponse } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export type ForecastOutcome =
  | { kind: "ok"; seq: number; response: ForecastResponse }
  | { kind: "stale"; seq: number }
  | { kind: "error"; seq: number; field: string; message: string };

export class ForecastClient {
  private seq = 0;
  private controller: AbortController | null = null;

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  get lastSeq(): number {
    return this.seq;
  }

  async defaults(): Promise<DefaultsResponse> {
    const response = await this.fetchImpl(`${this.baseUrl}/api/defaults`);
    if (!response.ok) {
      throw new Error(`defaults failed: HTTP ${response.status}`);
    }
    return (await response.json()) as DefaultsResponse;
  }

  async forecast(request: ForecastRequest): Promise<ForecastOutcome> {
    const seq = ++this.seq;
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    let response: Response;
    try {
      response = await this.fetchImpl(`${this.baseUrl}/api/forecast`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(request),
        signal: controller.signal,
      });
    } catch (err) {
      if (seq !== this.seq) return { kind: "stale", seq };
      throw err;
    }
    if (seq !== this.seq) {
      return { kind: "stale", seq };
    }
    if (!response.ok) {
      const doc = (await response.json()) as ApiError;
      return {
        kind: "error",
        seq,
        field: doc.error?.field ?? "request",
        message: doc.error?.message ?? `HTTP ${response.status}`,
      };
    }
    return { kind: "ok", seq, response: (await response.json()) as ForecastResponse };
  }
}
