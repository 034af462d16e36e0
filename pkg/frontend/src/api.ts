/**
 * Typed fetch client for the session service. One method per endpoint, no
 * state of its own: callers keep the session id and the returned bodies.
 */

import type {
  ErrorPayload,
  ErrorWire,
  ProblemWire,
  SessionWire,
  VariablesWire,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Non-2xx response, carrying the parsed {"error": ...} payload. */
export class ApiError extends Error {
  readonly status: number;
  readonly payload: ErrorPayload;

  constructor(status: number, payload: ErrorPayload) {
    const detail = payload.message ? `: ${payload.message}` : "";
    super(`${payload.kind}${detail} (HTTP ${status})`);
    this.name = "ApiError";
    this.status = status;
    this.payload = payload;
  }

  get kind(): string {
    return this.payload.kind;
  }
}

export type VariableFormat = "pretty" | "latex" | "json";

export class SessionClient {
  readonly baseUrl: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    const text = await response.text();
    let data: unknown = null;
    if (text) {
      try {
        data = JSON.parse(text);
      } catch {
        data = null;
      }
    }
    if (!response.ok) {
      const payload = (data as ErrorWire | null)?.error ?? {
        kind: `http_${response.status}`,
      };
      throw new ApiError(response.status, payload);
    }
    return data as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/health");
  }

  createSession(problem: ProblemWire): Promise<SessionWire> {
    return this.request("POST", "/sessions", problem);
  }

  getSession(id: string): Promise<SessionWire> {
    return this.request("GET", `/sessions/${id}`);
  }

  mutate(id: string, vertex: number): Promise<SessionWire> {
    return this.request("POST", `/sessions/${id}/mutate`, { vertex });
  }

  undo(id: string): Promise<SessionWire> {
    return this.request("POST", `/sessions/${id}/undo`);
  }

  variables(id: string, format: VariableFormat = "latex"): Promise<VariablesWire> {
    return this.request("GET", `/sessions/${id}/variables?format=${format}`);
  }
}
