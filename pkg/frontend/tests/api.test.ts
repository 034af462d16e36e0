import { describe, expect, it } from "vitest";

import { ApiError, SessionClient, type FetchLike } from "../src/api.js";
import { EX1_PROBLEM } from "../src/examples.js";
import type { SessionWire } from "../src/types.js";

interface RecordedCall {
  url: string;
  method: string;
  headers: Record<string, string>;
  body: unknown;
}

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

/** Fetch stub that records each call and replays queued responses. */
function stubFetch(responses: Response[]): { fetch: FetchLike; calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  const fetch: FetchLike = async (url, init) => {
    calls.push({
      url,
      method: init?.method ?? "GET",
      headers: (init?.headers as Record<string, string>) ?? {},
      body: init?.body ? JSON.parse(init.body as string) : undefined,
    });
    const next = responses.shift();
    if (!next) throw new Error("stub ran out of responses");
    return next;
  };
  return { fetch, calls };
}

function sessionBody(id: string, depth: number): SessionWire {
  return {
    id,
    history_depth: depth,
    allowed: [{ vertex: 1, allowed: true }],
    state: {
      quiver: { n: 1, m: 2, mutable: 1, even_arrows: [] },
      lambda: [[0]],
      lambda_current: [[0]],
      mode: "permissive",
      vars: [{}],
      trace: [],
    },
  };
}

describe("SessionClient request shaping", () => {
  it("POSTs the problem to /sessions with a JSON content type", async () => {
    const body = sessionBody("s1", 0);
    const { fetch, calls } = stubFetch([jsonResponse(201, body)]);
    const client = new SessionClient("http://api.test", fetch);
    const created = await client.createSession(EX1_PROBLEM);
    expect(created).toEqual(body);
    expect(calls).toHaveLength(1);
    expect(calls[0]).toMatchObject({
      url: "http://api.test/sessions",
      method: "POST",
      headers: { "Content-Type": "application/json" },
    });
    expect(calls[0]!.body).toEqual(EX1_PROBLEM);
  });

  it("strips trailing slashes from the base URL", async () => {
    const { fetch, calls } = stubFetch([jsonResponse(200, { status: "ok" })]);
    const client = new SessionClient("http://api.test///", fetch);
    await client.health();
    expect(calls[0]!.url).toBe("http://api.test/health");
  });

  it("sends the 1-based vertex in the mutate body", async () => {
    const { fetch, calls } = stubFetch([jsonResponse(200, sessionBody("s1", 1))]);
    const client = new SessionClient("http://api.test", fetch);
    await client.mutate("s1", 2);
    expect(calls[0]).toMatchObject({
      url: "http://api.test/sessions/s1/mutate",
      method: "POST",
    });
    expect(calls[0]!.body).toEqual({ vertex: 2 });
  });

  it("POSTs undo with no body", async () => {
    const { fetch, calls } = stubFetch([jsonResponse(200, sessionBody("s1", 0))]);
    const client = new SessionClient("http://api.test", fetch);
    await client.undo("s1");
    expect(calls[0]).toMatchObject({
      url: "http://api.test/sessions/s1/undo",
      method: "POST",
    });
    expect(calls[0]!.body).toBeUndefined();
  });

  it("GETs variables with the requested format", async () => {
    const vars = { id: "s1", format: "latex", variables: ["X_1"] };
    const { fetch, calls } = stubFetch([
      jsonResponse(200, vars),
      jsonResponse(200, { ...vars, format: "pretty", variables: ["x1"] }),
    ]);
    const client = new SessionClient("http://api.test", fetch);
    const latex = await client.variables("s1");
    expect(latex.variables).toEqual(["X_1"]);
    expect(calls[0]!.url).toBe("http://api.test/sessions/s1/variables?format=latex");
    await client.variables("s1", "pretty");
    expect(calls[1]!.url).toBe("http://api.test/sessions/s1/variables?format=pretty");
  });

  it("GETs a session by id", async () => {
    const { fetch, calls } = stubFetch([jsonResponse(200, sessionBody("s9", 3))]);
    const client = new SessionClient("http://api.test", fetch);
    const got = await client.getSession("s9");
    expect(got.history_depth).toBe(3);
    expect(calls[0]).toMatchObject({
      url: "http://api.test/sessions/s9",
      method: "GET",
    });
  });
});

describe("SessionClient error mapping", () => {
  it("raises ApiError with the parsed payload on 409 not_allowed", async () => {
    const errorBody = {
      error: {
        kind: "not_allowed",
        vertex: 1,
        analysis: [
          {
            target: 2,
            conditions: { a: false, b: false, c: true, d: false, e: false },
            satisfied: true,
          },
        ],
      },
    };
    const { fetch } = stubFetch([jsonResponse(409, errorBody)]);
    const client = new SessionClient("http://api.test", fetch);
    const failure = await client.mutate("s1", 1).catch((err) => err);
    expect(failure).toBeInstanceOf(ApiError);
    const apiError = failure as ApiError;
    expect(apiError.status).toBe(409);
    expect(apiError.kind).toBe("not_allowed");
    expect(apiError.payload.vertex).toBe(1);
    expect(apiError.payload.analysis).toHaveLength(1);
    expect(apiError.payload.analysis![0]!.conditions).toEqual({
      a: false,
      b: false,
      c: true,
      d: false,
      e: false,
    });
  });

  it("maps 409 frozen and nothing_to_undo", async () => {
    const { fetch } = stubFetch([
      jsonResponse(409, { error: { kind: "frozen", vertex: 2 } }),
      jsonResponse(409, { error: { kind: "nothing_to_undo" } }),
    ]);
    const client = new SessionClient("http://api.test", fetch);
    const frozen = (await client.mutate("s1", 2).catch((e) => e)) as ApiError;
    expect(frozen.status).toBe(409);
    expect(frozen.kind).toBe("frozen");
    const undo = (await client.undo("s1").catch((e) => e)) as ApiError;
    expect(undo.kind).toBe("nothing_to_undo");
  });

  it("maps 422 malformed with its message", async () => {
    const { fetch } = stubFetch([
      jsonResponse(422, {
        error: { kind: "malformed", message: "body needs 'vertex'" },
      }),
    ]);
    const client = new SessionClient("http://api.test", fetch);
    const failure = (await client.mutate("s1", 1).catch((e) => e)) as ApiError;
    expect(failure.status).toBe(422);
    expect(failure.kind).toBe("malformed");
    expect(failure.message).toContain("body needs 'vertex'");
  });

  it("keeps the compatibility report on 422 incompatible", async () => {
    const report = {
      ok: false,
      mode: "strict",
      d_entries: [1, 1],
      violations: [{ kind: "diagonal", column: 1, value: 0 }],
    };
    const { fetch } = stubFetch([
      jsonResponse(422, { error: { kind: "incompatible", report } }),
    ]);
    const client = new SessionClient("http://api.test", fetch);
    const failure = (await client.createSession(EX1_PROBLEM).catch((e) => e)) as ApiError;
    expect(failure.kind).toBe("incompatible");
    expect(failure.payload.report).toEqual(report);
  });

  it("maps 404 unknown_session", async () => {
    const { fetch } = stubFetch([
      jsonResponse(404, { error: { kind: "unknown_session", id: "nope" } }),
    ]);
    const client = new SessionClient("http://api.test", fetch);
    const failure = (await client.getSession("nope").catch((e) => e)) as ApiError;
    expect(failure.status).toBe(404);
    expect(failure.kind).toBe("unknown_session");
  });

  it("synthesizes a kind when the error body is not JSON", async () => {
    const { fetch } = stubFetch([
      new Response("boom", { status: 500, headers: { "Content-Type": "text/plain" } }),
    ]);
    const client = new SessionClient("http://api.test", fetch);
    const failure = (await client.health().catch((e) => e)) as ApiError;
    expect(failure.status).toBe(500);
    expect(failure.kind).toBe("http_500");
  });
});
