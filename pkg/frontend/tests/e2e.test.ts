/**
 * End-to-end: a real service process, the real client, and the DOM.
 *
 * The suite starts `python3 -m qcluster.cli serve` on a random port, waits
 * for /health, then drives the page the way a user would: load a problem,
 * click vertices, undo, and read the variables panel. Every displayed
 * value must be exactly what the server sent; the client computes nothing.
 */

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { SessionClient } from "../src/api.js";
import { App } from "../src/app.js";
import { EX1_PROBLEM, EX2_PROBLEM } from "../src/examples.js";

const X1_PRIME = "X_1^{-1} (2 + q^{-1} \\xi_1 \\xi_2)";
const X1_DOUBLE_PRIME = "X_1 (1 - q^{-1} \\xi_1 \\xi_2)";

let server: ChildProcess | null = null;
let serverErr = "";
let base = "";
let fetchCount = 0;
let client: SessionClient;

async function waitForHealth(url: string, timeoutMs = 20_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  let lastError: unknown = null;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${url}/health`);
      if (response.ok) {
        const body = (await response.json()) as { status?: string };
        if (body.status === "ok") return;
      }
    } catch (err) {
      lastError = err;
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error(
    `service did not come up at ${url}: ${lastError}\nstderr: ${serverErr}`,
  );
}

beforeAll(async () => {
  const port = 20_000 + Math.floor(Math.random() * 20_000);
  base = `http://127.0.0.1:${port}`;
  server = spawn(
    "python3",
    ["-m", "qcluster.cli", "serve", "--port", String(port)],
    { stdio: ["ignore", "ignore", "pipe"] },
  );
  server.stderr?.on("data", (chunk: Buffer) => {
    serverErr += chunk.toString();
  });
  await waitForHealth(base);
  client = new SessionClient(base, (input, init) => {
    fetchCount += 1;
    return fetch(input, init);
  });
});

afterAll(() => {
  server?.kill("SIGTERM");
});

function newApp(): App {
  const root = document.createElement("div");
  document.body.appendChild(root);
  return new App(root, client);
}

function latexOfSlot(root: HTMLElement, slot: number): string | undefined {
  return root.querySelector<HTMLElement>(
    `[data-role="variables"] li[data-slot="${slot}"] .latex`,
  )?.dataset.latex;
}

function domLatexList(root: HTMLElement): string[] {
  return Array.from(
    root.querySelectorAll<HTMLElement>('[data-role="variables"] .latex'),
    (node) => node.dataset.latex ?? "",
  );
}

function clickVertexEl(root: HTMLElement, id: string): void {
  const node = root.querySelector<HTMLElement>(`[data-id="${id}"]`);
  expect(node, `vertex ${id} should be on screen`).not.toBeNull();
  node!.click();
}

function clickUndoEl(root: HTMLElement): void {
  const button = root.querySelector<HTMLButtonElement>('[data-role="undo"]');
  expect(button).not.toBeNull();
  button!.click();
}

describe("loading a problem", () => {
  it("shows the initial seed exactly as served", async () => {
    const app = newApp();
    await app.loadProblem(EX1_PROBLEM);

    expect(app.error).toBeNull();
    expect(app.view?.historyDepth).toBe(0);
    expect(
      app.root.querySelector('[data-role="breadcrumb"]')?.textContent,
    ).toBe("initial seed");

    const e1 = app.root.querySelector<HTMLElement>('[data-id="e1"]');
    expect(e1?.dataset.clickable).toBe("true");
    expect(e1?.querySelector('[data-role="badge"]')?.textContent).toBe(
      "allowed",
    );
    expect(domLatexList(app.root)).toEqual(["X_1", "\\xi_1", "\\xi_2"]);
  });

  it("renders odd vertices unclickable with the frozen tooltip", async () => {
    const app = newApp();
    await app.loadProblem(EX1_PROBLEM);
    for (const id of ["o1", "o2"]) {
      const node = app.root.querySelector<HTMLElement>(`[data-id="${id}"]`);
      expect(node?.dataset.clickable).toBe("false");
      expect(node?.getAttribute("title")).toBe("odd coordinates are frozen");
    }
  });
});

describe("mutation round trips", () => {
  it("clicking x1 twice shows the served closed forms, undo restores the previous view bit-identically", async () => {
    const app = newApp();
    await app.loadProblem(EX1_PROBLEM);

    clickVertexEl(app.root, "e1");
    await app.idle();
    expect(app.error).toBeNull();
    expect(latexOfSlot(app.root, 1)).toBe(X1_PRIME);
    expect(app.view?.historyDepth).toBe(1);
    expect(
      app.root.querySelector('[data-role="breadcrumb"]')?.textContent,
    ).toBe("μ₁");

    const viewAfterFirst = JSON.stringify(app.view);
    const htmlAfterFirst = app.root.innerHTML;

    clickVertexEl(app.root, "e1");
    await app.idle();
    expect(latexOfSlot(app.root, 1)).toBe(X1_DOUBLE_PRIME);
    expect(app.view?.historyDepth).toBe(2);
    expect(
      app.root.querySelector('[data-role="breadcrumb"]')?.textContent,
    ).toBe("μ₁μ₁");

    clickUndoEl(app.root);
    await app.idle();
    expect(JSON.stringify(app.view)).toBe(viewAfterFirst);
    expect(app.root.innerHTML).toBe(htmlAfterFirst);
    expect(latexOfSlot(app.root, 1)).toBe(X1_PRIME);
  });

  it("queues rapid clicks in order", async () => {
    const app = newApp();
    await app.loadProblem(EX1_PROBLEM);
    clickVertexEl(app.root, "e1");
    clickVertexEl(app.root, "e1");
    await app.idle();
    expect(app.view?.historyDepth).toBe(2);
    expect(latexOfSlot(app.root, 1)).toBe(X1_DOUBLE_PRIME);
  });

  it("displays verbatim what the variables endpoint serves", async () => {
    const app = newApp();
    await app.loadProblem(EX2_PROBLEM);
    clickVertexEl(app.root, "e1");
    await app.idle();
    clickVertexEl(app.root, "e2");
    await app.idle();

    const served = await client.variables(app.view!.sessionId, "latex");
    expect(domLatexList(app.root)).toEqual(served.variables);
    expect(
      app.root.querySelector('[data-role="breadcrumb"]')?.textContent,
    ).toBe("μ₁μ₂");
  });
});

describe("no-ops and conflicts", () => {
  it("clicking an odd vertex sends nothing and changes nothing", async () => {
    const app = newApp();
    await app.loadProblem(EX1_PROBLEM);
    const before = app.root.innerHTML;
    const callsBefore = fetchCount;

    clickVertexEl(app.root, "o1");
    clickVertexEl(app.root, "o2");
    await app.idle();

    expect(fetchCount).toBe(callsBefore);
    expect(app.root.innerHTML).toBe(before);
  });

  it("surfaces a frozen-vertex conflict inline and keeps the view", async () => {
    const app = newApp();
    await app.loadProblem(EX1_PROBLEM);
    const before = JSON.stringify(app.view);

    await app.clickVertex(2); // odd slot in wire numbering; the server refuses
    expect(app.error?.kind).toBe("frozen");
    expect(app.error?.vertex).toBe(2);
    expect(JSON.stringify(app.view)).toBe(before);
    expect(
      app.root.querySelector('[data-role="error-kind"]')?.textContent,
    ).toBe("frozen");
    expect(app.root.querySelector('[data-role="quiver"]')).not.toBeNull();
  });

  it("surfaces undo-at-root inline and recovers on the next action", async () => {
    const app = newApp();
    await app.loadProblem(EX1_PROBLEM);

    clickUndoEl(app.root); // disabled button: no event fires
    await app.idle();
    expect(app.error).toBeNull();

    await app.clickUndo(); // force the request anyway
    expect(app.error?.kind).toBe("nothing_to_undo");
    expect(app.view?.historyDepth).toBe(0);

    clickVertexEl(app.root, "e1");
    await app.idle();
    expect(app.error).toBeNull();
    expect(app.root.querySelector('[data-role="error"]')).toBeNull();
    expect(app.view?.historyDepth).toBe(1);
  });
});

describe("rank 2 session", () => {
  it("badges both mutable vertices and freezes both odd ones", async () => {
    const app = newApp();
    await app.loadProblem(EX2_PROBLEM);

    for (const id of ["e1", "e2"]) {
      const node = app.root.querySelector<HTMLElement>(`[data-id="${id}"]`);
      expect(node?.dataset.clickable).toBe("true");
      expect(node?.querySelector('[data-role="badge"]')?.textContent).toBe(
        "allowed",
      );
    }
    for (const id of ["o1", "o2"]) {
      const node = app.root.querySelector<HTMLElement>(`[data-id="${id}"]`);
      expect(node?.dataset.clickable).toBe("false");
      expect(node?.getAttribute("title")).toBe("odd coordinates are frozen");
    }
    const lines = app.root.querySelectorAll('[data-role="quiver"] svg line');
    expect(lines).toHaveLength(3);
  });
});
