/**
 * Controller. Every user action is a full round trip: the server performs
 * the operation, the client re-derives the whole view from the response
 * plus a fresh variables fetch. The client never edits view state locally,
 * so the screen is always a pure function of the last server state seen.
 */

import { ApiError, SessionClient } from "./api.js";
import { renderInto } from "./render.js";
import { buildViewState, type ViewState } from "./view.js";
import type { ErrorPayload, ProblemWire, SessionWire } from "./types.js";

export class App {
  readonly root: HTMLElement;
  readonly client: SessionClient;
  view: ViewState | null = null;
  error: ErrorPayload | null = null;
  private sessionId: string | null = null;
  private chain: Promise<void> = Promise.resolve();

  constructor(root: HTMLElement, client: SessionClient) {
    this.root = root;
    this.client = client;
    root.addEventListener("click", (event) => this.onClick(event));
    this.renderNow();
  }

  private onClick(event: Event): void {
    const target = event.target as Element | null;
    if (!target) return;
    const vertexEl = target.closest<HTMLElement>("[data-vertex]");
    if (vertexEl) {
      if (vertexEl.dataset.clickable !== "true") {
        return; // frozen vertices only carry a tooltip
      }
      const vertex = Number(vertexEl.dataset.vertex);
      this.enqueue(() => this.clickVertex(vertex));
      return;
    }
    if (target.closest('[data-role="undo"]')) {
      this.enqueue(() => this.clickUndo());
    }
  }

  private enqueue(action: () => Promise<void>): void {
    this.chain = this.chain.then(action);
  }

  /** Resolves once every queued click has completed its round trip. */
  idle(): Promise<void> {
    return this.chain;
  }

  async loadProblem(problem: ProblemWire): Promise<void> {
    await this.run(async () => {
      const session = await this.client.createSession(problem);
      this.sessionId = session.id;
      await this.applySession(session);
    });
  }

  async clickVertex(vertex: number): Promise<void> {
    const id = this.sessionId;
    if (id === null) return;
    await this.run(async () => {
      const session = await this.client.mutate(id, vertex);
      await this.applySession(session);
    });
  }

  async clickUndo(): Promise<void> {
    const id = this.sessionId;
    if (id === null) return;
    await this.run(async () => {
      const session = await this.client.undo(id);
      await this.applySession(session);
    });
  }

  async refresh(): Promise<void> {
    const id = this.sessionId;
    if (id === null) return;
    await this.run(async () => {
      const session = await this.client.getSession(id);
      await this.applySession(session);
    });
  }

  private async applySession(session: SessionWire): Promise<void> {
    const rendered = await this.client.variables(session.id, "latex");
    this.view = buildViewState(session, rendered.variables);
    this.error = null;
    this.renderNow();
  }

  private async run(action: () => Promise<void>): Promise<void> {
    try {
      await action();
    } catch (err) {
      // Conflicts and rejections leave the last good view on screen and
      // surface the server's explanation next to it.
      this.error =
        err instanceof ApiError
          ? err.payload
          : { kind: "network", message: String(err) };
      this.renderNow();
    }
  }

  renderNow(): void {
    renderInto(this.root, { view: this.view, error: this.error });
  }
}
