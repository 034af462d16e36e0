/**
 * DOM rendering. Rebuilds the panel tree from a UiModel on every call;
 * event handling is delegated from the container (installed once by the
 * controller), so re-rendering never re-binds listeners.
 */

import katex from "katex";

import type { ErrorPayload } from "./types.js";
import type { VertexView, ViewState } from "./view.js";

export interface UiModel {
  view: ViewState | null;
  error: ErrorPayload | null;
}

const CELL = 120;
const NODE = 56;
const PAD = 24;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function centerOf(vertex: VertexView): { x: number; y: number } {
  return {
    x: PAD + (vertex.col - 1) * CELL + NODE / 2,
    y: PAD + vertex.row * CELL + NODE / 2,
  };
}

function renderLatex(target: HTMLElement, latex: string): void {
  target.dataset.latex = latex;
  target.innerHTML = katex.renderToString(latex, {
    throwOnError: false,
    output: "html",
  });
}

function renderHeader(view: ViewState): HTMLElement {
  const header = el("header", "topbar");

  const session = el("span", "session", "session ");
  const code = el("code");
  code.dataset.role = "session-id";
  code.textContent = view.sessionId;
  session.appendChild(code);
  header.appendChild(session);

  const crumb = el("span", "breadcrumb", view.breadcrumb || "initial seed");
  crumb.dataset.role = "breadcrumb";
  header.appendChild(crumb);

  const depth = el("span", "depth", `depth ${view.historyDepth}`);
  depth.dataset.role = "depth";
  header.appendChild(depth);

  const undo = el("button", "undo", "undo");
  undo.dataset.role = "undo";
  undo.disabled = !view.canUndo;
  header.appendChild(undo);

  return header;
}

function renderQuiver(view: ViewState): HTMLElement {
  const panel = el("section", "quiver");
  panel.dataset.role = "quiver";

  const cols = Math.max(1, ...view.vertices.map((v) => v.col));
  const rows = 1 + Math.max(0, ...view.vertices.map((v) => v.row));
  const width = PAD * 2 + (cols - 1) * CELL + NODE;
  const height = PAD * 2 + (rows - 1) * CELL + NODE;
  panel.style.position = "relative";
  panel.style.width = `${width}px`;
  panel.style.height = `${height}px`;

  const byId = new Map(view.vertices.map((v) => [v.id, v]));
  const svgNs = "http://www.w3.org/2000/svg";
  const svg = document.createElementNS(svgNs, "svg");
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  svg.setAttribute("class", "arrows");

  const defs = document.createElementNS(svgNs, "defs");
  const marker = document.createElementNS(svgNs, "marker");
  marker.setAttribute("id", "arrowhead");
  marker.setAttribute("markerWidth", "8");
  marker.setAttribute("markerHeight", "8");
  marker.setAttribute("refX", "7");
  marker.setAttribute("refY", "3");
  marker.setAttribute("orient", "auto");
  const tip = document.createElementNS(svgNs, "path");
  tip.setAttribute("d", "M0,0 L7,3 L0,6 Z");
  marker.appendChild(tip);
  defs.appendChild(marker);
  svg.appendChild(defs);

  for (const arrow of view.arrows) {
    const from = byId.get(arrow.from);
    const to = byId.get(arrow.to);
    if (!from || !to) continue;
    const a = centerOf(from);
    const b = centerOf(to);
    // Shorten both ends so the line meets the node border, not its center.
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const len = Math.hypot(dx, dy) || 1;
    const trim = NODE / 2 + 4;
    const x1 = a.x + (dx / len) * trim;
    const y1 = a.y + (dy / len) * trim;
    const x2 = b.x - (dx / len) * trim;
    const y2 = b.y - (dy / len) * trim;

    const line = document.createElementNS(svgNs, "line");
    line.setAttribute("x1", String(x1));
    line.setAttribute("y1", String(y1));
    line.setAttribute("x2", String(x2));
    line.setAttribute("y2", String(y2));
    line.setAttribute("marker-end", "url(#arrowhead)");
    line.setAttribute("data-from", arrow.from);
    line.setAttribute("data-to", arrow.to);
    svg.appendChild(line);

    if (arrow.weight > 1) {
      const label = document.createElementNS(svgNs, "text");
      label.setAttribute("x", String((x1 + x2) / 2));
      label.setAttribute("y", String((y1 + y2) / 2 - 6));
      label.setAttribute("class", "weight");
      label.textContent = String(arrow.weight);
      svg.appendChild(label);
    }
  }
  panel.appendChild(svg);

  for (const vertex of view.vertices) {
    const node = el("div");
    const classes = ["vertex", vertex.kind];
    if (vertex.allowed === true) classes.push("allowed");
    if (vertex.allowed === false) classes.push("blocked");
    if (!vertex.clickable) classes.push("frozen");
    node.className = classes.join(" ");
    node.dataset.id = vertex.id;
    node.dataset.clickable = vertex.clickable ? "true" : "false";
    if (vertex.kind === "even") {
      node.dataset.vertex = String(vertex.index);
    }
    if (vertex.tooltip) {
      node.setAttribute("title", vertex.tooltip);
    }
    const pos = centerOf(vertex);
    node.style.position = "absolute";
    node.style.left = `${pos.x - NODE / 2}px`;
    node.style.top = `${pos.y - NODE / 2}px`;
    node.style.width = `${NODE}px`;
    node.style.height = `${NODE}px`;

    node.appendChild(el("span", "name", vertex.name));
    if (vertex.allowed !== null) {
      const badge = el(
        "span",
        "badge",
        vertex.allowed ? "allowed" : "blocked",
      );
      badge.dataset.role = "badge";
      node.appendChild(badge);
    }
    panel.appendChild(node);
  }

  return panel;
}

function renderVariables(view: ViewState): HTMLElement {
  const panel = el("section", "variables");
  panel.dataset.role = "variables";
  panel.appendChild(el("h2", undefined, "cluster variables"));
  const list = el("ul");
  for (const variable of view.variables) {
    const item = el("li");
    item.dataset.slot = String(variable.slot);
    item.appendChild(el("span", "varname", variable.name));
    const value = el("span", "latex");
    renderLatex(value, variable.latex);
    item.appendChild(value);
    list.appendChild(item);
  }
  panel.appendChild(list);
  return panel;
}

function renderError(error: ErrorPayload): HTMLElement {
  const panel = el("section", "error");
  panel.dataset.role = "error";

  const headline = el("p", "headline");
  const kind = el("code");
  kind.dataset.role = "error-kind";
  kind.textContent = error.kind;
  headline.appendChild(kind);
  if (error.vertex !== undefined) {
    headline.appendChild(
      document.createTextNode(` on vertex ${error.vertex}`),
    );
  }
  panel.appendChild(headline);

  if (error.message) {
    panel.appendChild(el("p", "message", error.message));
  }

  if (error.analysis && error.analysis.length > 0) {
    const table = el("table", "analysis");
    table.dataset.role = "analysis";
    const head = el("tr");
    for (const column of ["target", "conditions", "satisfied"]) {
      head.appendChild(el("th", undefined, column));
    }
    table.appendChild(head);
    for (const check of error.analysis) {
      const row = el("tr");
      row.appendChild(el("td", undefined, String(check.target)));
      const conditions = Object.entries(check.conditions)
        .map(([label, holds]) => `${label} ${holds ? "✓" : "✗"}`)
        .join("  ");
      row.appendChild(el("td", "conditions", conditions));
      row.appendChild(el("td", undefined, check.satisfied ? "✓" : "✗"));
      table.appendChild(row);
    }
    panel.appendChild(table);
  }

  if (error.report) {
    const report = el("div", "compat");
    report.dataset.role = "compat-report";
    report.appendChild(
      el("p", undefined, `d entries: ${error.report.d_entries.join(", ")}`),
    );
    const list = el("ul");
    for (const violation of error.report.violations) {
      const { kind: violationKind, ...rest } = violation;
      list.appendChild(
        el("li", undefined, `${violationKind}: ${JSON.stringify(rest)}`),
      );
    }
    report.appendChild(list);
    panel.appendChild(report);
  }

  return panel;
}

export function renderInto(root: HTMLElement, model: UiModel): void {
  const app = el("div", "app");
  if (model.view) {
    app.appendChild(renderHeader(model.view));
    app.appendChild(renderQuiver(model.view));
    app.appendChild(renderVariables(model.view));
  } else {
    const empty = el("p", "placeholder", "no session loaded");
    empty.dataset.role = "placeholder";
    app.appendChild(empty);
  }
  if (model.error) {
    app.appendChild(renderError(model.error));
  }
  root.replaceChildren(app);
}
