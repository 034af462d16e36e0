/**
 * Pure mapping from server session bodies to the structure the DOM layer
 * draws. Nothing here computes algebra or mutates state: the same inputs
 * always give the same ViewState, and every field is traceable to a field
 * of the server response.
 */

import type { Mode, SessionWire, TraceStepWire } from "./types.js";

export const ODD_TOOLTIP = "odd coordinates are frozen";
export const FROZEN_EVEN_TOOLTIP = "vertex is frozen";

export interface VertexView {
  /** DOM id: "e<k>" for even vertices, "o<t>" for odd indices. */
  id: string;
  /** 1-based index within its own kind. */
  index: number;
  kind: "even" | "odd";
  /** Plain-text label, e.g. "x1" or "ξ2". */
  name: string;
  /** LaTeX label, e.g. "X_{1}" or "\\xi_{2}". */
  latexName: string;
  /** True only for mutable even vertices; clicks elsewhere are no-ops. */
  clickable: boolean;
  /** Server-reported admissibility for mutable vertices, null otherwise. */
  allowed: boolean | null;
  /** Tooltip for unclickable vertices, null for clickable ones. */
  tooltip: string | null;
  /** Grid column (1-based) used by the layout. */
  col: number;
  /** Grid row: 0 for the even row, 1 for the odd row. */
  row: number;
}

export interface ArrowView {
  from: string;
  to: string;
  weight: number;
}

export interface VariableView {
  /** 1-based slot in the server's variable list. */
  slot: number;
  /** Slot name, e.g. "X1" for even slots and "ξ1" for odd slots. */
  name: string;
  /** LaTeX rendering delivered by the server, verbatim. */
  latex: string;
}

export interface ViewState {
  sessionId: string;
  historyDepth: number;
  canUndo: boolean;
  /** Mutation word read off the trace, e.g. "μ₁μ₂μ₁"; "" at the start. */
  breadcrumb: string;
  mode: Mode;
  vertices: VertexView[];
  arrows: ArrowView[];
  variables: VariableView[];
}

const SUBSCRIPT_DIGITS = "₀₁₂₃₄₅₆₇₈₉";

export function subscript(value: number): string {
  let out = "";
  for (const ch of String(value)) {
    const digit = ch.charCodeAt(0) - 48;
    if (digit < 0 || digit > 9) {
      throw new Error(`cannot subscript ${value}`);
    }
    out += SUBSCRIPT_DIGITS[digit];
  }
  return out;
}

export function breadcrumbFromTrace(trace: readonly TraceStepWire[]): string {
  return trace.map((step) => `μ${subscript(step.vertex)}`).join("");
}

export function buildViewState(
  session: SessionWire,
  latexVariables: readonly string[],
): ViewState {
  const quiver = session.state.quiver;
  const { n, m, mutable } = quiver;
  if (latexVariables.length !== n + m) {
    throw new Error(
      `expected ${n + m} rendered variables, got ${latexVariables.length}`,
    );
  }

  const allowedByVertex = new Map<number, boolean>();
  for (const badge of session.allowed) {
    allowedByVertex.set(badge.vertex, badge.allowed);
  }

  const vertices: VertexView[] = [];
  for (let k = 1; k <= n; k++) {
    const isMutable = k <= mutable;
    vertices.push({
      id: `e${k}`,
      index: k,
      kind: "even",
      name: `x${k}`,
      latexName: `X_{${k}}`,
      clickable: isMutable,
      allowed: isMutable ? (allowedByVertex.get(k) ?? null) : null,
      tooltip: isMutable ? null : FROZEN_EVEN_TOOLTIP,
      col: k,
      row: 0,
    });
  }
  for (let t = 1; t <= m; t++) {
    vertices.push({
      id: `o${t}`,
      index: t,
      kind: "odd",
      name: `ξ${t}`,
      latexName: `\\xi_{${t}}`,
      clickable: false,
      allowed: null,
      tooltip: ODD_TOOLTIP,
      col: t,
      row: 1,
    });
  }

  const arrows: ArrowView[] = [];
  for (const [source, target, weight] of quiver.even_arrows) {
    arrows.push({ from: `e${source}`, to: `e${target}`, weight });
  }
  for (const [vertex, odds] of Object.entries(quiver.odd_in ?? {})) {
    for (const t of odds) {
      arrows.push({ from: `o${t}`, to: `e${vertex}`, weight: 1 });
    }
  }
  for (const [vertex, odds] of Object.entries(quiver.odd_out ?? {})) {
    for (const t of odds) {
      arrows.push({ from: `e${vertex}`, to: `o${t}`, weight: 1 });
    }
  }
  arrows.sort((a, b) =>
    a.from === b.from ? a.to.localeCompare(b.to) : a.from.localeCompare(b.from),
  );

  const variables: VariableView[] = latexVariables.map((latex, idx) => ({
    slot: idx + 1,
    name: idx < n ? `X${idx + 1}` : `ξ${idx + 1 - n}`,
    latex,
  }));

  return {
    sessionId: session.id,
    historyDepth: session.history_depth,
    canUndo: session.history_depth > 0,
    breadcrumb: breadcrumbFromTrace(session.state.trace),
    mode: session.state.mode,
    vertices,
    arrows,
    variables,
  };
}
