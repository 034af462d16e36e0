/**
 * Wire-level types for the session service. Every vertex number and odd
 * index on the wire is 1-based; this client never renumbers, it passes the
 * server's numbering straight through to the screen.
 */

export type Mode = "strict" | "permissive";

/** Extended quiver as serialized by the service. */
export interface QuiverWire {
  /** Number of even vertices. */
  n: number;
  /** Number of odd indices. */
  m: number;
  /** Even vertices 1..mutable are mutable, the rest are frozen. */
  mutable: number;
  /** Weighted arrows between even vertices: [source, target, multiplicity]. */
  even_arrows: [number, number, number][];
  /** Odd indices with an arrow into the keyed even vertex. */
  odd_in?: Record<string, number[]>;
  /** Odd indices receiving an arrow from the keyed even vertex. */
  odd_out?: Record<string, number[]>;
}

export interface TraceStepWire {
  vertex: number;
  allowed: boolean;
  divisible: boolean;
  integral: boolean;
}

export interface SeedWire {
  quiver: QuiverWire;
  lambda: number[][];
  lambda_current: number[][];
  mode: Mode;
  /** Exact polynomial payloads; opaque to the client, algebra stays server-side. */
  vars: unknown[];
  trace: TraceStepWire[];
}

export interface AllowedBadgeWire {
  vertex: number;
  allowed: boolean;
}

/** Body returned by session create/get/mutate/undo. */
export interface SessionWire {
  id: string;
  history_depth: number;
  allowed: AllowedBadgeWire[];
  state: SeedWire;
}

/** Body returned by GET /sessions/{id}/variables. */
export interface VariablesWire {
  id: string;
  format: string;
  variables: string[];
}

/** Per-target admissibility breakdown attached to a not_allowed conflict. */
export interface ConditionCheckWire {
  target: number;
  conditions: Record<string, boolean>;
  satisfied: boolean;
}

export interface CompatViolationWire {
  kind: string;
  [detail: string]: unknown;
}

/** Compatibility check report attached to an incompatible-input rejection. */
export interface CompatReportWire {
  ok: boolean;
  mode: Mode;
  d_entries: number[];
  violations: CompatViolationWire[];
}

/** The "error" object inside every non-2xx JSON body. */
export interface ErrorPayload {
  kind: string;
  message?: string;
  vertex?: number;
  analysis?: ConditionCheckWire[];
  report?: CompatReportWire;
  id?: string;
  path?: string;
}

export interface ErrorWire {
  error: ErrorPayload;
}

/** Input accepted by POST /sessions (same shape as the CLI problem files). */
export interface ProblemWire {
  quiver: QuiverWire;
  lambda: number[][];
  mode?: Mode;
}
