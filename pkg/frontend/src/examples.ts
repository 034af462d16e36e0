/**
 * Built-in problem inputs, byte-for-byte copies of the data files shipped
 * with the Python package (data/ex1.json and data/ex2.json). They are
 * plain inputs for POST /sessions; all computation on them happens
 * server-side.
 */

import type { ProblemWire } from "./types.js";

export interface ExampleProblem {
  id: string;
  label: string;
  problem: ProblemWire;
}

export const EX1_PROBLEM: ProblemWire = {
  lambda: [
    [0, 1, -1],
    [-1, 0, 2],
    [1, -2, 0],
  ],
  mode: "permissive",
  quiver: {
    even_arrows: [],
    m: 2,
    mutable: 1,
    n: 1,
    odd_in: { "1": [1] },
    odd_out: { "1": [2] },
  },
};

export const EX2_PROBLEM: ProblemWire = {
  lambda: [
    [0, 1, 0, 0],
    [-1, 0, 0, 0],
    [0, 0, 0, 2],
    [0, 0, -2, 0],
  ],
  mode: "strict",
  quiver: {
    even_arrows: [[1, 2, 1]],
    m: 2,
    mutable: 2,
    n: 2,
    odd_in: { "1": [1] },
    odd_out: { "1": [2] },
  },
};

export const EXAMPLE_PROBLEMS: ExampleProblem[] = [
  {
    id: "ex1",
    label: "rank 1 (one even, two odd)",
    problem: EX1_PROBLEM,
  },
  {
    id: "ex2",
    label: "rank 2 (two even, two odd)",
    problem: EX2_PROBLEM,
  },
];
