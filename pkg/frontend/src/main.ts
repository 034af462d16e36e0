/**
 * Browser entry point. Reads the service address from the ?api= query
 * parameter (default http://127.0.0.1:8642), wires the example-loading
 * toolbar, and hands the #app container to the controller.
 */

import { SessionClient } from "./api.js";
import { App } from "./app.js";
import { EXAMPLE_PROBLEMS } from "./examples.js";

const DEFAULT_API = "http://127.0.0.1:8642";

function apiBase(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get("api") ?? DEFAULT_API;
}

function start(): void {
  const root = document.getElementById("app");
  const toolbar = document.getElementById("toolbar");
  if (!root || !toolbar) {
    throw new Error("page must provide #app and #toolbar elements");
  }
  const client = new SessionClient(apiBase());
  const app = new App(root, client);
  for (const example of EXAMPLE_PROBLEMS) {
    const button = document.createElement("button");
    button.textContent = `load ${example.label}`;
    button.dataset.example = example.id;
    button.addEventListener("click", () => {
      void app.loadProblem(example.problem);
    });
    toolbar.appendChild(button);
  }
}

start();
