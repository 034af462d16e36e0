"""HTTP session service over the mutation engine.

Endpoints (JSON in/out, CORS open):
  GET  /health                      -> {"status": "ok"}
  POST /sessions {problem}          -> 201 session body
  GET  /sessions/{id}               -> 200 session body
  POST /sessions/{id}/mutate {"vertex": 1-based} -> 200 new body
  POST /sessions/{id}/undo          -> 200 previous body
  GET  /sessions/{id}/variables?format=pretty|latex|json -> render list

Error mapping: 404 unknown session or route, 422 malformed body or
incompatible input, 409 for state conflicts (mutation not allowed, frozen
vertex, division failure, empty undo) with a structured body
{"error": {"kind": ..., ...}}.

Sessions are in-memory behind one lock (operations are quick: matrices are
tiny); each session keeps a history stack of full seed snapshots, so undo is
a pop. With --state-dir every change also writes <id>.json; files are
best-effort snapshots for inspection, not a database.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .errors import (
    Incompatible,
    MalformedInput,
    MutationOnFrozen,
    NotAllowed,
    NotDivisible,
    ZeroDivisor,
)
from .quiver import is_allowed_def
from .render import render_poly
from .seed import QuantumSeed, initial_seed, mutate_seed
from .serialize import canonical_dumps, parse_problem, seed_to_json

__all__ = ["SessionStore", "make_server", "serve_forever"]

DEFAULT_PORT = 8642


class SessionStore:
    def __init__(self, state_dir: str | None = None):
        self._lock = threading.Lock()
        self._sessions: dict[str, list[QuantumSeed]] = {}
        self._state_dir = state_dir
        if state_dir:
            os.makedirs(state_dir, exist_ok=True)

    def _snapshot(self, sid: str) -> None:
        if not self._state_dir:
            return
        path = os.path.join(self._state_dir, f"{sid}.json")
        body = session_body(sid, self._sessions[sid])
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(canonical_dumps(body))

    def create(self, seed: QuantumSeed) -> str:
        sid = uuid.uuid4().hex[:12]
        with self._lock:
            self._sessions[sid] = [seed]
            self._snapshot(sid)
        return sid

    def get(self, sid: str) -> list[QuantumSeed] | None:
        with self._lock:
            return self._sessions.get(sid)

    def mutate(self, sid: str, k: int) -> list[QuantumSeed] | None:
        with self._lock:
            stack = self._sessions.get(sid)
            if stack is None:
                return None
            new_seed = mutate_seed(stack[-1], k)
            stack.append(new_seed)
            self._snapshot(sid)
            return stack

    def undo(self, sid: str) -> list[QuantumSeed] | None:
        """Pops one state; raises IndexError when at the root."""
        with self._lock:
            stack = self._sessions.get(sid)
            if stack is None:
                return None
            if len(stack) <= 1:
                raise IndexError("nothing to undo")
            stack.pop()
            self._snapshot(sid)
            return stack


def session_body(sid: str, stack: list[QuantumSeed]) -> dict:
    seed = stack[-1]
    allowed = [
        {"vertex": k + 1, "allowed": is_allowed_def(seed.quiver, k)}
        for k in range(seed.quiver.mutable)
    ]
    return {
        "id": sid,
        "history_depth": len(stack) - 1,
        "allowed": allowed,
        "state": seed_to_json(seed),
    }


def _error_body(kind: str, **extra) -> dict:
    err = {"kind": kind}
    err.update(extra)
    return {"error": err}


class _Handler(BaseHTTPRequestHandler):
    store: SessionStore  # set by make_server

    # -- plumbing ---------------------------------------------------------

    def log_message(self, fmt: str, *args) -> None:  # quiet by default
        pass

    def _send(self, code: int, body: dict) -> None:
        payload = canonical_dumps(body).encode("utf-8")
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()
        self.wfile.write(payload)

    def _read_json(self) -> object:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"request body is not valid JSON: {exc}") from exc

    # -- routing ----------------------------------------------------------

    def do_OPTIONS(self) -> None:  # CORS preflight
        self._send(204, {})

    def do_GET(self) -> None:
        try:
            path, _, query = self.path.partition("?")
            parts = [p for p in path.split("/") if p]
            if parts == ["health"]:
                self._send(200, {"status": "ok"})
            elif len(parts) == 2 and parts[0] == "sessions":
                self._get_session(parts[1])
            elif len(parts) == 3 and parts[0] == "sessions" and parts[2] == "variables":
                self._get_variables(parts[1], query)
            else:
                self._send(404, _error_body("not_found", path=self.path))
        except Exception as exc:  # pragma: no cover - last-resort guard
            self._send(500, _error_body("internal", message=str(exc)))

    def do_POST(self) -> None:
        try:
            parts = [p for p in self.path.partition("?")[0].split("/") if p]
            if parts == ["sessions"]:
                self._create_session()
            elif len(parts) == 3 and parts[0] == "sessions" and parts[2] == "mutate":
                self._mutate(parts[1])
            elif len(parts) == 3 and parts[0] == "sessions" and parts[2] == "undo":
                self._undo(parts[1])
            else:
                self._send(404, _error_body("not_found", path=self.path))
        except MalformedInput as exc:
            self._send(422, _error_body("malformed", message=str(exc)))
        except Exception as exc:  # pragma: no cover - last-resort guard
            self._send(500, _error_body("internal", message=str(exc)))

    # -- handlers -----------------------------------------------------------

    def _create_session(self) -> None:
        data = self._read_json()
        try:
            q, lam, mode = parse_problem(data)
            seed = initial_seed(q, lam, mode)
        except MalformedInput as exc:
            self._send(422, _error_body("malformed", message=str(exc)))
            return
        except Incompatible as exc:
            self._send(
                422, _error_body("incompatible", report=exc.report.to_json())
            )
            return
        sid = self.store.create(seed)
        self._send(201, session_body(sid, self.store.get(sid)))

    def _get_session(self, sid: str) -> None:
        stack = self.store.get(sid)
        if stack is None:
            self._send(404, _error_body("unknown_session", id=sid))
            return
        self._send(200, session_body(sid, stack))

    def _get_variables(self, sid: str, query: str) -> None:
        stack = self.store.get(sid)
        if stack is None:
            self._send(404, _error_body("unknown_session", id=sid))
            return
        fmt = "pretty"
        for pair in query.split("&"):
            if pair.startswith("format="):
                fmt = pair.split("=", 1)[1]
        if fmt not in ("pretty", "latex", "json"):
            self._send(422, _error_body("malformed", message=f"unknown format {fmt!r}"))
            return
        seed = stack[-1]
        if fmt == "json":
            from .serialize import poly_to_json

            variables = [poly_to_json(v) for v in seed.variables]
        else:
            variables = [render_poly(seed.lam_init, v, fmt) for v in seed.variables]
        self._send(200, {"id": sid, "format": fmt, "variables": variables})

    def _mutate(self, sid: str) -> None:
        data = self._read_json()
        if not isinstance(data, dict) or "vertex" not in data:
            self._send(422, _error_body("malformed", message="body needs 'vertex'"))
            return
        vertex = data["vertex"]
        stack = self.store.get(sid)
        if stack is None:
            self._send(404, _error_body("unknown_session", id=sid))
            return
        seed = stack[-1]
        if (
            not isinstance(vertex, int)
            or isinstance(vertex, bool)
            or not (1 <= vertex <= seed.shape.dim)
        ):
            self._send(
                422,
                _error_body(
                    "malformed",
                    message=f"'vertex' must be an integer in 1..{seed.shape.dim}",
                ),
            )
            return
        k = vertex - 1
        try:
            stack = self.store.mutate(sid, k)
        except (MutationOnFrozen,):
            self._send(409, _error_body("frozen", vertex=vertex))
            return
        except NotAllowed as exc:
            analysis = [
                {
                    "target": item["target"] + 1,
                    "conditions": item["conditions"],
                    "satisfied": item["satisfied"],
                }
                for item in exc.analysis
            ]
            self._send(
                409, _error_body("not_allowed", vertex=vertex, analysis=analysis)
            )
            return
        except (NotDivisible, ZeroDivisor) as exc:
            self._send(
                409, _error_body("not_divisible", vertex=vertex, message=str(exc))
            )
            return
        if stack is None:
            self._send(404, _error_body("unknown_session", id=sid))
            return
        self._send(200, session_body(sid, stack))

    def _undo(self, sid: str) -> None:
        try:
            stack = self.store.undo(sid)
        except IndexError:
            self._send(409, _error_body("nothing_to_undo"))
            return
        if stack is None:
            self._send(404, _error_body("unknown_session", id=sid))
            return
        self._send(200, session_body(sid, stack))


def make_server(port: int = 0, state_dir: str | None = None) -> ThreadingHTTPServer:
    """Bound but not yet serving; port 0 picks a free port (server_address
    reports the real one)."""
    store = SessionStore(state_dir)
    handler = type("Handler", (_Handler,), {"store": store})
    return ThreadingHTTPServer(("127.0.0.1", port), handler)


def serve_forever(port: int | None = None, state_dir: str | None = None) -> None:
    if port is None:
        port = int(os.environ.get("QCLUSTER_PORT", DEFAULT_PORT))
    httpd = make_server(port, state_dir)
    host, actual_port = httpd.server_address[:2]
    print(f"listening on http://{host}:{actual_port}")
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
