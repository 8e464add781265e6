"""JSON HTTP service exposing sessions, mutations, undo, and exploration.

Built on the standard library's threading HTTP server so every byte of
the wire format stays under the workbench's control; one lock per session
serializes its mutations while distinct sessions proceed concurrently.
"""
from __future__ import annotations

import json
import re
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .curves import EXAMPLE_NAMES, GeodesicConfig
from .errors import BudgetExceeded, NotRegular, NotSimple, WorkbenchError
from .exchange import (
    config_orbit_to_json,
    explore,
    explore_config,
    graph_to_json,
)
from .sessions import MalformedPayload, SessionStore, state_to_json

SEED_NAMES = ("a2", "a3", "d4", "markov")

_SESSION_RE = re.compile(r"^/api/sessions/([^/]+)$")
_MUTATE_RE = re.compile(r"^/api/sessions/([^/]+)/mutations$")
_UNDO_RE = re.compile(r"^/api/sessions/([^/]+)/undo$")
_EXCHANGE_RE = re.compile(r"^/api/sessions/([^/]+)/exchange$")

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".svg": "image/svg+xml",
    ".json": "application/json",
}


class Journal:
    """Append-only event log; replaying it rebuilds the session store."""

    def __init__(self, path: str):
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, event: dict) -> None:
        with self._lock:
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(event, sort_keys=True) + "\n")

    def replay(self, store: SessionStore) -> None:
        if not self.path.exists():
            return
        for line in self.path.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            event = json.loads(line)
            op = event.get("op")
            if op == "create":
                store.create(event["payload"])
            elif op == "mutate":
                session = store.get(event["id"])
                if session is not None:
                    session.mutate(int(event["index"]) - 1)
            elif op == "undo":
                session = store.get(event["id"])
                if session is not None:
                    session.undo()


class WorkbenchHandler(BaseHTTPRequestHandler):
    server_version = "mutwb"
    store: SessionStore
    journal: Journal | None
    static_dir: Path | None

    # -- plumbing ------------------------------------------------------
    def log_message(self, fmt, *args):  # quiet by default
        if getattr(self.server, "verbose", False):
            super().log_message(fmt, *args)

    def _send_json(self, status: int, payload: dict | str) -> None:
        body = payload if isinstance(payload, str) else json.dumps(
            payload, sort_keys=True, separators=(",", ":")
        )
        raw = body.encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(raw)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(raw)

    def _read_body(self) -> dict | None:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b"{}"
        try:
            data = json.loads(raw.decode() or "{}")
        except (ValueError, UnicodeDecodeError):
            return None
        return data if isinstance(data, dict) else None

    def _state_doc(self, session) -> str:
        return json.dumps(
            {"id": session.id, "state": state_to_json(session.state)},
            sort_keys=True,
            separators=(",", ":"),
        )

    # -- routes --------------------------------------------------------
    def do_GET(self):
        path, _, query = self.path.partition("?")
        if path == "/api/examples":
            self._send_json(200, {"examples": list(EXAMPLE_NAMES), "seeds": list(SEED_NAMES)})
            return
        match = _SESSION_RE.match(path)
        if match:
            session = self.store.get(match.group(1))
            if session is None:
                self._send_json(404, {"reason": "unknown-session"})
                return
            self._send_json(200, self._state_doc(session))
            return
        match = _EXCHANGE_RE.match(path)
        if match:
            self._handle_exchange(match.group(1), query)
            return
        self._serve_static(path)

    def do_POST(self):
        path = self.path.partition("?")[0]
        if path == "/api/sessions":
            body = self._read_body()
            if body is None:
                self._send_json(422, {"reason": "malformed-json"})
                return
            try:
                session = self.store.create(body)
            except MalformedPayload as exc:
                self._send_json(422, {"reason": str(exc)})
                return
            if self.journal is not None:
                self.journal.append({"op": "create", "id": session.id, "payload": body})
            self._send_json(201, self._state_doc(session))
            return
        match = _MUTATE_RE.match(path)
        if match:
            self._handle_mutation(match.group(1))
            return
        match = _UNDO_RE.match(path)
        if match:
            session = self.store.get(match.group(1))
            if session is None:
                self._send_json(404, {"reason": "unknown-session"})
                return
            try:
                session.undo()
            except WorkbenchError:
                self._send_json(409, {"reason": "nothing-to-undo"})
                return
            if self.journal is not None:
                self.journal.append({"op": "undo", "id": session.id})
            self._send_json(200, self._state_doc(session))
            return
        self._send_json(404, {"reason": "unknown-route"})

    def _handle_mutation(self, session_id: str) -> None:
        session = self.store.get(session_id)
        if session is None:
            self._send_json(404, {"reason": "unknown-session"})
            return
        body = self._read_body()
        if body is None or "index" not in body or not isinstance(body["index"], int):
            self._send_json(422, {"reason": "mutation body needs an integer index"})
            return
        k = body["index"] - 1
        try:
            session.mutate(k)
        except NotSimple:
            self._send_json(409, {"reason": "not-simple"})
            return
        except NotRegular:
            self._send_json(409, {"reason": "not-regular"})
            return
        except BudgetExceeded:
            self._send_json(409, {"reason": "budget-exceeded"})
            return
        except IndexError:
            self._send_json(422, {"reason": "index out of range"})
            return
        if self.journal is not None:
            self.journal.append({"op": "mutate", "id": session.id, "index": body["index"]})
        self._send_json(200, self._state_doc(session))

    def _handle_exchange(self, session_id: str, query: str) -> None:
        session = self.store.get(session_id)
        if session is None:
            self._send_json(404, {"reason": "unknown-session"})
            return
        params = dict(p.split("=", 1) for p in query.split("&") if "=" in p)
        try:
            depth = int(params.get("depth", "3"))
        except ValueError:
            self._send_json(422, {"reason": "depth must be an integer"})
            return
        if depth < 0 or depth > 64:
            self._send_json(422, {"reason": "depth out of range"})
            return
        state = session.state
        exceeded = False
        try:
            if state.classes is not None:
                doc = config_orbit_to_json(
                    explore_config(GeodesicConfig(state.classes), depth, max_vertices=2000)
                )
            elif state.decorated is not None:
                doc = graph_to_json(explore(state.decorated, depth, max_vertices=2000))
            else:
                self._send_json(409, {"reason": "ledger-only sessions have no chart orbit"})
                return
        except BudgetExceeded as exc:
            partial = exc.partial
            if partial is None:
                self._send_json(409, {"reason": "budget-exceeded"})
                return
            doc = (
                config_orbit_to_json(partial)
                if state.classes is not None
                else graph_to_json(partial)
            )
            exceeded = True
        doc["budget_exceeded"] = exceeded
        self._send_json(200, doc)

    def _serve_static(self, path: str) -> None:
        if self.static_dir is None:
            self._send_json(404, {"reason": "unknown-route"})
            return
        rel = path.lstrip("/") or "index.html"
        target = (self.static_dir / rel).resolve()
        try:
            target.relative_to(self.static_dir.resolve())
        except ValueError:
            self._send_json(404, {"reason": "unknown-route"})
            return
        if not target.is_file():
            self._send_json(404, {"reason": "unknown-route"})
            return
        raw = target.read_bytes()
        self.send_response(200)
        ctype = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(raw)))
        self.end_headers()
        self.wfile.write(raw)


def make_server(
    port: int,
    journal_path: str | None = None,
    static_dir: str | None = None,
    host: str = "127.0.0.1",
) -> ThreadingHTTPServer:
    store = SessionStore()
    journal = Journal(journal_path) if journal_path else None
    if journal is not None:
        journal.replay(store)
    handler = type(
        "BoundHandler",
        (WorkbenchHandler,),
        {
            "store": store,
            "journal": journal,
            "static_dir": Path(static_dir) if static_dir else _default_static_dir(),
        },
    )
    return ThreadingHTTPServer((host, port), handler)


def _default_static_dir() -> Path | None:
    candidate = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"
    return candidate if candidate.is_dir() else None


def serve(port: int, journal_path: str | None = None, static_dir: str | None = None) -> None:
    server = make_server(port, journal_path, static_dir)
    try:
        server.serve_forever()
    finally:
        server.server_close()
