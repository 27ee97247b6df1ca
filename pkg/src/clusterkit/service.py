"""JSON-over-HTTP session service for interactive mutation.

A session holds a live seed plus its mutation history; mutation, undo,
neighbor previews, exchange-graph exploration, and a polygon view for
type A quivers are exposed as endpoints.  All rational numbers cross the
wire as strings; vertices are 1-based on the wire and 0-based inside.

The app is a plain WSGI callable, so it runs under wsgiref for real and
under an in-process transport for tests.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field
from typing import Callable

from . import laurent, polygon as pg, quiver as qv, seed as sd
from .quiver import DiagramKind, Quiver
from .seed import Seed

DEFAULT_MAX_NODES = int(os.environ.get("CF_MAX_NODES", "10000"))


@dataclass
class PolygonView:
    triangulation: pg.Triangulation
    diagonal_of_vertex: dict[int, pg.Diagonal]

    def flipped(self, k: int) -> "PolygonView":
        d = self.diagonal_of_vertex[k]
        t2 = pg.flip(self.triangulation, d)
        (new_d,) = t2.diags - self.triangulation.diags
        mapping = dict(self.diagonal_of_vertex)
        mapping[k] = new_d
        return PolygonView(t2, mapping)


def _initial_polygon_view(q: Quiver) -> PolygonView | None:
    tag = qv.classify_diagram(q)
    if q.m or tag.kind != DiagramKind.DYNKIN or not tag.family.startswith("A"):
        return None
    ngon = q.n + 3
    q_canon, q_perm = qv.canonical_form(q)
    for t in pg.triangulations(ngon):
        qt = pg.quiver_of_triangulation(t)
        t_canon, _ = qv.canonical_form(qt)
        if t_canon != q_canon:
            continue
        inv_q = [0] * q.n
        for old, new in enumerate(q_perm):
            inv_q[new] = old
        for pt in qv.canonical_perms(qt):
            sigma = tuple(inv_q[pt[i]] for i in range(q.n))
            if qv.permute(qt, sigma) == q:
                order = t.ordered()
                mapping = {sigma[i]: order[i] for i in range(q.n)}
                return PolygonView(t, mapping)
    return None


@dataclass
class Session:
    id: str
    initial: Seed
    current: Seed
    finiteness: str = ""
    history: list[int] = field(default_factory=list)
    polygon: PolygonView | None = None
    lock: threading.RLock = field(default_factory=threading.RLock)

    def mutate(self, k: int) -> None:
        with self.lock:
            self.current = sd.mutate_seed(self.current, k)
            self.history.append(k)
            if self.polygon is not None:
                nxt = self.polygon.flipped(k)
                order = nxt.triangulation.ordered()
                posmap = {d: v for v, d in nxt.diagonal_of_vertex.items()}
                perm = tuple(posmap[d] for d in order)
                if qv.permute(pg.quiver_of_triangulation(nxt.triangulation), perm) \
                        == self.current.quiver:
                    self.polygon = nxt
                else:
                    self.polygon = None  # defensive; should not happen in type A

    def undo(self) -> None:
        with self.lock:
            if not self.history:
                raise IndexError("history is empty")
            k = self.history.pop()
            self.current = sd.mutate_seed(self.current, k)
            if self.polygon is not None:
                self.polygon = self.polygon.flipped(k)


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.RLock()

    def create(self, q: Quiver) -> Session:
        s0 = sd.initial_seed(q)
        session = Session(
            id=uuid.uuid4().hex[:12],
            initial=s0,
            current=s0,
            finiteness=qv.is_mutation_finite(q, max_size=200).value,
            polygon=_initial_polygon_view(q),
        )
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, sid: str) -> Session | None:
        with self._lock:
            return self._sessions.get(sid)

    def delete(self, sid: str) -> bool:
        with self._lock:
            return self._sessions.pop(sid, None) is not None

    def ids(self) -> list[str]:
        with self._lock:
            return sorted(self._sessions)

    # -- snapshot persistence ------------------------------------------------

    def snapshot(self, path: str) -> None:
        with self._lock:
            payload = {
                sid: {
                    "quiver": qv.to_json(s.initial.quiver),
                    "history": [k + 1 for k in s.history],
                }
                for sid, s in self._sessions.items()
            }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True)

    def load(self, path: str) -> None:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        for sid, entry in payload.items():
            q = qv.from_json(entry["quiver"])
            s0 = sd.initial_seed(q)
            session = Session(id=sid, initial=s0, current=s0,
                              finiteness=qv.is_mutation_finite(q, max_size=200).value,
                              polygon=_initial_polygon_view(q))
            for k in entry["history"]:
                session.mutate(int(k) - 1)
            with self._lock:
                self._sessions[sid] = session


# -- JSON views ---------------------------------------------------------------

def _polygon_json(view: PolygonView) -> dict:
    return {
        "ngon": view.triangulation.ngon,
        "triangulation": [list(d) for d in view.triangulation.ordered()],
        "diagonal_of_vertex": {str(v + 1): list(d)
                               for v, d in sorted(view.diagonal_of_vertex.items())},
        "svg": pg.triangulation_svg(view.triangulation),
    }


def _variable_json(s: Seed, p) -> dict:
    return {"str": laurent.format_fraction(p, s.variable_names()),
            "poly": laurent.to_json(p)}


def state_json(session: Session) -> dict:
    s = session.current
    return {
        "id": session.id,
        "quiver": qv.to_json(s.quiver),
        "cluster": [_variable_json(s, p) for p in s.cluster],
        "coefficients": s.variable_names()[s.quiver.n:],
        "history": [k + 1 for k in session.history],
        "classification": str(qv.classify_diagram(s.quiver)),
        "finiteness": session.finiteness,
        "polygon": _polygon_json(session.polygon) if session.polygon else None,
    }


def neighbors_json(session: Session) -> list[dict]:
    s = session.current
    out = []
    for k in range(s.quiver.n):
        child = sd.mutate_seed(s, k)
        out.append({
            "vertex": k + 1,
            "variable": _variable_json(child, child.cluster[k]),
            "cluster": [laurent.format_fraction(p, child.variable_names())
                        for p in child.cluster],
            "quiver": qv.to_json(child.quiver),
        })
    return out


# -- WSGI app -------------------------------------------------------------------

class _HttpError(Exception):
    def __init__(self, status: int, message: str):
        self.status = status
        self.message = message


_STATUS_TEXT = {
    200: "200 OK", 201: "201 Created", 204: "204 No Content",
    400: "400 Bad Request", 404: "404 Not Found", 405: "405 Method Not Allowed",
    409: "409 Conflict", 413: "413 Payload Too Large",
    422: "422 Unprocessable Entity", 500: "500 Internal Server Error",
}

_CORS = [
    ("Access-Control-Allow-Origin", "*"),
    ("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"),
    ("Access-Control-Allow-Headers", "Content-Type"),
]


def make_app(store: SessionStore) -> Callable:
    def handle(method: str, parts: list[str], body: dict, query: dict):
        if method == "POST" and parts == ["sessions"]:
            if "quiver" not in body:
                raise _HttpError(422, "missing quiver")
            try:
                q = qv.from_json(body["quiver"])
            except (ValueError, TypeError, KeyError) as exc:
                raise _HttpError(422, f"invalid quiver JSON: {exc}")
            session = store.create(q)
            return 201, {"id": session.id, "state": state_json(session)}

        if parts and parts[0] == "sessions" and len(parts) >= 2:
            session = store.get(parts[1])
            if session is None:
                raise _HttpError(404, "unknown session")
            tail = parts[2:]
            if method == "GET" and tail == []:
                return 200, state_json(session)
            if method == "DELETE" and tail == []:
                store.delete(session.id)
                return 204, None
            if method == "POST" and tail == ["mutate"]:
                vertex = body.get("vertex")
                if not isinstance(vertex, int) or not (1 <= vertex <= session.current.quiver.n):
                    raise _HttpError(400, f"bad vertex {vertex!r}")
                session.mutate(vertex - 1)
                return 200, state_json(session)
            if method == "POST" and tail == ["undo"]:
                try:
                    session.undo()
                except IndexError:
                    raise _HttpError(409, "history is empty")
                return 200, state_json(session)
            if method == "GET" and tail == ["neighbors"]:
                return 200, {"neighbors": neighbors_json(session)}
            if method == "GET" and tail == ["exchange-graph"]:
                try:
                    max_nodes = int(query.get("max", DEFAULT_MAX_NODES))
                except ValueError:
                    raise _HttpError(400, "bad max")
                search = sd.exchange_graph(session.current, max_nodes)
                if not search.complete:
                    raise _HttpError(413, f"more than {max_nodes} seeds")
                g = search.graph
                variables = {p for node in g.seeds for p in node.cluster}
                return 200, {
                    "seeds": len(g),
                    "variables": len(variables),
                    "edges": [[u, k + 1, v] for (u, k, v) in g.edges],
                    "nodes": [sd.to_json(node) for node in g.seeds],
                }
            if method == "GET" and tail == ["polygon"]:
                if session.polygon is None:
                    raise _HttpError(404, "no polygon model for this quiver")
                return 200, _polygon_json(session.polygon)
        raise _HttpError(404, "no such endpoint")

    def app(environ, start_response):
        method = environ["REQUEST_METHOD"].upper()
        path = environ.get("PATH_INFO", "/")
        parts = [p for p in path.split("/") if p]
        query = {}
        for piece in environ.get("QUERY_STRING", "").split("&"):
            if "=" in piece:
                key, value = piece.split("=", 1)
                query[key] = value
        if method == "OPTIONS":
            start_response(_STATUS_TEXT[204], list(_CORS))
            return [b""]
        try:
            length = int(environ.get("CONTENT_LENGTH") or 0)
            raw = environ["wsgi.input"].read(length) if length else b""
            if raw:
                try:
                    body = json.loads(raw)
                except json.JSONDecodeError:
                    raise _HttpError(422, "request body is not JSON")
                if not isinstance(body, dict):
                    raise _HttpError(422, "request body must be a JSON object")
            else:
                body = {}
            status, payload = handle(method, parts, body, query)
        except _HttpError as exc:
            status, payload = exc.status, {"error": exc.message}
        data = b"" if payload is None else json.dumps(payload).encode()
        headers = [("Content-Type", "application/json"),
                   ("Content-Length", str(len(data)))] + _CORS
        start_response(_STATUS_TEXT[status], headers)
        return [data]

    return app


def serve(port: int, snapshot: str | None = None) -> None:
    """Run the threading WSGI server until interrupted; with a snapshot
    path, sessions reload at boot and persist at shutdown."""
    import atexit
    from socketserver import ThreadingMixIn
    from wsgiref.simple_server import WSGIServer, make_server

    class ThreadingWSGIServer(ThreadingMixIn, WSGIServer):
        daemon_threads = True

    store = SessionStore()
    if snapshot and os.path.exists(snapshot):
        store.load(snapshot)
    if snapshot:
        atexit.register(store.snapshot, snapshot)
    server = make_server("", port, make_app(store), server_class=ThreadingWSGIServer)
    print(f"clusterkit service on port {port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        if snapshot:
            store.snapshot(snapshot)
