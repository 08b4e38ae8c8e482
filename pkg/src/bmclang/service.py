"""Stateless local wire API.

Five endpoints over plain HTTP/1.1 with JSON bodies:

- ``POST /api/v1/validate``  {"source": "dsl"|"json", "text": str}
- ``POST /api/v1/infer``     {"src": kind token, "dst": kind token}
- ``GET  /api/v1/matrix``
- ``POST /api/v1/format``    {"text": str}
- ``POST /api/v1/render``    {"source", "text", "bm"?, "format": "svg"|"dot"}

Every handler is a pure function of the request body over the immutable
policy table, so concurrent requests are trivially safe. Responses carry
permissive CORS headers because the studio front end runs on a separate
origin during development.
"""
from __future__ import annotations

import json
import sys
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import diagnostics as dc
from .diagnostics import error
from .export import to_dot, to_svg
from .model import ElementKind, Enterprise, Span
from .pipeline import check_envelope, check_text, format_text
from .policy import POLICY

JSON_TYPE = "application/json; charset=utf-8"
SVG_TYPE = "image/svg+xml; charset=utf-8"
DOT_TYPE = "text/vnd.graphviz; charset=utf-8"


def _diag_body(diagnostic) -> dict:
    return {"ok": False, "diagnostics": [diagnostic.to_wire()]}


def _bad_request(message: str, code: str = dc.E_SCHEMA) -> tuple[int, str, bytes]:
    body = _diag_body(error(code, message))
    return 400, JSON_TYPE, _encode(body)


def _encode(obj: dict) -> bytes:
    return (json.dumps(obj, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def handle_validate(body: dict) -> tuple[int, str, bytes]:
    source = body.get("source")
    text = body.get("text")
    if source not in ("dsl", "json") or not isinstance(text, str):
        return _bad_request(
            'validate expects {"source": "dsl"|"json", "text": str}'
        )
    result = check_text(text, source)
    return 200, JSON_TYPE, _encode(check_envelope(result))


def handle_infer(body: dict) -> tuple[int, str, bytes]:
    kinds = []
    for key in ("src", "dst"):
        token = body.get(key)
        kind = ElementKind.from_token(token) if isinstance(token, str) else None
        if kind is None:
            return _bad_request(f"unknown element kind {token!r} for '{key}'")
        kinds.append(kind)
    entry = POLICY[(kinds[0], kinds[1])]
    payload = {"entry": entry.wire_entry, "kind": entry.kind.value}
    return 200, JSON_TYPE, _encode(payload)


def handle_matrix() -> tuple[int, str, bytes]:
    entries = [
        {
            "src": src.abbrev,
            "dst": dst.abbrev,
            "entry": POLICY[(src, dst)].wire_entry,
            "kind": POLICY[(src, dst)].kind.value,
        }
        for src in ElementKind
        for dst in ElementKind
    ]
    return 200, JSON_TYPE, _encode({"entries": entries})


def handle_format(body: dict) -> tuple[int, str, bytes]:
    text = body.get("text")
    if not isinstance(text, str):
        return _bad_request('format expects {"text": str}')
    canonical, diagnostics = format_text(text)
    payload: dict = {
        "ok": canonical is not None,
        "diagnostics": [d.to_wire() for d in diagnostics],
    }
    if canonical is not None:
        payload["text"] = canonical
    return 200, JSON_TYPE, _encode(payload)


def handle_render(body: dict) -> tuple[int, str, bytes]:
    source = body.get("source")
    text = body.get("text")
    fmt = body.get("format")
    if source not in ("dsl", "json") or not isinstance(text, str) \
            or fmt not in ("svg", "dot"):
        return _bad_request(
            'render expects {"source": "dsl"|"json", "text": str, '
            '"bm"?: str, "format": "svg"|"dot"}'
        )
    result = check_text(text, source)
    if not result.ok or result.enterprise is None:
        return 422, JSON_TYPE, _encode(check_envelope(result))
    bm = _select_bm(result.enterprise, body.get("bm"))
    if bm is None:
        return _bad_request(
            "the enterprise has several business models; name one with \"bm\""
        )
    if fmt == "svg":
        return 200, SVG_TYPE, to_svg(bm).encode("utf-8")
    return 200, DOT_TYPE, to_dot(bm).encode("utf-8")


def _select_bm(enterprise: Enterprise, name):
    if name is None:
        if len(enterprise.business_models) == 1:
            return enterprise.business_models[0]
        return None
    if not isinstance(name, str):
        return None
    for bm in enterprise.walk_business_models():
        if bm.name == name:
            return bm
    return None


class ApiHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    max_request_bytes = 1 << 20
    quiet = False

    def log_message(self, fmt: str, *args) -> None:  # noqa: A003
        if not self.quiet:
            super().log_message(fmt, *args)

    def _respond(self, status: int, content_type: str, payload: bytes) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(payload)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.end_headers()
        self.wfile.write(payload)

    def do_OPTIONS(self) -> None:  # noqa: N802 (stdlib naming)
        self._respond(204, JSON_TYPE, b"")

    def do_GET(self) -> None:  # noqa: N802
        if self.path == "/api/v1/matrix":
            self._respond(*handle_matrix())
            return
        self._respond(*_not_found(self.path))

    def do_POST(self) -> None:  # noqa: N802
        handlers = {
            "/api/v1/validate": handle_validate,
            "/api/v1/infer": handle_infer,
            "/api/v1/format": handle_format,
            "/api/v1/render": handle_render,
        }
        handler = handlers.get(self.path)
        if handler is None:
            self._respond(*_not_found(self.path))
            return
        length = int(self.headers.get("Content-Length") or 0)
        if length > self.max_request_bytes:
            body = _diag_body(error(
                dc.E_SCHEMA,
                f"request body exceeds {self.max_request_bytes} bytes",
            ))
            self._respond(413, JSON_TYPE, _encode(body))
            return
        raw = self.rfile.read(length)
        try:
            body = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            pos = getattr(exc, "pos", 0)
            offset = pos if isinstance(pos, int) else 0
            diag = error(dc.E_SYNTAX, f"malformed JSON request body: {exc}",
                         span=Span(offset, min(offset + 1, len(raw))))
            self._respond(400, JSON_TYPE, _encode(_diag_body(diag)))
            return
        if not isinstance(body, dict):
            self._respond(*_bad_request("request body must be a JSON object"))
            return
        self._respond(*handler(body))


def _not_found(path: str) -> tuple[int, str, bytes]:
    body = _diag_body(error(dc.E_SCHEMA, f"no such endpoint: {path}"))
    return 404, JSON_TYPE, _encode(body)


def make_server(port: int, bind: str = "127.0.0.1",
                max_request_bytes: int = 1 << 20,
                quiet: bool = False) -> ThreadingHTTPServer:
    handler = type(
        "BoundApiHandler",
        (ApiHandler,),
        {"max_request_bytes": max_request_bytes, "quiet": quiet},
    )
    return ThreadingHTTPServer((bind, port), handler)


def serve(port: int, bind: str = "127.0.0.1", max_request_bytes: int = 1 << 20,
          quiet: bool = False) -> int:
    try:
        server = make_server(port, bind, max_request_bytes, quiet=quiet)
    except OSError as exc:
        print(f"bmclang: cannot bind {bind}:{port}: {exc.strerror or exc}",
              file=sys.stderr)
        return 2
    host, actual_port = server.server_address[:2]
    print(f"listening on http://{host}:{actual_port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0
