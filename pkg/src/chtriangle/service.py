"""HTTP-framed JSON service exposing the computation core.

POST a request document to any path and get the response envelope back;
identical logical requests return byte-identical payloads, served from the
cache after the first computation.  Domain errors never kill the process.
GET serves static files from an optional UI directory.
"""

from __future__ import annotations

import json
import mimetypes
import os
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .config import DEFAULT, Config
from .payloads import PayloadCache, SCHEMA_VERSION, canonical_json, handle_request

_MAX_BODY = 16 * 1024 * 1024


class _Handler(BaseHTTPRequestHandler):
    server_version = "chtriangle/0.1"
    cfg: Config = DEFAULT
    cache: PayloadCache | None = None
    ui_dir: str | None = None

    def log_message(self, fmt, *args):  # quiet by default
        if os.environ.get("CHTRIANGLE_SERVE_LOG"):
            super().log_message(fmt, *args)

    def _send(self, code: int, body: bytes, ctype: str = "application/json") -> None:
        self.send_response(code)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "POST, GET, OPTIONS")
        self.end_headers()
        self.wfile.write(body)

    def _error(self, code: int, err_code: str, message: str) -> None:
        env = {
            "schema": SCHEMA_VERSION,
            "status": "error",
            "error": {"code": err_code, "message": message},
        }
        self._send(code, canonical_json(env).encode())

    def do_OPTIONS(self):  # noqa: N802
        self._send(204, b"")

    def do_POST(self):  # noqa: N802
        try:
            length = int(self.headers.get("Content-Length", "0"))
        except ValueError:
            length = 0
        if length <= 0 or length > _MAX_BODY:
            self._error(400, "bad_request", "missing or oversized request body")
            return
        raw = self.rfile.read(length)
        try:
            req = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            self._error(400, "bad_request", f"malformed JSON: {exc}")
            return
        env = handle_request(req, self.cfg, self.cache)
        self._send(200 if env["status"] == "ok" else 400, canonical_json(env).encode())

    def do_GET(self):  # noqa: N802
        if self.path in ("/healthz", "/health"):
            self._send(200, canonical_json({"schema": SCHEMA_VERSION, "status": "ok"}).encode())
            return
        if not self.ui_dir:
            self._error(404, "not_found", "no UI directory configured; POST requests instead")
            return
        rel = self.path.lstrip("/") or "index.html"
        path = os.path.realpath(os.path.join(self.ui_dir, rel))
        if not path.startswith(os.path.realpath(self.ui_dir)) or not os.path.isfile(path):
            self._error(404, "not_found", self.path)
            return
        ctype = mimetypes.guess_type(path)[0] or "application/octet-stream"
        with open(path, "rb") as fh:
            self._send(200, fh.read(), ctype)


def make_server(
    port: int,
    host: str = "127.0.0.1",
    cfg: Config = DEFAULT,
    ui_dir: str | None = None,
) -> ThreadingHTTPServer:
    handler = type(
        "BoundHandler",
        (_Handler,),
        {
            "cfg": cfg,
            "cache": PayloadCache(cfg.cache_dir),
            "ui_dir": ui_dir,
        },
    )
    return ThreadingHTTPServer((host, port), handler)


def serve(port: int, host: str = "127.0.0.1", cfg: Config = DEFAULT, ui_dir: str | None = None) -> None:
    """Run the service until interrupted."""
    httpd = make_server(port, host, cfg, ui_dir)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()


def serve_background(
    port: int, host: str = "127.0.0.1", cfg: Config = DEFAULT, ui_dir: str | None = None
) -> tuple[ThreadingHTTPServer, threading.Thread]:
    """Start the service on a daemon thread; used by tests and the UI harness."""
    httpd = make_server(port, host, cfg, ui_dir)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    return httpd, thread
