"""Read-only JSON API over a loaded compared set, backing the web UI.

Endpoints (HTTP/1.1, JSON bodies, CORS open for localhost development):

* ``GET /api/datasets``                                  - metadata list
* ``GET /api/bin?dataset=i&method=m``                    - binning JSON
* ``GET /api/renderspec?method=m&layout=l&scope=s``      - RenderSpec JSON

Binnings and densities are computed lazily and cached per (dataset,
method); a repeated request is served from cache and marked with an
``X-Cache: hit`` header. The server never mutates its datasets, so any
request sequence returns the same bodies as a fresh server would. Static
UI assets are served at ``/`` from `ui_dir` when provided.
"""

from __future__ import annotations

import json
import mimetypes
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional, Sequence
from urllib.parse import parse_qs, urlparse

from .binning import bin_with
from .core import Distribution
from .density import density_for
from .render import build_render_spec, normalize_layout, normalize_scope

METHODS = ("uniform", "bb", "nb")
LAYOUT_PARAMS = ("bin", "bin-curve", "filled-curve")
SCOPE_PARAMS = ("global", "per")


class SessionState:
    """Loaded datasets plus a lock-guarded cache of derived artifacts."""

    def __init__(self, datasets: Sequence[Distribution]):
        self.datasets = list(datasets)
        self._lock = threading.Lock()
        self._partitions: dict = {}
        self._densities: dict = {}

    def partition(self, index: int, method: str):
        """Cached binning; returns (partition, was_cached)."""
        key = (index, method)
        with self._lock:
            if key in self._partitions:
                return self._partitions[key], True
        part = bin_with(self.datasets[index], method)
        with self._lock:
            self._partitions.setdefault(key, part)
            return self._partitions[key], False

    def density(self, index: int):
        with self._lock:
            if index in self._densities:
                return self._densities[index]
        dens = density_for(self.datasets[index])
        with self._lock:
            self._densities.setdefault(index, dens)
            return self._densities[index]


def _dataset_meta(state: SessionState) -> list:
    return [
        {"index": i, "name": d.name, "n": d.n, "min": d.lo, "max": d.hi}
        for i, d in enumerate(state.datasets)
    ]


def make_server(datasets: Sequence[Distribution], host: str = "127.0.0.1",
                port: int = 0, ui_dir: Optional[str] = None) -> ThreadingHTTPServer:
    """Build (but do not start) the HTTP server; port 0 lets the OS pick."""
    state = SessionState(datasets)
    ui_root = Path(ui_dir).resolve() if ui_dir else None

    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt, *args):  # keep test output quiet
            pass

        def _reply(self, status: int, body: bytes, content_type: str,
                   extra_headers: Optional[dict] = None):
            self.send_response(status)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            for k, v in (extra_headers or {}).items():
                self.send_header(k, v)
            self.end_headers()
            self.wfile.write(body)

        def _json(self, status: int, obj, extra_headers=None):
            body = json.dumps(obj).encode("utf-8")
            self._reply(status, body, "application/json", extra_headers)

        def _error(self, status: int, message: str):
            self._json(status, {"error": message})

        def do_GET(self):
            url = urlparse(self.path)
            query = {k: v[0] for k, v in parse_qs(url.query).items()}
            try:
                if url.path == "/api/datasets":
                    self._json(200, _dataset_meta(state))
                elif url.path == "/api/bin":
                    self._api_bin(query)
                elif url.path == "/api/renderspec":
                    self._api_renderspec(query)
                elif url.path.startswith("/api/"):
                    self._error(404, f"unknown endpoint {url.path}")
                else:
                    self._static(url.path)
            except BrokenPipeError:
                pass

        def _api_bin(self, query):
            method = query.get("method", "")
            if method not in METHODS:
                return self._error(400, f"method must be one of {METHODS}")
            try:
                index = int(query.get("dataset", ""))
            except ValueError:
                return self._error(400, "dataset must be an integer index")
            if not 0 <= index < len(state.datasets):
                return self._error(404, f"no dataset {index}")
            part, cached = state.partition(index, method)
            self._json(200, part.to_json_dict(),
                       {"X-Cache": "hit" if cached else "miss"})

        def _api_renderspec(self, query):
            method = query.get("method", "")
            layout = query.get("layout", "")
            scope = query.get("scope", "global")
            if method not in METHODS:
                return self._error(400, f"method must be one of {METHODS}")
            if layout not in LAYOUT_PARAMS:
                return self._error(400, f"layout must be one of {LAYOUT_PARAMS}")
            if scope not in SCOPE_PARAMS:
                return self._error(400, f"scope must be one of {SCOPE_PARAMS}")
            partitions = [state.partition(i, method)[0]
                          for i in range(len(state.datasets))]
            densities = None
            if layout in ("bin-curve", "filled-curve"):
                densities = [state.density(i)
                             for i in range(len(state.datasets))]
            spec = build_render_spec(state.datasets, partitions, densities,
                                     layout=normalize_layout(layout),
                                     scope=normalize_scope(scope))
            self._json(200, spec.to_json_dict())

        def _static(self, path: str):
            if ui_root is None:
                body = (b"<!doctype html><title>accustripes</title>"
                        b"<p>API: /api/datasets /api/bin /api/renderspec</p>")
                return self._reply(200, body, "text/html; charset=utf-8")
            rel = path.lstrip("/") or "index.html"
            target = (ui_root / rel).resolve()
            if not str(target).startswith(str(ui_root)) or not target.is_file():
                return self._error(404, f"not found: {path}")
            ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
            self._reply(200, target.read_bytes(), ctype)

    return ThreadingHTTPServer((host, port), Handler)


__all__ = ["SessionState", "make_server", "METHODS"]
