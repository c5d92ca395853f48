"""Local HTTP server speaking the metadata-provider wire contract.

Serves a fixture directory tree over ``GET /works/{doi}`` and
``GET /authors/{key}`` with exactly the bytes the fixture provider would
read, so the two access paths are interchangeable. ``{key}`` is an author
id first; failing that, an exact (case-insensitive) author name, answered
with 300 plus the candidate list when several authors share the name.
"""

from __future__ import annotations

import json
import threading
import urllib.parse
from contextlib import contextmanager
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path


class StubProviderHandler(BaseHTTPRequestHandler):
    def do_GET(self):  # noqa: N802 (http.server API)
        root: Path = self.server.fixture_root
        if self.path.startswith("/works/"):
            key = self.path[len("/works/") :]
            self._send_file(root / "publications" / f"{key}.json")
        elif self.path.startswith("/authors/"):
            key = self.path[len("/authors/") :]
            path = root / "authors" / f"{key}.json"
            if path.is_file():
                self._send_file(path)
            else:
                self._send_by_name(root / "authors", urllib.parse.unquote(key))
        else:
            self._send_json(404, {"error": "not_found"})

    def _send_by_name(self, authors_dir: Path, name: str) -> None:
        matches = []
        if authors_dir.is_dir():
            for path in sorted(authors_dir.glob("*.json")):
                try:
                    data = json.loads(path.read_text(encoding="utf-8"))
                except ValueError:
                    continue
                if str(data.get("name", "")).casefold() == name.casefold():
                    matches.append((path, data))
        if not matches:
            self._send_json(404, {"error": "not_found"})
        elif len(matches) == 1:
            self._send_file(matches[0][0])
        else:
            candidates = sorted(
                (
                    {"author_id": d.get("author_id", ""), "name": d.get("name", "")}
                    for _, d in matches
                ),
                key=lambda c: c["author_id"],
            )
            self._send_json(300, {"error": "ambiguous_author", "candidates": candidates})

    def _send_file(self, path: Path) -> None:
        if not path.is_file():
            self._send_json(404, {"error": "not_found"})
            return
        body = path.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, obj: dict) -> None:
        body = json.dumps(obj).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, fmt, *args):  # quiet by default
        pass


def make_stub_server(
    fixture_root: str | Path, host: str = "127.0.0.1", port: int = 0
) -> ThreadingHTTPServer:
    server = ThreadingHTTPServer((host, port), StubProviderHandler)
    server.fixture_root = Path(fixture_root)
    return server


@contextmanager
def running_stub(fixture_root: str | Path, host: str = "127.0.0.1", port: int = 0):
    """Run the stub in a background thread; yields its base URL."""
    server = make_stub_server(fixture_root, host, port)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield f"http://{host}:{server.server_port}"
    finally:
        server.shutdown()
        server.server_close()
        thread.join(timeout=5)
