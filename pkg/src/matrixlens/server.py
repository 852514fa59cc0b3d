"""Newline-delimited JSON session server over TCP.

Each connection owns one independent session. Frames are UTF-8 JSON
commands, one per line; every command yields one or more event lines, in
order. A malformed frame produces an E_PARSE error event and the connection
stays open. Commands within a connection are processed strictly
sequentially.
"""

from __future__ import annotations

import json
import socketserver
import threading

from .layout import Viewport
from .session import Session


class _Handler(socketserver.StreamRequestHandler):
    def handle(self):
        session = Session(viewport=self.server.viewport)
        try:
            while True:
                line = self.rfile.readline()
                if not line:
                    return
                text = line.decode("utf-8", errors="replace").strip()
                if not text:
                    continue
                try:
                    cmd = json.loads(text)
                except ValueError as exc:
                    self._send({"kind": "error", "inReplyTo": None,
                                "payload": {"code": "E_PARSE", "message": f"malformed frame: {exc}"}})
                    continue
                for event in session.handle_command(cmd):
                    self._send(event)
        except (ConnectionResetError, BrokenPipeError):
            return

    def _send(self, event: dict) -> None:
        self.wfile.write(json.dumps(event, separators=(",", ":")).encode("utf-8") + b"\n")
        self.wfile.flush()


class SessionServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, host: str = "127.0.0.1", port: int = 0, viewport: Viewport | None = None):
        self.viewport = viewport or Viewport(960.0, 960.0)
        super().__init__((host, port), _Handler)

    @property
    def port(self) -> int:
        return self.server_address[1]

    def start_background(self) -> threading.Thread:
        thread = threading.Thread(target=self.serve_forever, name="matrixlens-server", daemon=True)
        thread.start()
        return thread


def serve(port: int, host: str = "127.0.0.1", viewport: Viewport | None = None) -> None:
    """Run the session endpoint until interrupted."""
    server = SessionServer(host=host, port=port, viewport=viewport)
    print(f"matrixlens session server listening on {host}:{server.port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.shutdown()
        server.server_close()
