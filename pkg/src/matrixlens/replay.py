"""Deterministic replay of command scripts for golden/regression testing.

A script is a newline-delimited list of protocol commands. Replaying records
the scene digest after every step; the same script and dataset produce the
same digest list on every run. Any command that answers with an error event
aborts the replay, reporting the failing step.
"""

from __future__ import annotations

import json
import os

from .errors import EngineError, E_PARSE
from .layout import Viewport
from .session import Session


class ReplayAbort(EngineError):
    def __init__(self, step: int, code: str, message: str):
        super().__init__(code, f"step {step}: {message}")
        self.step = step


def load_script(path: str) -> list[dict]:
    commands = []
    try:
        f = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise EngineError("E_IO", f"cannot read script: {exc}") from None
    with f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                commands.append(json.loads(line))
            except ValueError as exc:
                raise EngineError(E_PARSE, f"{path}:{lineno}: malformed command: {exc}") from None
    return commands


def replay_commands(commands: list[dict], session: Session | None = None, base_dir: str | None = None) -> dict:
    session = session or Session()
    digests = []
    for step, cmd in enumerate(commands):
        cmd = _resolve_paths(cmd, base_dir)
        events = session.handle_command(cmd)
        for event in events:
            if event["kind"] == "error":
                raise ReplayAbort(step, event["payload"]["code"], event["payload"]["message"])
        digests.append(session.digest)
    return {"finalDigest": session.digest, "perStepDigests": digests, "session": session}


def replay_script(path: str, viewport: Viewport | None = None) -> dict:
    """Replay a script file; dataset paths resolve relative to the script."""
    commands = load_script(path)
    session = Session(viewport=viewport)
    result = replay_commands(commands, session, base_dir=os.path.dirname(os.path.abspath(path)))
    return {"finalDigest": result["finalDigest"], "perStepDigests": result["perStepDigests"]}


def _resolve_paths(cmd: dict, base_dir: str | None) -> dict:
    if (
        base_dir
        and isinstance(cmd, dict)
        and cmd.get("kind") == "load_dataset"
        and isinstance(cmd.get("payload"), dict)
        and "path" in cmd["payload"]
        and not os.path.isabs(cmd["payload"]["path"])
    ):
        payload = dict(cmd["payload"])
        payload["path"] = os.path.join(base_dir, payload["path"])
        cmd = {**cmd, "payload": payload}
    return cmd
