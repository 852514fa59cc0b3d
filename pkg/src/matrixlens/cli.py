"""Command-line entry point: load data, replay scripts, snapshot, serve."""

from __future__ import annotations

import argparse
import sys

from .errors import EngineError
from .layout import Viewport
from .replay import load_script, replay_commands
from .session import Session


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="matrixlens",
        description="Matrix-based multivariate graph exploration and editing engine.",
    )
    p.add_argument("--data", help="dataset path (json), or nodes.csv,edges.csv for csv")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--order", help="input|degree|attr:<name>|cluster:<name>|simclust")
    p.add_argument("--sim-attrs", help="comma-separated attribute names for similarity")
    p.add_argument("--script", help="replay a newline-delimited command script")
    p.add_argument("--snapshot", metavar="OUT.SVG", help="export the final scene as SVG")
    p.add_argument("--digest", action="store_true", help="print the final scene digest")
    p.add_argument("--per-step-digests", action="store_true", help="print one digest per script step")
    p.add_argument("--serve", action="store_true", help="run the session server")
    p.add_argument("--port", type=int, default=7341)
    p.add_argument("--viewport", default="960x960", help="viewport as WIDTHxHEIGHT")
    return p


def _parse_viewport(text: str) -> Viewport:
    try:
        w, h = text.lower().split("x", 1)
        return Viewport(float(w), float(h))
    except (ValueError, EngineError):
        raise SystemExit(f"invalid --viewport {text!r}; expected WIDTHxHEIGHT") from None


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    viewport = _parse_viewport(args.viewport)

    if args.serve:
        from .server import serve

        serve(args.port, viewport=viewport)
        return 0

    session = Session(viewport=viewport)
    seq = 0
    commands: list[dict] = []

    def enqueue(kind: str, payload: dict):
        nonlocal seq
        seq += 1
        commands.append({"seq": seq, "kind": kind, "payload": payload})

    if args.data:
        enqueue("load_dataset", {"path": args.data, "format": args.format})
    if args.sim_attrs:
        enqueue("set_similarity_attributes", {"attributes": args.sim_attrs.split(",")})
    if args.order:
        enqueue("set_ordering", {"strategy": args.order})

    script_start = len(commands)
    if args.script:
        try:
            for cmd in load_script(args.script):
                seq += 1
                commands.append({**cmd, "seq": seq})
        except EngineError as exc:
            print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
            return 1

    if not commands:
        build_parser().print_usage(sys.stderr)
        print("nothing to do: give --data, --script, or --serve", file=sys.stderr)
        return 1

    import os

    base_dir = os.path.dirname(os.path.abspath(args.script)) if args.script else None
    try:
        result = replay_commands(commands, session, base_dir=base_dir)
    except EngineError as exc:
        print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
        return 1

    if args.per_step_digests:
        for d in result["perStepDigests"][script_start:]:
            print(d)
    if args.snapshot:
        from .svg import export_svg

        count = export_svg(session.scene, args.snapshot)
        print(f"wrote {args.snapshot} ({count} shapes)", file=sys.stderr)
    if args.digest:
        print(result["finalDigest"])
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
