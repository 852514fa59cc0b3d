"""Standalone SVG snapshots of scenes; one shape element per mark.

Output bytes are deterministic for a given scene: attributes are emitted in
a fixed order and numbers carry the scene's already-rounded values.
"""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from .marks import Scene


def _num(v) -> str:
    if isinstance(v, float) and v.is_integer():
        return str(int(v))
    return repr(v) if isinstance(v, float) else str(v)


def _style_attrs(m: dict, default_fill: str, default_stroke: str) -> str:
    fill = m.get("fill", default_fill)
    stroke = m.get("stroke", default_stroke)
    parts = [f' fill="{fill}"', f' stroke="{stroke}"']
    if "strokeWidth" in m:
        parts.append(f' stroke-width="{_num(m["strokeWidth"])}"')
    if "opacity" in m:
        parts.append(f' opacity="{_num(m["opacity"])}"')
    return "".join(parts)


def mark_to_svg(m: dict) -> str:
    kind = m["kind"]
    if kind == "rect":
        return (
            f'<rect x="{_num(m["x"])}" y="{_num(m["y"])}" width="{_num(m["w"])}" height="{_num(m["h"])}"'
            + _style_attrs(m, "none", "none")
            + "/>"
        )
    if kind == "line":
        return (
            f'<line x1="{_num(m["x1"])}" y1="{_num(m["y1"])}" x2="{_num(m["x2"])}" y2="{_num(m["y2"])}"'
            + _style_attrs(m, "none", "#000000")
            + "/>"
        )
    if kind == "polyline":
        pts = " ".join(f"{_num(p[0])},{_num(p[1])}" for p in m["points"])
        tag = "polygon" if m.get("closed") else "polyline"
        return f'<{tag} points="{pts}"' + _style_attrs(m, "none", "#000000") + "/>"
    if kind == "circle":
        return (
            f'<circle cx="{_num(m["cx"])}" cy="{_num(m["cy"])}" r="{_num(m["r"])}"'
            + _style_attrs(m, "#000000", "none")
            + "/>"
        )
    if kind == "text":
        anchor = {"middle": "middle", "start": "start", "end": "end"}.get(m.get("anchor", "start"), "start")
        size = _num(m.get("fontSize", 10))
        fill = m.get("fill", "#000000")
        return (
            f'<text x="{_num(m["x"])}" y="{_num(m["y"])}" font-size="{size}" text-anchor="{anchor}"'
            f' fill="{fill}" font-family="sans-serif">{escape(str(m["text"]))}</text>'
        )
    if kind == "path":
        return f'<path d={quoteattr(m["d"])}' + _style_attrs(m, "none", "#000000") + "/>"
    raise ValueError(f"unknown mark kind: {kind!r}")


def svg_bytes(scene: Scene) -> bytes:
    vp = scene.viewport
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(vp.width)}" height="{_num(vp.height)}" '
        f'viewBox="0 0 {_num(vp.width)} {_num(vp.height)}">\n'
    )
    body = "\n".join(mark_to_svg(m) for m in scene.marks)
    return (head + body + ("\n" if body else "") + "</svg>\n").encode("utf-8")


def export_svg(scene: Scene, path: str) -> int:
    """Write the scene snapshot; returns the number of shape elements."""
    blob = svg_bytes(scene)
    with open(path, "wb") as f:
        f.write(blob)
    return len(scene.marks)
