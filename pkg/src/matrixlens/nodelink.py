"""Deterministic force-directed layout for embedded node-link views.

Fruchterman-Reingold style simulation: nodes repel with k^2/d, connected
nodes attract with d^2/k, displacement capped by a linearly cooling
temperature, run for a fixed 300 iterations. Initial positions are placed on
a circle whose phase derives from the seed, so identical inputs always yield
bit-identical positions and symmetric inputs stay symmetric.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .layout import Rect

ITERATIONS = 300
DEFAULT_SEED = 42


def layout_nodelink(
    node_ids: tuple[str, ...],
    edges: tuple[tuple[str, str], ...],
    rect: Rect,
    seed: int = DEFAULT_SEED,
    inset: float = 6.0,
) -> dict[str, tuple[float, float]]:
    if not node_ids:
        return {}
    key = (node_ids, edges, round(rect.x, 6), round(rect.y, 6), round(rect.w, 6), round(rect.h, 6), seed, inset)
    return dict(_layout_cached(key))


@lru_cache(maxsize=256)
def _layout_cached(key) -> tuple:
    node_ids, edges, rx, ry, rw, rh, seed, inset = key
    n = len(node_ids)
    cx, cy = rx + rw / 2.0, ry + rh / 2.0
    x0, y0 = rx + inset, ry + inset
    x1, y1 = rx + rw - inset, ry + rh - inset
    if x1 <= x0:
        x0 = x1 = cx
    if y1 <= y0:
        y0 = y1 = cy

    if n == 1:
        return ((node_ids[0], (cx, cy)),)

    index = {nid: i for i, nid in enumerate(node_ids)}
    pairs = []
    for a, b in edges:
        if a in index and b in index and a != b:
            pairs.append((index[a], index[b]))

    radius = max(min(x1 - x0, y1 - y0) / 2.0 * 0.8, 1.0)
    phase = (seed % 360) * math.pi / 180.0
    xs = [cx + radius * math.cos(phase + 2.0 * math.pi * i / n) for i in range(n)]
    ys = [cy + radius * math.sin(phase + 2.0 * math.pi * i / n) for i in range(n)]

    area = max((x1 - x0) * (y1 - y0), 1.0)
    k = math.sqrt(area / n)
    t0 = max(x1 - x0, y1 - y0) / 10.0

    for it in range(ITERATIONS):
        dx = [0.0] * n
        dy = [0.0] * n
        for i in range(n):
            xi, yi = xs[i], ys[i]
            for j in range(i + 1, n):
                ddx = xi - xs[j]
                ddy = yi - ys[j]
                dist = math.sqrt(ddx * ddx + ddy * ddy)
                if dist < 1e-9:
                    # Coincident nodes: push apart along a deterministic axis.
                    ddx, ddy, dist = 1e-6 * (j - i), 0.0, 1e-6 * (j - i)
                f = k * k / dist
                ux, uy = ddx / dist, ddy / dist
                dx[i] += ux * f
                dy[i] += uy * f
                dx[j] -= ux * f
                dy[j] -= uy * f
        for a, b in pairs:
            ddx = xs[a] - xs[b]
            ddy = ys[a] - ys[b]
            dist = math.sqrt(ddx * ddx + ddy * ddy)
            if dist < 1e-9:
                continue
            f = dist * dist / k
            ux, uy = ddx / dist, ddy / dist
            dx[a] -= ux * f
            dy[a] -= uy * f
            dx[b] += ux * f
            dy[b] += uy * f
        t = t0 * (1.0 - it / ITERATIONS)
        for i in range(n):
            mag = math.sqrt(dx[i] * dx[i] + dy[i] * dy[i])
            if mag > 1e-12:
                step = min(mag, t)
                xs[i] += dx[i] / mag * step
                ys[i] += dy[i] / mag * step
            xs[i] = min(max(xs[i], x0), x1)
            ys[i] = min(max(ys[i], y0), y1)

    return tuple((nid, (xs[i], ys[i])) for i, nid in enumerate(node_ids))
