"""SVG pictures of patches.

Euclidean tilings are drawn flat; hyperbolic ones in the Poincare disk, with
each tile obtained from a neighbour by inversion in the circle carrying
their shared side.  Output is a pure function of its inputs.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .alignment import EdgeReversal
from .patch import TilingPatch

HIGHLIGHT = "#d62728"
PLAIN = "#222222"
SIZE = 800


@dataclass(frozen=True)
class RenderStyle:
    geometry: str  # "euclidean" or "poincare-disk"
    highlight: str = HIGHLIGHT
    show_labels: bool = False
    show_ids: bool = False
    shade_colors: bool = True

    @classmethod
    def for_patch(cls, patch: TilingPatch, **kw) -> RenderStyle:
        geometry = "euclidean" if patch.params.euclidean else "poincare-disk"
        return cls(geometry, **kw)


def _base_radius(m: int, n: int, geometry: str) -> float:
    if geometry == "euclidean":
        return 1.0
    cosh_r = 1 / (math.tan(math.pi / m) * math.tan(math.pi / n))
    return math.tanh(math.acosh(cosh_r) / 2)


def _geodesic_circle(a: complex, b: complex) -> Optional[tuple[complex, float]]:
    """Circle orthogonal to the unit circle through a and b; None for a diameter."""
    cross = a.real * b.imag - a.imag * b.real
    if abs(cross) < 1e-12:
        return None
    # center c solves |c|^2 = r^2 + 1 with c on the perpendicular bisectors of a, a* and b, b*
    pa = (abs(a) ** 2 + 1) / 2
    pb = (abs(b) ** 2 + 1) / 2
    cx = (pa * b.imag - pb * a.imag) / cross
    cy = (a.real * pb - b.real * pa) / cross
    c = complex(cx, cy)
    return c, math.sqrt(max(abs(c) ** 2 - 1, 0.0))


def _mirror(p: complex, a: complex, b: complex, geometry: str) -> complex:
    if geometry == "poincare-disk":
        circle = _geodesic_circle(a, b)
        if circle is not None:
            c, r = circle
            d = p - c
            return c + r * r / d.conjugate()
    # reflection in the straight line through a and b
    u = (b - a) / abs(b - a)
    return a + u * ((p - a) / u).conjugate()


def vertex_positions(patch: TilingPatch, geometry: str) -> dict[int, complex]:
    m = patch.m
    rad = _base_radius(m, patch.n, geometry)
    base = patch.base_tile
    corners = {t.id: patch.corners(t.id) for t in patch.tiles}
    pos: dict[int, complex] = {}
    pts: dict[int, list[complex]] = {}
    pts[base] = [rad * complex(math.cos(a), math.sin(a)) for a in
                 (math.pi / 2 + math.pi / m + 2 * math.pi * k / m for k in range(m))]
    for v, p in zip(corners[base], pts[base]):
        pos[v] = p
    queue = deque([base])
    while queue:
        x = queue.popleft()
        cx = corners[x]
        for e in patch.tiles[x].edges:
            y = patch.other_tile(e, x)
            if y is None or y in pts:
                continue
            edge = patch.edges[e]
            a, b = pos[edge.src], pos[edge.tgt]
            image = [_mirror(p, a, b, geometry) for p in pts[x]]
            cy = corners[y]
            ia, ib = cx.index(edge.src), cx.index(edge.tgt)
            ja, jb = cy.index(edge.src), cy.index(edge.tgt)
            s = 1 if (ib - ia) % m == 1 else -1
            t = 1 if (jb - ja) % m == 1 else -1
            placed = [0j] * m
            for k in range(m):
                placed[(ja + t * k) % m] = image[(ia + s * k) % m]
            pts[y] = placed
            for v, p in zip(cy, placed):
                pos.setdefault(v, p)
            queue.append(y)
    return pos


def _fmt(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


class _Frame:
    def __init__(self, pos: dict, geometry: str):
        if geometry == "poincare-disk":
            self.scale = SIZE / 2 - 10
            self.cx = self.cy = 0.0
        else:
            xs = [p.real for p in pos.values()] or [0.0]
            ys = [p.imag for p in pos.values()] or [0.0]
            span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
            self.scale = (SIZE - 40) / span
            self.cx = (max(xs) + min(xs)) / 2
            self.cy = (max(ys) + min(ys)) / 2

    def xy(self, p: complex) -> tuple[float, float]:
        return (SIZE / 2 + (p.real - self.cx) * self.scale, SIZE / 2 - (p.imag - self.cy) * self.scale)

    def pt(self, p: complex) -> str:
        x, y = self.xy(p)
        return f"{_fmt(x)} {_fmt(y)}"


def _segment(frame: _Frame, a: complex, b: complex, geometry: str) -> str:
    """Path command from a (current point) to b along the geodesic."""
    if geometry == "poincare-disk":
        circle = _geodesic_circle(a, b)
        if circle is not None:
            c, r = circle
            ax, ay = frame.xy(a)
            bx, by = frame.xy(b)
            ccx, ccy = frame.xy(c)
            cross = (ax - ccx) * (by - ccy) - (ay - ccy) * (bx - ccx)
            sweep = 1 if cross > 0 else 0
            rr = _fmt(r * frame.scale)
            return f"A {rr} {rr} 0 0 {sweep} {frame.pt(b)}"
    return f"L {frame.pt(b)}"


def render_svg(patch: TilingPatch, tau: Optional[EdgeReversal] = None, style: Optional[RenderStyle] = None) -> str:
    style = style or RenderStyle.for_patch(patch)
    geometry = style.geometry
    pos = vertex_positions(patch, geometry)
    frame = _Frame(pos, geometry)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        "<defs>",
        f'<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="5" markerHeight="5" orient="auto">'
        f'<path d="M 0 0 L 10 5 L 0 10 z" fill="{PLAIN}"/></marker>',
        f'<marker id="arrow-hl" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="5" markerHeight="5" orient="auto">'
        f'<path d="M 0 0 L 10 5 L 0 10 z" fill="{style.highlight}"/></marker>',
        "</defs>",
        f'<rect width="{SIZE}" height="{SIZE}" fill="#ffffff"/>',
    ]
    if geometry == "poincare-disk":
        out.append(f'<circle cx="{SIZE // 2}" cy="{SIZE // 2}" r="{_fmt(frame.scale)}" fill="none" stroke="#999999"/>')
    for t in patch.tiles:
        cs = patch.corners(t.id)
        if None in cs or any(v not in pos for v in cs):
            continue
        pts = [pos[v] for v in cs]
        d = [f"M {frame.pt(pts[0])}"]
        for k in range(len(pts)):
            d.append(_segment(frame, pts[k], pts[(k + 1) % len(pts)], geometry))
        fill = "#e8e8e8" if style.shade_colors and t.color == -1 else "#ffffff"
        out.append(f'<path d="{" ".join(d)} Z" fill="{fill}" stroke="none"/>')
        if style.show_ids:
            c = sum(pts) / len(pts)
            x, y = frame.xy(c)
            out.append(f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="9" text-anchor="middle">{t.id}</text>')
    for e in patch.edges:
        if e.src not in pos or e.tgt not in pos:
            continue
        a, b = pos[e.src], pos[e.tgt]
        hl = tau is not None and tau[e.id] == -1
        color = style.highlight if hl else PLAIN
        marker = "arrow-hl" if hl else "arrow"
        d = f"M {frame.pt(a)} {_segment(frame, a, b, geometry)}"
        out.append(f'<path d="{d}" fill="none" stroke="{color}" stroke-width="1.2" marker-end="url(#{marker})"/>')
        if style.show_labels:
            mid = (a + b) / 2
            x, y = frame.xy(mid)
            out.append(
                f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="8" fill="#1f4e99">{patch.edge_label(e.id)}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
