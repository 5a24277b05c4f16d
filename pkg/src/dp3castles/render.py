"""Deterministic SVG drawings of castles, matchings and sector maps."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .castle import Castle
from .tiling import BLACK, SCALE, vertex_color

UNIT = 48.0  # pixels per lattice unit
MARGIN = 24.0

STYLES = {
    "edge": 'stroke="#9a9a9a" stroke-width="1"',
    "matched": 'stroke="#000000" stroke-width="4" stroke-linecap="round"',
    "contour": 'stroke="#555555" stroke-width="1.5" fill="none" stroke-dasharray="4 3"',
    "straight": 'stroke="#d62728" stroke-width="2.5" fill="none"',
    "staircase": 'stroke="#d62728" stroke-width="2.5" fill="none"',
    "zero": 'stroke="#1f77b4" stroke-width="2.5" fill="none"',
    "positive": 'fill="#f4a261" fill-opacity="0.55" stroke="none"',
    "negative": 'fill="#8ecae6" fill-opacity="0.55" stroke="none"',
    "black": 'fill="#000000" stroke="#000000" stroke-width="1"',
    "white": 'fill="#ffffff" stroke="#000000" stroke-width="1"',
}

LEGEND = (
    ("matched", "matched edge"),
    ("straight", "straight line / staircase"),
    ("zero", "zero line"),
    ("positive", "positive twistable face"),
    ("negative", "negative twistable face"),
)


def _xy(v, scaled=True) -> tuple:
    """Screen coordinates (y up flipped later) of a tiling or lattice point."""
    x, y = v
    if not scaled:
        x, y = x * SCALE, y * SCALE
    return ((x + y / 2) / SCALE * UNIT, -(y * math.sqrt(3) / 2) / SCALE * UNIT)


def _fmt(z: float) -> str:
    s = f"{z:.2f}"
    return "0.00" if s == "-0.00" else s


@dataclass
class Scene:
    """Ordered drawable primitives; each layer is sorted before output."""

    layers: dict = field(default_factory=dict)

    def add(self, layer: str, item: tuple) -> None:
        self.layers.setdefault(layer, []).append(item)

    def bounds(self):
        pts = []
        for items in self.layers.values():
            for item in items:
                pts.extend(item[1])
        if not pts:
            return 0.0, 0.0, 1.0, 1.0
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        return min(xs), min(ys), max(xs), max(ys)


_ORDER = ("positive", "negative", "edge", "contour", "straight", "staircase", "zero", "matched", "vertex")


def build_scene(c: Castle, matching=None, sectors=None, twist_faces: bool = True) -> Scene:
    scene = Scene()
    if matching is not None and twist_faces:
        from .matchings import twistable_faces

        pos, neg = twistable_faces(matching)
        for tag, faces in (("positive", pos), ("negative", neg)):
            for f in faces:
                scene.add(tag, (tag, tuple(_xy(v) for v in f.vertices)))
    matched = matching.edges if matching is not None else frozenset()
    for e in c.edges:
        a, b = sorted(e)
        scene.add("edge", ("edge", (_xy(a), _xy(b))))
        if e in matched:
            scene.add("matched", ("matched", (_xy(a), _xy(b))))
    poly = [_xy(p, scaled=False) for p in c.contour.polyline]
    scene.add("contour", ("contour", tuple(poly + poly[:1])))
    if sectors is not None:
        for kind, lines in sectors.border_polylines().items():
            for pts in lines:
                if len(set(pts)) > 1:
                    scene.add(kind, (kind, tuple(_xy(p, scaled=False) for p in pts)))
    for v in c.vertices:
        tag = "black" if vertex_color(v) == BLACK else "white"
        scene.add("vertex", (tag, (_xy(v),)))
    return scene


def _points(pts, dx, dy) -> str:
    return " ".join(f"{_fmt(x + dx)},{_fmt(y + dy)}" for x, y in pts)


def scene_to_svg(scene: Scene, title: str = "") -> str:
    x0, y0, x1, y1 = scene.bounds()
    legend_h = 18.0 * len(LEGEND) + 12.0
    width = max(x1 - x0 + 2 * MARGIN, 260.0)
    height = y1 - y0 + 2 * MARGIN + legend_h
    dx, dy = MARGIN - x0, MARGIN - y0
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append('<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>')
    for layer in _ORDER:
        items = sorted(scene.layers.get(layer, []))
        if not items:
            continue
        out.append(f'<g id="{layer}">')
        for tag, pts in items:
            style = STYLES[tag]
            if layer == "vertex":
                (x, y), = pts
                r = 3.5 if tag == "black" else 4.0
                out.append(f'<circle cx="{_fmt(x + dx)}" cy="{_fmt(y + dy)}" r="{r}" {style}/>')
            elif layer in ("positive", "negative"):
                out.append(f'<polygon points="{_points(pts, dx, dy)}" {style}/>')
            elif len(pts) == 2:
                (ax, ay), (bx, by) = pts
                out.append(
                    f'<line x1="{_fmt(ax + dx)}" y1="{_fmt(ay + dy)}" '
                    f'x2="{_fmt(bx + dx)}" y2="{_fmt(by + dy)}" {style}/>'
                )
            else:
                out.append(f'<polyline points="{_points(pts, dx, dy)}" {style}/>')
        out.append("</g>")
    ly = height - legend_h + 6.0
    out.append('<g id="legend" font-family="sans-serif" font-size="11">')
    for n, (tag, text) in enumerate(LEGEND):
        y = ly + 18.0 * n
        if tag in ("positive", "negative"):
            out.append(f'<rect x="{_fmt(MARGIN)}" y="{_fmt(y)}" width="22" height="10" {STYLES[tag]}/>')
        else:
            out.append(
                f'<line x1="{_fmt(MARGIN)}" y1="{_fmt(y + 5)}" x2="{_fmt(MARGIN + 22)}" '
                f'y2="{_fmt(y + 5)}" {STYLES[tag]}/>'
            )
        out.append(f'<text x="{_fmt(MARGIN + 30)}" y="{_fmt(y + 9)}">{escape(text)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_castle(c: Castle, matching=None, sectors=None, title: str | None = None) -> str:
    """SVG 1.1 text for a castle with optional matching and sector overlays."""
    if title is None:
        title = "castle " + " ".join(map(str, c.point))
    return scene_to_svg(build_scene(c, matching, sectors), title)
