"""Aztec Castles: the part of the dP3 tiling cut out by a contour."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .contour import Contour, SelfIntersecting, is_self_intersecting, tuple_for_point
from .tiling import BLACK, SCALE, WHITE, Face, faces_in_box, vertex_color


def on_segment(a, b, p) -> bool:
    (x1, y1), (x2, y2), (x, y) = a, b, p
    if (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1) != 0:
        return False
    return min(x1, x2) <= x <= max(x1, x2) and min(y1, y2) <= y <= max(y1, y2)


def point_in_polygon(poly, p, boundary: bool = True) -> bool:
    """Exact winding-number test; points on an edge count as inside iff ``boundary``."""
    n = len(poly)
    if n == 1:
        return boundary and tuple(p) == tuple(poly[0])
    for q in range(n):
        if on_segment(poly[q], poly[(q + 1) % n], p):
            return boundary
    x, y = p
    wn = 0
    for q in range(n):
        (x1, y1), (x2, y2) = poly[q], poly[(q + 1) % n]
        cross = (x2 - x1) * (y - y1) - (x - x1) * (y2 - y1)
        if y1 <= y < y2 and cross > 0:
            wn += 1
        elif y2 <= y < y1 and cross < 0:
            wn -= 1
    return wn != 0


@dataclass(frozen=True)
class Castle:
    point: tuple
    contour: Contour
    vertices: frozenset
    edges: frozenset  # frozenset({u, v}) pairs
    faces: tuple  # tiling faces whose four vertices lie inside or on the contour
    trimmed: bool = False
    forced: frozenset = field(default_factory=frozenset)  # dangling edges removed by trimming

    def color(self, v) -> str:
        return vertex_color(v)

    @property
    def blacks(self) -> list:
        return sorted(v for v in self.vertices if vertex_color(v) == BLACK)

    @property
    def whites(self) -> list:
        return sorted(v for v in self.vertices if vertex_color(v) == WHITE)

    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].append(b)
            adj[b].append(a)
        for v in adj:
            adj[v].sort()
        return adj

    def degrees(self) -> Counter:
        deg = Counter({v: 0 for v in self.vertices})
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def graph_faces(self) -> list:
        """Faces with at least one edge in the graph."""
        return [f for f in self.faces if any(e in self.edges for e in f.edges)]

    def full_faces(self) -> list:
        return [f for f in self.faces if all(e in self.edges for e in f.edges)]

    def to_json(self) -> str:
        doc = {
            "point": list(self.point),
            "sides": list(self.contour.sides),
            "scale": SCALE,
            "trimmed": self.trimmed,
            "vertices": [
                {"coords": list(v), "color": vertex_color(v)} for v in sorted(self.vertices)
            ],
            "edges": sorted([sorted(map(list, e)) for e in self.edges]),
            "faces": [
                {"label": f.label, "vertices": [list(v) for v in f.vertices]}
                for f in sorted(self.faces, key=lambda f: f.key)
            ],
            "forced": sorted([sorted(map(list, e)) for e in self.forced]),
        }
        return json.dumps(doc, sort_keys=True)


def window_faces(contour: Contour) -> list:
    pts = contour.polyline
    ps = [p for p, _ in pts]
    qs = [q for _, q in pts]
    return faces_in_box(min(ps) - 1, max(ps), min(qs) - 1, max(qs))


@lru_cache(maxsize=512)
def build_castle(i: int, j: int, k: int) -> Castle:
    contour = tuple_for_point(i, j, k)
    if is_self_intersecting(contour):
        raise SelfIntersecting((i, j, k))
    poly = contour.scaled_polyline
    window = window_faces(contour)
    candidates = {v for f in window for v in f.vertices}
    keep = {v for v in candidates if point_in_polygon(poly, v)}

    corners = [(x * SCALE, y * SCALE) for x, y in contour.corners]
    sides = contour.sides
    for q, length in enumerate(sides):
        if length == 0:
            continue
        # positive sides lose their black vertices, negative sides their white ones
        doomed = BLACK if length > 0 else WHITE
        a, b = corners[q], corners[q + 1]
        for v in [v for v in keep if on_segment(a, b, v)]:
            if vertex_color(v) == doomed:
                keep.discard(v)
    for q, length in enumerate(sides):
        if length == 0 and not (sides[q - 1] > 0 and sides[(q + 1) % 6] > 0):
            keep.discard(corners[q])

    edges = set()
    for f in window:
        for e in f.edges:
            if all(v in keep for v in e):
                edges.add(e)
    enclosed = tuple(
        sorted(
            {f.key: f for f in window if all(point_in_polygon(poly, v) for v in f.vertices)}.values(),
            key=lambda f: f.key,
        )
    )
    return Castle((i, j, k), contour, frozenset(keep), frozenset(edges), enclosed)


def trim_dangling(c: Castle) -> Castle:
    """Strip dangling edges (one end of degree 1) with both their endpoints, repeatedly.

    Each such edge is in every perfect matching, so it is recorded in
    ``forced`` and removed together with everything it covers.
    """
    keep = set(c.vertices)
    edges = set(c.edges)
    forced = set(c.forced)
    while True:
        deg = Counter()
        for e in edges:
            for v in e:
                deg[v] += 1
        dangling = [e for e in edges if any(deg[v] == 1 for v in e)]
        if not dangling:
            break
        for e in dangling:
            if e not in edges:
                continue
            if not all(v in keep for v in e):
                continue
            forced.add(e)
            keep.difference_update(e)
            edges = {g for g in edges if g.isdisjoint(e)}
    return Castle(c.point, c.contour, frozenset(keep), frozenset(edges), c.faces, True, frozenset(forced))


def face_partition(c: Castle) -> tuple:
    """(interior, boundary) faces of the graph: four edges present versus fewer."""
    interior, boundary = [], []
    for f in c.graph_faces():
        (interior if all(e in c.edges for e in f.edges) else boundary).append(f)
    return interior, boundary


def face_by_key(c: Castle) -> dict:
    return {f.key: f for f in c.faces}


__all__ = [
    "Castle",
    "Face",
    "SelfIntersecting",
    "build_castle",
    "face_partition",
    "point_in_polygon",
    "trim_dangling",
]
