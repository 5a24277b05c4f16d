"""The dP3 brane tiling on an exact integer grid.

Coordinates are integers in the skew basis u = (1, 0), v = (1/2, sqrt(3)/2)
scaled by ``SCALE``; a lattice step (two long edges) is ``SCALE`` units.

* H vertices sit on lattice points (hexagon centers, white, degree 6).
* Q vertices sit on lattice edge midpoints (black, degree 4).
* T vertices sit on triangle centroids (white, degree 3).

Every face is a kite H-Q-T-Q, one per (triangle, corner) pair, so a fundamental
domain holds six faces.  Up triangles have corners H, H+u, H+v and down
triangles H+u, H+v, H+u+v; the face class records the triangle type and the
corner index.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

SCALE = 6
PERIODS = ((SCALE, 0), (0, SCALE))

BLACK, WHITE = "black", "white"

CLASS_LABEL = {"U0": 5, "U1": 4, "U2": 1, "D0": 2, "D1": 3, "D2": 6}
LABEL_CLASS = {v: k for k, v in CLASS_LABEL.items()}


class NotOnLattice(ValueError):
    """A coordinate does not lie on the tiling grid."""


def vertex_kind(v) -> str | None:
    x, y = v
    if x % SCALE == 0 and y % SCALE == 0:
        return "H"
    if x % 3 == 0 and y % 3 == 0:
        return "Q"
    rx, ry = x % SCALE, y % SCALE
    if (rx, ry) in ((2, 2), (4, 4)):
        return "T"
    return None


def vertex_color(v) -> str:
    kind = vertex_kind(v)
    if kind is None:
        raise NotOnLattice(v)
    return BLACK if kind == "Q" else WHITE


def cartesian(v) -> tuple:
    x, y = v
    return ((x + y / 2) / SCALE, (y * math.sqrt(3) / 2) / SCALE)


@dataclass(frozen=True)
class Face:
    cls: str
    corner: tuple  # H vertex at the kite tip
    mid1: tuple
    center: tuple  # T vertex
    mid2: tuple

    @property
    def label(self) -> int:
        return CLASS_LABEL[self.cls]

    @property
    def vertices(self) -> tuple:
        return (self.corner, self.mid1, self.center, self.mid2)

    @property
    def edges(self) -> tuple:
        a, b, c, d = self.vertices
        return (
            frozenset((a, b)),
            frozenset((b, c)),
            frozenset((c, d)),
            frozenset((d, a)),
        )

    @property
    def centroid4(self) -> tuple:
        """Four times the vertex average; exact integer point strictly inside."""
        return (sum(p[0] for p in self.vertices), sum(p[1] for p in self.vertices))

    @property
    def key(self) -> tuple:
        return self.centroid4


def triangle_faces(h) -> list:
    """The six faces of the up and down triangles anchored at lattice point h."""
    x, y = h
    s = SCALE
    out = []
    for kind, corners, center in (
        ("U", ((x, y), (x + s, y), (x, y + s)), (x + 2, y + 2)),
        ("D", ((x + s, y), (x, y + s), (x + s, y + s)), (x + 4, y + 4)),
    ):
        for idx in range(3):
            p = corners[idx]
            q1, q2 = corners[(idx + 1) % 3], corners[(idx + 2) % 3]
            m1 = ((p[0] + q1[0]) // 2, (p[1] + q1[1]) // 2)
            m2 = ((p[0] + q2[0]) // 2, (p[1] + q2[1]) // 2)
            out.append(Face(kind + str(idx), p, m1, center, m2))
    return out


def faces_in_box(pmin: int, pmax: int, qmin: int, qmax: int) -> list:
    """All faces of triangles anchored at lattice points in the given index box."""
    out = []
    for p in range(pmin, pmax + 1):
        for q in range(qmin, qmax + 1):
            out.extend(triangle_faces((p * SCALE, q * SCALE)))
    return out


def edge_length_tag(e) -> str:
    kinds = {vertex_kind(v) for v in e}
    return "long" if "H" in kinds else "short"


@dataclass(frozen=True)
class TilingAtlas:
    faces: tuple
    vertices: tuple  # (kind, color, coords)
    edges: tuple  # (endpoint, endpoint, tag)
    periods: tuple = PERIODS

    def to_json(self) -> str:
        doc = {
            "scale": SCALE,
            "periods": [list(p) for p in self.periods],
            "faces": [
                {"label": f.label, "class": f.cls, "vertices": [list(v) for v in f.vertices]}
                for f in self.faces
            ],
            "vertices": [
                {"kind": k, "color": c, "coords": list(v)} for k, c, v in self.vertices
            ],
            "edges": [{"ends": [list(a), list(b)], "tag": t} for a, b, t in self.edges],
        }
        return json.dumps(doc, sort_keys=True)


def _reduce(v) -> tuple:
    return (v[0] % SCALE, v[1] % SCALE)


def build_atlas() -> TilingAtlas:
    faces = tuple(sorted(triangle_faces((0, 0)), key=lambda f: f.label))
    verts = {}
    edges = {}
    for f in faces:
        for v in f.vertices:
            r = _reduce(v)
            verts[r] = (vertex_kind(r), vertex_color(r), r)
        for e in f.edges:
            a, b = sorted(e)
            # canonical representative: translate so the white end is in the base cell
            w = a if vertex_color(a) == WHITE else b
            shift = (w[0] - _reduce(w)[0], w[1] - _reduce(w)[1])
            a2 = (a[0] - shift[0], a[1] - shift[1])
            b2 = (b[0] - shift[0], b[1] - shift[1])
            key = tuple(sorted((a2, b2)))
            edges[key] = (key[0], key[1], edge_length_tag(e))
    return TilingAtlas(
        faces, tuple(sorted(verts.values(), key=lambda t: t[2])), tuple(sorted(edges.values()))
    )


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def edge_arrow(e, f1: Face, f2: Face) -> tuple:
    """Orient the dual arrow across edge e: it runs so the black end is on its left.

    Returns (source face, target face).  The skew basis has positive
    orientation, so cross products in grid coordinates have the true sign.
    """
    a, b = tuple(e)
    black = a if vertex_color(a) == BLACK else b
    c1, c2 = f1.centroid4, f2.centroid4
    scaled_black = (4 * black[0], 4 * black[1])
    return (f1, f2) if _cross(c1, c2, scaled_black) > 0 else (f2, f1)


def dual_quiver(atlas: TilingAtlas | None = None):
    """One arrow per edge of the fundamental domain, between the labels it separates."""
    from collections import Counter

    from .quiver import N_MUTABLE, Quiver

    atlas = atlas or build_atlas()
    around = faces_in_box(-1, 1, -1, 1)
    by_edge = {}
    for f in around:
        for e in f.edges:
            by_edge.setdefault(e, []).append(f)
    arrows = Counter()
    for a, b, _tag in atlas.edges:
        f1, f2 = by_edge[frozenset((a, b))]
        src, dst = edge_arrow(frozenset((a, b)), f1, f2)
        arrows[(src.label, dst.label)] += 1
    return Quiver.from_counter(N_MUTABLE, 0, arrows)


def locate(pos) -> tuple:
    """Classify an exact grid point.

    Returns ("vertex", kind, color) for tiling vertices, and ("face", label,
    class) for points strictly inside a face.  Lattice points are the hexagon
    centers where contours start.
    """
    x, y = pos
    if vertex_kind(pos) is not None:
        kind = vertex_kind(pos)
        return ("vertex", kind, vertex_color(pos))
    p, q = x // SCALE, y // SCALE
    for f in triangle_faces((p * SCALE, q * SCALE)):
        if _strictly_inside_quad(f, pos):
            return ("face", f.label, f.cls)
    raise NotOnLattice(pos)


def _strictly_inside_quad(f: Face, pos) -> bool:
    vs = f.vertices
    signs = [_cross(vs[i], vs[(i + 1) % 4], pos) for i in range(4)]
    return all(s > 0 for s in signs) or all(s < 0 for s in signs)


def is_hexagon_center(pos) -> bool:
    return vertex_kind(pos) == "H"
