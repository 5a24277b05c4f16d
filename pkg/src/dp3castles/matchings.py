"""Perfect matchings of castles: enumeration, weights, twists, heights.

Weights use the faces enclosed by the contour: a face contributes
x_label ** (1 - matched edges on it).  Heights compare a matching with the
minimal one; the superposition is a union of disjoint cycles and each face
collects y_label once per cycle winding around it.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from . import kernel
from .castle import Castle, SelfIntersecting, build_castle, window_faces
from .poly import LaurentPoly
from .tiling import BLACK, Face, vertex_color

DEFAULT_CAP = 200_000


class TooLarge(RuntimeError):
    """The matching count exceeds the configured cap."""


class NotTwistable(ValueError):
    """The face does not carry an alternating pair of matched edges."""


def matching_cap() -> int:
    return int(os.environ.get("DP3_MATCHING_CAP", DEFAULT_CAP))


@dataclass(frozen=True)
class Matching:
    edges: frozenset
    host: Castle = field(compare=False, hash=False, repr=False)

    @property
    def full_edges(self) -> frozenset:
        """Edges together with the forced edges the host lost to trimming."""
        return self.edges | self.host.forced

    def partner(self) -> dict:
        out = {}
        for e in self.edges:
            a, b = tuple(e)
            out[a], out[b] = b, a
        return out

    def is_perfect(self) -> bool:
        covered = [v for e in self.edges for v in e]
        return len(covered) == len(set(covered)) and set(covered) == set(self.host.vertices)


# -- index form ------------------------------------------------------------------


@dataclass(frozen=True)
class IndexedGraph:
    vertices: tuple
    edges: tuple  # sorted frozensets
    off: tuple
    nbr_v: tuple
    nbr_e: tuple

    def edge_index(self) -> dict:
        return {e: q for q, e in enumerate(self.edges)}


def _edge_sort_key(e):
    return tuple(sorted(e))


@lru_cache(maxsize=256)
def indexed(c: Castle) -> IndexedGraph:
    verts = tuple(sorted(c.vertices))
    vid = {v: q for q, v in enumerate(verts)}
    edges = tuple(sorted(c.edges, key=_edge_sort_key))
    nbrs = [[] for _ in verts]
    for q, e in enumerate(edges):
        a, b = sorted(e)
        nbrs[vid[a]].append((vid[b], q))
        nbrs[vid[b]].append((vid[a], q))
    off, nv, ne = [0], [], []
    for lst in nbrs:
        for w, q in sorted(lst):
            nv.append(w)
            ne.append(q)
        off.append(len(nv))
    return IndexedGraph(verts, edges, tuple(off), tuple(nv), tuple(ne))


def _run(c: Castle, mode, vecs=(), dim=0, limit=0, backend=None):
    g = indexed(c)
    return kernel.search(len(g.vertices), g.off, g.nbr_v, g.nbr_e, vecs, dim, mode, limit, backend)


def count_matchings(c: Castle, backend=None, limit: int = 0) -> int:
    """Number of perfect matchings; with ``limit`` the search stops once it reaches it."""
    return _run(c, kernel.MODE_COUNT, limit=limit, backend=backend)[0]


def enumerate_matchings(c: Castle, cap: int | None = None, backend=None) -> list:
    cap = matching_cap() if cap is None else cap
    count, found, _ = _run(c, kernel.MODE_COLLECT, limit=cap + 1, backend=backend)
    if count > cap:
        raise TooLarge(f"castle {c.point} has more than {cap} perfect matchings")
    g = indexed(c)
    out = [Matching(frozenset(g.edges[q] for q in idx), c) for idx in found]
    out.sort(key=lambda m: sorted(_edge_sort_key(e) for e in m.edges))
    return out


def first_matching(c: Castle) -> Matching | None:
    count, found, _ = _run(c, kernel.MODE_COLLECT, limit=1)
    if not count:
        return None
    g = indexed(c)
    return Matching(frozenset(g.edges[q] for q in found[0]), c)


def permanent_count(c: Castle) -> int:
    """Matching count as the permanent of the biadjacency matrix.

    Rows (white vertices) are expanded in coordinate order with memoisation on
    the set of black columns already used, restricted to columns some later
    row can still see.  Independent of the backtracking search.
    """
    whites = sorted(v for v in c.vertices if vertex_color(v) != BLACK)
    blacks = sorted(v for v in c.vertices if vertex_color(v) == BLACK)
    if len(whites) != len(blacks):
        return 0
    col = {b: q for q, b in enumerate(blacks)}
    adj = c.adjacency()
    rows = [[col[b] for b in adj[w]] for w in whites]
    n = len(rows)
    last_row = [-1] * len(blacks)
    for r, cols in enumerate(rows):
        for q in cols:
            last_row[q] = r
    if any(r < 0 for r in last_row):
        return 0
    # columns whose last chance has passed must already be used
    closing = [[] for _ in range(n)]
    for q, r in enumerate(last_row):
        closing[r].append(q)

    memo: dict = {}

    def perm(r: int, used: int) -> int:
        if r == n:
            return 1
        key = (r, used)
        if key in memo:
            return memo[key]
        total = 0
        for q in rows[r]:
            bit = 1 << q
            if used & bit:
                continue
            nxt = used | bit
            if all(nxt >> cq & 1 for cq in closing[r]):
                # drop finished columns so equal frontiers share a memo entry
                mask = nxt
                for cq in closing[r]:
                    mask &= ~(1 << cq)
                total += perm(r + 1, mask)
        memo[key] = total
        return total

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 2 * n + 1000))
    try:
        return perm(0, 0)
    finally:
        sys.setrecursionlimit(old)


# -- weights -----------------------------------------------------------------------


def _x(label: int, power: int) -> LaurentPoly:
    return LaurentPoly.var(f"x{label}", power)


def weight(m: Matching) -> LaurentPoly:
    edges = m.full_edges
    exps = [0] * 12
    for f in m.host.faces:
        exps[f.label - 1] += 1 - sum(1 for e in f.edges if e in edges)
    return LaurentPoly.monomial(tuple(exps))


def _face_edge_counts(c: Castle) -> dict:
    """edge -> per-label count of enclosed faces containing it."""
    out = {}
    for f in c.faces:
        for e in f.edges:
            out.setdefault(e, [0] * 6)[f.label - 1] += 1
    return out


def _base_x(c: Castle) -> list:
    base = [0] * 6
    for f in c.faces:
        base[f.label - 1] += 1
    counts = _face_edge_counts(c)
    for e in c.forced:
        for L, n in enumerate(counts.get(e, [0] * 6)):
            base[L] -= n
    return base


def weighted_sum(c: Castle, backend=None) -> LaurentPoly:
    """Sum of weights over all perfect matchings, accumulated inside the kernel."""
    if c is None:
        raise SelfIntersecting("no castle")
    g = indexed(c)
    counts = _face_edge_counts(c)
    vecs = []
    for e in g.edges:
        vecs.extend(-n for n in counts.get(e, [0] * 6))
    _, _, tally = _run(c, kernel.MODE_TALLY, vecs, 6, backend=backend)
    base = _base_x(c)
    terms = {}
    for key, n in tally.items():
        mono = tuple(b + k for b, k in zip(base, key)) + (0,) * 6
        terms[mono] = terms.get(mono, 0) + n
    return LaurentPoly(terms)


# -- twists ------------------------------------------------------------------------


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def face_orientation(f: Face, matched: list) -> int:
    """+1 if the matched edges, read black to white, run counterclockwise around f."""
    cx, cy = f.centroid4
    total = 0
    for e in matched:
        a, b = tuple(e)
        black, white = (a, b) if vertex_color(a) == BLACK else (b, a)
        cr = _cross((cx, cy), (4 * black[0], 4 * black[1]), (4 * white[0], 4 * white[1]))
        total += 1 if cr > 0 else -1
    if abs(total) != len(matched):  # pragma: no cover - geometry guarantees agreement
        raise AssertionError("inconsistent face orientation")
    return 1 if total > 0 else -1


def twistable_faces(m: Matching) -> tuple:
    """(positive, negative) faces: full quadrilaterals carrying two matched edges."""
    edges = m.edges
    pos, neg = [], []
    for f in m.host.full_faces():
        matched = [e for e in f.edges if e in edges]
        if len(matched) == 2:
            (pos if face_orientation(f, matched) > 0 else neg).append(f)
    return pos, neg


def twist(m: Matching, f: Face) -> Matching:
    fe = set(f.edges)
    if not fe <= m.host.edges:
        raise NotTwistable(f"face {f.key} is not a full face of the castle")
    matched = fe & m.edges
    if len(matched) != 2:
        raise NotTwistable(f"face {f.key} has {len(matched)} matched edges")
    return Matching(frozenset(m.edges ^ fe), m.host)


def minimal_matching_descent(c: Castle) -> Matching:
    """Start anywhere and twist positive faces down until none is left."""
    m = first_matching(c)
    if m is None:
        raise ValueError(f"castle {c.point} has no perfect matching")
    while True:
        pos, _ = twistable_faces(m)
        if not pos:
            return m
        m = twist(m, pos[0])


@dataclass(frozen=True)
class TwistLattice:
    nodes: tuple  # Matching
    covers: tuple  # (upper index, lower index): lower = upper twisted down once
    minimum: int
    maximum: int

    def ranks(self) -> list:
        """Distance from the minimum along cover edges (breadth first)."""
        up = [[] for _ in self.nodes]
        for hi, lo in self.covers:
            up[lo].append(hi)
        rank = [None] * len(self.nodes)
        rank[self.minimum] = 0
        queue = deque([self.minimum])
        while queue:
            v = queue.popleft()
            for w in up[v]:
                if rank[w] is None:
                    rank[w] = rank[v] + 1
                    queue.append(w)
        return rank

    def to_dot(self) -> str:
        ranks = self.ranks()
        lines = ["digraph twist_lattice {", "  rankdir=BT;"]
        for q, r in enumerate(ranks):
            shape = "doublecircle" if q in (self.minimum, self.maximum) else "circle"
            lines.append(f'  n{q} [label="{q}\\nrank {r}", shape={shape}];')
        for hi, lo in sorted(self.covers):
            lines.append(f"  n{lo} -> n{hi};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def twist_lattice(c: Castle, cap: int | None = None) -> TwistLattice:
    nodes = enumerate_matchings(c, cap)
    index = {m.edges: q for q, m in enumerate(nodes)}
    covers = []
    mins, maxs = [], []
    for q, m in enumerate(nodes):
        pos, neg = twistable_faces(m)
        if not pos:
            mins.append(q)
        if not neg:
            maxs.append(q)
        for f in pos:
            covers.append((q, index[twist(m, f).edges]))
    if len(mins) != 1 or len(maxs) != 1:
        raise AssertionError(f"lattice of {c.point}: {len(mins)} minima, {len(maxs)} maxima")
    return TwistLattice(tuple(nodes), tuple(covers), mins[0], maxs[0])


def minimal_matching_bruteforce(c: Castle, cap: int | None = None) -> Matching:
    """The unique matching with no positive twistable face, found by exhaustion."""
    found = [m for m in enumerate_matchings(c, cap) if not twistable_faces(m)[0]]
    if len(found) != 1:
        raise AssertionError(f"{len(found)} matchings without positive faces at {c.point}")
    return found[0]


# -- heights -----------------------------------------------------------------------


def _signed_winding(poly, p) -> int:
    x, y = p
    wn = 0
    n = len(poly)
    for q in range(n):
        (x1, y1), (x2, y2) = poly[q], poly[(q + 1) % n]
        cross = (x2 - x1) * (y - y1) - (x - x1) * (y2 - y1)
        if y1 <= y < y2 and cross > 0:
            wn += 1
        elif y2 <= y < y1 and cross < 0:
            wn -= 1
    return wn


def superposition_cycles(m: Matching, m_min: Matching) -> list:
    """Cycles of the symmetric difference, each oriented black -m-> white -m_min-> black."""
    a_edges, b_edges = m.full_edges, m_min.full_edges
    diff_a = a_edges - b_edges
    diff_b = b_edges - a_edges
    via_a, via_b = {}, {}
    for e in diff_a:
        u, v = tuple(e)
        via_a[u], via_a[v] = v, u
    for e in diff_b:
        u, v = tuple(e)
        via_b[u], via_b[v] = v, u
    if set(via_a) != set(via_b):  # pragma: no cover - both are perfect matchings
        raise AssertionError("superposition is not a union of cycles")
    seen = set()
    cycles = []
    for start in sorted(v for v in via_a if vertex_color(v) == BLACK):
        if start in seen:
            continue
        cyc = []
        v = start
        while True:
            seen.add(v)
            cyc.append(v)
            w = via_a[v]
            seen.add(w)
            cyc.append(w)
            v = via_b[w]
            if v == start:
                break
            if v in seen:  # pragma: no cover
                raise AssertionError("superposition cycles are not disjoint")
        cycles.append(tuple(cyc))
    return cycles


def face_heights(m: Matching, m_min: Matching) -> dict:
    """Face key -> number of superposition cycles winding around it."""
    cycles = superposition_cycles(m, m_min)
    heights = {}
    for f in m.host.faces:
        p = f.centroid4
        h = 0
        for cyc in cycles:
            h += _signed_winding([(4 * x, 4 * y) for x, y in cyc], p)
        if h:
            heights[f.key] = h
    return heights


def height_monomial(m: Matching, m_min: Matching) -> LaurentPoly:
    exps = [0] * 12
    labels = {f.key: f.label for f in m.host.faces}
    for key, h in face_heights(m, m_min).items():
        if h < 0:
            raise AssertionError("negative height: the reference is not the minimum")
        exps[6 + labels[key] - 1] += h
    return LaurentPoly.monomial(tuple(exps))


def _height_coefficients(c: Castle) -> dict:
    """edge -> per-label y coefficient of the linear height functional.

    Faces outside the contour have height zero.  Walking from them to an
    enclosed face, each crossing of an edge directed black -> white with the new
    face on its left adds the edge's flow ([e in m] - [e in m_min]).  Summing
    along a breadth-first tree gives the height as a linear form in the edges.
    """
    window = window_faces(c.contour)
    enclosed = {f.key for f in c.faces}
    by_edge = {}
    for f in window:
        for e in f.edges:
            by_edge.setdefault(e, []).append(f)
    parent = {}
    queue = deque()
    for f in window:
        if f.key not in enclosed:
            parent[f.key] = None
            queue.append(f)
    while queue:
        f = queue.popleft()
        for e in f.edges:
            for g in by_edge.get(e, ()):
                if g.key not in parent:
                    parent[g.key] = (f, e)
                    queue.append(g)
    coef = {}
    castle_edges = c.edges | c.forced
    for f in c.faces:
        node = f
        while parent[node.key] is not None:
            prev, e = parent[node.key]
            if e in castle_edges:
                a, b = tuple(e)
                black, white = (a, b) if vertex_color(a) == BLACK else (b, a)
                b4, w4 = (4 * black[0], 4 * black[1]), (4 * white[0], 4 * white[1])
                s = 1 if _cross(b4, w4, node.centroid4) > 0 else -1
                row = coef.setdefault(e, [0] * 6)
                row[f.label - 1] += s
            node = prev
    return coef


def weighted_sum_framed(c: Castle, m_min: Matching | None = None, backend=None) -> LaurentPoly:
    """Sum of wt(m) * ht(m) over all perfect matchings."""
    if m_min is None:
        m_min = minimal_matching_descent(c)
    g = indexed(c)
    xcount = _face_edge_counts(c)
    ycoef = _height_coefficients(c)
    zero = [0] * 6
    vecs = []
    for e in g.edges:
        vecs.extend(-n for n in xcount.get(e, zero))
        vecs.extend(ycoef.get(e, zero))
    base = _base_x(c) + [0] * 6
    for e in c.forced:
        for L, s in enumerate(ycoef.get(e, zero)):
            base[6 + L] += s
    for e in m_min.full_edges:
        for L, s in enumerate(ycoef.get(e, zero)):
            base[6 + L] -= s
    _, _, tally = _run(c, kernel.MODE_TALLY, vecs, 12, backend=backend)
    terms = {}
    for key, n in tally.items():
        mono = tuple(b + k for b, k in zip(base, key))
        if any(mono[6 + L] < 0 for L in range(6)):
            raise AssertionError("negative height: the reference is not the minimum")
        terms[mono] = terms.get(mono, 0) + n
    return LaurentPoly(terms)


def castle_at(i: int, j: int, k: int) -> Castle:
    return build_castle(i, j, k)
