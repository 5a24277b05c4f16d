"""Direct construction of the minimal perfect matching of a castle.

The castle is cut into four sectors by two straight lines, two staircases and
a zero line.  Each sector is covered by the universal covering of a contour
side it touches, and the vertices on the borders follow local rules.  The
result is checked to be a perfect matching; anything else raises
:class:`ConstructionGap`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .castle import Castle, build_castle, point_in_polygon
from .contour import (
    DIRECTIONS,
    REGION_TESTS,
    SIDE_NAMES,
    Contour,
    SelfIntersecting,
    is_self_intersecting,
    sign_changes,
)
from .matchings import Matching
from .tiling import SCALE, faces_in_box

# (side, sign) -> three edge classes; an edge class is the pair of face labels it separates
COVERINGS = {
    ("a", 1): ((1, 4), (2, 5), (3, 6)),
    ("a", -1): ((1, 5), (2, 4), (3, 6)),
    ("b", 1): ((1, 4), (2, 6), (3, 5)),
    ("b", -1): ((1, 4), (2, 5), (3, 6)),
    ("c", 1): ((1, 3), (2, 6), (4, 5)),
    ("c", -1): ((1, 4), (2, 6), (3, 5)),
    ("d", 1): ((1, 6), (2, 3), (4, 5)),
    ("d", -1): ((1, 3), (2, 6), (4, 5)),
    ("e", 1): ((1, 5), (2, 3), (4, 6)),
    ("e", -1): ((1, 6), (2, 3), (4, 5)),
    ("f", 1): ((1, 5), (2, 4), (3, 6)),
    ("f", -1): ((1, 5), (2, 3), (4, 6)),
}

# sign patterns with the two sides parallel to the zero line; rotations rotate both
_HAT_PATTERNS = (
    ((1, -1, 1, 1, -1, 1), 2),
    ((-1, 1, -1, -1, 1, -1), 0),
    ((1, 1, -1, -1, 1, -1), 0),
    ((-1, -1, 1, 1, -1, 1), 1),
    ((1, 1, 1, -1, 1, -1), 0),
    ((-1, -1, -1, 1, -1, 1), 2),
)


class ConstructionGap(RuntimeError):
    """The construction left a vertex uncovered or covered it twice."""


def covering(side: int, sign: int) -> frozenset:
    return frozenset(COVERINGS[(SIDE_NAMES[side], 1 if sign > 0 else -1)])


def check_covering_table() -> None:
    """A positive side and the following negative side share one covering."""
    for q in range(6):
        if covering(q, 1) != covering((q + 1) % 6, -1):
            raise AssertionError(f"covering table breaks at side {SIDE_NAMES[q]}")
        cls = [x for pair in COVERINGS[(SIDE_NAMES[q], 1)] for x in pair]
        if sorted(cls) != [1, 2, 3, 4, 5, 6]:
            raise AssertionError(f"covering of {SIDE_NAMES[q]}+ is not a perfect matching of labels")


check_covering_table()


def zero_axis(signs) -> int:
    """Index in {0, 1, 2} of the opposite pair of sides parallel to the zero line."""
    signs = tuple(signs)
    for pattern, axis in _HAT_PATTERNS:
        for r in range(6):
            if pattern[r:] + pattern[:r] == signs:
                # rotating left by r moves side q to position q - r
                return (axis - r) % 3
    raise ValueError(f"{signs} is not a four-change sign pattern")


# -- edge classes ----------------------------------------------------------------


def _reduce_edge(e) -> frozenset:
    a, b = sorted(e)
    dx, dy = (a[0] // SCALE) * SCALE, (a[1] // SCALE) * SCALE
    return frozenset(((a[0] - dx, a[1] - dy), (b[0] - dx, b[1] - dy)))


@lru_cache(maxsize=1)
def _class_table() -> dict:
    seen: dict = {}
    for f in faces_in_box(-2, 2, -2, 2):
        for e in f.edges:
            seen.setdefault(_reduce_edge(e), set()).add(f.label)
    return {e: tuple(sorted(labels)) for e, labels in seen.items() if len(labels) == 2}


def edge_class(e) -> tuple:
    """Sorted pair of labels of the two faces meeting along ``e``."""
    return _class_table()[_reduce_edge(e)]


# -- borders -----------------------------------------------------------------------


def _add(p, d, n=1):
    return (p[0] + n * d[0], p[1] + n * d[1])


def _units(a, b) -> list:
    """Unit lattice segments of the straight segment a -> b."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    n = max(abs(dx), abs(dy))
    if n == 0:
        return []
    ux, uy = dx // n, dy // n
    if (ux * n, uy * n) != (dx, dy) or (ux, uy) not in _UNIT_DIRS:
        raise ValueError(f"{a} -> {b} is not along a lattice direction")
    return [(_add(a, (ux, uy), q), _add(a, (ux, uy), q + 1)) for q in range(n)]


_UNIT_DIRS = {d for d in DIRECTIONS.values()} | {(-x, -y) for x, y in DIRECTIONS.values()}


def _on_ray(p, corner, d) -> int | None:
    """Distance t >= 0 with p = corner + t*d, or None."""
    dx, dy = p[0] - corner[0], p[1] - corner[1]
    t = dx // d[0] if d[0] else dy // d[1]
    if t < 0 or _add(corner, d, t) != p:
        return None
    return t


@dataclass(frozen=True)
class Staircase:
    corner: int  # border corner index q, between side q and side q+1
    negative_side: int
    positive_side: int
    points: tuple  # lattice points, points[0] is the contour corner
    kinds: tuple  # "base" or "side", one per step

    @property
    def end(self):
        return self.points[-1]

    def ends_with_base(self) -> bool:
        # an empty staircase counts as ending with a base step
        return not self.kinds or self.kinds[-1] == "base"


@dataclass(frozen=True)
class StraightLine:
    corner: int
    first_side: int
    second_side: int
    start: tuple  # contour corner
    direction: tuple
    end: tuple  # landing point on a staircase end

    @property
    def positive(self) -> bool:
        return self.direction == tuple(-x for x in DIRECTIONS[SIDE_NAMES[self.second_side]])


@dataclass(frozen=True)
class SectorMap:
    contour: Contour
    signs: tuple
    axis: int  # zero line parallel to sides axis and axis+3
    lines: tuple  # two StraightLine
    staircases: tuple  # two Staircase
    zero_line: tuple  # (start, end) lattice points, the staircase ends
    groups: tuple  # per sector: the contour sides it is incident to
    triangle_sector: dict = field(repr=False, compare=False)

    @property
    def zero_parallel(self) -> bool:
        """Whether the zero line runs along the sides singled out by the sign pattern."""
        (x1, y1), (x2, y2) = self.zero_line
        dx, dy = DIRECTIONS[SIDE_NAMES[self.axis]]
        return (x2 - x1) * dy - (y2 - y1) * dx == 0

    def sector_of_side(self, side: int) -> int:
        for g, sides in enumerate(self.groups):
            if side in sides:
                return g
        raise KeyError(side)

    def covering_of(self, sector: int) -> frozenset:
        side = self.groups[sector][0]
        return covering(side, self.signs[side])

    def border_polylines(self) -> dict:
        """Lattice polylines of every border, keyed by kind."""
        return {
            "straight": [(ln.start, ln.end) for ln in self.lines],
            "staircase": [s.points for s in self.staircases],
            "zero": [self.zero_line],
        }


def _staircase(contour: Contour, q: int, axis: int, rays) -> Staircase:
    """Alternate base and side steps from corner q.

    The walk takes as many steps as the adjacent side parallel to the zero line
    is long, and stops early on reaching a straight line.
    """
    s, n = q, (q + 1) % 6
    if s % 3 == axis:
        length = contour.sides[s]
    elif n % 3 == axis:
        length = contour.sides[n]
    else:
        raise ConstructionGap(f"staircase at corner {q} touches no side parallel to the zero line")
    base = DIRECTIONS[SIDE_NAMES[n]]
    side = DIRECTIONS[SIDE_NAMES[s]]
    pts = [contour.corners[q + 1]]
    kinds = []
    for step in range(abs(length)):
        kind = "base" if step % 2 == 0 else "side"
        pts.append(_add(pts[-1], base if kind == "base" else side))
        kinds.append(kind)
        if any(_on_ray(pts[-1], r[3], r[4]) is not None for r in rays):
            break
    return Staircase(q, s, n, tuple(pts), tuple(kinds))


def _triangles(poly_scaled, corners) -> list:
    xs = [p[0] for p in corners]
    ys = [p[1] for p in corners]
    out = []
    for x in range(min(xs) - 1, max(xs) + 1):
        for y in range(min(ys) - 1, max(ys) + 1):
            for tri in (((x, y), (x + 1, y), (x, y + 1)), ((x + 1, y), (x, y + 1), (x + 1, y + 1))):
                cen = (sum(p[0] for p in tri) * SCALE // 3, sum(p[1] for p in tri) * SCALE // 3)
                if point_in_polygon(poly_scaled, cen, boundary=False):
                    out.append(tri)
    return out


def sign_completions(contour: Contour) -> list:
    """Every four-change sign choice for the zero sides, the contour's own choice first."""
    sides = contour.sides
    zeros = [q for q in range(6) if sides[q] == 0]
    out = [tuple(contour.signs)]
    for combo in product((1, -1), repeat=len(zeros)):
        sg = [1 if x > 0 else -1 for x in sides]
        for q, v in zip(zeros, combo):
            sg[q] = v
        sg = tuple(sg)
        if sg not in out and sign_changes(sg) == 4:
            out.append(sg)
    return out


@dataclass(frozen=True)
class Borders:
    """Straight lines, staircases and zero line, without the sectors they cut out."""

    signs: tuple
    axis: int
    lines: tuple
    staircases: tuple
    zero_line: tuple


def borders(contour: Contour, signs=None) -> Borders:
    if is_self_intersecting(contour):
        raise SelfIntersecting(contour.point)
    signs = tuple(contour.signs if signs is None else signs)
    axis = zero_axis(signs)
    P = contour.corners

    stair_corners, rays = [], []
    for q in range(6):
        s, n = q, (q + 1) % 6
        a, b = signs[s], signs[n]
        if a < 0 < b:
            stair_corners.append(q)
        elif a > 0 and b > 0:
            d = DIRECTIONS[SIDE_NAMES[n]]
            rays.append((q, s, n, P[q + 1], (-d[0], -d[1])))
        elif a < 0 and b < 0:
            d = DIRECTIONS[SIDE_NAMES[s]]
            rays.append((q, s, n, P[q + 1], (-d[0], -d[1])))
    stairs = [_staircase(contour, q, axis, rays) for q in stair_corners]
    if len(stairs) != 2 or len(rays) != 2:
        raise ConstructionGap(f"expected two staircases and two straight lines for {contour.sides}")

    # pair each straight line with the staircase end it runs into
    lines = None
    for order in ((0, 1), (1, 0)):
        hits = [_on_ray(stairs[order[r]].end, rays[r][3], rays[r][4]) for r in range(2)]
        if all(t is not None for t in hits):
            lines = tuple(
                StraightLine(q, s, n, c, d, stairs[order[r]].end)
                for r, (q, s, n, c, d) in enumerate(rays)
            )
            break
    if lines is None:
        raise ConstructionGap(f"staircase ends miss the straight lines for {contour.sides}")
    e1, e2 = stairs[0].end, stairs[1].end
    try:
        _units(e1, e2)
    except ValueError:
        raise ConstructionGap(f"staircase ends {e1}, {e2} are not joined by a lattice line") from None
    return Borders(signs, axis, lines, tuple(stairs), (e1, e2))


def sector_division(contour: Contour, signs=None) -> SectorMap:
    b = borders(contour, signs)
    signs, axis, lines, stairs = b.signs, b.axis, b.lines, b.staircases
    (e1, e2), P = b.zero_line, contour.corners

    # sides grouped between consecutive border corners
    border_corners = sorted([st.corner for st in stairs] + [ln.corner for ln in lines])
    groups = []
    for idx, q in enumerate(border_corners):
        nxt = border_corners[(idx + 1) % 4]
        sides, x = [], (q + 1) % 6
        while True:
            sides.append(x)
            if x == nxt:
                break
            x = (x + 1) % 6
        groups.append(tuple(sides))
    for sides in groups:
        covs = {covering(x, signs[x]) for x in sides}
        if len(covs) != 1:
            raise AssertionError(f"sides {sides} of one sector disagree on their covering")

    border = set()
    for st in stairs:
        border.update(frozenset(u) for u in zip(st.points, st.points[1:]))
    for ln in lines:
        border.update(frozenset(u) for u in _units(ln.start, ln.end))
    border.update(frozenset(u) for u in _units(e1, e2))

    poly = contour.scaled_polyline
    tris = _triangles(poly, P)
    by_edge: dict = {}
    for tri in tris:
        for r in range(3):
            by_edge.setdefault(frozenset((tri[r], tri[(r + 1) % 3])), []).append(tri)
    comp: dict = {}
    ncomp = 0
    for tri in tris:
        if tri in comp:
            continue
        comp[tri] = ncomp
        stack = [tri]
        while stack:
            t = stack.pop()
            for r in range(3):
                e = frozenset((t[r], t[(r + 1) % 3]))
                if e in border:
                    continue
                for u in by_edge[e]:
                    if u not in comp:
                        comp[u] = ncomp
                        stack.append(u)
        ncomp += 1

    # a component's sector: the group of any contour side it touches, first stair steps excepted
    first_steps = {frozenset(st.points[:2]) for st in stairs if len(st.points) > 1}
    comp_group: dict = {}
    for q in range(6):
        for u in _units(P[q], P[q + 1]):
            key = frozenset(u)
            if key in first_steps:
                continue
            g = next(gi for gi, sides in enumerate(groups) if q in sides)
            for t in by_edge.get(key, []):
                old = comp_group.setdefault(comp[t], g)
                if old != g:
                    raise ConstructionGap(f"a sector touches sides of two groups in {contour.sides}")
    missing = [cid for cid in range(ncomp) if cid not in comp_group]
    free = [g for g in range(len(groups)) if g not in comp_group.values()]
    if len(missing) == 1 and len(free) == 1:
        # a sector bounded only by zero-length sides and a first stair step
        comp_group[missing[0]] = free[0]
    elif missing:
        raise ConstructionGap(f"a sector of {contour.sides} touches no contour side")
    tri_sector = {t: comp_group[c] for t, c in comp.items()}
    return SectorMap(
        contour, tuple(signs), axis, lines, tuple(stairs), (e1, e2), tuple(groups), tri_sector
    )


# -- vertex roles ------------------------------------------------------------------------


def _triangle_points(tri) -> set:
    pts = [_lattice(p) for p in tri]
    out = set(pts)
    for r in range(3):
        (x1, y1), (x2, y2) = pts[r], pts[(r + 1) % 3]
        out.add(((x1 + x2) // 2, (y1 + y2) // 2))
    out.add((sum(p[0] for p in pts) // 3, sum(p[1] for p in pts) // 3))
    return out


def _vertex_triangles(v) -> list:
    """Lattice triangles (in lattice units) whose closure holds the tiling vertex v."""
    bx, by = v[0] // SCALE, v[1] // SCALE
    out = []
    for x in range(bx - 1, bx + 2):
        for y in range(by - 1, by + 2):
            for tri in (((x, y), (x + 1, y), (x, y + 1)), ((x + 1, y), (x, y + 1), (x + 1, y + 1))):
                if v in _triangle_points(tri):
                    out.append(tri)
    return out


def _canon(tri) -> tuple:
    return tuple(sorted(tri))


def _step_midpoint(a, b):
    return ((a[0] + b[0]) * SCALE // 2, (a[1] + b[1]) * SCALE // 2)


def _lattice(p):
    return (p[0] * SCALE, p[1] * SCALE)


@dataclass(frozen=True)
class Construction:
    matching: Matching
    sectors: SectorMap
    roles: dict  # vertex -> (role, sector covering used)


def _assign(c: Castle, sm: SectorMap):
    """Covering choice per vertex, before the zero line is settled."""
    tri_sector = {_canon(t): g for t, g in sm.triangle_sector.items()}
    choice: dict = {}
    roles: dict = {}

    def put(v, sector, role):
        if v in c.vertices and v not in choice:
            choice[v] = sector
            roles[v] = role

    for st in sm.staircases:
        pos = sm.sector_of_side(st.positive_side)
        neg = sm.sector_of_side(st.negative_side)
        pts = st.points
        for r, kind in enumerate(st.kinds):
            put(_step_midpoint(pts[r], pts[r + 1]), pos, f"stair-{kind}-black")
            if kind == "side":
                put(_lattice(pts[r]), pos, "stair-concave-down")
                put(_lattice(pts[r + 1]), neg, "stair-concave-up")
    lines = list(sm.lines)
    a, b = lines
    if a.start == b.start and a.corner == (b.corner + 1) % 6:
        lines = [b, a]
    # two lines from one corner (a zero side between them): the later one claims the corner
    for ln in reversed(lines):
        first = sm.sector_of_side(ln.first_side)
        second = sm.sector_of_side(ln.second_side)
        pts = [u[0] for u in _units(ln.start, ln.end)]
        for r, p in enumerate(pts):
            q = _add(p, ln.direction)
            put(_step_midpoint(p, q), first, "line-black")
            put(_lattice(p), second, "line-white")

    zero_pts = set()
    e1, e2 = sm.zero_line
    mids = []
    for a, b in _units(e1, e2):
        mids.append(_step_midpoint(a, b))
        zero_pts.update((_lattice(a), _lattice(b), mids[-1]))
    zero_pts.update((_lattice(e1), _lattice(e2)))
    zero_sectors = set()
    # the sectors flanking the zero line; a point-like zero line is flanked by all around it
    for v in mids or zero_pts:
        for t in _vertex_triangles(v):
            g = tri_sector.get(_canon(t))
            if g is not None:
                zero_sectors.add(g)

    pending = []
    for v in c.vertices:
        if v in choice:
            continue
        if v in zero_pts:
            pending.append(v)
            continue
        secs = {tri_sector[_canon(t)] for t in _vertex_triangles(v) if _canon(t) in tri_sector}
        covs = {sm.covering_of(g) for g in secs}
        if len(covs) != 1:
            raise ConstructionGap(f"vertex {v} sits between sectors {sorted(secs)} with no rule")
        choice[v] = min(secs)
        roles[v] = "sector"
    return choice, roles, sorted(pending), sorted(zero_sectors)


def _edges_for(c: Castle, sm: SectorMap, choice: dict, adj: dict):
    picked = {}
    for v, g in choice.items():
        cov = sm.covering_of(g)
        cands = [w for w in adj[v] if edge_class((v, w)) in cov]
        if len(cands) != 1:
            return None, v
        picked[v] = cands[0]
    for v, w in picked.items():
        if picked.get(w) != v:
            return None, v
    return frozenset(frozenset((v, w)) for v, w in picked.items()), None


def construct(c: Castle) -> Construction:
    """Build the matching and report the rule that placed each vertex.

    Zero sides may carry either sign.  The contour's own choice is tried first
    and the other four-change choices only if its borders fail to close up.
    """
    errors = []
    for signs in sign_completions(c.contour):
        try:
            return _construct(c, sector_division(c.contour, signs))
        except ConstructionGap as exc:
            errors.append(str(exc))
    raise ConstructionGap("; ".join(errors))


def _construct(c: Castle, sm: SectorMap) -> Construction:
    choice, roles, pending, zero_sectors = _assign(c, sm)
    adj = c.adjacency()
    results = []
    for g in zero_sectors or [None]:
        trial = dict(choice)
        for v in pending:
            trial[v] = g
        if pending and g is None:
            break
        edges, bad = _edges_for(c, sm, trial, adj)
        if edges is not None and all(edges != r[1] for r in results):
            results.append((g, edges))
        if not pending:
            break
    if len(results) != 1:
        raise ConstructionGap(
            f"castle {c.point}: {len(results)} legal zero-line coverings among sectors {zero_sectors}"
        )
    g, edges = results[0]
    for v in pending:
        roles[v] = "zero-line"
    m = Matching(edges, c)
    if not m.is_perfect():
        raise ConstructionGap(f"castle {c.point}: result is not a perfect matching")
    return Construction(m, sm, {v: (roles[v], g if roles[v] == "zero-line" else choice[v]) for v in roles})


def construct_minimal(c: Castle) -> Matching:
    return construct(c).matching


def construct_at(i: int, j: int, k: int) -> Matching:
    return construct_minimal(build_castle(i, j, k))


# -- zero-line arithmetic ----------------------------------------------------------


def zero_line(contour: Contour, signs=None) -> tuple:
    """End points of the zero line, the two staircase ends."""
    return borders(contour, signs).zero_line


def _fl2(n: int) -> int:
    return n // 2


# region -> (heights of the c- and f-staircases from (i, k), identity they satisfy)
ZERO_LINE_REGIONS = {
    "1": (lambda i, k: (_fl2(i + k), _fl2(i + 1 - k)), lambda hc, hf, i: hc + hf == i),
    "1'": (lambda i, k: (_fl2(1 - i - k), _fl2(k - i)), lambda hc, hf, i: hc + hf == -i),
    "2": (lambda i, k: (_fl2(i + k), _fl2(k - i)), lambda hc, hf, i: hc - hf == i),
    "2'": (lambda i, k: (_fl2(1 - i - k), _fl2(k - i)), lambda hc, hf, i: hc + hf == -i),
    "3": (lambda i, k: (_fl2(i + k), _fl2(k - i)), lambda hc, hf, i: hc - hf == i),
    "3'": (lambda i, k: (_fl2(i + k), _fl2(k - i)), lambda hc, hf, i: hc - hf == i),
}


def regions_of(i: int, j: int, k: int) -> list:
    """Closed regions (k >= 1) holding (i, j, k); boundary points belong to several."""
    if k < 1:
        return []
    return [name for name, inside in REGION_TESTS.items() if inside(i, j, k)]


def arithmetic_heights(region: str, i: int, k: int) -> dict:
    """Staircase heights from side lengths, keyed by the side index (2 for c, 5 for f)."""
    hc, hf = ZERO_LINE_REGIONS[region][0](i, k)
    return {2: hc, 5: hf}


def floor_identity_holds(region: str, i: int, k: int) -> bool:
    heights, identity = ZERO_LINE_REGIONS[region]
    return identity(*heights(i, k), i)


def staircase_heights(sm) -> dict:
    """Steps of each drawn staircase across the zero-line direction, keyed by its hatted side."""
    ax = DIRECTIONS[SIDE_NAMES[sm.axis]]
    along = {ax, (-ax[0], -ax[1])}
    out = {}
    for st in sm.staircases:
        hatted = st.negative_side if st.negative_side % 3 == sm.axis else st.positive_side
        steps = zip(st.points, st.points[1:])
        out[hatted] = sum(1 for a, b in steps if (b[0] - a[0], b[1] - a[1]) not in along)
    return out


# -- border geometry ---------------------------------------------------------------


def border_points(sm: SectorMap) -> dict:
    """Tiling points (lattice points and unit-step midpoints) on each kind of border."""
    out = {}
    for kind, lines in sm.border_polylines().items():
        pts = set()
        for line in lines:
            for a, b in zip(line, line[1:]):
                for u, w in _units(a, b):
                    pts.update((_lattice(u), _lattice(w), _step_midpoint(u, w)))
            pts.update(_lattice(p) for p in line)
        out[kind] = pts
    return out


def border_faces(c: Castle, sm: SectorMap) -> dict:
    """Keys of the full castle faces meeting each kind of border, plus the interior rest.

    A straight line ends on a staircase or the zero line; faces at that junction
    are filed under the staircase and zero line only.
    """
    pts = border_points(sm)
    junction = pts["staircase"] | pts["zero"]
    out = {kind: set() for kind in pts}
    out["interior"] = set()
    for f in c.full_faces():
        hit = [kind for kind, ps in pts.items() if any(v in ps for v in f.vertices)]
        if "straight" in hit and any(v in junction for v in f.vertices):
            hit.remove("straight")
        for kind in hit:
            out[kind].add(f.key)
        if not hit:
            out["interior"].add(f.key)
    return out


def edges_along(c: Castle, sm: SectorMap, kind: str) -> set:
    """Castle edges lying on a border of the given kind (lattice point to midpoint)."""
    pts = border_points(sm)[kind]
    out = set()
    for line in sm.border_polylines()[kind]:
        for a, b in zip(line, line[1:]):
            for u, w in _units(a, b):
                mid = _step_midpoint(u, w)
                for end in (_lattice(u), _lattice(w)):
                    e = frozenset((end, mid))
                    if e in c.edges:
                        out.add(e)
    return out & {e for e in c.edges if all(v in pts for v in e)}
