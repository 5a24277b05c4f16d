"""Six-sided contours C(a, b, c, d, e, f) attached to lattice points (i, j, k)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .tiling import SCALE

SIDE_NAMES = "abcdef"
# unit lattice steps, clockwise from east, in the skew (u, v) basis
DIRECTIONS = {
    "a": (1, 0),
    "b": (1, -1),
    "c": (0, -1),
    "d": (-1, 0),
    "e": (-1, 1),
    "f": (0, 1),
}


class SelfIntersecting(ValueError):
    """The contour polyline is not simple; no castle is attached."""


def side_lengths(i: int, j: int, k: int) -> tuple:
    return (j + k, -i - j - k, i + k, j + 1 - k, -i - j - 1 + k, i + 1 - k)


def sign_changes(signs) -> int:
    return sum(1 for q in range(6) if signs[q] != signs[(q + 1) % 6])


def assign_signs(sides) -> tuple | None:
    """Signs for all six sides; zero sides get whatever completes four changes.

    Among completions with exactly four cyclic sign changes the one with the
    most '+' wins, earlier zero sides preferring '+' on further ties.  Returns
    None when no completion has four changes.
    """
    base = [0 if s == 0 else (1 if s > 0 else -1) for s in sides]
    zeros = [q for q in range(6) if base[q] == 0]
    best = None
    for combo in itertools.product((1, -1), repeat=len(zeros)):
        signs = list(base)
        for q, c in zip(zeros, combo):
            signs[q] = c
        if sign_changes(signs) == 4 and (best is None or sum(combo) > best[0]):
            best = (sum(combo), tuple(signs))
    return best[1] if best else None


def format_signs(signs) -> str:
    return "(" + ",".join("+" if s > 0 else "-" for s in signs) + ")"


@dataclass(frozen=True)
class Contour:
    sides: tuple
    point: tuple | None = None

    @cached_property
    def corners(self) -> tuple:
        """Lattice corners P0..P6; side q runs from P[q] to P[q+1], P6 == P0."""
        pts = [(0, 0)]
        for length, name in zip(self.sides, SIDE_NAMES):
            dx, dy = DIRECTIONS[name]
            x, y = pts[-1]
            pts.append((x + length * dx, y + length * dy))
        return tuple(pts)

    @property
    def polyline(self) -> tuple:
        """Distinct corners in order (zero sides skipped), not repeating the start."""
        out = []
        for p in self.corners[:-1]:
            if not out or out[-1] != p:
                out.append(p)
        while len(out) > 1 and out[-1] == out[0]:
            out.pop()
        return tuple(out)

    @property
    def scaled_polyline(self) -> tuple:
        return tuple((x * SCALE, y * SCALE) for x, y in self.polyline)

    @cached_property
    def signs(self) -> tuple | None:
        return assign_signs(self.sides)

    def is_closed(self) -> bool:
        return self.corners[-1] == self.corners[0]

    def closure_holds(self) -> bool:
        a, b, c, d, e, f = self.sides
        return a + b == d + e and c + d == f + a

    def balance_holds(self) -> bool:
        return sum(self.sides) == 1

    def lattice_path(self) -> list:
        """Every lattice point visited, one per unit step, starting at P0."""
        pts = [(0, 0)]
        for length, name in zip(self.sides, SIDE_NAMES):
            dx, dy = DIRECTIONS[name]
            step = 1 if length > 0 else -1
            for _ in range(abs(length)):
                x, y = pts[-1]
                pts.append((x + step * dx, y + step * dy))
        return pts


def tuple_for_point(i: int, j: int, k: int) -> Contour:
    return Contour(side_lengths(i, j, k), (i, j, k))


def is_self_intersecting(c: Contour) -> bool:
    """True iff the closed lattice path revisits a point.

    Lattice lines meet only at lattice points, so a simple path is exactly one
    whose unit steps never return to an earlier point before closing.
    """
    pts = c.lattice_path()
    body = pts[:-1]
    return len(set(body)) != len(body)


# closed named regions for k >= 1
REGION_TESTS = {
    "1": lambda i, j, k: k - 1 <= i and k - 1 <= j,
    "1'": lambda i, j, k: k - 1 <= i + j and i <= -k,
    "2": lambda i, j, k: -k <= i <= k - 1 <= j and k - 1 <= i + j,
    "2'": lambda i, j, k: i <= -k <= i + j <= k - 1 <= j,
    "3": lambda i, j, k: i <= k - 1 and j <= k - 1 <= i + j,
    "3'": lambda i, j, k: i + j <= k - 1 <= j and i >= -k,
}

_FAMILIES = {
    "white": ((1, -1, 1, 1, -1, 1), (-1, 1, -1, -1, 1, -1)),
    "pink": ((1, 1, -1, -1, 1, -1), (-1, -1, 1, 1, -1, 1)),
    "blue": ((1, 1, 1, -1, 1, -1), (-1, -1, -1, 1, -1, 1)),
}


def pattern_family(signs) -> str | None:
    if signs is None:
        return None
    signs = tuple(signs)
    for fam, reps in _FAMILIES.items():
        for rep in reps:
            for r in range(6):
                if rep[r:] + rep[:r] == signs:
                    return fam
    return None


# sign patterns of interior points of the named regions, as the side formula gives them
NAMED_PATTERNS = {
    "1": (1, -1, 1, 1, -1, 1),
    "1'": (1, -1, -1, 1, -1, -1),
    "2": (1, -1, 1, 1, -1, -1),
    "2'": (1, -1, -1, 1, 1, -1),
    "3": (1, -1, 1, -1, -1, -1),
    "3'": (1, -1, 1, 1, 1, -1),
}


def sibling_of(signs) -> tuple | None:
    """(named region, r) with signs equal to that region's pattern rotated left by r."""
    if signs is None:
        return None
    signs = tuple(signs)
    for name, rep in NAMED_PATTERNS.items():
        for r in range(6):
            if rep[r:] + rep[:r] == signs:
                return name, r
    return None


@dataclass(frozen=True)
class RegionInfo:
    name: str  # "1", "2'", "1∩2", "3~2" (pattern of 3 rotated by 2), "self-intersecting"
    mirrored: bool  # k <= 0: named through (i, j, 1-k), a 180 degree rotation
    signs: tuple | None
    family: str | None
    boundary: bool

    def __str__(self) -> str:
        if self.name == "self-intersecting":
            return self.name
        tag = f"Region {self.name}"
        if self.mirrored:
            tag += " (rotated, k<=0)"
        return tag


def classify_region(i: int, j: int, k: int) -> RegionInfo:
    """Name the region of Z^3 holding (i, j, k).

    For k <= 0 the contour of (i, j, k) is the contour of (i, j, 1-k) rotated
    by three sides, so the named k >= 1 regions cover everything.  Points on
    several closed regions get an intersection name such as "1∩2".
    """
    c = tuple_for_point(i, j, k)
    if is_self_intersecting(c):
        return RegionInfo("self-intersecting", k <= 0, None, None, False)
    kk = k if k >= 1 else 1 - k
    names = [n for n, test in REGION_TESTS.items() if test(i, j, kk)]
    signs = c.signs
    boundary = 0 in c.sides
    if names:
        name = "∩".join(names)
    else:
        frame = signs[3:] + signs[:3] if (signs and k <= 0) else signs
        sib = sibling_of(frame)
        name = f"{sib[0]}~{sib[1]}" if sib else "unnamed"
    return RegionInfo(name, k <= 0, signs, pattern_family(signs), boundary)


DRAGON_KINDS = ("D", "D'", "D_half", "D'_half")


def dragon(kind: str, n: int) -> tuple:
    """Castle coordinates of the Aztec Dragons; half kinds give order n + 1/2."""
    if n < 0:
        raise ValueError("dragon order must be nonnegative")
    table = {
        "D": (0, n, 1),
        "D'": (0, n, 0),
        "D_half": (-1, n + 1, 0),
        "D'_half": (-1, n + 1, 1),
    }
    if kind not in table:
        raise ValueError(f"unknown dragon kind {kind!r}; expected one of {DRAGON_KINDS}")
    return table[kind]
