"""Prism walk in Z^3: the tau operations act on a labeled unit prism by reflections.

Labels 1..6 track cluster positions, so after any tau-word the cluster variable
at position L belongs to the lattice point where prism vertex L sits.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Mapping
from functools import lru_cache

Point = tuple  # (x, y, z) integers

_PAIRS = {1: (1, 2), 2: (3, 4), 3: (5, 6)}
_TRIANGLES = {4: ((1, 4, 5), (2, 3, 6)), 5: ((2, 3, 6), (1, 4, 5))}


class PrismState(Mapping):
    """Immutable label -> point map."""

    __slots__ = ("_pos",)

    def __init__(self, positions: Mapping[int, Point]):
        self._pos = tuple(tuple(positions[label]) for label in range(1, 7))

    def __getitem__(self, label: int) -> Point:
        if not 1 <= label <= 6:
            raise KeyError(label)
        return self._pos[label - 1]

    def __iter__(self):
        return iter(range(1, 7))

    def __len__(self) -> int:
        return 6

    def __eq__(self, other) -> bool:
        if isinstance(other, PrismState):
            return self._pos == other._pos
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._pos)

    def __repr__(self) -> str:
        return f"PrismState({dict(self.items())})"

    def label_at(self, point: Point) -> int | None:
        for label, p in enumerate(self._pos, start=1):
            if p == tuple(point):
                return label
        return None

    def z_levels(self) -> tuple:
        zs = sorted({p[2] for p in self._pos})
        return tuple(zs)


INITIAL_PRISM = PrismState(
    {1: (0, -1, 1), 2: (0, -1, 0), 3: (-1, 0, 0), 4: (-1, 0, 1), 5: (0, 0, 1), 6: (0, 0, 0)}
)


def tau_on_prism(p: PrismState, t: int) -> PrismState:
    pos = dict(p.items())
    if t in _PAIRS:
        a, b = _PAIRS[t]
        rest = [label for label in range(1, 7) if label not in (a, b)]
        twice_c = [sum(pos[r][i] for r in rest) // 2 for i in range(3)]
        # reflect the edge through the rectangle's center; labels swap ends
        pa = tuple(twice_c[i] - pos[b][i] for i in range(3))
        pb = tuple(twice_c[i] - pos[a][i] for i in range(3))
        pos[a], pos[b] = pa, pb
    elif t in _TRIANGLES:
        moving, fixed = _TRIANGLES[t]
        z0 = pos[fixed[0]][2]
        for label in moving:
            x, y, z = pos[label]
            pos[label] = (x, y, 2 * z0 - z)
    else:
        raise ValueError(f"unknown tau index {t}")
    return PrismState(pos)


def replay(word, start: PrismState = INITIAL_PRISM) -> PrismState:
    for t in word:
        start = tau_on_prism(start, t)
    return start


def _z_phase(target_z: int, p: PrismState) -> tuple:
    word = []
    while target_z not in p.z_levels():
        lo, hi = p.z_levels()
        level = hi if target_z < lo else lo
        t = 4 if p[1][2] == level else 5
        p = tau_on_prism(p, t)
        word.append(t)
    return tuple(word), p


def _xy_key(p: PrismState) -> tuple:
    return tuple(q[:2] for q in p.values())


@lru_cache(maxsize=4096)
def tau_word_to_point(target: Point) -> tuple:
    """Return (word, label) with replay(word)[label] == target.

    The z coordinate is reached first with tau4/tau5; the cross-section is then
    walked with tau1..tau3 by breadth-first search, which keeps the word short
    and never loops.
    """
    target = tuple(int(c) for c in target)
    word, p = _z_phase(target[2], INITIAL_PRISM)
    seen = {p}
    queue = deque([(p, word)])
    while queue:
        cur, w = queue.popleft()
        label = cur.label_at(target)
        if label is not None:
            return tuple(w), label
        for t in (1, 2, 3):
            nxt = tau_on_prism(cur, t)
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, w + (t,)))
    raise AssertionError("unreachable")  # pragma: no cover - the walk covers Z^3


_VAR_CACHE: dict = {}
_SEED_CACHE: dict = {}  # (framed, word) -> seed


def seed_for_word(word, framed: bool = False):
    """Seed reached by applying ``word`` to the initial seed, memoized on every prefix."""
    from .quiver import apply_tau, initial_seed

    word = tuple(word)
    n = len(word)
    while n and (framed, word[:n]) not in _SEED_CACHE:
        n -= 1
    seed = _SEED_CACHE[(framed, word[:n])] if n else initial_seed(framed)
    for m in range(n, len(word)):
        seed = apply_tau(seed, word[m])
        _SEED_CACHE[(framed, word[: m + 1])] = seed
    return seed


def cluster_var_at_point(target: Point, framed: bool = False):
    """Mutation-engine value of the cluster variable attached to ``target``."""
    key = (tuple(target), bool(framed))
    if key not in _VAR_CACHE:
        word, label = tau_word_to_point(tuple(target))
        seed = seed_for_word(word, bool(framed))
        assert seed.prism[label] == tuple(target)
        _VAR_CACHE[key] = seed.cluster[label - 1]
    return _VAR_CACHE[key]
