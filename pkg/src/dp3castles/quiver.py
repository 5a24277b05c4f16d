"""The dP3 quiver, seed mutation and the five tau operations.

Vertices 1..6 are mutable.  A framed quiver adds frozen vertices 7..12 with one
arrow i -> i+6 each, and the frozen variables are y1..y6.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .poly import LaurentPoly, NotDivisible, parse_poly, product
from .prism import INITIAL_PRISM, PrismState, tau_on_prism

N_MUTABLE = 6

# Read off the dP3 brane tiling (see tiling.dual_quiver, which must agree).
DP3_ARROWS = (
    (1, 4), (1, 6), (2, 3), (2, 5), (3, 1), (3, 6),
    (4, 2), (4, 5), (5, 1), (5, 3), (6, 2), (6, 4),
)

# tau_t = (mutation sequence applied left to right, cycle applied afterwards)
TAUS = {
    1: ((1, 2), (1, 2)),
    2: ((3, 4), (3, 4)),
    3: ((5, 6), (5, 6)),
    4: ((1, 4, 1, 5, 1), (1, 4, 5)),
    5: ((2, 3, 2, 6, 2), (2, 3, 6)),
}


class FrozenVertex(ValueError):
    """Mutation was requested at a frozen vertex."""


class NotToric(RuntimeError):
    """A mutation inside a tau landed on a vertex without in = out = 2."""


@dataclass(frozen=True)
class Quiver:
    """Arrow multiset on vertices 1..n_mutable+n_frozen."""

    n_mutable: int
    n_frozen: int
    arrows: tuple  # sorted ((source, target), multiplicity) pairs

    @classmethod
    def from_counter(cls, n_mutable: int, n_frozen: int, arrows) -> "Quiver":
        items = tuple(sorted((k, n) for k, n in Counter(arrows).items() if n > 0))
        return cls(n_mutable, n_frozen, items)

    @property
    def vertices(self) -> range:
        return range(1, self.n_mutable + self.n_frozen + 1)

    def is_frozen(self, v: int) -> bool:
        return v > self.n_mutable

    def counter(self) -> Counter:
        return Counter(dict(self.arrows))

    def in_degree(self, v: int) -> int:
        return sum(n for (s, t), n in self.arrows if t == v)

    def out_degree(self, v: int) -> int:
        return sum(n for (s, t), n in self.arrows if s == v)

    def arrow_count(self) -> int:
        return sum(n for _, n in self.arrows)

    def relabel(self, perm: dict) -> "Quiver":
        moved = Counter()
        for (s, t), n in self.arrows:
            moved[(perm.get(s, s), perm.get(t, t))] += n
        return Quiver.from_counter(self.n_mutable, self.n_frozen, moved)

    def skew_matrix(self) -> list:
        size = self.n_mutable + self.n_frozen
        b = [[0] * size for _ in range(size)]
        for (s, t), n in self.arrows:
            b[s - 1][t - 1] += n
            b[t - 1][s - 1] -= n
        return b


def dp3_quiver(framed: bool = False) -> Quiver:
    arrows = Counter(DP3_ARROWS)
    if framed:
        for i in range(1, N_MUTABLE + 1):
            arrows[(i, i + N_MUTABLE)] += 1
    return Quiver.from_counter(N_MUTABLE, N_MUTABLE if framed else 0, arrows)


def mutate_quiver(q: Quiver, k: int) -> Quiver:
    if q.is_frozen(k):
        raise FrozenVertex(k)
    arrows = q.counter()
    ins = [(s, n) for (s, t), n in arrows.items() if t == k]
    outs = [(t, n) for (s, t), n in arrows.items() if s == k]
    new = Counter()
    for (s, t), n in arrows.items():
        if s == k or t == k:
            new[(t, s)] += n
        else:
            new[(s, t)] += n
    for s, n1 in ins:
        for t, n2 in outs:
            if q.is_frozen(s) and q.is_frozen(t):
                continue
            new[(s, t)] += n1 * n2
    # cancel 2-cycles
    out = Counter()
    for (s, t), n in new.items():
        net = n - new.get((t, s), 0)
        if net > 0:
            out[(s, t)] = net
    return Quiver.from_counter(q.n_mutable, q.n_frozen, out)


def is_toric(q: Quiver, v: int) -> bool:
    return q.in_degree(v) == 2 and q.out_degree(v) == 2


@dataclass(frozen=True)
class Seed:
    quiver: Quiver
    cluster: tuple  # 6 LaurentPoly, positions 1..6
    coeffs: tuple = ()  # frozen values y1..y6 when framed
    prism: PrismState = field(default=INITIAL_PRISM)

    @property
    def framed(self) -> bool:
        return self.quiver.n_frozen > 0

    def value(self, v: int) -> LaurentPoly:
        if v <= N_MUTABLE:
            return self.cluster[v - 1]
        return self.coeffs[v - N_MUTABLE - 1]

    def to_json(self) -> str:
        doc = {
            "n_mutable": self.quiver.n_mutable,
            "n_frozen": self.quiver.n_frozen,
            "arrows": [[s, t, n] for (s, t), n in self.quiver.arrows],
            "cluster": [str(p) for p in self.cluster],
            "coeffs": [str(p) for p in self.coeffs],
            "prism": {str(k): list(v) for k, v in self.prism.items()},
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Seed":
        doc = json.loads(text)
        q = Quiver.from_counter(
            doc["n_mutable"], doc["n_frozen"], {(s, t): n for s, t, n in doc["arrows"]}
        )
        return cls(
            q,
            tuple(parse_poly(p) for p in doc["cluster"]),
            tuple(parse_poly(p) for p in doc["coeffs"]),
            PrismState({int(k): tuple(v) for k, v in doc["prism"].items()}),
        )


def initial_seed(framed: bool = False) -> Seed:
    coeffs = tuple(LaurentPoly.y(i) for i in range(1, 7)) if framed else ()
    return Seed(dp3_quiver(framed), tuple(LaurentPoly.x(i) for i in range(1, 7)), coeffs)


def mutate(s: Seed, v: int) -> Seed:
    q = s.quiver
    if q.is_frozen(v):
        raise FrozenVertex(v)
    out_prod = product(s.value(t) ** n for (src, t), n in q.arrows if src == v)
    in_prod = product(s.value(src) ** n for (src, t), n in q.arrows if t == v)
    try:
        new_val = (out_prod + in_prod).div_exact(s.cluster[v - 1])
    except NotDivisible as exc:  # pragma: no cover - Laurent phenomenon violated
        raise NotDivisible(f"exchange at vertex {v} is not exact") from exc
    cluster = list(s.cluster)
    cluster[v - 1] = new_val
    return Seed(mutate_quiver(q, v), tuple(cluster), s.coeffs, s.prism)


def cycle_map(cyc: tuple) -> dict:
    """Position cyc[i] is sent to cyc[i+1]."""
    return {cyc[i]: cyc[(i + 1) % len(cyc)] for i in range(len(cyc))}


def permute_seed(s: Seed, perm: dict) -> Seed:
    cluster = list(s.cluster)
    for src, dst in perm.items():
        cluster[dst - 1] = s.cluster[src - 1]
    return Seed(s.quiver.relabel(perm), tuple(cluster), s.coeffs, s.prism)


def apply_tau(s: Seed, t: int, check_toric: bool | None = None) -> Seed:
    """Apply tau_t: its mutations in order, then its cyclic relabeling.

    The toric check (in = out = 2 at every mutated vertex) is only meaningful on
    unframed seeds, where frozen arrows do not inflate the degrees; by default
    it runs exactly then.
    """
    if check_toric is None:
        check_toric = not s.framed
    seq, cyc = TAUS[t]
    for k in seq:
        if check_toric and not is_toric(s.quiver, k):
            raise NotToric(f"tau{t}: vertex {k} is not toric")
        s = mutate(s, k)
    s = permute_seed(s, cycle_map(cyc))
    return Seed(s.quiver, s.cluster, s.coeffs, tau_on_prism(s.prism, t))


def apply_word(s: Seed, word) -> Seed:
    for t in word:
        s = apply_tau(s, t)
    return s


def same_labeled_seed(a: Seed, b: Seed) -> bool:
    return a.quiver == b.quiver and a.cluster == b.cluster and a.coeffs == b.coeffs
