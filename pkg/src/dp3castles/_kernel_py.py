"""Pure-Python perfect-matching search; the reference the compiled kernel must match.

Graphs arrive in CSR form: neighbours of vertex v are ``nbr_v[off[v]:off[v+1]]``
reached through edges ``nbr_e[...]``.  The search always branches on the
unmatched vertex with the fewest free neighbours, so forced edges are taken
immediately and dead ends are caught as soon as a vertex runs dry.
"""

from __future__ import annotations

import sys

MODE_COUNT, MODE_COLLECT, MODE_TALLY = 0, 1, 2


class _Search:
    def __init__(self, n, off, nbr_v, nbr_e, vecs, dim, mode, limit):
        self.n = n
        self.off = list(off)
        self.nbr_v = list(nbr_v)
        self.nbr_e = list(nbr_e)
        self.vecs = list(vecs)
        self.dim = dim
        self.mode = mode
        self.limit = limit
        self.matched = [False] * n
        self.deg = [self.off[v + 1] - self.off[v] for v in range(n)]
        self.acc = [0] * dim
        self.stack = []
        self.count = 0
        self.found = []
        self.tally = {}

    def _take(self, v, w, e, sign):
        off, nbr_v, deg = self.off, self.nbr_v, self.deg
        for x in (v, w):
            for p in range(off[x], off[x + 1]):
                deg[nbr_v[p]] -= sign
        if self.dim:
            base = e * self.dim
            acc, vecs = self.acc, self.vecs
            for d in range(self.dim):
                acc[d] += sign * vecs[base + d]

    def _leaf(self) -> bool:
        self.count += 1
        if self.mode == MODE_COLLECT:
            self.found.append(tuple(sorted(self.stack)))
        elif self.mode == MODE_TALLY:
            key = tuple(self.acc)
            self.tally[key] = self.tally.get(key, 0) + 1
        return bool(self.limit) and self.count >= self.limit

    def run(self) -> bool:
        matched, deg = self.matched, self.deg
        best, best_deg = -1, 1 << 30
        for v in range(self.n):
            if not matched[v] and deg[v] < best_deg:
                best, best_deg = v, deg[v]
                if best_deg <= 1:
                    break
        if best < 0:
            return self._leaf()
        if best_deg == 0:
            return False
        for p in range(self.off[best], self.off[best + 1]):
            w = self.nbr_v[p]
            if matched[w]:
                continue
            e = self.nbr_e[p]
            matched[best] = matched[w] = True
            self._take(best, w, e, 1)
            self.stack.append(e)
            stop = self.run()
            self.stack.pop()
            self._take(best, w, e, -1)
            matched[best] = matched[w] = False
            if stop:
                return True
        return False


def search(n, off, nbr_v, nbr_e, vecs, dim, mode, limit=0):
    """Run one exhaustive search; returns (count, collected matchings, tally)."""
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n + 1000))
    try:
        s = _Search(n, off, nbr_v, nbr_e, vecs, dim, mode, limit)
        if n % 2 == 0:
            s.run()
    finally:
        sys.setrecursionlimit(old)
    return s.count, s.found, s.tally
