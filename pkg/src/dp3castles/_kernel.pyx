# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_kernel_py``: same CSR input, same traversal order, same output."""

from libc.stdlib cimport free, malloc

cdef enum:
    MODE_COUNT = 0
    MODE_COLLECT = 1
    MODE_TALLY = 2


cdef class _Search:
    cdef int n, dim, mode, depth
    cdef long long limit, count
    cdef int *off
    cdef int *nbr_v
    cdef int *nbr_e
    cdef long long *vecs
    cdef char *matched
    cdef int *deg
    cdef long long *acc
    cdef int *stack
    cdef list found
    cdef dict tally

    def __cinit__(self, int n, off, nbr_v, nbr_e, vecs, int dim, int mode, long long limit):
        cdef Py_ssize_t i
        cdef Py_ssize_t m = len(nbr_v)
        cdef Py_ssize_t nv = len(vecs)
        self.n = n
        self.dim = dim
        self.mode = mode
        self.limit = limit
        self.count = 0
        self.depth = 0
        self.found = []
        self.tally = {}
        self.off = <int *> malloc((n + 1) * sizeof(int))
        self.nbr_v = <int *> malloc((m + 1) * sizeof(int))
        self.nbr_e = <int *> malloc((m + 1) * sizeof(int))
        self.vecs = <long long *> malloc((nv + 1) * sizeof(long long))
        self.matched = <char *> malloc((n + 1) * sizeof(char))
        self.deg = <int *> malloc((n + 1) * sizeof(int))
        self.acc = <long long *> malloc((dim + 1) * sizeof(long long))
        self.stack = <int *> malloc((n + 1) * sizeof(int))
        if (not self.off or not self.nbr_v or not self.nbr_e or not self.vecs
                or not self.matched or not self.deg or not self.acc or not self.stack):
            raise MemoryError()
        for i in range(n + 1):
            self.off[i] = off[i]
        for i in range(m):
            self.nbr_v[i] = nbr_v[i]
            self.nbr_e[i] = nbr_e[i]
        for i in range(nv):
            self.vecs[i] = vecs[i]
        for i in range(n):
            self.matched[i] = 0
            self.deg[i] = self.off[i + 1] - self.off[i]
        for i in range(dim):
            self.acc[i] = 0

    def __dealloc__(self):
        free(self.off)
        free(self.nbr_v)
        free(self.nbr_e)
        free(self.vecs)
        free(self.matched)
        free(self.deg)
        free(self.acc)
        free(self.stack)

    cdef inline void _take(self, int v, int w, int e, int sign):
        cdef int p, d
        cdef long long base
        for p in range(self.off[v], self.off[v + 1]):
            self.deg[self.nbr_v[p]] -= sign
        for p in range(self.off[w], self.off[w + 1]):
            self.deg[self.nbr_v[p]] -= sign
        if self.dim:
            base = <long long> e * self.dim
            for d in range(self.dim):
                self.acc[d] += sign * self.vecs[base + d]

    cdef bint _leaf(self) except -1:
        cdef int d
        cdef tuple key
        self.count += 1
        if self.mode == MODE_COLLECT:
            self.found.append(tuple(sorted([self.stack[d] for d in range(self.depth)])))
        elif self.mode == MODE_TALLY:
            key = tuple([self.acc[d] for d in range(self.dim)])
            self.tally[key] = self.tally.get(key, 0) + 1
        return self.limit > 0 and self.count >= self.limit

    cdef int run(self) except -1:
        cdef int v, w, e, p
        cdef int best = -1
        cdef int best_deg = 1 << 30
        cdef int stop
        for v in range(self.n):
            if not self.matched[v] and self.deg[v] < best_deg:
                best = v
                best_deg = self.deg[v]
                if best_deg <= 1:
                    break
        if best < 0:
            return 1 if self._leaf() else 0
        if best_deg == 0:
            return 0
        for p in range(self.off[best], self.off[best + 1]):
            w = self.nbr_v[p]
            if self.matched[w]:
                continue
            e = self.nbr_e[p]
            self.matched[best] = 1
            self.matched[w] = 1
            self._take(best, w, e, 1)
            self.stack[self.depth] = e
            self.depth += 1
            stop = self.run()
            self.depth -= 1
            self._take(best, w, e, -1)
            self.matched[best] = 0
            self.matched[w] = 0
            if stop:
                return 1
        return 0


def search(int n, off, nbr_v, nbr_e, vecs, int dim, int mode, long long limit=0):
    """Run one exhaustive search; returns (count, collected matchings, tally)."""
    cdef _Search s = _Search(n, off, nbr_v, nbr_e, vecs, dim, mode, limit)
    if n % 2 == 0:
        s.run()
    return s.count, s.found, s.tally
