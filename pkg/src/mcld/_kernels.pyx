# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: memoized shattering recursion over 64-bit row sets and
the multiplicative-weights game iteration.  Mirrors ``_kernels_py`` exactly."""

from libc.stdint cimport uint64_t
from libc.math cimport exp, log, sqrt
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

from .caps import CapExceeded

MAX_ROWS = 64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil


cdef enum:
    MODE_PAIRS = 0
    MODE_BIPARTITION = 1
    MODE_MAPS = 2


cdef inline int popcount(uint64_t v) nogil:
    return __builtin_popcountll(v)


cdef inline int floor_log2(uint64_t v) nogil:
    return 63 - __builtin_clzll(v)


cdef class DimSolver:
    """Memoized dimension recursion on row subsets given as bitmasks."""

    cdef int nx, nlab, mode, nmaps
    cdef vector[uint64_t] masks        # nx * nlab
    cdef vector[uint64_t] m0, m1       # nx * nmaps
    cdef unordered_map[uint64_t, int] memo
    cdef long max_nodes
    cdef public long nodes

    def __init__(self, label_masks, int n_rows, int mode, maps0=None, maps1=None,
                 long max_nodes=5_000_000):
        if n_rows > MAX_ROWS or len(label_masks[0]) > MAX_ROWS:
            raise ValueError("compiled kernel handles at most 64 rows and 64 labels")
        self.nx = len(label_masks)
        self.nlab = len(label_masks[0])
        self.mode = mode
        self.max_nodes = max_nodes
        self.nodes = 0
        for row in label_masks:
            for m in row:
                self.masks.push_back(<uint64_t>m)
        self.nmaps = 0
        if mode == MODE_MAPS:
            self.nmaps = len(maps0[0])
            for x in range(self.nx):
                for j in range(self.nmaps):
                    self.m0.push_back(<uint64_t>maps0[x][j])
                    self.m1.push_back(<uint64_t>maps1[x][j])

    def dim(self, uint64_t mask):
        return self._dim(mask)

    def memo_size(self):
        return self.memo.size()

    cdef int _dim(self, uint64_t S) except -1:
        cdef int pc = popcount(S)
        if pc <= 1:
            return 0
        if self.memo.count(S):
            return self.memo[S]
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise CapExceeded("max_nodes", self.nodes, self.max_nodes)
        cdef int ub = floor_log2(<uint64_t>pc)
        cdef int best = 0
        cdef int x, y, c, a, j
        cdef uint64_t g, s0, s1
        cdef uint64_t groups[64]
        cdef int top1, top2, d0
        cdef unsigned long long sub, nsub
        for x in range(self.nx):
            if best >= ub:
                break
            if self.mode == MODE_MAPS:
                for j in range(self.nmaps):
                    s0 = S & self.m0[x * self.nmaps + j]
                    s1 = S & self.m1[x * self.nmaps + j]
                    if s0 == 0 or s1 == 0:
                        continue
                    best = self._try_pair(s0, s1, best)
                    if best >= ub:
                        break
                continue
            c = 0
            for y in range(self.nlab):
                g = S & self.masks[x * self.nlab + y]
                if g != 0:
                    groups[c] = g
                    c += 1
            if c < 2:
                continue
            if self.mode == MODE_PAIRS:
                # second-largest child dimension over the label groups
                top1 = -1
                top2 = -1
                for a in range(c):
                    if floor_log2(<uint64_t>popcount(groups[a])) < best:
                        continue
                    d0 = self._dim(groups[a])
                    if d0 > top1:
                        top2 = top1
                        top1 = d0
                    elif d0 > top2:
                        top2 = d0
                if top2 >= 0 and top2 + 1 > best:
                    best = top2 + 1
            else:
                nsub = 1ULL << (c - 1)
                for sub in range(1, nsub):
                    # group c-1 always on side 1; sub selects side-0 groups
                    s0 = 0
                    for a in range(c - 1):
                        if (sub >> a) & 1:
                            s0 |= groups[a]
                    s1 = S & ~s0
                    best = self._try_pair(s0, s1, best)
                    if best >= ub:
                        break
        self.memo[S] = best
        return best

    cdef int _try_pair(self, uint64_t s0, uint64_t s1, int best) except -1:
        cdef uint64_t t
        if popcount(s0) > popcount(s1):
            t = s0
            s0 = s1
            s1 = t
        if floor_log2(<uint64_t>popcount(s0)) + 1 <= best:
            return best
        cdef int d0 = self._dim(s0)
        if d0 + 1 <= best:
            return best
        cdef int d1 = self._dim(s1)
        if d1 < d0:
            d0 = d1
        if d0 + 1 > best:
            return d0 + 1
        return best


def mwu_run(double[:, ::1] A, double[::1] gains, double[::1] sum_d, double[::1] q_count,
            long t0, long iters):
    """Advance the game iteration by ``iters`` rounds; returns the new round count.

    Rows of ``A`` are the minimizer's pure strategies, columns the maximizer's.
    The maximizer runs Hedge with rate ``sqrt(ln n / t)``; the minimizer best-responds.
    """
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t i, j, arg
    cdef long t
    cdef double eta, mx, z, v, bestv
    cdef double logn = log(<double>n) if n > 1 else 1.0
    cdef vector[double] d
    d.resize(n)
    with nogil:
        for t in range(t0 + 1, t0 + iters + 1):
            eta = sqrt(logn / <double>t)
            mx = gains[0]
            for j in range(1, n):
                if gains[j] > mx:
                    mx = gains[j]
            z = 0.0
            for j in range(n):
                d[j] = exp(eta * (gains[j] - mx))
                z += d[j]
            for j in range(n):
                d[j] /= z
                sum_d[j] += d[j]
            arg = 0
            bestv = 1e300
            for i in range(m):
                v = 0.0
                for j in range(n):
                    v += A[i, j] * d[j]
                if v < bestv:
                    bestv = v
                    arg = i
            q_count[arg] += 1.0
            for j in range(n):
                gains[j] += A[arg, j]
    return t0 + iters
