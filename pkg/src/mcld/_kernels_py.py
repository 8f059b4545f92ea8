"""Pure-Python twin of the compiled kernels; selected when the extension is absent.

Row sets are Python ints, so there is no 64-row limit here.
"""

from __future__ import annotations

import math

from .caps import CapExceeded

MAX_ROWS = None

MODE_PAIRS = 0
MODE_BIPARTITION = 1
MODE_MAPS = 2


def _flog2(v: int) -> int:
    return v.bit_length() - 1


class DimSolver:
    """Memoized dimension recursion on row subsets given as bitmasks."""

    def __init__(self, label_masks, n_rows, mode, maps0=None, maps1=None, max_nodes=5_000_000):
        self.masks = [list(row) for row in label_masks]
        self.mode = mode
        self.maps0 = maps0
        self.maps1 = maps1
        self.max_nodes = max_nodes
        self.nodes = 0
        self.memo: dict[int, int] = {}

    def memo_size(self) -> int:
        return len(self.memo)

    def dim(self, S: int) -> int:
        if S & (S - 1) == 0:
            return 0
        memo = self.memo
        got = memo.get(S)
        if got is not None:
            return got
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise CapExceeded("max_nodes", self.nodes, self.max_nodes)
        ub = _flog2(S.bit_count())
        best = 0
        for x, row in enumerate(self.masks):
            if best >= ub:
                break
            if self.mode == MODE_MAPS:
                for m0, m1 in zip(self.maps0[x], self.maps1[x]):
                    s0 = S & m0
                    s1 = S & m1
                    if s0 and s1:
                        best = self._try_pair(s0, s1, best)
                        if best >= ub:
                            break
                continue
            groups = [g for g in (S & m for m in row) if g]
            c = len(groups)
            if c < 2:
                continue
            if self.mode == MODE_PAIRS:
                # second-largest child dimension over the label groups
                top1 = top2 = -1
                for g in groups:
                    if _flog2(g.bit_count()) < best:
                        continue
                    d = self.dim(g)
                    if d > top1:
                        top1, top2 = d, top1
                    elif d > top2:
                        top2 = d
                if top2 >= 0 and top2 + 1 > best:
                    best = top2 + 1
            else:
                for sub in range(1, 1 << (c - 1)):
                    s0 = 0
                    for a in range(c - 1):
                        if sub >> a & 1:
                            s0 |= groups[a]
                    best = self._try_pair(s0, S & ~s0, best)
                    if best >= ub:
                        break
        memo[S] = best
        return best

    def _try_pair(self, s0: int, s1: int, best: int) -> int:
        if s0.bit_count() > s1.bit_count():
            s0, s1 = s1, s0
        if _flog2(s0.bit_count()) + 1 <= best:
            return best
        d0 = self.dim(s0)
        if d0 + 1 <= best:
            return best
        d = min(d0, self.dim(s1))
        return max(best, d + 1)


def mwu_run(A, gains, sum_d, q_count, t0: int, iters: int) -> int:
    """Advance the game iteration by ``iters`` rounds; returns the new round count.

    Rows of ``A`` are the minimizer's pure strategies, columns the maximizer's.
    The maximizer runs Hedge with rate ``sqrt(ln n / t)``; the minimizer best-responds.
    """
    import numpy as np

    n = A.shape[1]
    logn = math.log(n) if n > 1 else 1.0
    for t in range(t0 + 1, t0 + iters + 1):
        eta = math.sqrt(logn / t)
        d = np.exp(eta * (gains - gains.max()))
        d /= d.sum()
        sum_d += d
        arg = int(np.argmin(A @ d))
        q_count[arg] += 1.0
        gains += A[arg]
    return t0 + iters
