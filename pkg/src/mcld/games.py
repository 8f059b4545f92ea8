"""Worst-case disagreement of a target against a class, as a zero-sum game.

The maximizer picks a distribution ``D`` over points, the minimizer a member
``g`` of ``G``; the payoff is ``Pr_D[g(x) != f(x)]``.  Self-play (Hedge for
the maximizer, best response for the minimizer) yields average strategies
whose exact best-response values bracket the game value.  The bracket is then
snapped to an exact rational value by solving the indifference equations on
the supports the iteration found, and verifying the candidates exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .caps import DEFAULT_CAPS, Caps
from .kernels import mwu_run


class GameToleranceError(RuntimeError):
    """The iteration cap was hit before the bracket closed to the tolerance."""


@dataclass
class GameResult:
    lower: Fraction
    upper: Fraction
    iterations: int
    exact: bool
    d_strategy: list[Fraction]
    g_strategy: list[Fraction]

    @property
    def value(self) -> float:
        return float((self.lower + self.upper) / 2)

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def to_json(self) -> dict:
        fr = lambda v: f"{v.numerator}/{v.denominator}"
        return {"lower": fr(self.lower), "upper": fr(self.upper), "exact": self.exact,
                "iterations": self.iterations}


def disagreement_matrix(f: Sequence[int], G: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[int(g[x] != f[x]) for x in range(len(f))] for g in G]


def _exact_normalize(v: Sequence[float]) -> list[Fraction]:
    fr = [Fraction(max(0.0, float(a))) for a in v]
    s = sum(fr)
    return [a / s for a in fr]


def lower_value(A, D: Sequence[Fraction]) -> Fraction:
    """``min_g sum_x A[g][x] D[x]``: a certified lower bound on the value."""
    return min(sum((Fraction(a) * d for a, d in zip(row, D) if a), Fraction(0)) for row in A)


def upper_value(A, q: Sequence[Fraction]) -> Fraction:
    """``max_x sum_g q[g] A[g][x]``: a certified upper bound on the value."""
    n = len(A[0])
    return max(sum((q[g] for g in range(len(A)) if A[g][x]), Fraction(0)) for x in range(n))


def _solve(M: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Exact Gaussian elimination; ``None`` if singular."""
    n = len(M)
    aug = [row[:] + [bv] for row, bv in zip(M, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [a - f * p for a, p in zip(aug[r], aug[c])]
    return [aug[r][n] for r in range(n)]


def _equalizer(A, rows: Sequence[int], cols: Sequence[int], transpose: bool):
    """Strategy on ``cols`` making every row in ``rows`` indifferent.

    Returns ``(strategy over cols, common value)`` or ``None``.  With
    ``transpose`` the roles of rows and columns of ``A`` are swapped.
    """
    s = len(cols)
    M, b = [], []
    for r in rows:
        if transpose:
            M.append([Fraction(A[c][r]) for c in cols] + [Fraction(-1)])
        else:
            M.append([Fraction(A[r][c]) for c in cols] + [Fraction(-1)])
        b.append(Fraction(0))
    M.append([Fraction(1)] * s + [Fraction(0)])
    b.append(Fraction(1))
    sol = _solve(M, b)
    if sol is None or any(v < 0 for v in sol[:s]):
        return None
    return sol[:s], sol[s]


def snap_exact(A, d_avg: Sequence[float], q_avg: Sequence[float], max_support: int = 4):
    """Try to certify the exact value from the supports of the average strategies."""
    m, n = len(A), len(A[0])
    xs = sorted(range(n), key=lambda j: -d_avg[j])
    gs = sorted(range(m), key=lambda i: -q_avg[i])
    for s in range(1, min(m, n, max_support) + 1):
        for cols in itertools.combinations(xs[:s + 1], s):
            for rows in itertools.combinations(gs[:s + 1], s):
                dd = _equalizer(A, rows, cols, transpose=False)
                qq = _equalizer(A, cols, rows, transpose=True)
                if dd is None or qq is None:
                    continue
                D = [Fraction(0)] * n
                for c, v in zip(cols, dd[0]):
                    D[c] = v
                q = [Fraction(0)] * m
                for r, v in zip(rows, qq[0]):
                    q[r] = v
                lo, hi = lower_value(A, D), upper_value(A, q)
                if lo == hi:
                    return lo, D, q
    return None


def solve_game(A, tol: float = 1e-6, caps: Caps = DEFAULT_CAPS, backend: str | None = None,
               chunk: int = 256) -> GameResult:
    """Value of ``max_D min_g`` for the 0/1 payoff matrix ``A`` (rows ``g``, columns ``x``)."""
    m, n = len(A), len(A[0])
    for i, row in enumerate(A):
        if not any(row):
            D = [Fraction(1, n)] * n
            q = [Fraction(int(j == i)) for j in range(m)]
            return GameResult(Fraction(0), Fraction(0), 0, True, D, q)
    if m == 1:
        D = [Fraction(int(j == A[0].index(1))) for j in range(n)]
        return GameResult(Fraction(1), Fraction(1), 0, True, D, [Fraction(1)])
    mat = np.ascontiguousarray(np.array(A, dtype=np.float64))
    gains = np.zeros(n)
    sum_d = np.zeros(n)
    q_count = np.zeros(m)
    t = 0
    step = chunk
    while True:
        if t + step > caps.max_game_iterations:
            step = caps.max_game_iterations - t
        if step <= 0:
            break
        t = mwu_run(mat, gains, sum_d, q_count, t, step, backend=backend)
        d_avg, q_avg = sum_d / t, q_count / t
        snap = snap_exact(A, d_avg, q_avg)
        if snap is not None:
            v, D, q = snap
            return GameResult(v, v, t, True, D, q)
        D, q = _exact_normalize(d_avg), _exact_normalize(q_avg)
        lo, hi = lower_value(A, D), upper_value(A, q)
        if hi - lo <= Fraction(tol):
            return GameResult(lo, hi, t, False, D, q)
        step *= 2
    raise GameToleranceError(f"bracket still wider than {tol} after {t} iterations")


def worst_case_repr_error(f: Sequence[int], G, tol: float = 1e-6, caps: Caps = DEFAULT_CAPS,
                          backend: str | None = None) -> GameResult:
    """``max_D min_{g in G} Pr_D[g(x) != f(x)]`` with a certified bracket."""
    rows = G.rows if hasattr(G, "rows") else G
    if not rows:
        raise ValueError("G must be non-empty")
    if any(len(g) != len(f) for g in rows):
        raise ValueError("target and class must share the domain")
    return solve_game(disagreement_matrix(f, rows), tol, caps, backend)
