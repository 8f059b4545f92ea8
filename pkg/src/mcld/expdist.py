"""Exact output distributions whose probabilities are ratios of exponential sums.

The exponential mechanism assigns ``h`` weight ``exp(-eps * err(h) / 2)``; with
``eps`` rational every weight is ``e^{-a}`` for a rational ``a``.  An
:class:`ExpPoly` is a finite sum ``sum_a c_a e^{-a}`` with rational ``a`` and
``c_a``, and an :class:`ExactDistribution` stores one numerator per outcome
over a shared positive denominator.

Sign tests use an exact certificate first.  If the partial sums of the
coefficients, taken in increasing exponent order, are all non-negative, then
the sum is non-negative (Abel summation against the decreasing sequence
``e^{-a}``).  Otherwise interval arithmetic decides.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping

import mpmath


def to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        return Fraction(str(v))
    return Fraction(v)


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(math.gcd(a.numerator * b.denominator, b.numerator * a.denominator),
                    a.denominator * b.denominator)


class ExpPoly:
    """``sum_j c_j * e^{-j * unit}`` with integer ``j`` and rational ``c_j``.

    Exponents are stored as integers in multiples of ``unit`` (``None`` for
    constants), which keeps the arithmetic on Python ints.  Operands with
    different units are brought to their common divisor.
    """

    __slots__ = ("terms", "unit", "_key", "_val")

    def __init__(self, terms: Mapping | None = None, unit: Fraction | None = None):
        clean: dict[int, object] = {}
        if terms:
            for a, c in terms.items():
                if c:
                    clean[a] = c
        if unit is not None and unit <= 0:
            raise ValueError("exponent unit must be positive")
        if any(a != 0 for a in clean) and unit is None:
            raise ValueError("non-constant ExpPoly needs a unit")
        self.terms = clean
        self.unit = unit if any(a != 0 for a in clean) else None
        self._key = None
        self._val = None

    @classmethod
    def exp(cls, a, c=1) -> "ExpPoly":
        """Single term ``c * e^{-a}`` for a rational ``a``."""
        a = to_fraction(a)
        if a == 0:
            return cls({0: c})
        return cls({1: c}, abs(a)) if a > 0 else cls({-1: c}, -a)

    @classmethod
    def exp_units(cls, j: int, unit, c=1) -> "ExpPoly":
        return cls({j: c}, to_fraction(unit))

    @classmethod
    def const(cls, c) -> "ExpPoly":
        return cls({0: c})

    def rescale(self, unit: Fraction) -> "ExpPoly":
        if self.unit is None or self.unit == unit:
            return self
        m = self.unit / unit
        if m.denominator != 1:
            raise ValueError(f"unit {unit} does not divide {self.unit}")
        m = m.numerator
        return ExpPoly({a * m: c for a, c in self.terms.items()}, unit)

    @staticmethod
    def _align(p: "ExpPoly", q: "ExpPoly"):
        if p.unit is None or q.unit is None or p.unit == q.unit:
            return p.terms, q.terms, p.unit if p.unit is not None else q.unit
        u = _frac_gcd(p.unit, q.unit)
        return p.rescale(u).terms, q.rescale(u).terms, u

    def key(self) -> tuple:
        if self._key is None:
            u = self.unit if self.unit is not None else Fraction(1)
            self._key = tuple(sorted((Fraction(a) * u, Fraction(c)) for a, c in self.terms.items()))
        return self._key

    def __hash__(self) -> int:
        return hash(self.key())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpPoly):
            return NotImplemented
        return self.key() == other.key()

    def __repr__(self) -> str:
        return " + ".join(f"{c}*e^-({a})" for a, c in self.key()) or "0"

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        a_t, b_t, u = self._align(self, other)
        out = dict(a_t)
        for a, c in b_t.items():
            out[a] = out.get(a, 0) + c
        return ExpPoly(out, u)

    def __sub__(self, other: "ExpPoly") -> "ExpPoly":
        a_t, b_t, u = self._align(self, other)
        out = dict(a_t)
        for a, c in b_t.items():
            out[a] = out.get(a, 0) - c
        return ExpPoly(out, u)

    def __mul__(self, other) -> "ExpPoly":
        if not isinstance(other, ExpPoly):
            f = other if isinstance(other, (int, Fraction)) else to_fraction(other)
            return ExpPoly({a: c * f for a, c in self.terms.items()}, self.unit)
        a_t, b_t, u = self._align(self, other)
        out: dict[int, object] = {}
        for a, c in a_t.items():
            for b, d in b_t.items():
                out[a + b] = out.get(a + b, 0) + c * d
        return ExpPoly(out, u)

    __rmul__ = __mul__

    def __neg__(self) -> "ExpPoly":
        return self * -1

    def shift(self, b) -> "ExpPoly":
        """Multiply by ``e^{-b}``."""
        b = to_fraction(b)
        if b == 0:
            return self
        u = abs(b) if self.unit is None else _frac_gcd(self.unit, abs(b))
        base = self.rescale(u) if self.unit is not None else self
        j = b / u
        return ExpPoly({a + j.numerator: c for a, c in base.terms.items()}, u)

    def dominance_certificate(self) -> bool:
        """Exact sufficient condition for ``self >= 0``."""
        acc = 0
        for a in sorted(self.terms):
            acc += self.terms[a]
            if acc < 0:
                return False
        return True

    def interval(self, dps: int = 50):
        ctx = mpmath.iv
        saved = ctx.dps
        ctx.dps = dps
        try:
            total = ctx.mpf(0)
            for a, c in self.key():
                ea = ctx.exp(-(ctx.mpf(a.numerator) / a.denominator))
                total += (ctx.mpf(c.numerator) / c.denominator) * ea
            return total
        finally:
            ctx.dps = saved

    def value(self, dps: int = 40) -> mpmath.mpf:
        if self._val is not None and self._val[0] == dps:
            return self._val[1]
        with mpmath.workdps(dps):
            if self.unit is None:
                v = mpmath.mpf(Fraction(self.terms.get(0, 0)).numerator) / Fraction(
                    self.terms.get(0, 0)).denominator
            else:
                r = mpmath.exp(-mpmath.mpf(self.unit.numerator) / self.unit.denominator)
                v = mpmath.fsum((mpmath.mpf(Fraction(c).numerator) / Fraction(c).denominator)
                                * r ** a for a, c in self.terms.items())
        self._val = (dps, v)
        return v

    def sign(self, max_dps: int = 400) -> tuple[int, str]:
        """Exact sign of the sum and the method that settled it."""
        if not self.terms:
            return 0, "exact-zero"
        if self.dominance_certificate():
            return 1, "dominance"
        if (-self).dominance_certificate():
            return -1, "dominance"
        dps = 50
        while dps <= max_dps:
            iv = self.interval(dps)
            if iv.a > 0:
                return 1, "interval"
            if iv.b < 0:
                return -1, "interval"
            dps *= 2
        raise ArithmeticError(f"could not decide the sign of {self!r}")

    def to_json(self) -> list:
        return [[f"{a.numerator}/{a.denominator}", f"{c.numerator}/{c.denominator}"]
                for a, c in self.key()]


ONE = ExpPoly.const(1)


class ExactDistribution:
    """Finite distribution with ``Pr[o] = num[o] / den``; all numerators non-negative."""

    __slots__ = ("num", "den", "_mp")

    def __init__(self, num: Mapping[Hashable, ExpPoly], den: ExpPoly):
        self.num = {o: p for o, p in num.items() if not p.is_zero()}
        self.den = den
        self._mp = None

    def mp_probabilities(self, dps: int = 40) -> dict:
        if self._mp is None or self._mp[0] != dps:
            with mpmath.workdps(dps):
                d = self.den.value(dps)
                self._mp = (dps, {o: p.value(dps) / d for o, p in self.num.items()})
        return self._mp[1]

    @classmethod
    def point(cls, outcome) -> "ExactDistribution":
        return cls({outcome: ONE}, ONE)

    @classmethod
    def from_weights(cls, weights: Mapping[Hashable, ExpPoly]) -> "ExactDistribution":
        den = ExpPoly()
        for w in weights.values():
            den = den + w
        return cls(dict(weights), den)

    @property
    def support(self) -> list:
        return sorted(self.num, key=repr)

    def total_check(self) -> bool:
        """Numerators sum exactly to the denominator."""
        acc = ExpPoly()
        for p in self.num.values():
            acc = acc + p
        return acc == self.den

    def probabilities(self, dps: int = 40) -> dict:
        return {o: float(v) for o, v in self.mp_probabilities(dps).items()}

    def prob(self, outcome, dps: int = 40) -> float:
        p = self.num.get(outcome)
        if p is None:
            return 0.0
        with mpmath.workdps(dps):
            return float(p.value(dps) / self.den.value(dps))

    def pushforward(self, fn: Callable) -> "ExactDistribution":
        out: dict = {}
        for o, p in self.num.items():
            img = fn(o)
            out[img] = out[img] + p if img in out else p
        return ExactDistribution(out, self.den)

    def product(self, other: "ExactDistribution") -> "ExactDistribution":
        """Independent pair; outcomes are ``(o1, o2)``."""
        num = {(o1, o2): p1 * p2 for o1, p1 in self.num.items() for o2, p2 in other.num.items()}
        return ExactDistribution(num, self.den * other.den)

    def sample(self, rng):
        """Draw one outcome with a ``numpy.random.Generator``."""
        probs = self.probabilities()
        items = sorted(probs.items(), key=lambda kv: repr(kv[0]))
        u = rng.random()
        acc = 0.0
        for o, p in items:
            acc += p
            if u < acc:
                return o
        return items[-1][0]


def combine(terms: Iterable[tuple[ExpPoly, ExpPoly, Mapping[Hashable, ExpPoly]]]) -> ExactDistribution:
    """Sum of sub-probability pieces ``weight / wden * num[o]``.

    Each term is ``(weight, denominator, numerators)`` contributing
    ``weight * num[o] / denominator`` to outcome ``o``.  Terms are grouped by
    denominator so the common denominator is the product of distinct ones.
    """
    groups: dict[tuple, list] = {}
    dens: dict[tuple, ExpPoly] = {}
    for w, den, num in terms:
        k = den.key()
        dens[k] = den
        acc = groups.setdefault(k, {})
        for o, p in num.items():
            q = w * p
            acc[o] = acc[o] + q if o in acc else q
    keys = sorted(groups)
    common = ONE
    for k in keys:
        common = common * dens[k]
    out: dict = {}
    for k in keys:
        rest = ONE
        for k2 in keys:
            if k2 != k:
                rest = rest * dens[k2]
        for o, p in groups[k].items():
            q = p * rest
            out[o] = out[o] + q if o in out else q
    return ExactDistribution(out, common)


def product_all(dists: Iterable[ExactDistribution]) -> ExactDistribution:
    """Independent product; outcomes are tuples with one entry per factor."""
    out = ExactDistribution({(): ONE}, ONE)
    for d in dists:
        out = out.product(d).pushforward(lambda o: o[0] + (o[1],))
    return out


def mixture(parts: Iterable[tuple[Fraction, ExactDistribution]]) -> ExactDistribution:
    """Mixture with rational, data-independent weights."""
    return combine((ExpPoly.const(w), d.den, d.num) for w, d in parts)


def outcome_ratio_sign(p: ExactDistribution, q: ExactDistribution, o, eps: Fraction) -> tuple[int, str]:
    """Sign of ``e^eps * q(o) - p(o)`` after clearing denominators."""
    lhs = p.num.get(o, ExpPoly()) * q.den
    rhs = (q.num.get(o, ExpPoly()) * p.den).shift(-eps)
    return (rhs - lhs).sign()


def event_slack(p: ExactDistribution, q: ExactDistribution, eps: Fraction, dps: int = 40) -> float:
    """``max_S P(S) - e^eps Q(S)``, attained at ``S = {o : p(o) > e^eps q(o)}``."""
    pp, qq = p.mp_probabilities(dps), q.mp_probabilities(dps)
    with mpmath.workdps(dps):
        f = mpmath.exp(mpmath.mpf(eps.numerator) / eps.denominator)
        zero = mpmath.mpf(0)
        s = mpmath.fsum(max(zero, pp.get(o, zero) - f * qq.get(o, zero)) for o in set(pp) | set(qq))
        return float(s)
