"""Probabilistic representations: validity, tiny brute-force search, and uses.

A representation is a family ``G_1..G_r`` with a data-independent rational
distribution ``P``.  It is valid for ``(alpha, beta)`` when for every target
``f`` the ``P``-mass of the classes whose worst-case error against ``f`` is at
most ``alpha`` reaches ``1 - beta``.  The worst case over input distributions
is the game value from :mod:`mcld.games`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .caps import DEFAULT_CAPS, Caps
from .dimensions import mld
from .expdist import ExpPoly, combine, to_fraction
from .games import GameResult, worst_case_repr_error
from .hypothesis import ClassError, HypothesisClass
from .online import WeightedMajority, adversary_search
from .privacy import exp_mech

ALPHA = Fraction(1, 4)
BETA = Fraction(1, 8)


def fraction_str(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


@dataclass
class ProbabilisticRepresentation:
    family: list[HypothesisClass]
    P: list[Fraction]

    def __post_init__(self):
        if not self.family:
            raise ClassError("a representation needs at least one class")
        if len(self.P) != len(self.family):
            raise ClassError("P must have one weight per class")
        self.P = [to_fraction(p) for p in self.P]
        if any(p < 0 for p in self.P) or sum(self.P) != 1:
            raise ClassError("P must be a probability vector summing to exactly 1")
        dom = {(G.domain_size, G.k) for G in self.family}
        if len(dom) != 1:
            raise ClassError("all classes of a representation share domain and k")

    @property
    def size(self) -> float:
        return max(math.log(len(G)) for G in self.family)

    def to_json(self) -> dict:
        return {"P": [fraction_str(p) for p in self.P], "family": [G.to_json() for G in self.family]}

    @classmethod
    def from_json(cls, data: dict) -> "ProbabilisticRepresentation":
        return cls([HypothesisClass.from_json(g) for g in data["family"]],
                   [Fraction(p) for p in data["P"]])


def point_mass(H: HypothesisClass) -> ProbabilisticRepresentation:
    return ProbabilisticRepresentation([H], [Fraction(1)])


@dataclass
class TargetCheck:
    f: tuple[int, ...]
    values: list[GameResult]
    good_mass: Fraction
    undecided_mass: Fraction
    verdict: str


@dataclass
class RepresentationCheck:
    alpha: Fraction
    beta: Fraction
    targets: list[TargetCheck] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        vs = {t.verdict for t in self.targets}
        if "fail" in vs:
            return "fail"
        if "indeterminate" in vs:
            return "indeterminate"
        return "pass"

    @property
    def valid(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        return {"alpha": fraction_str(self.alpha), "beta": fraction_str(self.beta),
                "verdict": self.verdict,
                "targets": [{"f": list(t.f), "good_mass": fraction_str(t.good_mass),
                             "verdict": t.verdict, "values": [v.to_json() for v in t.values]}
                            for t in self.targets]}


def is_probabilistic_representation(rep: ProbabilisticRepresentation, H: HypothesisClass,
                                    alpha=ALPHA, beta=BETA, tol: float = 1e-6,
                                    caps: Caps = DEFAULT_CAPS, _cache: dict | None = None) -> RepresentationCheck:
    alpha, beta = to_fraction(alpha), to_fraction(beta)
    out = RepresentationCheck(alpha, beta)
    cache = _cache if _cache is not None else {}
    for f in H.rows:
        good = undecided = Fraction(0)
        vals = []
        for G, p in zip(rep.family, rep.P):
            key = (f, G.rows)
            res = cache.get(key)
            if res is None:
                res = cache[key] = worst_case_repr_error(f, G, tol, caps)
            vals.append(res)
            if res.upper <= alpha:
                good += p
            elif res.lower <= alpha:
                undecided += p
        need = 1 - beta
        if good >= need:
            verdict = "pass"
        elif good + undecided >= need:
            verdict = "indeterminate"
        else:
            verdict = "fail"
        out.targets.append(TargetCheck(f, vals, good, undecided, verdict))
    return out


@dataclass
class RepDimResult:
    upper: float | None
    lower: float
    best: ProbabilisticRepresentation | None
    searched_families: int
    max_family_size: int
    note: str = "upper bound over the searched space only"

    def to_json(self) -> dict:
        return {"upper_bound": self.upper, "lower_bound": self.lower,
                "representation": self.best.to_json() if self.best else None,
                "searched_families": self.searched_families,
                "max_class_size_searched": self.max_family_size, "note": self.note}


def repdim_bruteforce(H: HypothesisClass, alpha=ALPHA, beta=BETA, max_class: int = 4,
                      tol: float = 1e-6, caps: Caps = DEFAULT_CAPS) -> RepDimResult:
    """Smallest ``size`` among representations built from subclasses of ``H``.

    Searches single classes (``r = 1``) and pairs (``r = 2``) with weights at
    the thresholds ``beta``, ``1/2``, ``1 - beta``.  The result is an upper
    bound on RepDim over this space; the lower bound is ``MLD(H) / 32``.
    """
    alpha, beta = to_fraction(alpha), to_fraction(beta)
    caps.check("max_enumeration", 2 ** len(H))
    subsets = [HypothesisClass(c, H.k, H.domain_size)
               for s in range(1, min(max_class, len(H)) + 1)
               for c in itertools.combinations(H.rows, s)]
    cache: dict = {}
    best, best_size, searched = None, math.inf, 0
    good_for: dict = {}
    for G in subsets:
        searched += 1
        rep = ProbabilisticRepresentation([G], [Fraction(1)])
        chk = is_probabilistic_representation(rep, H, alpha, beta, tol, caps, cache)
        good_for[G] = frozenset(t.f for t in chk.targets if t.verdict == "pass")
        if chk.valid and rep.size < best_size:
            best, best_size = rep, rep.size
    targets = frozenset(H.rows)
    weights = sorted({beta, Fraction(1, 2), 1 - beta})
    for G1, G2 in itertools.combinations(subsets, 2):
        size = max(math.log(len(G1)), math.log(len(G2)))
        if size >= best_size:
            continue
        for p in weights:
            searched += 1
            ok = all((p if f in good_for[G1] else 0) + ((1 - p) if f in good_for[G2] else 0) >= 1 - beta
                     for f in targets)
            if ok:
                best, best_size = ProbabilisticRepresentation([G1, G2], [p, 1 - p]), size
                break
    lower = mld(H, caps) / 32
    return RepDimResult(None if best is None else best_size, lower, best, searched, max_class)


def repr_to_private_learner(rep: ProbabilisticRepresentation, sample, eps):
    """Exact output distribution: draw ``G_i ~ P``, then exponential mechanism on ``G_i``."""
    terms = []
    for G, p in zip(rep.family, rep.P):
        if p == 0:
            continue
        d = exp_mech(G.rows, sample, eps).pushforward(lambda i, G=G: G.rows[i])
        terms.append((ExpPoly.const(p), d.den, d.num))
    return combine(terms)


class RepresentationWM:
    """Draw ``G_i ~ P`` once, then run weighted majority over ``G_i``.

    Since the draw is data-independent the prediction distribution is the
    ``P``-mixture of the components' distributions.
    """

    deterministic = False

    def __init__(self, rep: ProbabilisticRepresentation, horizon: int):
        self.P = rep.P
        self.parts = [WeightedMajority(G.rows, G.k, max(horizon, 1)) for G in rep.family]

    def predict_proba(self, x: int) -> dict[int, float]:
        out: dict[int, float] = {}
        for p, wm in zip(self.P, self.parts):
            if p == 0:
                continue
            for y, v in wm.predict_proba(x).items():
                out[y] = out.get(y, 0.0) + float(p) * v
        return out

    def update(self, x: int, y: int) -> None:
        for wm in self.parts:
            wm.update(x, y)

    def clone(self) -> "RepresentationWM":
        c = RepresentationWM.__new__(RepresentationWM)
        c.P = self.P
        c.parts = [wm.clone() for wm in self.parts]
        return c

    def state_key(self):
        return tuple(wm.state_key() for wm in self.parts)


@dataclass
class WMExperiment:
    mld: int
    size: float
    expected_mistakes: float
    lower: float
    upper: float
    vacuous: bool
    sequence: list

    @property
    def checks(self) -> dict[str, bool]:
        if self.vacuous:
            return {"vacuously_true": True}
        return {"expected_mistakes_ge_half_mld": self.expected_mistakes >= self.lower - 1e-9,
                "expected_mistakes_le_wm_bound": self.expected_mistakes <= self.upper + 1e-9,
                "mld_over_32_le_size": self.mld / 32 <= self.size + 1e-9}

    def to_json(self) -> dict:
        return {"mld": self.mld, "size": self.size, "expected_mistakes": self.expected_mistakes,
                "lower_half_mld": self.lower, "upper_wm_bound": self.upper,
                "vacuous": self.vacuous, "sequence": [list(s) for s in self.sequence],
                "checks": self.checks}


def wm_repdim_experiment(H: HypothesisClass, rep: ProbabilisticRepresentation,
                         caps: Caps = DEFAULT_CAPS) -> WMExperiment:
    """Exact worst-case expected mistakes of the representation learner over ``mld(H)`` rounds.

    Reports the adversary's lower bound ``d/2``, the weighted-majority upper
    bound ``3d/8 + sqrt(size * d / 2)`` and whether ``d/32 <= size``.
    """
    d = mld(H, caps)
    size = rep.size
    if d == 0:
        return WMExperiment(0, size, 0.0, 0.0, 0.0, True, [])
    res = adversary_search(H, lambda: RepresentationWM(rep, d), d, caps)
    upper = 3 * d / 8 + math.sqrt(0.5 * size * d)
    return WMExperiment(d, size, res.mistakes, d / 2, upper, False, res.sequence)
