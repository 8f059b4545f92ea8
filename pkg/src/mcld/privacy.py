"""Private learners with exact output distributions, and a DP checker for them.

Datasets are tuples of ``(x, y)`` pairs.  Neighbouring datasets have the same
length and differ in one position.  ``epsilon`` is kept as a ``Fraction`` so
every exponential-mechanism weight is an exact ``ExpPoly`` term.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .caps import DEFAULT_CAPS, Caps
from .expdist import (ONE, ExactDistribution, ExpPoly, combine, event_slack, outcome_ratio_sign,
                      product_all, to_fraction)
from .hypothesis import (ClassError, HypothesisClass, bin2dec, binary_restriction, bit_width,
                         label_bit)
from .online import UnrealizableError

Dataset = tuple[tuple[int, int], ...]


def _errors(row: Sequence[int], sample: Iterable[tuple[int, int]]) -> int:
    return sum(1 for x, y in sample if row[x] != y)


def exp_mech(rows: Sequence[Sequence[int]], sample: Sequence[tuple[int, int]], eps) -> ExactDistribution:
    """Index ``i`` with probability proportional to ``exp(-eps * err(rows[i]) / 2)``."""
    eps = to_fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    weights = {i: ExpPoly.exp_units(_errors(r, sample), eps / 2) for i, r in enumerate(rows)}
    return ExactDistribution.from_weights(weights)


def exp_mech_learner(H: HypothesisClass, sample: Sequence[tuple[int, int]], eps) -> ExactDistribution:
    """Exponential mechanism over a binary class scored by sample error; outcomes are row indices."""
    if H.k != 1:
        raise ClassError("exp_mech_learner needs a binary class")
    for x, y in sample:
        if y not in (0, 1):
            raise ClassError(f"non-binary label {y} in sample")
        if not 0 <= x < H.domain_size:
            raise ClassError(f"sample point {x} outside the domain")
    return exp_mech(H.rows, sample, eps)


@dataclass
class DPReport:
    epsilon: Fraction
    delta: Fraction
    pairs: int = 0
    outcomes_checked: int = 0
    violations: list = field(default_factory=list)
    worst_slack: float = 0.0
    methods: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"epsilon": f"{self.epsilon.numerator}/{self.epsilon.denominator}",
                "delta": f"{self.delta.numerator}/{self.delta.denominator}",
                "pairs": self.pairs, "outcomes_checked": self.outcomes_checked,
                "passed": self.passed, "worst_slack": self.worst_slack,
                "methods": dict(sorted(self.methods.items())),
                "violations": [{"dataset": list(map(list, a)), "neighbor": list(map(list, b)),
                                "outcome": repr(o)} for a, b, o in self.violations[:20]]}


def dp_verify(mechanism: Callable[[Dataset], ExactDistribution], pairs: Iterable[tuple[Dataset, Dataset]],
              eps, delta=0, with_slack: bool = True) -> DPReport:
    """Check ``Pr[M(D) in S] <= e^eps Pr[M(D') in S] + delta`` for both directions of each pair.

    With ``delta == 0`` the check is per outcome and exact.  With ``delta > 0``
    the worst event slack is compared numerically.
    """
    eps, delta = to_fraction(eps), to_fraction(delta)
    rep = DPReport(eps, delta)
    cache: dict = {}

    def dist(ds):
        d = cache.get(ds)
        if d is None:
            d = cache[ds] = mechanism(ds)
        return d

    for a, b in pairs:
        rep.pairs += 1
        for D, D2 in ((a, b), (b, a)):
            p, q = dist(D), dist(D2)
            if with_slack or delta > 0:
                rep.worst_slack = max(rep.worst_slack, event_slack(p, q, eps))
            if delta > 0:
                if rep.worst_slack > float(delta):
                    rep.violations.append((D, D2, "event"))
                continue
            for o in set(p.num) | set(q.num):
                rep.outcomes_checked += 1
                sgn, how = outcome_ratio_sign(p, q, o, eps)
                rep.methods[how] = rep.methods.get(how, 0) + 1
                if sgn < 0:
                    rep.violations.append((D, D2, o))
    return rep


def data_universe(domain_size: int, k: int) -> list[tuple[int, int]]:
    return [(x, y) for x in range(domain_size) for y in range(k + 1)]


def neighbors(ds: Dataset, universe: Sequence[tuple[int, int]]) -> list[Dataset]:
    out = []
    for j, pt in enumerate(ds):
        for u in universe:
            if u != pt:
                out.append(ds[:j] + (u,) + ds[j + 1:])
    return out


def neighbor_pairs(datasets: Iterable[Dataset], universe: Sequence[tuple[int, int]],
                   ordered: bool = True) -> list[tuple[Dataset, Dataset]]:
    """Every neighbouring pair touching ``datasets``, each unordered pair once.

    With ``ordered=False`` datasets are treated as multisets (sorted), which is
    enough for mechanisms that ignore the order of the sample.
    """
    seen = set()
    out = []
    for ds in datasets:
        ds = tuple(ds) if ordered else tuple(sorted(ds))
        for nb in neighbors(ds, universe):
            if not ordered:
                nb = tuple(sorted(nb))
            key = (ds, nb) if ds <= nb else (nb, ds)
            if key not in seen and ds != nb:
                seen.add(key)
                out.append(key)
    return out


def all_datasets(universe: Sequence[tuple[int, int]], n: int, ordered: bool = True) -> list[Dataset]:
    if ordered:
        return list(itertools.product(universe, repeat=n))
    return list(itertools.combinations_with_replacement(universe, n))


def random_datasets(rng, universe: Sequence[tuple[int, int]], n: int, count: int) -> list[Dataset]:
    idx = rng.integers(0, len(universe), size=(count, n))
    return [tuple(universe[int(i)] for i in row) for row in idx]


@dataclass(frozen=True)
class ReductionPlan:
    """Sample sizes per label bit; partition ``i`` is the ``i``-th contiguous block."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        if not self.sizes or any(s < 1 for s in self.sizes):
            raise ValueError("every partition needs a positive size")

    @property
    def total(self) -> int:
        return sum(self.sizes)

    @property
    def bits(self) -> int:
        return len(self.sizes)

    def split(self, sample: Sequence) -> list[tuple]:
        if len(sample) != self.total:
            raise ValueError(f"sample has {len(sample)} points, plan needs {self.total}")
        out, start = [], 0
        for s in self.sizes:
            out.append(tuple(sample[start:start + s]))
            start += s
        return out

    def to_json(self) -> dict:
        return {"sizes": list(self.sizes), "total": self.total}


def plan_equal(n: int, k: int) -> ReductionPlan:
    """Split ``n`` points as evenly as possible over the ``B`` label bits."""
    b = bit_width(k)
    if n < b:
        raise ValueError(f"need at least {b} points for {b} partitions")
    return ReductionPlan(tuple(n // b + (1 if i < n % b else 0) for i in range(b)))


def check_realizable(H: HypothesisClass, sample: Sequence[tuple[int, int]]) -> None:
    for r in H.rows:
        if all(r[x] == y for x, y in sample):
            return
    raise UnrealizableError("no function in the class labels the sample")


def compose_bits(parts: Sequence[Sequence[int]], k: int) -> tuple[int, ...]:
    """Pointwise decode of bit functions ``g_1..g_B`` into a label function."""
    return tuple(bin2dec(bits, k) for bits in zip(*parts))


def _relabel(part, i: int, width: int):
    return tuple((x, label_bit(y, i, width)) for x, y in part)


def reduction_parts(H: HypothesisClass, sample: Sequence[tuple[int, int]], plan: ReductionPlan, eps,
                    realizable: bool = True, learners=None):
    """Restriction classes and the exact per-partition learner distributions.

    ``learners`` optionally gives one ``(R, sample, eps) -> distribution over
    row indices of R`` per bit; the default is the exponential mechanism.
    """
    if plan.bits != H.bits:
        raise ValueError(f"plan has {plan.bits} partitions, class needs {H.bits}")
    if realizable:
        check_realizable(H, sample)
    width = H.bits
    restrictions = [binary_restriction(H, i) for i in range(1, width + 1)]
    learners = learners or [exp_mech_learner] * width
    if len(learners) != width:
        raise ValueError(f"need {width} per-bit learners, got {len(learners)}")
    dists = [learn(R, _relabel(part, i, width), eps) for i, (learn, R, part) in
             enumerate(zip(learners, restrictions, plan.split(sample)), start=1)]
    return restrictions, dists


def reduction_distribution(H: HypothesisClass, sample: Sequence[tuple[int, int]], plan: ReductionPlan,
                           eps, realizable: bool = True, composite: bool = True,
                           learners=None) -> ExactDistribution:
    """Exact output distribution of the reduction.

    Outcomes are tuples of restriction-row indices, or with ``composite`` the
    decoded label functions.  ``realizable=False`` skips the sample check so
    the mechanism is defined on every dataset, as a DP analysis requires.
    """
    restrictions, dists = reduction_parts(H, sample, plan, eps, realizable, learners)
    joint = product_all(dists)
    if not composite:
        return joint
    return joint.pushforward(lambda idx: compose_bits(
        [R.rows[j] for R, j in zip(restrictions, idx)], H.k))


@dataclass
class ReductionRun:
    hypothesis: tuple[int, ...]
    parts: list[tuple[int, ...]]
    plan: ReductionPlan


def reduction_learner(H: HypothesisClass, sample: Sequence[tuple[int, int]], plan: ReductionPlan, eps,
                      rng, learners=None) -> ReductionRun:
    """Draw one output of the reduction: one binary learner per bit, then decode."""
    restrictions, dists = reduction_parts(H, sample, plan, eps, True, learners)
    parts = [R.rows[d.sample(rng)] for R, d in zip(restrictions, dists)]
    return ReductionRun(compose_bits(parts, H.k), parts, plan)


def union_bound_rows(H: HypothesisClass, run: ReductionRun, f: Sequence[int]) -> list[tuple[int, int]]:
    """Per point: ``(1[g != f], sum_i 1[g_i != f_i])``."""
    width = H.bits
    out = []
    for x in range(H.domain_size):
        lhs = int(run.hypothesis[x] != f[x])
        rhs = sum(int(g[x] != label_bit(f[x], i, width)) for i, g in enumerate(run.parts, start=1))
        out.append((lhs, rhs))
    return out


@dataclass
class CompositionReport:
    parts: DPReport
    composite: DPReport

    @property
    def post_processing_ok(self) -> bool:
        return self.composite.worst_slack <= self.parts.worst_slack + 1e-12

    @property
    def passed(self) -> bool:
        return self.parts.passed and self.composite.passed and self.post_processing_ok


def parallel_composition_check(H: HypothesisClass, plan: ReductionPlan, eps, datasets: Iterable[Dataset],
                               delta=0, universe=None) -> CompositionReport:
    """DP of the reduction on all neighbours of ``datasets``, before and after decoding."""
    if universe is None:
        universe = data_universe(H.domain_size, H.k)
    pairs = neighbor_pairs(datasets, universe, ordered=True)
    raw = dp_verify(lambda ds: reduction_distribution(H, ds, plan, eps, False, composite=False),
                    pairs, eps, delta)
    comp = dp_verify(lambda ds: reduction_distribution(H, ds, plan, eps, False, composite=True),
                     pairs, eps, delta)
    return CompositionReport(raw, comp)


def select_among(candidates: Sequence[Sequence[int]], sample: Sequence[tuple[int, int]], eps) -> ExactDistribution:
    """Selection step of confidence boosting: exponential mechanism over candidate indices."""
    return exp_mech(candidates, sample, eps)


def confidence_boost(base: ExactDistribution, reps: int, fresh_sample: Sequence[tuple[int, int]], eps,
                     caps: Caps = DEFAULT_CAPS) -> ExactDistribution:
    """Draw ``reps`` independent outputs of ``base`` and pick one by exponential mechanism.

    ``base`` has function tuples as outcomes; so does the result, computed
    exactly by enumerating the ``reps``-fold product.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    eps = to_fraction(eps)
    support = sorted(base.num)
    caps.check("max_enumeration", len(support) ** reps)
    base_den = ONE
    for _ in range(reps):
        base_den = base_den * base.den
    errs = {h: _errors(h, fresh_sample) for h in support}
    terms = []
    for combo in itertools.product(support, repeat=reps):
        w = ONE
        for h in combo:
            w = w * base.num[h]
        num: dict = {}
        Z = ExpPoly()
        for h in combo:
            e = ExpPoly.exp_units(errs[h], eps / 2)
            Z = Z + e
            num[h] = num[h] + e if h in num else e
        terms.append((w, base_den * Z, num))
    return combine(terms)


def accuracy_eval(h: Sequence[int], D: Sequence, f: Sequence[int]) -> Fraction:
    """``Pr_{x ~ D}[h(x) != f(x)]`` as an exact rational."""
    weights = [to_fraction(w) for w in D]
    if len(weights) != len(h) or len(h) != len(f):
        raise ValueError("hypothesis, target and distribution must share the domain")
    if any(w < 0 for w in weights) or sum(weights) != 1:
        raise ValueError("distribution weights must be non-negative and sum to 1")
    return sum((w for w, a, b in zip(weights, h, f) if a != b), Fraction(0))
