"""Seeded experiment recipes shared by the CLI and the test-suite."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .caps import DEFAULT_CAPS, Caps
from .dimensions import littlestone_dim, mld
from .hypothesis import (ClassError, HypothesisClass, amplify, binary_restrictions, bit_width,
                         label_bit, make_point_function_class, make_threshold_pair_class,
                         product_class)
from .privacy import (accuracy_eval, data_universe, dp_verify, plan_equal, reduction_distribution,
                      reduction_learner, union_bound_rows)
from .rng import make_rng


@dataclass
class Check:
    name: str
    lhs: object
    rhs: object
    verdict: str
    anchor: str = ""

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, Fraction):
                return f"{v.numerator}/{v.denominator}"
            return v
        return {"name": self.name, "lhs": enc(self.lhs), "rhs": enc(self.rhs),
                "verdict": self.verdict, "anchor": self.anchor}


def check(name: str, lhs, rhs, holds: bool, anchor: str = "") -> Check:
    return Check(name, lhs, rhs, "pass" if holds else "fail", anchor)


def uniform(domain_size: int) -> list[Fraction]:
    return [Fraction(1, domain_size)] * domain_size


def draw_sample(rng, f: Sequence[int], n: int, D: Sequence[Fraction]) -> tuple[tuple[int, int], ...]:
    xs = rng.choice(len(f), size=n, p=[float(w) for w in D])
    return tuple((int(x), int(f[int(x)])) for x in xs)


@dataclass
class EndToEnd:
    sample: tuple
    hypothesis: tuple[int, ...]
    parts: list
    error: Fraction
    part_errors: list[Fraction]
    union_rows: list[tuple[int, int]]
    dp_passed: bool | None
    dp_pairs: int
    checks: list[Check] = field(default_factory=list)

    def to_json(self) -> dict:
        fr = lambda v: f"{v.numerator}/{v.denominator}"
        return {"hypothesis": list(self.hypothesis), "parts": [list(p) for p in self.parts],
                "error": fr(self.error), "error_float": float(self.error),
                "part_errors": [fr(e) for e in self.part_errors],
                "union_bound": [list(r) for r in self.union_rows],
                "dp": {"passed": self.dp_passed, "pairs": self.dp_pairs},
                "n": len(self.sample)}


def end_to_end(H: HypothesisClass, concept: int, n: int, eps, seed: int,
               D: Sequence[Fraction] | None = None, dp_positions: int | None = None) -> EndToEnd:
    """Sample, run the reduction once, and audit accuracy and privacy.

    ``dp_positions`` limits the exact DP check to neighbours that change the
    first that many sample positions (``None`` checks every position, ``0``
    skips the check).
    """
    if not 0 <= concept < len(H):
        raise ClassError(f"concept index {concept} outside 0..{len(H) - 1}")
    f = H.rows[concept]
    D = uniform(H.domain_size) if D is None else [Fraction(w) for w in D]
    rng = make_rng(seed)
    sample = draw_sample(rng, f, n, D)
    plan = plan_equal(n, H.k)
    run = reduction_learner(H, sample, plan, eps, rng)
    err = accuracy_eval(run.hypothesis, D, f)
    width = H.bits
    part_errs = [accuracy_eval(g, D, tuple(label_bit(y, i, width) for y in f))
                 for i, g in enumerate(run.parts, start=1)]
    rows = union_bound_rows(H, run, f)
    checks = [check("pointwise_union_bound", max(a - b for a, b in rows), 0,
                    all(a <= b for a, b in rows), "1[g != f] <= sum_i 1[g_i != f_i]"),
              check("error_le_sum_part_errors", err, sum(part_errs), err <= sum(part_errs),
                    "Pr[g != f] <= sum_i Pr[g_i != f_i]")]
    dp_ok, n_pairs = None, 0
    positions = n if dp_positions is None else min(n, dp_positions)
    if positions > 0:
        universe = data_universe(H.domain_size, H.k)
        pairs = []
        for j in range(positions):
            for u in universe:
                if u != sample[j]:
                    pairs.append((sample, sample[:j] + (u,) + sample[j + 1:]))
        rep = dp_verify(lambda ds: reduction_distribution(H, ds, plan, eps, False), pairs, eps,
                        with_slack=False)
        dp_ok, n_pairs = rep.passed, rep.pairs
        checks.append(check("reduction_pure_dp", len(rep.violations), 0, rep.passed,
                            "composite output passes (eps, 0) on neighbours"))
    return EndToEnd(sample, run.hypothesis, run.parts, err, part_errs, rows, dp_ok, n_pairs, checks)


def snapshot_class() -> HypothesisClass:
    """The k = 3 product of two 1-point classes on a 4-point domain used for regression runs."""
    return product_class([make_point_function_class(1, 4)] * 2, 3)


def point_product(d: int, bits: int) -> HypothesisClass:
    """Product of ``bits`` copies of the ``d``-point class on ``2 d bits`` points."""
    k = (1 << bits) - 1
    return product_class([make_point_function_class(d, 2 * d * bits)] * bits, k)


def tightness(k: int, d: int, caps: Caps = DEFAULT_CAPS) -> list[Check]:
    """Gap amplification of the threshold-pair class and the point-function product."""
    out: list[Check] = []
    B = bit_width(k)
    if d == 0:
        single = HypothesisClass([(0,)], k, 1)
        m0 = mld(single, caps)
        out.append(check("zero_dimension_trivial", m0, 0, m0 == 0, "single function class"))
        return out
    if k >= 5:
        F = make_threshold_pair_class(k)
        A = amplify(F, d, caps)
        mA = mld(A, caps)
        dims = [littlestone_dim(R, caps) for R in binary_restrictions(A)]
        need = math.ceil(d / 10 * math.log2(k + 1))
        out.append(check("amplified_mld_equals_d", mA, d, mA == d, "MLD of l-fold product is l*MLD"))
        out.append(check("amplified_max_binary_ld_ge_gap", max(dims), need, max(dims) >= need,
                         "max_i d_i >= (d/10) log2(k+1)"))
    size = math.comb(2 * d * B, d) ** B
    if size > caps.max_class_size:
        out.append(Check("point_product_mld_equals_d_bits", size, caps.max_class_size,
                         "skipped-cap", "MLD of d-point product is d log(k+1)"))
    else:
        P = product_class([make_point_function_class(d, 2 * d * B)] * B, k, caps)
        mP = mld(P, caps)
        out.append(check("point_product_mld_equals_d_bits", mP, d * B, mP == d * B,
                         "MLD of d-point product is d log(k+1)"))
    return out
