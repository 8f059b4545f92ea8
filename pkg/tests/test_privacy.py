import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from mcld.expdist import ONE, ExactDistribution, ExpPoly, event_slack, mixture, outcome_ratio_sign
from mcld.hypothesis import (ClassError, HypothesisClass, constant_class, make_point_function_class,
                             make_threshold_class, product_class)
from mcld.online import UnrealizableError
from mcld.privacy import (ReductionPlan, accuracy_eval, all_datasets, compose_bits,
                          confidence_boost, data_universe, dp_verify, exp_mech, exp_mech_learner,
                          neighbor_pairs, neighbors, parallel_composition_check, plan_equal,
                          random_datasets, reduction_distribution, reduction_learner, select_among,
                          union_bound_rows)
from mcld.rng import make_rng

import oracles

CONSTS = HypothesisClass([(0,), (1,)], 1)


# exact exponential arithmetic -------------------------------------------------

def test_exppoly_algebra():
    a = ExpPoly.exp(Fraction(1, 2), 3)
    b = ExpPoly.exp(Fraction(1, 3), -2)
    s = a + b
    assert float(s.value()) == pytest.approx(3 * math.exp(-0.5) - 2 * math.exp(-1 / 3))
    assert (s - s).is_zero()
    assert (a * b).key() == ExpPoly.exp(Fraction(5, 6), -6).key()
    assert a.shift(Fraction(1, 2)) == ExpPoly.exp(1, 3)
    assert ExpPoly.const(2) * 3 == ExpPoly.const(6)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 12), st.integers(-5, 5)), min_size=1, max_size=6))
def test_exppoly_sign_matches_high_precision(terms):
    p = ExpPoly()
    for j, c in terms:
        p = p + ExpPoly.exp_units(j, Fraction(1, 4), c)
    sgn, how = p.sign()
    with mpmath.workdps(120):
        v = mpmath.fsum(c * mpmath.exp(-mpmath.mpf(j) / 4) for j, c in terms)
        expect = 0 if p.is_zero() else (1 if v > 0 else -1)
    assert sgn == expect


def test_dominance_certificate():
    # 1 - e^-1 is positive by prefix sums alone
    p = ExpPoly.const(1) - ExpPoly.exp(1)
    assert p.dominance_certificate()
    assert p.sign() == (1, "dominance")
    # e^-1 - 1/3 > 0 needs the numeric fallback
    q = ExpPoly.exp(1) - ExpPoly.const(Fraction(1, 3))
    assert q.sign() == (1, "interval")
    assert (q - q).sign() == (0, "exact-zero")


def test_distribution_helpers():
    d = ExactDistribution.point("h")
    assert d.probabilities() == {"h": 1.0}
    m = mixture([(Fraction(1, 4), ExactDistribution.point(0)), (Fraction(3, 4), ExactDistribution.point(1))])
    assert m.prob(0) == pytest.approx(0.25) and m.total_check()
    pr = m.product(ExactDistribution.point("a"))
    assert pr.prob((1, "a")) == pytest.approx(0.75)


# exponential mechanism ---------------------------------------------------------

def test_exp_mech_examples():
    single = constant_class([0], 1, 2)
    assert exp_mech_learner(single, ((0, 1),), 1).probabilities() == {0: 1.0}
    d = exp_mech_learner(CONSTS, ((0, 1),) * 3, 2)
    p = d.probabilities()
    assert p[1] / p[0] == pytest.approx(math.e ** 3)
    probs = [exp_mech_learner(CONSTS, ((0, 1),), e).prob(1) for e in (1, 5, 20)]
    assert probs == sorted(probs) and probs[-1] > 0.9999


def test_exp_mech_matches_float_formula():
    H = make_threshold_class(4)
    sample = ((0, 1), (2, 0), (3, 0), (1, 1))
    exact = exp_mech_learner(H, sample, Fraction(3, 2)).probabilities()
    ref = oracles.exp_mech_probs(H.rows, sample, 1.5)
    for i, r in enumerate(H.rows):
        assert exact[i] == pytest.approx(ref[r], rel=1e-12)


def test_exp_mech_input_validation():
    with pytest.raises(ClassError):
        exp_mech_learner(CONSTS, ((3, 0),), 1)
    with pytest.raises(ClassError):
        exp_mech_learner(HypothesisClass([(0,), (2,)], 2), ((0, 0),), 1)


# dp_verify ---------------------------------------------------------------------

def test_identical_distributions_have_no_slack():
    d = exp_mech_learner(CONSTS, ((0, 0),), 1)
    assert event_slack(d, d, Fraction(0)) <= 0
    for o in d.support:
        assert outcome_ratio_sign(d, d, o, Fraction(0))[0] >= 0


def test_exp_mech_passes_and_doubled_eps_fails():
    H = make_threshold_class(3)
    uni = data_universe(3, 1)
    pairs = neighbor_pairs(all_datasets(uni, 3, ordered=False), uni, ordered=False)
    eps = Fraction(1)
    ok = dp_verify(lambda ds: exp_mech_learner(H, ds, eps), pairs, eps)
    assert ok.passed and ok.worst_slack <= 0
    bad = dp_verify(lambda ds: exp_mech_learner(H, ds, 2 * eps), pairs, eps)
    assert not bad.passed and bad.worst_slack > 0


def test_delta_mode_uses_event_slack():
    pairs = [(((0, 0),), ((0, 1),))]
    r = dp_verify(lambda ds: exp_mech_learner(CONSTS, ds, 2), pairs, 1, delta=Fraction(1, 2))
    assert r.passed
    r = dp_verify(lambda ds: exp_mech_learner(CONSTS, ds, 8), pairs, 1, delta=Fraction(1, 100))
    assert not r.passed


def test_neighbors():
    uni = data_universe(2, 1)
    nb = neighbors(((0, 0), (1, 1)), uni)
    assert len(nb) == 2 * 3
    assert all(sum(a != b for a, b in zip(n, ((0, 0), (1, 1)))) == 1 for n in nb)
    pairs = neighbor_pairs([((0, 0),)], uni)
    assert len(pairs) == 3


# reduction ---------------------------------------------------------------------

def test_plan_and_compose():
    assert plan_equal(5, 3).sizes == (3, 2)
    with pytest.raises(ValueError):
        plan_equal(1, 3)
    with pytest.raises(ValueError):
        ReductionPlan((2, 0))
    assert compose_bits([(1, 0), (1, 1)], 3) == (3, 1)
    assert compose_bits([(1,), (1,)], 2) == (2,)


def test_reduction_k1_is_the_binary_learner():
    H = make_threshold_class(3)
    sample = ((0, 1), (2, 0))
    d = reduction_distribution(H, sample, plan_equal(2, 1), 1)
    base = exp_mech_learner(H, sample, 1).pushforward(lambda i: H.rows[i])
    assert d.probabilities() == pytest.approx(base.probabilities())


def test_reduction_singleton_parts_are_deterministic():
    a = HypothesisClass([(0, 1)], 1)
    b = HypothesisClass([(1, 1)], 1)
    H = product_class([a, b], 3)
    f = H.rows[0]
    sample = ((0, f[0]), (1, f[1]))
    run = reduction_learner(H, sample, plan_equal(2, 3), 1, make_rng(0))
    assert run.hypothesis == f


def test_reduction_rejects_unrealizable_sample():
    H = product_class([make_point_function_class(1, 2)] * 2, 3)
    with pytest.raises(UnrealizableError):
        reduction_learner(H, ((0, 0), (1, 0)), plan_equal(2, 3), 1, make_rng(0))


def test_union_bound_over_seeded_runs():
    H = product_class([make_point_function_class(1, 4)] * 2, 3)
    f = H.rows[5]
    rng = make_rng(8)
    D = [Fraction(1, 4)] * 4
    for _ in range(50):
        xs = rng.integers(0, 4, size=6)
        sample = tuple((int(x), f[int(x)]) for x in xs)
        run = reduction_learner(H, sample, plan_equal(6, 3), 1, rng)
        assert all(a <= b for a, b in union_bound_rows(H, run, f))
        parts = [accuracy_eval(g, D, tuple((y >> (2 - i)) & 1 for y in f)) for i, g in
                 enumerate(run.parts, start=1)]
        assert accuracy_eval(run.hypothesis, D, f) <= sum(parts)


def test_parallel_composition():
    H = product_class([make_point_function_class(1, 2)] * 2, 3)
    plan = plan_equal(2, 3)
    uni = data_universe(2, 3)
    rep = parallel_composition_check(H, plan, 1, all_datasets(uni, 2))
    assert rep.passed and rep.post_processing_ok


def test_untouched_partition_keeps_its_marginal():
    H = product_class([make_point_function_class(1, 2)] * 2, 3)
    plan = plan_equal(2, 3)
    a = reduction_distribution(H, ((0, 1), (1, 0)), plan, 1, False, composite=False)
    b = reduction_distribution(H, ((0, 1), (1, 3)), plan, 1, False, composite=False)
    ma = a.pushforward(lambda o: o[0]).probabilities()
    mb = b.pushforward(lambda o: o[0]).probabilities()
    assert ma == pytest.approx(mb)


# boosting and accuracy ---------------------------------------------------------

def test_boost_single_rep_is_identity():
    base = ExactDistribution.from_weights({(0, 1): ONE, (1, 1): ONE})
    boosted = confidence_boost(base, 1, ((0, 0),), 1)
    assert boosted.probabilities() == pytest.approx(base.probabilities())


def test_boost_failure_of_all_candidates():
    good, bad = (0, 0), (1, 1)
    base = ExactDistribution.from_weights({good: ONE, bad: ONE})
    boosted = confidence_boost(base, 4, ((0, 0), (1, 0)), 50)
    assert boosted.total_check()
    # all four candidates bad with probability 1/16; otherwise a good one wins almost surely
    assert boosted.prob(bad) == pytest.approx(1 / 16, abs=1e-6)


def test_selection_step_is_private():
    cands = [(0, 0), (1, 1), (0, 1)]
    uni = data_universe(2, 1)
    pairs = neighbor_pairs(all_datasets(uni, 2), uni)
    assert dp_verify(lambda ds: select_among(cands, ds, 1), pairs, 1).passed


def test_accuracy_eval():
    assert accuracy_eval((0, 1, 1), [Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)], (0, 0, 1)) == Fraction(1, 4)
    with pytest.raises(ValueError):
        accuracy_eval((0,), [Fraction(1, 2)], (0,))


def test_random_datasets_shape():
    uni = data_universe(3, 1)
    ds = random_datasets(make_rng(1), uni, 5, 4)
    assert len(ds) == 4 and all(len(d) == 5 and set(d) <= set(uni) for d in ds)


def test_exp_mech_raw_indices():
    d = exp_mech([(0,), (1,)], ((0, 1),), 2)
    assert set(d.support) == {0, 1}


def test_per_bit_learners_are_pluggable():
    H = product_class([make_point_function_class(1, 2)] * 2, 3)
    plan = plan_equal(2, 3)
    sample = ((0, 1), (1, 2))
    default = reduction_distribution(H, sample, plan, 1)
    same = reduction_distribution(H, sample, plan, 1, learners=[exp_mech_learner] * 2)
    assert default.probabilities() == same.probabilities()
    first = lambda R, part, eps: ExactDistribution.point(0)
    idx = reduction_distribution(H, sample, plan, 1, composite=False,
                                 learners=[first, exp_mech_learner])
    assert {o[0] for o in idx.support} == {0} and len(idx.support) > 1
    idx = reduction_distribution(H, sample, plan, 1, composite=False, learners=[first, first])
    assert list(idx.support) == [(0, 0)]
    with pytest.raises(ValueError):
        reduction_distribution(H, sample, plan, 1, learners=[first])
