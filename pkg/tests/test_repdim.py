import itertools
import math
from fractions import Fraction

import pytest

from mcld.caps import Caps
from mcld.dimensions import mld
from mcld.games import (GameToleranceError, disagreement_matrix, lower_value, solve_game,
                        upper_value, worst_case_repr_error)
from mcld.hypothesis import ClassError, HypothesisClass, constant_class, make_threshold_class, random_class
from mcld.privacy import all_datasets, data_universe, dp_verify, neighbor_pairs
from mcld.repdim import (ProbabilisticRepresentation, RepresentationWM,
                         is_probabilistic_representation, point_mass, repdim_bruteforce,
                         repr_to_private_learner, wm_repdim_experiment)
from mcld.rng import make_rng

import oracles


def all_games(m, n):
    for bits in itertools.product((0, 1), repeat=m * n):
        yield [list(bits[i * n:(i + 1) * n]) for i in range(m)]


def test_game_special_cases():
    assert solve_game([[0, 1], [0, 0]]).upper == 0
    r = solve_game([[0, 1, 1]])
    assert r.lower == r.upper == 1
    r = solve_game([[1, 0], [0, 1]])
    assert r.exact and r.lower == Fraction(1, 2)


def test_game_brackets_contain_oracle_values():
    # the acceptance suite repeats this with up to four rows
    for m in range(1, 4):
        for n in range(1, 4):
            for A in all_games(m, n):
                r = solve_game(A)
                lp = oracles.game_value_lp(A)
                exact = oracles.game_value_vertex(A)
                assert r.lower <= exact <= r.upper
                assert float(r.lower) - 1e-9 <= lp <= float(r.upper) + 1e-9
                assert r.width <= Fraction(1, 10 ** 6)


def test_game_certificates_are_exact():
    rng = make_rng(4)
    for _ in range(50):
        m, n = int(rng.integers(2, 6)), int(rng.integers(2, 6))
        A = rng.integers(0, 2, size=(m, n)).tolist()
        r = solve_game(A)
        assert lower_value(A, r.d_strategy) == r.lower
        assert upper_value(A, r.g_strategy) == r.upper
        assert sum(r.d_strategy) == 1 and sum(r.g_strategy) == 1


def test_game_iteration_cap():
    # a game needing a larger support than the exact snap tries, with a tiny cap
    A = [[int(i != j) for j in range(6)] for i in range(6)]
    with pytest.raises(GameToleranceError):
        solve_game(A, tol=1e-12, caps=Caps(max_game_iterations=10), chunk=5)


def test_worst_case_repr_error():
    f = (0, 1, 1)
    G = HypothesisClass([(0, 1, 1)], 1)
    assert worst_case_repr_error(f, G).upper == 0
    G = HypothesisClass([(1, 1, 1), (0, 0, 1)], 1)
    r = worst_case_repr_error(f, G)
    assert r.lower == r.upper == Fraction(1, 2)
    assert disagreement_matrix(f, G.rows) == [[0, 1, 0], [1, 0, 0]]
    with pytest.raises(ValueError):
        worst_case_repr_error((0, 1), G)


def test_representation_validation():
    H = make_threshold_class(2)
    with pytest.raises(ClassError):
        ProbabilisticRepresentation([H], [Fraction(1, 2)])
    with pytest.raises(ClassError):
        ProbabilisticRepresentation([H, H], [Fraction(1)])
    R = ProbabilisticRepresentation([H, H], ["1/4", "3/4"])
    again = ProbabilisticRepresentation.from_json(R.to_json())
    assert again.P == R.P and R.to_json()["P"] == ["1/4", "3/4"]


def test_point_mass_self_representation_always_validates():
    rng = make_rng(41)
    for _ in range(30):
        H = random_class(rng, max_domain=3, max_k=3, max_size=8)
        for alpha, beta in ((Fraction(1, 4), Fraction(1, 8)), (Fraction(0), Fraction(0)),
                            (Fraction(1, 10), Fraction(1, 2))):
            assert is_probabilistic_representation(point_mass(H), H, alpha, beta).valid


def test_invalid_representation_detected():
    all_targets = HypothesisClass(itertools.product((0, 1), repeat=2), 1)
    G = constant_class([0], 1, 2)
    chk = is_probabilistic_representation(point_mass(G), all_targets)
    assert chk.verdict == "fail"


def test_bruteforce_bounds():
    H = make_threshold_class(3)
    res = repdim_bruteforce(H)
    assert res.best is not None
    assert res.lower == mld(H) / 32 <= res.upper
    assert res.upper <= math.log(len(H))
    assert is_probabilistic_representation(res.best, H).valid


def test_mixture_learner_is_private():
    H = make_threshold_class(3)
    R = ProbabilisticRepresentation([H, HypothesisClass(H.rows[:2], 1)], ["1/2", "1/2"])
    uni = data_universe(3, 1)
    pairs = neighbor_pairs(all_datasets(uni, 2), uni)
    assert dp_verify(lambda ds: repr_to_private_learner(R, ds, 1), pairs, 1).passed
    single = point_mass(constant_class([1], 1, 3))
    assert repr_to_private_learner(single, ((0, 0),), 1).probabilities() == {(1, 1, 1): 1.0}


def test_wm_experiment_examples():
    single = constant_class([0], 1, 2)
    e = wm_repdim_experiment(single, point_mass(single))
    assert e.vacuous and e.checks == {"vacuously_true": True}
    H = HypothesisClass(itertools.product((0, 1), repeat=2), 1)
    assert mld(H) == 2
    e = wm_repdim_experiment(H, point_mass(H))
    assert e.expected_mistakes >= 1
    assert all(e.checks.values())


def test_wm_chain_on_validated_tiny_representations():
    rng = make_rng(43)
    for _ in range(15):
        H = random_class(rng, max_domain=3, max_k=2, max_size=6)
        res = repdim_bruteforce(H)
        R = res.best or point_mass(H)
        e = wm_repdim_experiment(H, R)
        assert all(e.checks.values())


def test_representation_wm_mixes_components():
    H = make_threshold_class(2)
    R = ProbabilisticRepresentation([H, HypothesisClass(H.rows[:1], 1)], ["1/2", "1/2"])
    learner = RepresentationWM(R, 2)
    p = learner.predict_proba(1)
    assert sum(p.values()) == pytest.approx(1.0)
    c = learner.clone()
    c.update(1, 1)
    assert c.state_key() != learner.state_key()
