import math

import pytest
from hypothesis import given, settings, strategies as st

from mcld.caps import Caps, CapExceeded
from mcld.dimensions import (BoundViolation, MapFamily, dimension_report, family_psi_b,
                             family_psi_bin, family_psi_n, iter_splits, littlestone_dim, mld,
                             psi_ld, psi_ld_uniform, sauer_sum)
from mcld.hypothesis import (ClassError, HypothesisClass, all_functions, binary_restrictions,
                             constant_class, make_point_function_class, make_threshold_class,
                             make_threshold_pair_class, product_class, random_class)
from mcld.rng import make_rng

import oracles


@st.composite
def small_classes(draw, max_domain=3, max_k=4, max_size=10):
    m = draw(st.integers(1, max_domain))
    k = draw(st.integers(1, max_k))
    rows = draw(st.lists(st.tuples(*[st.integers(0, k)] * m), min_size=1, max_size=max_size))
    return HypothesisClass(rows, k, m)


def test_mld_examples():
    assert mld(constant_class([1], 2, 3)) == 0
    assert mld(make_threshold_pair_class(5)) == 1
    assert mld(all_functions(2, 2)) == 2
    assert oracles.literal_mld(all_functions(2, 2).rows, 2, 2) == 2


def test_littlestone_examples():
    assert littlestone_dim(HypothesisClass([(0,), (1,)], 1)) == 1
    T = make_threshold_class(3)
    assert littlestone_dim(T) == oracles.ldim_binary(T.rows)
    assert littlestone_dim(make_point_function_class(1, 5)) == 1
    with pytest.raises(ClassError):
        littlestone_dim(all_functions(2, 1))


def test_family_sizes():
    assert family_psi_n(1).maps == ((0, 1),)
    assert len(family_psi_bin(3)) == 2
    assert len(family_psi_b(2)) == 12
    assert len(family_psi_n(4)) == 10
    with pytest.raises(CapExceeded):
        family_psi_b(6, Caps(max_psi_b_maps=100))


def test_map_family_validation():
    with pytest.raises(ClassError):
        MapFamily(((0, 2),), 1)
    with pytest.raises(ClassError):
        MapFamily(((0, 1, 1),), 1)
    with pytest.raises(ClassError):
        psi_ld(all_functions(2, 1), family_psi_bin(3))


def test_psi_examples():
    single = constant_class([0], 3, 2)
    for fam in (family_psi_n(3), family_psi_bin(3), family_psi_b(3)):
        assert psi_ld(single, fam) == 0
        if len(fam) <= 16:
            assert psi_ld_uniform(single, fam) == 0
    assert psi_ld(all_functions(3, 1), family_psi_b(3)) == 2
    assert psi_ld(all_functions(3, 1), family_psi_n(3)) == 1
    a = HypothesisClass([(0, 0), (1, 0)], 1)
    b = HypothesisClass([(0, 0), (0, 1)], 1)
    P = product_class([a, b], 3)
    assert psi_ld_uniform(P, family_psi_bin(3)) >= 1


def test_bipartition_mode_matches_explicit_maps():
    rng = make_rng(11)
    for _ in range(60):
        H = random_class(rng, max_domain=3, max_k=4, max_size=14)
        fam = family_psi_b(H.k)
        assert psi_ld(H, fam) == psi_ld(H, fam, explicit_maps=True)
        fam_n = family_psi_n(H.k)
        assert psi_ld(H, fam_n) == psi_ld(H, fam_n, explicit_maps=True)


def test_oracle_equivalence_micro_literal():
    # every tree shape enumerated without pruning
    rng = make_rng(5)
    for _ in range(15):
        H = random_class(rng, max_domain=2, max_k=2, max_size=6)
        assert mld(H) == oracles.literal_mld(H.rows, H.k, H.domain_size)


@settings(max_examples=80, deadline=None)
@given(small_classes())
def test_recursions_match_explicit_tree_search(H):
    m, k = H.domain_size, H.k
    assert mld(H) == oracles.oracle_mld(H.rows, k, m)
    assert psi_ld(H, family_psi_n(k)) == oracles.oracle_psi(H.rows, m, oracles.maps_psi_n(k))
    assert psi_ld(H, family_psi_bin(k)) == oracles.oracle_psi(H.rows, m, oracles.maps_psi_bin(k))
    assert psi_ld_uniform(H, family_psi_bin(k)) == oracles.oracle_psi_uniform(
        H.rows, m, oracles.maps_psi_bin(k))
    if k <= 3:
        assert psi_ld(H, family_psi_b(k)) == oracles.oracle_psi(H.rows, m, oracles.maps_psi_b(k))


@settings(max_examples=60, deadline=None)
@given(small_classes())
def test_dimension_chain(H):
    r = dimension_report(H)
    assert r.psi_n == r.mld
    assert r.max_binary_dim <= r.psi_bin_uniform <= r.psi_bin
    if r.psi_b is not None:
        assert r.psi_bin <= r.psi_b
    assert r.max_binary_dim <= 6 * r.mld * math.log(H.k + 1) + 1e-12
    assert r.mld <= r.max_binary_dim * H.bits
    assert all(c.holds for c in r.bounds_checked)


@settings(max_examples=40, deadline=None)
@given(small_classes(max_size=6))
def test_binary_dims_match_textbook_recursion(H):
    assert [littlestone_dim(R) for R in binary_restrictions(H)] == \
        [oracles.ldim_binary(R.rows) for R in binary_restrictions(H)]


def test_mld_monotone_under_subclasses():
    rng = make_rng(9)
    for _ in range(40):
        H = random_class(rng, max_size=16)
        keep = rng.random(len(H)) < 0.5
        rows = [r for r, kp in zip(H.rows, keep) if kp] or [H.rows[0]]
        assert mld(HypothesisClass(rows, H.k, H.domain_size)) <= mld(H)


def test_dimension_report_examples():
    r = dimension_report(constant_class([0], 2, 2))
    assert (r.mld, r.psi_n, r.psi_bin, r.psi_b, r.max_binary_dim) == (0, 0, 0, 0, 0)
    r = dimension_report(make_threshold_pair_class(5))
    assert r.mld == 1 and r.max_binary_dim >= 1
    names = {c.name for c in r.bounds_checked}
    assert "max_binary_ld_le_6d_ln_k1" in names and "psi_bin_le_psi_b" in names
    js = r.to_json()
    assert [c["name"] for c in js["bounds_checked"]] == sorted(c["name"] for c in js["bounds_checked"])


def test_psi_b_skipped_when_family_over_cap():
    H = HypothesisClass([(0,), (7,)], 7)
    r = dimension_report(H, Caps(max_psi_b_maps=100))
    assert r.psi_b is None


def test_strict_report_raises_on_violation(monkeypatch):
    import mcld.dimensions as dims
    monkeypatch.setattr(dims, "psi_ld_uniform", lambda *a, **k: 99)
    with pytest.raises(BoundViolation) as err:
        dims.dimension_report(all_functions(1, 2))
    assert err.value.check.name == "uniform_psi_bin_le_psi_bin"


def test_iter_splits_partitions_rows():
    H = all_functions(2, 2)
    for fam in (None, family_psi_b(2)):
        for x, tag, S0, S1 in iter_splits(H, fam, H.full_mask):
            assert S0 and S1 and not S0 & S1


def test_sauer_sum():
    assert sauer_sum(0, 5, 3) == 1
    assert sauer_sum(2, 3, 4) == 67


def test_node_cap():
    H = all_functions(1, 4)
    with pytest.raises(CapExceeded):
        mld(H, Caps(max_nodes=3))
    with pytest.raises(CapExceeded):
        mld(H, Caps(max_class_size=4))


def test_random_suite_has_no_violations():
    rng = make_rng(2024)
    for _ in range(50):
        H = random_class(rng)
        dimension_report(H)
