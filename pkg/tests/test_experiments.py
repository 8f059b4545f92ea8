from fractions import Fraction

import pytest

from mcld.caps import Caps
from mcld.experiments import draw_sample, end_to_end, point_product, snapshot_class, tightness, uniform
from mcld.hypothesis import ClassError
from mcld.rng import make_rng


def test_end_to_end_is_deterministic():
    H = snapshot_class()
    a = end_to_end(H, 3, 30, 1, 9, dp_positions=2).to_json()
    b = end_to_end(H, 3, 30, 1, 9, dp_positions=2).to_json()
    assert a == b and a["dp"]["passed"] and a["dp"]["pairs"] == 2 * 15


def test_end_to_end_errors_add_up():
    H = snapshot_class()
    run = end_to_end(H, 7, 12, Fraction(1, 2), 4, dp_positions=0)
    assert run.dp_passed is None
    assert run.error <= sum(run.part_errors)
    assert all(c.verdict == "pass" for c in run.checks)
    with pytest.raises(ClassError):
        end_to_end(H, len(H), 5, 1, 0)


def test_draw_sample_is_labelled_by_target():
    f = (2, 0, 1)
    s = draw_sample(make_rng(2), f, 50, uniform(3))
    assert len(s) == 50 and all(f[x] == y for x, y in s)


def test_tightness_checks():
    checks = {c.name: c.verdict for c in tightness(5, 1)}
    assert checks == {"amplified_mld_equals_d": "pass", "amplified_max_binary_ld_ge_gap": "pass",
                      "point_product_mld_equals_d_bits": "pass"}
    # C(12, 2)^3 functions for the d = 2 point product exceeds the default cap
    checks = {c.name: c.verdict for c in tightness(5, 2)}
    assert checks["amplified_mld_equals_d"] == "pass"
    assert checks["point_product_mld_equals_d_bits"] == "skipped-cap"
    capped = tightness(3, 2, Caps(max_class_size=10))
    assert [c.verdict for c in capped] == ["skipped-cap"]


def test_point_product_shape():
    P = point_product(1, 2)
    assert P.k == 3 and P.domain_size == 4 and len(P) == 16
