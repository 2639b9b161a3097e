import time

import pytest

from stabmod import cobar


@pytest.mark.parametrize("variant,i_max", [("graded", 2), ("graded", 3),
                                           ("ungraded", 3)])
def test_coalgebra_axioms(variant, i_max):
    co = cobar.TruncatedCoalgebra(7, variant, i_max)
    assert co.check_counit()
    assert co.check_coassociativity()
    assert not co.truncation_hit


def test_d_squared_zero_on_generators():
    co = cobar.TruncatedCoalgebra(7, "ungraded", 3)
    for key in co.gens:
        d1 = cobar.cobar_d(co, {((key, 1),): 1}, 1)
        assert cobar.cobar_d(co, d1, 2) == {}


@pytest.mark.parametrize("p", [7, 11])
def test_named_cocycles(p):
    rows = cobar.verify_named_cocycles(p)
    assert rows
    for row in rows:
        assert row["is_cocycle"] == row["expected_cocycle"], row
        assert not row["truncated"]
        assert not row["conditional"]


def test_conditional_items_need_the_extra_coproduct():
    rows = cobar.verify_named_cocycles(7, assume_coproduct_t4=True)
    cond = [r for r in rows if r["conditional"]]
    assert {r["name"] for r in cond} == {"zeta4_rep", "zeta4_lift"}
    for row in rows:
        assert row["is_cocycle"] == row["expected_cocycle"], row


def test_known_residuals_are_single_terms():
    co = cobar.TruncatedCoalgebra(7, "ungraded", 3)
    named = cobar.named_cochains(co)
    deg, t2 = named["t2"]
    res = cobar.cobar_d(co, t2, deg)
    assert len(res) == 1                       # t1 (x) t1^p
    deg, verb = named["h10eta2_lift_displayed"]
    res = cobar.cobar_d(co, verb, deg)
    assert len(res) == 1
    assert set(res.values()) == {2}            # 2 * t1 (x) t1^p (x) t1


def test_corrected_two_cocycle_vanishes():
    for variant in ("graded", "ungraded"):
        co = cobar.TruncatedCoalgebra(7, variant, 3)
        deg, c = cobar.named_cochains(co)["h10eta2_lift_corrected"]
        assert cobar.cobar_d(co, c, deg) == {}


def test_small_prime_rejected():
    with pytest.raises(ValueError):
        cobar.verify_named_cocycles(5)


def test_runs_fast():
    t0 = time.monotonic()
    cobar.verify_named_cocycles(7)
    assert time.monotonic() - t0 < 1.0
