import warnings

import pytest

from stabmod import catalog
from stabmod.dga import check_presentation


def test_ravenel_numbers_small_indices():
    for n in range(1, 6):
        for i in range(0, n + 1):
            assert catalog.ravenel_number(n, i, 7) == max(i, 0)


def test_ravenel_numbers_recursion():
    p = 7
    for n in (2, 3, 4):
        for i in range(n + 1, 3 * n):
            assert catalog.ravenel_number(n, i, p) == \
                max(i, p * catalog.ravenel_number(n, i - n, p))


def test_ravenel_numbers_height_two_values():
    assert catalog.ravenel_number(2, 3, 7) == 7
    assert catalog.ravenel_number(2, 4, 7) == 14
    assert catalog.ravenel_number(2, 3, 11) == 11


def test_build_K_shape_and_validity():
    for n, m in ((1, 1), (2, 1), (2, 2), (3, 3)):
        k = catalog.build_K(n, m, 11)
        assert len(k.generators) == n * m
        assert check_presentation(k) == []
        assert k.action_order == n


def test_build_E_shape_and_validity():
    for level in range(0, 5):
        e = catalog.build_E(4, 4, level, 11)
        assert len(e.generators) == 8 + 2 * level
        assert check_presentation(e, strict_rav=False) == []
        assert e.internal_modulus == 2 * (11 ** 2 - 1)


def test_build_E_d2n_scheme_is_honestly_graded():
    for level in range(0, 5):
        e = catalog.build_E(4, 4, level, 11, ravenel_scheme="d_2n")
        assert check_presentation(e, strict_rav=True) == []


def test_build_E_rejects_odd_height_and_bad_level():
    with pytest.raises(ValueError):
        catalog.build_E(3, 3, 0, 7)
    with pytest.raises(ValueError):
        catalog.build_E(4, 4, 5, 7)
    with pytest.raises(ValueError):
        catalog.build_E(4, 4, 0, 7, ravenel_scheme="nope")


def test_prime_guard():
    with pytest.raises(ValueError):
        catalog.build_K(2, 2, 3)
    with pytest.raises(ValueError):
        catalog.build_K(2, 2, 4)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        catalog.build_K(4, 4, 7)
    assert any("2n+1" in str(x.message) for x in w)


def test_strategy_parameters():
    assert catalog.strategy_parameters(2, 7) == (2, 4)
    assert catalog.strategy_parameters(4, 7) == (4, 9)


def test_ideal_generators_are_action_fixed_combinations():
    k = catalog.build_K(2, 2, 7)
    gens = catalog.ideal_I(2, 2, 7, k)
    assert len(gens) == 2
    from stabmod.dga import apply_action
    for g in gens:
        # sigma permutes the ideal generators' underlying monomials
        assert set(apply_action(g).terms) <= {m for x in gens for m in x.terms}
