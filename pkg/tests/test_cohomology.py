import pytest

from stabmod import catalog
from stabmod.cohomology import (cohomology, cup_product,
                                euler_characteristics_match, induced_action,
                                is_palindromic, module_structure, poincare)


def one_var(r):
    out = [0] * (r.duality_top + 1)
    for d, v in r.dims.items():
        out[d.coh] += v
    return out


def test_k11_and_k21():
    assert one_var(cohomology(catalog.build_K(1, 1, 7))) == [1, 1]
    assert one_var(cohomology(catalog.build_K(2, 1, 7))) == [1, 2, 1]


@pytest.mark.parametrize("p", [7, 11])
def test_k22_series(p):
    r = cohomology(catalog.build_K(2, 2, p))
    s = poincare(r, p, 2)
    assert r.total_rank == 12
    assert s.one_var == [1, 3, 4, 3, 1]
    assert s.modulus == p + 1
    assert s.two_var == {0: [0], 1: [0, 1, p], 2: [1, 1, p, p],
                         3: [0, 1, p], 4: [0]}


def test_k22_invariants(coh_k22):
    r, _ = coh_k22
    assert is_palindromic(poincare(r, 7, 2).one_var)
    assert euler_characteristics_match(r)
    assert r.duality_top == 4


def test_unit_class_is_multiplicative_identity(coh_k22):
    r, _ = coh_k22
    unit = next(k for k in range(r.total_rank)
                if r.basis[k][0].coh == 0)
    for k in range(r.total_rank):
        assert cup_product(r, unit, k) == {k: 1}


def test_cup_product_graded_commutativity(coh_k22):
    r, _ = coh_k22
    deg1 = [k for k in range(r.total_rank) if r.basis[k][0].coh == 1]
    p = r.pres.prime
    for a in deg1:
        for b in deg1:
            ab = cup_product(r, a, b)
            ba = {k: (-c) % p for k, c in cup_product(r, b, a).items()}
            assert ab == ba


def test_induced_action_has_finite_order(coh_k22):
    r, _ = coh_k22
    act = induced_action(r)
    # iterate sigma* action_order times: must be the identity
    p = r.pres.prime
    mats = act
    for _ in range(r.pres.action_order - 1):
        nxt = {}
        for k, col in mats.items():
            acc = {}
            for j, c in col.items():
                for i, v in act[j].items():
                    acc[i] = (acc.get(i, 0) + c * v) % p
            nxt[k] = {i: v for i, v in acc.items() if v}
        mats = nxt
    assert mats == {k: {k: 1} for k in range(r.total_rank)}


def test_jobs_determinism(coh_k22):
    r1, _ = coh_k22
    r2 = cohomology(catalog.build_K(2, 2, 7), jobs=3)
    assert r1.to_json_dict() == r2.to_json_dict()
    assert [r1.rep(k).terms for k in range(r1.total_rank)] == \
        [r2.rep(k).terms for k in range(r2.total_rank)]


def test_e441_is_free_over_the_new_exterior_classes(coh_e441):
    r, _ = coh_e441
    w = [r.express(r.pres.gen(f"w1_{j}")) for j in range(2)]
    over = [next(iter(c)) for c in w]
    assert all(len(c) == 1 and list(c.values()) == [1] for c in w)
    ms = module_structure(r, over)
    assert ms["consistent"]
    assert ms == {"P": 80, "M0": 0, "M1": 0, "T": 0, "total": 320,
                  "consistent": True}


def test_rejects_invalid_presentation():
    from stabmod import dga
    g = dga.GeneratorSpec
    bad = dga.DgaPresentation(
        7, 1000, 1,
        [g("a", 1, 2, 0, "a", 1), g("b", 1, 4, 0, "b", 1),
         g("c", 1, 10, 0, "c", 1)],
        {"c": [(1, ("a", "b"))]})
    with pytest.raises(ValueError, match="invalid presentation"):
        cohomology(bad)


def test_poincare_rejects_bad_internal_unit():
    from stabmod import dga
    g = dga.GeneratorSpec
    pres = dga.DgaPresentation(7, 1000, 1, [g("a", 1, 5, 0, "a", 1)], {})
    r = cohomology(pres)
    with pytest.raises(ValueError):
        poincare(r, 7, 1)
