import random
from math import comb

from conftest import random_factor_list
from groupoid_invariants.automorphisms import aut_orbit_equivalent
from groupoid_invariants.fggroup import FgGroup
from groupoid_invariants.graded import GradedGroups
from groupoid_invariants.homology import (hk_check, iterated_kunneth,
                                          kunneth_pair, product_homology,
                                          product_k_theory)
from groupoid_invariants.sft import invariants, validate


def _graded_cyclic(n, unit_coord=1):
    g = FgGroup.cyclic(n)
    return GradedGroups({0: g}, g.element((), (unit_coord % n,)))


def test_kunneth_pair_examples():
    g = _graded_cyclic(2)
    out = kunneth_pair(g, g)
    assert out.group_at(0) == FgGroup.cyclic(2)
    assert out.group_at(1) == FgGroup.cyclic(2)  # Tor(Z/2, Z/2)
    assert out.group_at(2).is_trivial

    # tensoring with (Z in degree 0, unit 1) changes nothing
    z = FgGroup.free(1)
    unit_graded = GradedGroups({0: z}, z.element((1,), ()))
    rich = GradedGroups({0: FgGroup.from_orders([4, 0]), 1: FgGroup.cyclic(3),
                         2: FgGroup.free(2)},
                        FgGroup.from_orders([4, 0]).element((1,), (1,)))
    out = kunneth_pair(rich, unit_graded)
    for n in range(4):
        assert out.group_at(n) == rich.group_at(n)
    assert aut_orbit_equivalent(out.group_at(0), out.unit_class, rich.unit_class)

    out = kunneth_pair(_graded_cyclic(4), _graded_cyclic(6))
    assert out.group_at(0) == FgGroup.cyclic(2)
    assert out.group_at(1) == FgGroup.cyclic(2)


def test_product_homology_full_shifts():
    # n copies of the k-symbol full shift: H_l = (Z/(k-1))^C(n-1, l)
    for k in (2, 3, 4, 5):
        for n in (1, 2, 3, 4):
            factors = [validate([[k]])] * n
            h = product_homology(factors)
            for l in range(n + 2):
                assert h.group_at(l) == FgGroup.from_orders([k - 1] * comb(n - 1, l))


def test_product_homology_single_factor():
    f = validate([[2, 1], [1, 2]])
    inv = invariants(f)
    h = product_homology([f])
    assert h.group_at(0) == inv.bf
    assert h.group_at(1) == inv.k1
    assert h.unit_class == inv.unit


def test_three_times_three():
    f = validate([[3]])
    h = product_homology([f, f])
    assert h.group_at(0) == FgGroup.cyclic(2)
    assert h.group_at(1) == FgGroup.cyclic(2)
    assert h.group_at(2).is_trivial


def test_closed_form_equals_fold_and_permutation_invariance(rng):
    for _ in range(40):
        factors = random_factor_list(rng)
        closed = product_homology(factors)
        fold = iterated_kunneth(factors)
        assert closed == fold
        if closed.group_at(0).order() <= 10 ** 5:
            assert aut_orbit_equivalent(closed.group_at(0), closed.unit_class,
                                        fold.unit_class)
        shuffled = factors[:]
        rng.shuffle(shuffled)
        sh = product_homology(shuffled)
        assert sh == closed
        if closed.group_at(0).order() <= 10 ** 5:
            assert aut_orbit_equivalent(closed.group_at(0), closed.unit_class,
                                        sh.unit_class)


def test_degree_support_bound(rng):
    for _ in range(20):
        factors = random_factor_list(rng)
        h = product_homology(factors)
        assert len(h.degrees) <= len(factors) + 1


def test_k_theory_examples():
    f3 = validate([[3]])
    kk = product_k_theory([f3])
    assert kk.k0 == FgGroup.cyclic(2) and kk.k1.is_trivial
    kk = product_k_theory([f3, f3])
    assert kk.k0 == FgGroup.cyclic(2) and kk.k1 == FgGroup.cyclic(2)
    # a factor with trivial BF and trivial H_1 annihilates both K-groups
    f2 = validate([[2]])
    kk = product_k_theory([f2, f3, validate([[0, 3], [1, 0]])])
    assert kk.k0.is_trivial and kk.k1.is_trivial


def test_hk_examples(rng):
    f3, f5 = validate([[3]]), validate([[5]])
    rep = hk_check([f3, f3, f5])
    assert rep.holds
    assert rep.h_even == rep.k0 and rep.h_odd == rep.k1
    assert hk_check([validate([[7]])]).holds
    for _ in range(25):
        assert hk_check(random_factor_list(rng)).holds
