import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupoid_invariants.fggroup import (FgGroup, GroupHom, cokernel,
                                         direct_sum, ext_group, is_quotient,
                                         kernel_group, tensor, tor)
from groupoid_invariants.intmatrix import IntMatrix

small_orders = st.lists(st.sampled_from([0, 0, 2, 2, 3, 4, 4, 5, 6, 8, 9, 12]),
                        min_size=0, max_size=4)
small_groups = small_orders.map(FgGroup.from_orders)


def test_canonicalization():
    assert FgGroup.from_orders([2, 3]) == FgGroup.cyclic(6)
    assert FgGroup.from_orders([2, 4]) != FgGroup.cyclic(8)
    assert FgGroup.from_orders([0, 30, 4]) == FgGroup(1, (2, 60))
    assert FgGroup.from_orders([1, 1]).is_trivial
    with pytest.raises(ValueError):
        FgGroup(0, (4, 2))  # not a chain


def test_rendering():
    assert str(FgGroup.trivial()) == "0"
    assert str(FgGroup(2, (2, 4))) == "Z^2 x Z/2 x Z/4"
    assert str(FgGroup(1, ())) == "Z"
    assert str(FgGroup.cyclic(6)) == "Z/6"


def test_cokernel_examples():
    g, _ = cokernel(IntMatrix.from_rows([[-2]]))
    assert g == FgGroup.cyclic(2)
    g, _ = cokernel(IntMatrix.from_rows([[0]]))
    assert g == FgGroup.free(1)
    g, _ = cokernel(IntMatrix.from_rows([[1, -1], [-2, 1]]))
    assert g.is_trivial


def test_cokernel_order_matches_determinant():
    rng = random.Random(5)
    for _ in range(80):
        n = rng.randint(1, 4)
        m = IntMatrix(n, n, tuple(rng.randint(-5, 5) for _ in range(n * n)))
        g, _ = cokernel(m)
        det = m.det()
        if det != 0:
            assert g.order() == abs(det)
        else:
            assert not g.is_finite


def test_quotient_map_kills_columns():
    rng = random.Random(6)
    for _ in range(50):
        n = rng.randint(1, 4)
        m = IntMatrix(n, n, tuple(rng.randint(-5, 5) for _ in range(n * n)))
        g, qmap = cokernel(m)
        for j in range(n):
            col = tuple(m[i, j] for i in range(n))
            assert qmap(col).is_zero
        assert qmap((0,) * n).is_zero


def test_kernel_examples():
    for k in (2, 3, 7):
        g, basis = kernel_group(IntMatrix.from_rows([[1 - k]]))
        assert g.is_trivial and basis == ()
    m = IntMatrix.from_rows([[-1, -1], [-1, -1]])
    g, basis = kernel_group(m)
    # brute-force nullspace oracle over small integer vectors
    brute = [(x, y) for x in range(-3, 4) for y in range(-3, 4)
             if x + y == 0 and (x, y) != (0, 0)]
    assert g == FgGroup.free(1)
    v = basis[0]
    assert v in brute
    g, basis = kernel_group(IntMatrix.zeros(2, 2))
    assert g == FgGroup.free(2) and len(basis) == 2
    assert abs(IntMatrix.from_rows(basis).det()) == 1


def test_kernel_rank_plus_matrix_rank():
    rng = random.Random(8)
    from groupoid_invariants.intmatrix import smith_normal_form
    for _ in range(60):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = IntMatrix(r, c, tuple(rng.randint(-4, 4) for _ in range(r * c)))
        g, basis = kernel_group(m)
        assert g.free_rank + smith_normal_form(m).rank() == c
        for v in basis:
            assert all(x == 0 for x in m.apply(v))


def test_functor_examples():
    Z = FgGroup.free(1)
    assert tensor(Z, FgGroup.cyclic(6))[0] == FgGroup.cyclic(6)
    assert tor(FgGroup.cyclic(4), FgGroup.cyclic(6)) == FgGroup.cyclic(2)
    assert ext_group(FgGroup.cyclic(2), FgGroup.cyclic(2)) == FgGroup.cyclic(2)
    assert ext_group(Z, FgGroup.cyclic(2)).is_trivial
    assert ext_group(FgGroup.cyclic(5), Z) == FgGroup.cyclic(5)


@settings(max_examples=60, deadline=None)
@given(small_groups, small_groups)
def test_tensor_and_tor_symmetric(g, h):
    assert tensor(g, h)[0] == tensor(h, g)[0]
    assert tor(g, h) == tor(h, g)


@settings(max_examples=40, deadline=None)
@given(small_groups)
def test_unit_laws(g):
    Z = FgGroup.free(1)
    assert tensor(g, Z)[0] == g
    assert tor(g, Z).is_trivial
    assert tensor(g, FgGroup.trivial())[0].is_trivial


def test_tensor_map_is_bilinear():
    g = FgGroup.from_orders([4, 0])
    h = FgGroup.from_orders([6])
    prod, tmap = tensor(g, h)
    rng = random.Random(9)
    for _ in range(40):
        a1 = g.element((rng.randint(-3, 3),), (rng.randint(0, 3),))
        a2 = g.element((rng.randint(-3, 3),), (rng.randint(0, 3),))
        b = h.element((), (rng.randint(0, 5),))
        assert tmap(a1 + a2, b) == tmap(a1, b) + tmap(a2, b)
        assert tmap(a1, b).group == prod


def test_tensor_of_generators_generates():
    g = FgGroup.from_orders([4])
    h = FgGroup.from_orders([6])
    prod, tmap = tensor(g, h)
    assert prod == FgGroup.cyclic(2)
    e = tmap(g.element((), (1,)), h.element((), (1,)))
    assert e.order() == 2


def test_direct_sum_and_quotient():
    assert direct_sum(FgGroup.cyclic(2), FgGroup.cyclic(3)) == FgGroup.cyclic(6)
    a = FgGroup(1, (2, 4))
    assert is_quotient(a, FgGroup.cyclic(8))        # Z surjects onto Z/8
    assert is_quotient(a, FgGroup(1, ()))
    assert not is_quotient(FgGroup.cyclic(4), FgGroup.cyclic(8))
    assert not is_quotient(FgGroup.cyclic(8), FgGroup.from_orders([2, 2]))
    assert is_quotient(FgGroup.from_orders([4, 4]), FgGroup.from_orders([2, 4]))


def test_hom_validation_and_composition():
    g = FgGroup.cyclic(4)
    h = FgGroup.cyclic(2)
    with pytest.raises(ValueError):
        # Z/2 generator cannot map to an order-4 element
        GroupHom(h, g, (g.element((), (1,)),))
    f = GroupHom(g, h, (h.element((), (1,)),))
    assert f(g.element((), (2,))).is_zero
    idg = GroupHom.identity(g)
    assert f.compose(idg) == f
    assert idg.is_isomorphism() and not f.is_isomorphism()


def test_element_order():
    g = FgGroup(1, (2, 6))
    assert g.element((0,), (1, 2)).order() == 6
    assert g.element((1,), (0, 0)).order() == 0
    assert g.zero().order() == 1
