import random
from math import gcd

import pytest

from conftest import random_sft
from groupoid_invariants import errors
from groupoid_invariants.automorphisms import aut_orbit_equivalent
from groupoid_invariants.fggroup import FgGroup, direct_sum, tensor
from groupoid_invariants.intmatrix import IntMatrix
from groupoid_invariants.sft import (companion_matrix, det_id_minus,
                                     invariants, is_primitive,
                                     sft_abelianization, validate)


def test_validate_examples():
    assert validate([[2]]).size == 1
    with pytest.raises(errors.PermutationMatrix):
        validate([[0, 1], [1, 0]])
    with pytest.raises(errors.Reducible):
        validate([[1, 1], [0, 1]])
    with pytest.raises(errors.NotSquare):
        validate([[1, 2]])
    with pytest.raises(errors.NegativeEntry):
        validate([[2, -1], [1, 2]])
    with pytest.raises(errors.Reducible):
        validate([[0]])
    with pytest.raises(errors.PermutationMatrix):
        validate([[1]])


def test_invariants_companion_matrices():
    # BF = Z/(k-1) with the unit class in the automorphism orbit of r
    for k in range(2, 9):
        for r in range(1, 5):
            inv = invariants(companion_matrix(k, r))
            assert inv.bf == FgGroup.from_orders([k - 1])
            assert inv.det_sign == (-1 if k > 1 else 0)
            assert det_id_minus(companion_matrix(k, r)) == 1 - k
            assert inv.k1.is_trivial
            if k > 2:
                target = inv.bf.element((), (r % (k - 1),))
                assert aut_orbit_equivalent(inv.bf, inv.unit, target)
                assert inv.unit.order() == (k - 1) // gcd(k - 1, r)


def test_invariants_examples():
    inv = invariants(validate([[2]]))
    assert inv.bf.is_trivial and inv.k1.is_trivial and inv.det_sign == -1
    inv = invariants(validate([[2, 1], [1, 2]]))
    assert inv.k1 == FgGroup.free(1)
    assert inv.bf == FgGroup.free(1)
    assert inv.det_sign == 0
    assert inv.homology.group_at(0) == inv.k0
    assert inv.homology.group_at(1) == inv.k1
    assert inv.homology.group_at(2).is_trivial


def test_invariants_random_properties(rng):
    for _ in range(40):
        f = random_sft(rng)
        inv = invariants(f)
        det = det_id_minus(f)
        assert inv.bf.is_finite == (det != 0)
        if det != 0:
            assert inv.bf.order() == abs(det)
        assert inv.k1.torsion == ()  # kernel subgroups of Z^N are free
        assert inv.k0 == inv.homology.group_at(0)
        assert inv.k1 == inv.homology.group_at(1)


def test_invariants_permutation_invariance(rng):
    for _ in range(25):
        f = random_sft(rng, max_size=4)
        n = f.size
        perm = list(range(n))
        rng.shuffle(perm)
        rows = f.a.to_rows()
        prows = [[rows[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
        g = validate(prows)
        iv_f, iv_g = invariants(f), invariants(g)
        assert iv_f.bf == iv_g.bf
        assert iv_f.det_sign == iv_g.det_sign
        assert iv_f.homology == iv_g.homology
        if iv_f.bf.order() <= 10 ** 5:
            assert aut_orbit_equivalent(iv_f.bf, iv_f.unit, iv_g.unit)


def _primitive_oracle(m: IntMatrix) -> bool:
    # explicit integer powers up to the Wielandt bound
    n = m.rows
    power = m
    for _ in range((n - 1) ** 2 + 1):
        if all(x > 0 for x in power.entries):
            return True
        power = power @ m
    return False


def test_is_primitive():
    assert is_primitive(validate([[3]]))
    # period-2 supports are irreducible but not primitive; this includes the
    # 2x2 companion matrix [[0,2],[1,0]], whose powers alternate between
    # diagonal and antidiagonal support
    assert not is_primitive(companion_matrix(2, 2))
    assert not _primitive_oracle(companion_matrix(2, 2).a)
    assert not is_primitive(validate([[0, 1], [2, 0]]))
    assert is_primitive(validate([[1, 1], [1, 0]]))


def test_is_primitive_matches_power_oracle(rng):
    for _ in range(40):
        f = random_sft(rng)
        assert is_primitive(f) == _primitive_oracle(f.a)


def test_sft_abelianization_examples():
    assert sft_abelianization(validate([[2]])).is_trivial
    assert sft_abelianization(validate([[3]])) == FgGroup.cyclic(2)
    # even k: BF = Z/(k-1) with k-1 odd, so the Z/2 tensor dies
    assert sft_abelianization(validate([[4]])).is_trivial
    inv = invariants(validate([[2, 1], [1, 2]]))
    expected = direct_sum(tensor(inv.bf, FgGroup.cyclic(2))[0], inv.k1)
    assert sft_abelianization(validate([[2, 1], [1, 2]])) == expected == FgGroup(1, (2,))
