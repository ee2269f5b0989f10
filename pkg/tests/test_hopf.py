from fractions import Fraction

import pytest

from hopfva.exactlin import scale, unit
from hopfva.hopf import (AssocAlgebra, HopfAxiomError, NotModuleAlgebra, check_algebra_hom,
                         check_assoc, check_hopf_axioms, check_module_algebra, cyclic_group,
                         dual_hopf, group_algebra, hopf_as_algebra, left_integral, matrix_units,
                         require_hopf, smash_assoc, sweedler, symmetric_group_3, tensor_assoc)

HALF, SIXTH = Fraction(1, 2), Fraction(1, 6)


def all_hopf():
    kZ2 = group_algebra(cyclic_group(2), "kZ2")
    kS3 = group_algebra(symmetric_group_3(), "kS3")
    return [kZ2, kS3, group_algebra(cyclic_group(3)), sweedler(), dual_hopf(kS3), dual_hopf(sweedler())]


@pytest.mark.parametrize("H", all_hopf(), ids=lambda H: H.name)
def test_hopf_axioms(H):
    rep = check_hopf_axioms(H)
    assert rep.ok, rep


def test_group_tables():
    S3 = symmetric_group_3()
    assert S3.order == 6 and not S3.is_abelian()
    assert cyclic_group(3).is_abelian()
    # every element composed with its inverse is the identity
    assert all(S3.mul(g, S3.inverse[g]) == S3.identity for g in range(6))


def test_integral_kZ2():
    t = left_integral(group_algebra(cyclic_group(2))).t
    assert t == {0: HALF, 1: HALF}


def test_integral_kS3():
    integ = left_integral(group_algebra(symmetric_group_3()))
    assert integ.normalized
    assert integ.t == {g: SIXTH for g in range(6)}


@pytest.mark.parametrize("H", all_hopf(), ids=lambda H: H.name)
def test_integral_property(H):
    t = left_integral(H).t
    for h in range(H.dim):
        assert H.mul(unit(h), t) == scale(H.counit.get(h, 0), t)


def test_sweedler_integral_not_normalizable():
    integ = left_integral(sweedler())
    assert not integ.normalized
    assert sweedler().eps(integ.t) == 0


def test_broken_antipode_detected():
    H = sweedler()
    H.antipode[2] = unit(2)
    rep = check_hopf_axioms(H)
    assert not rep.ok
    assert rep.failures()[0].witness is not None
    with pytest.raises(HopfAxiomError):
        require_hopf(H)


def test_double_dual_is_isomorphic_on_structure():
    H = sweedler()
    D = dual_hopf(dual_hopf(H))
    assert D.mult == {k: v for k, v in H.mult.items() if v}
    assert D.unit == H.unit


def test_matrix_units_and_tensor():
    M2 = matrix_units(2)
    assert check_assoc(M2).ok
    T = tensor_assoc(M2, hopf_as_algebra(group_algebra(cyclic_group(2))))
    assert T.dim == 8 and check_assoc(T).ok


def test_algebra_hom_detects_failure():
    M2 = matrix_units(2)
    ident = {i: unit(i) for i in range(4)}
    assert check_algebra_hom(M2, M2, ident).ok
    transpose_fails = {0: unit(0), 1: unit(2), 2: unit(1), 3: unit(3)}
    rep = check_algebra_hom(M2, M2, transpose_fails)
    assert not rep.ok and rep["multiplicative"].witness


def _swap_action_on_k2():
    # k x k with Z2 swapping the two idempotents
    A = AssocAlgebra(["p", "q"], {(0, 0): unit(0), (1, 1): unit(1)}, {0: Fraction(1), 1: Fraction(1)})
    act = {(0, 0): unit(0), (0, 1): unit(1), (1, 0): unit(1), (1, 1): unit(0)}
    return A, act


def test_smash_assoc_of_swap_is_2x2_matrices():
    A, act = _swap_action_on_k2()
    H = group_algebra(cyclic_group(2))
    assert check_module_algebra(A, H, act).ok
    S = smash_assoc(A, H, act)
    assert S.dim == 4 and check_assoc(S).ok
    # p#e, q#e are orthogonal idempotents summing to 1: the smash product is M(2,k)
    assert S.mul(unit(0), unit(0)) == unit(0)
    assert S.mul(unit(0), unit(2)) == {}


def test_non_module_algebra_rejected():
    A, act = _swap_action_on_k2()
    act[(1, 0)] = scale(2, unit(1))
    with pytest.raises(NotModuleAlgebra):
        smash_assoc(A, group_algebra(cyclic_group(2)), act)


def test_sweedler_relations():
    H = sweedler()
    g, x = unit(1), unit(2)
    assert H.mul(g, g) == unit(0)
    assert H.mul(x, x) == {}
    assert H.mul(x, g) == scale(-1, H.mul(g, x))
    assert not H.is_grouplike(2) and H.is_grouplike(1)
    assert check_hopf_axioms(H).ok
