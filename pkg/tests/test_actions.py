from fractions import Fraction
from itertools import product

import pytest

from hopfva.actions import (ActionInvalid, c_from_total_integral, check_h_comodule_field_algebra,
                            check_h_module_field_algebra, coaction_from_dual_action,
                            comodule_from_dual, fixed_subalgebra, fixed_vectors, hat_t,
                            projector_report, require_action, total_integral)
from hopfva.constructions import tensor_trivial
from hopfva.exactlin import apply_map, axpy, unit
from hopfva.fixtures import (charge_conjugation_action, differential_va, dual_numbers, heisenberg,
                             parity_coaction, partition_of, s3_sign_action, swap_action,
                             sweedler_dual_numbers_action, trivial_action)
from hopfva.hopf import NoIntegral, cyclic_group, dual_hopf, group_algebra, sweedler, symmetric_group_3
from hopfva.report import Verdict

Z2 = cyclic_group(2)
kZ2 = group_algebra(Z2, "kZ2")


@pytest.fixture(scope="module")
def boson():
    return heisenberg(4)


@pytest.fixture(scope="module")
def poly():
    return differential_va(2, 4)


def test_swap_action_passes(poly):
    assert check_h_module_field_algebra(poly, kZ2, swap_action(poly, Z2)).ok


def test_charge_conjugation_passes(boson):
    assert check_h_module_field_algebra(boson, kZ2, charge_conjugation_action(boson, Z2)).ok


def test_s3_sign_action_passes(poly):
    S3 = symmetric_group_3()
    assert check_h_module_field_algebra(poly, group_algebra(S3), s3_sign_action(poly, S3)).ok


def test_sweedler_on_dual_numbers():
    V = dual_numbers()
    assert check_h_module_field_algebra(V, sweedler(), sweedler_dual_numbers_action()).ok


def test_adjoint_action_on_tensor(poly):
    # h(a (x) f) = a (x) h1 f S(h2) on V (x) kS3
    V = differential_va(2, 2)
    H = group_algebra(symmetric_group_3())
    W = tensor_trivial(V, H)
    nh = H.dim
    act = {}
    for h, w in product(range(nh), range(W.dim)):
        a, f = divmod(w, nh)
        out = {}
        for h1, h2, c in H.comult[h]:
            for k, d in H.mul(H.mul(unit(h1), unit(f)), H.S(unit(h2))).items():
                axpy(out, c * d, unit(a * nh + k))
        act[(h, w)] = out
    assert check_h_module_field_algebra(W, H, act).ok


def test_broken_action_has_witness(poly):
    act = dict(swap_action(poly, Z2))
    x = poly.labels.index("x")
    # send x to 2x: still a module map on generators but not multiplicative
    act[(1, x)] = {poly.labels.index("y"): Fraction(2)}
    rep = check_h_module_field_algebra(poly, kZ2, act)
    assert not rep.ok
    assert rep.failures()[0].witness is not None
    with pytest.raises(ActionInvalid):
        require_action(poly, kZ2, act)


def test_symmetric_polynomials(poly):
    W, emb = fixed_subalgebra(poly, kZ2, swap_action(poly, Z2))
    dims = [sum(1 for i in range(W.dim) if W.deg(i) == d) for d in range(5)]
    assert dims == [1, 1, 2, 2, 3]
    # embedding columns are swap-invariant
    sw = swap_action(poly, Z2)
    for col in emb.values():
        img = {}
        for v, c in col.items():
            axpy(img, c, sw[(1, v)])
        assert img == col


def test_even_fock_part(boson):
    W, emb = fixed_subalgebra(boson, kZ2, charge_conjugation_action(boson, Z2))
    even = [i for i in range(boson.dim) if len(partition_of(boson, i)) % 2 == 0]
    assert W.dim == len(even) == 6
    assert sorted(k for col in emb.values() for k in col) == even


def test_trivial_fixed_is_everything(boson):
    assert len(fixed_vectors(boson, kZ2, trivial_action(boson, kZ2))) == boson.dim


def test_fixed_subalgebra_is_s_stable(poly):
    W, _ = fixed_subalgebra(poly, kZ2, swap_action(poly, Z2))
    # s is re-expressed in fixed coordinates, so any escape would have raised
    assert W.s(unit(1))


def test_graded_coaction_to_dual_action(boson):
    co = parity_coaction(boson, Z2)
    Hd = dual_hopf(kZ2)
    act = comodule_from_dual(boson, Hd, co)
    for v in range(boson.dim):
        g = co[v][0][1]
        for h in range(2):
            assert act.get((h, v), {}) == (unit(v) if h == g else {})
    assert coaction_from_dual_action(boson, Hd, act) == co


def test_trivial_coaction(boson):
    co = {v: [(v, Z2.identity, Fraction(1))] for v in range(boson.dim)}
    Hd = dual_hopf(kZ2)
    act = comodule_from_dual(boson, Hd, co)
    # f . v = f(1) v
    for v in range(boson.dim):
        assert act.get((Z2.identity, v)) == unit(v)
        assert (1 - Z2.identity, v) not in act


def test_conversion_preserves_verdicts(boson):
    co = parity_coaction(boson, Z2)
    Hd = dual_hopf(kZ2)
    comod = check_h_comodule_field_algebra(boson, kZ2, co)
    mod = check_h_module_field_algebra(boson, Hd, comodule_from_dual(boson, Hd, co))
    assert comod.ok and mod.ok
    bad = {v: [(v, 1, Fraction(1))] for v in range(boson.dim)}
    assert not check_h_comodule_field_algebra(boson, kZ2, bad).ok
    assert not check_h_module_field_algebra(boson, Hd, comodule_from_dual(boson, Hd, bad)).ok


def test_hat_t_charge_conjugation(boson):
    ht = hat_t(boson, kZ2, charge_conjugation_action(boson, Z2))
    assert ht.integral == {0: Fraction(1, 2), 1: Fraction(1, 2)}
    assert ht.surjective is Verdict.PASS
    assert ht.image_rank == ht.fixed_dim == 6
    assert ht.c == boson.vacuum
    assert projector_report(boson, ht).ok


def test_hat_t_trivial(boson):
    ht = hat_t(boson, kZ2, trivial_action(boson, kZ2))
    assert all(ht.matrix[v] == unit(v) for v in range(boson.dim))
    assert ht.surjective is Verdict.PASS


def test_hat_t_symmetrizer(poly):
    ht = hat_t(poly, kZ2, swap_action(poly, Z2))
    assert ht.surjective is Verdict.PASS and ht.image_rank == 9
    assert ht.c == poly.vacuum
    assert apply_map(ht.matrix, unit(poly.labels.index("x"))) == {1: Fraction(1, 2), 2: Fraction(1, 2)}


def test_hat_t_needs_normalized_integral():
    with pytest.raises(NoIntegral):
        hat_t(dual_numbers(), sweedler(), sweedler_dual_numbers_action())


@pytest.mark.parametrize("which", ["charge", "s3"])
def test_total_integral_round_trip(which, boson, poly):
    if which == "charge":
        V, H, act = boson, kZ2, charge_conjugation_action(boson, Z2)
    else:
        S3 = symmetric_group_3()
        V, H, act = poly, group_algebra(S3), s3_sign_action(poly, S3)
    ht = hat_t(V, H, act)
    ti = total_integral(V, H, act, ht.c)
    assert ti.report.ok, ti.report
    c = c_from_total_integral(H, act, ti.phi)
    assert apply_map(ht.matrix, c) == V.vacuum
