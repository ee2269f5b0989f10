from fractions import Fraction

import pytest

from hopfva.exactlin import unit
from hopfva.fixtures import charge_conjugation_action, differential_va, dual_numbers, heisenberg
from hopfva.hopf import check_assoc, cyclic_group, group_algebra
from hopfva.report import AxiomReport, TruncationEscape, Verdict
from hopfva.zhu import (FProfile, NotIso, _require_iso, check_cor47, check_double_smash_iso,
                        check_matrix_iso, check_smash_iso, f_product, g_product, induced_action,
                        parse_profile, span_constraint, stability_report, zhu_quotient)

Z2 = cyclic_group(2)


def test_f_and_g_products_select_modes():
    V = heisenberg(4)
    prof = FProfile()
    for a in range(V.dim):
        for b in range(V.dim):
            try:
                m1, m2 = V.prod(a, -1, b), V.prod(a, -2, b)
            except TruncationEscape:
                continue
            assert f_product(V, prof, unit(a), unit(b)) == m1
            assert g_product(V, prof, unit(a), unit(b)) == {k: -c for k, c in m2.items()}


def test_vacuum_is_left_unit_for_f_product():
    V = heisenberg(3)
    for b in range(V.dim):
        assert f_product(V, FProfile(), V.vacuum, unit(b)) == unit(b)


@pytest.mark.parametrize("D", [3, 4, 5])
def test_heisenberg_one_class_per_degree(D):
    Q = zhu_quotient(heisenberg(D))
    assert Q.algebra.dim == D + 1
    assert Q.degrees == list(range(D + 1))
    assert Q.algebra.labels == ["[1]"] + ["[a[" + ",".join(["1"] * k) + "]]" for k in range(1, D + 1)]
    assert Q.report.ok, Q.report


def test_quotient_associative_with_unit():
    Q = zhu_quotient(heisenberg(4))
    rep = check_assoc(Q.algebra)
    assert rep.ok
    one = Q.algebra.unit
    for i in range(Q.algebra.dim):
        assert Q.algebra.mul(one, unit(i)) == unit(i) == Q.algebra.mul(unit(i), one)


def test_differential_collapses():
    assert zhu_quotient(differential_va(2, 3)).algebra.dim == 0


def test_stability_between_caps():
    assert stability_report(heisenberg(4), heisenberg(5)).ok
    assert stability_report(heisenberg(3), heisenberg(4)).ok


def test_exp_profile_escapes_on_graded_fixture():
    with pytest.raises(TruncationEscape):
        zhu_quotient(heisenberg(3), FProfile("exp", Fraction(1)))


def test_exp_profile_on_dual_numbers():
    Q = zhu_quotient(dual_numbers(), parse_profile("exp:1"))
    assert Q.algebra.dim == 2 and Q.report.ok


def test_parse_profile():
    assert parse_profile("zinv") == FProfile()
    assert parse_profile("exp:1/2") == FProfile("exp", Fraction(1, 2))
    with pytest.raises(ValueError):
        parse_profile("exp:0")
    with pytest.raises(ValueError):
        parse_profile("cos")


@pytest.mark.parametrize("prof", [FProfile(), FProfile("exp", Fraction(1)), FProfile("exp", Fraction(-2))],
                         ids=lambda p: p.describe())
def test_span_constraint(prof):
    assert span_constraint(prof, V=heisenberg(3)).ok


def test_induced_action_descends():
    V = heisenberg(4)
    Q = zhu_quotient(V)
    _, rep = induced_action(V, group_algebra(Z2), charge_conjugation_action(V, Z2), Q)
    assert rep.ok, rep


def test_smash_iso():
    V = heisenberg(4)
    r = check_smash_iso(V, group_algebra(Z2), charge_conjugation_action(V, Z2), strict=True)
    assert r.dims == (10, 10)
    assert r.report.ok
    assert r.report["phi multiplicative"].detail["pairs"] == 100


def test_matrix_iso_and_double_smash():
    V = heisenberg(3)
    m = check_matrix_iso(V, 2, strict=True)
    assert m.dims == (16, 16) and m.report.ok
    d = check_double_smash_iso(V, Z2, charge_conjugation_action(V, Z2), strict=True)
    assert d.dims == (16, 16) and d.report.ok
    assert check_cor47(V, Z2, 2, charge_conjugation_action(V, Z2)).ok


def test_matrix_iso_n1():
    V = heisenberg(3)
    m = check_matrix_iso(V, 1)
    assert m.dims == (4, 4) and m.report.ok


def test_strict_iso_raises_on_failure():
    rep = AxiomReport()
    rep.add("phi psi = id", Verdict.FAIL, "[1]", tag="iso")
    with pytest.raises(NotIso) as err:
        _require_iso(rep, strict=True)
    assert err.value.witness == "[1]"
    _require_iso(rep, strict=False)
