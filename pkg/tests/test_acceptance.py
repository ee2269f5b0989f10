"""End-to-end acceptance checks; each test records a PASS/FAIL line.

The lines are printed at the end of the pytest run (see conftest.py) and
also when this file is executed directly.
"""
from fractions import Fraction
from functools import wraps

import pytest

from hopfva.constructions import make_e, smash_product
from hopfva.exactlin import unit
from hopfva.fieldalg.suites import (find_locality, find_s_locality, reverify_certificate,
                                    run_axiom_suite, sample_triples)
from hopfva.fixtures import (charge_conjugation_action, differential_va, dual_numbers, heisenberg,
                             s3_sign_action, sweedler_dual_numbers_action)
from hopfva.formal import (LaurentPoly, Window, delta_window, exp_s_apply, expand_izw, mul,
                           poly_zw, residue, scalar)
from hopfva.hopf import check_assoc, cyclic_group, group_algebra, left_integral, sweedler, symmetric_group_3
from hopfva.quantum import (BraidingIncompatible, QVertex, check_q_locality, check_weak_associativity,
                            dual_numbers_braiding, quantum_smash, trivial_braiding, twisted_polynomial,
                            x_parity_action)
from hopfva.rep import pair_from_smash_module, regular_module, round_trip, smash_module_from_pair
from hopfva.zhu import check_double_smash_iso, check_matrix_iso, check_smash_iso, stability_report, zhu_quotient

RESULTS: dict = {}

Z2 = cyclic_group(2)
kZ2 = group_algebra(Z2, "kZ2")
HALF = Fraction(1, 2)


def criterion(number: int, title: str):
    def deco(fn):
        @wraps(fn)
        def run(*args, **kwargs):
            RESULTS[number] = (title, "FAIL")
            fn(*args, **kwargs)
            RESULTS[number] = (title, "PASS")
        return run
    return deco


def summary_lines():
    return [f"criterion {n}: {status}  {title}" for n, (title, status) in sorted(RESULTS.items())]


@criterion(1, "fixture soundness (heisenberg(6), differential_va(2,6))")
def test_fixture_soundness():
    V = heisenberg(6)
    deg = V.deg
    # associativity order of Fock states grows with deg a + deg c; sample the part with n <= 4
    triples = sample_triples(V, 200, seed=0, pred=lambda a, b, c: deg(a) + deg(c) <= 4)
    pairs = [(a, b) for a in range(V.dim) for b in range(V.dim) if deg(a) + deg(b) <= 6]
    rep = run_axiom_suite(V, ("vacuum", "translation", "associativity"), triples, n_max=4)
    run_axiom_suite(V, "skew", None, report=rep)
    run_axiom_suite(V, "locality", pairs, report=rep)
    assert rep.ok, rep
    assoc = rep["associativity"].detail
    assert assoc["max_n"] <= 4 and assoc["triples"] > 150
    a1 = unit(V.index("a[1]"))
    assert find_locality(V, a1, a1).order_n == 2

    W = differential_va(2, 6)
    tv = sample_triples(W, 150, seed=0)
    rep = run_axiom_suite(W, ("vacuum", "translation", "associativity"), tv)
    run_axiom_suite(W, ("skew", "locality"), None, report=rep)
    assert rep.ok, rep
    assert set(rep.checks[-1].detail["n_histogram"]) == {"0"}


@criterion(2, "V#kS3 is S-local but not local")
def test_s3_smash_s_locality():
    V = differential_va(2, 4)
    S3 = symmetric_group_3()
    W = smash_product(V, group_algebra(S3), s3_sign_action(V, S3)).carrier
    a, b = W.labels.index("x#p102"), W.labels.index("y#e")
    assert find_locality(W, unit(a), unit(b), 8) is None
    rep = run_axiom_suite(W, "locality", [(a, b)], n_max=8)
    witness = rep.failures()[0].witness
    assert witness["a"] == "x#p102" and witness["n_max"] == 8
    for x in range(W.dim):
        for y in range(W.dim):
            cert = find_s_locality(W, unit(x), unit(y), 8)
            assert cert is not None, (W.labels[x], W.labels[y])
            assert reverify_certificate(W, cert).failure is None


@criterion(3, "Zhu quotient of heisenberg(D), D = 3, 4, 5")
def test_zhu_heisenberg():
    for D in (3, 4, 5):
        Q = zhu_quotient(heisenberg(D))
        assert Q.algebra.dim == D + 1
        assert Q.degrees == list(range(D + 1))
        assert check_assoc(Q.algebra).ok
        A, one = Q.algebra, Q.algebra.unit
        for i in range(A.dim):
            assert A.mul(one, unit(i)) == unit(i) == A.mul(unit(i), one)
        assert stability_report(heisenberg(D), heisenberg(D + 1)).ok


@criterion(4, "quotient of V#kZ2 vs quotient#kZ2 for heisenberg(4)")
def test_smash_iso():
    V = heisenberg(4)
    r = check_smash_iso(V, kZ2, charge_conjugation_action(V, Z2))
    assert r.dims == (10, 10)
    assert r.report.ok, r.report
    assert r.report["phi multiplicative"].detail["pairs"] == 100


@criterion(5, "matrix and double-smash quotients for heisenberg(3)")
def test_matrix_and_double_smash_iso():
    V = heisenberg(3)
    m = check_matrix_iso(V, 2)
    assert m.dims == (16, 16) and m.report.ok, m.report
    d = check_double_smash_iso(V, Z2, charge_conjugation_action(V, Z2))
    assert d.dims == (16, 16) == (4 * zhu_quotient(V).algebra.dim,) * 2
    assert d.report.ok, d.report


@criterion(6, "integrals and the idempotent e")
def test_integrals_and_e():
    assert left_integral(kZ2).t == {0: HALF, 1: HALF}
    assert left_integral(group_algebra(symmetric_group_3())).t == {g: Fraction(1, 6) for g in range(6)}
    V = heisenberg(4)
    e, rep = make_e(V, kZ2, charge_conjugation_action(V, Z2), V.vacuum)
    assert e == {0: HALF, 1: HALF}
    assert rep.ok, rep


@criterion(7, "module correspondence round trip at heisenberg(4)")
def test_module_round_trip():
    V = heisenberg(4)
    act = charge_conjugation_action(V, Z2)
    M = regular_module(V)
    assert round_trip(V, kZ2, act, M, act).ok
    N, S = smash_module_from_pair(V, kZ2, act, M, act)
    pair = pair_from_smash_module(V, kZ2, act, S, N)
    assert pair.report.ok, pair.report
    assert pair.module.tensors() == M.tensors()


@criterion(8, "quantum layer")
def test_quantum_layer():
    V = heisenberg(3)
    C = QVertex(V, 3).carrier(trivial_braiding(3))
    orders = {}
    for a in range(V.dim):
        for b in range(V.dim):
            cert = find_locality(V, unit(a), unit(b))
            if cert is not None:
                orders[f"{V.labels[a]},{V.labels[b]}"] = cert.order_n
    q = check_q_locality(C)
    assert q.ok and q.checks[0].detail["orders"] == orders
    D = differential_va(2, 2)
    Cd = QVertex(D, 3).carrier(trivial_braiding(3))
    assert check_weak_associativity(Cd).verdict == run_axiom_suite(D, "associativity").verdict

    Vq, Q = twisted_polynomial(2, 2)
    assert quantum_smash(Vq, kZ2, x_parity_action(Vq.base, 2), Q).report.ok
    with pytest.raises(BraidingIncompatible) as err:
        quantum_smash(QVertex(dual_numbers(), 2), sweedler(), sweedler_dual_numbers_action(),
                      dual_numbers_braiding(2))
    assert err.value.witness == ("e", "x", "e")


@criterion(9, "formal calculus identities")
def test_formal_kernel():
    for w in (Window(-4, 4, -4, 4), Window(-6, 2, -3, 5), Window(-2, 7, -7, 1)):
        assert mul(delta_window(w), poly_zw(1)).is_zero()
        prod = mul(expand_izw(-1, w), poly_zw(1))
        assert prod.coeffs == ({(0, 0): scalar(1)} if (0, 0) in prod.window else {})
    for k in range(-6, 7):
        p = LaurentPoly({e: scalar(Fraction(e + 2, 3)) for e in range(-k - 3, k + 4)})
        assert residue(p.derivative()) == {}
    V = heisenberg(6)

    def s(x):
        out = {}
        for k, c in x.items():
            for j, d in V.s_cols.get(k, {}).items():
                out[j] = out.get(j, 0) + c * d
        return {k: c for k, c in out.items() if c}

    for i in range(V.dim):
        p, _ = exp_s_apply(s, unit(i), 8)
        d = p.derivative()
        top = 8 if p.order is None else p.order - 1
        for k in range(top):
            assert d.coeff(k) == s(p.coeff(k))


if __name__ == "__main__":
    import sys
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except Exception:
                pass
    print("\n".join(summary_lines()))
    sys.exit(0 if all(s == "PASS" for _, s in RESULTS.values()) else 1)
