import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfva import io
from hopfva.constructions import smash_product
from hopfva.fieldalg.data import identity_exchange
from hopfva.fixtures import (charge_conjugation_action, differential_va, dual_numbers, heisenberg,
                             swap_action)
from hopfva.hopf import cyclic_group, dual_hopf, group_algebra, sweedler, symmetric_group_3
from hopfva.quantum import twisted_polynomial
from hopfva.report import AxiomReport, Verdict
from hopfva.rep import regular_module

Z2 = cyclic_group(2)


def algebras():
    V = differential_va(2, 2)
    return {
        "heisenberg": heisenberg(4),
        "differential": differential_va(2, 3),
        "dual-numbers": dual_numbers(),
        "smash": smash_product(V, group_algebra(Z2), swap_action(V, Z2)).carrier,
    }


@pytest.mark.parametrize("name", list(algebras()))
def test_algebra_round_trip(name):
    V = algebras()[name]
    text = io.dumps(io.dump_algebra(V))
    W = io.load_algebra(io.loads(text))
    assert W.labels == V.labels and W.vacuum == V.vacuum
    assert W.products == V.products and W.s_cols == V.s_cols
    assert io.dumps(io.dump_algebra(W)) == text


def test_exchange_hint_survives_only_as_identity():
    doc = io.dump_algebra(heisenberg(3))
    assert doc["exchange"] == "identity"
    assert io.load_algebra(doc).exchange_hint is identity_exchange
    V = differential_va(2, 2)
    smash = smash_product(V, group_algebra(Z2), swap_action(V, Z2)).carrier
    assert "exchange" not in io.dump_algebra(smash)


@pytest.mark.parametrize("H", [group_algebra(symmetric_group_3(), "kS3"), sweedler(),
                               dual_hopf(group_algebra(Z2, "kZ2"))], ids=lambda H: H.name)
def test_hopf_round_trip(H):
    text = io.dumps(io.dump_hopf(H))
    K = io.load_hopf(io.loads(text))
    nonzero = {k: c for k, c in H.counit.items() if c}
    assert (K.mult, K.unit, K.comult, K.antipode) == (H.mult, H.unit, H.comult, H.antipode)
    assert {k: c for k, c in K.counit.items() if c} == nonzero
    assert io.dumps(io.dump_hopf(K)) == text


def test_group_round_trip():
    G = symmetric_group_3()
    K = io.load_group(io.dump_group(G, "S3"))
    assert K.cayley == G.cayley and K.inverse == G.inverse and K.elements == G.elements


def test_action_and_module_round_trip():
    V = heisenberg(3)
    H = group_algebra(Z2)
    act = charge_conjugation_action(V, Z2)
    back = io.load_action(io.loads(io.dumps(io.dump_action(act, V, H))), V, H)
    assert {k: v for k, v in back.items() if v} == {k: v for k, v in act.items() if v}
    M = regular_module(V)
    N = io.load_module(io.loads(io.dumps(io.dump_module(M, V))), V)
    assert N.tensors() == M.tensors()


def test_module_algebra_reference_checked():
    M = regular_module(heisenberg(3))
    doc = io.dump_module(M, heisenberg(3))
    with pytest.raises(io.FormatError):
        io.load_module(doc, differential_va(2, 2))


def test_quantum_round_trip():
    Vq, Q = twisted_polynomial(2, 3)
    text = io.dumps(io.dump_quantum(Vq, Q))
    Wq, R = io.load_quantum(io.loads(text))
    assert Wq.corrections == {k: v for k, v in Vq.corrections.items() if v}
    assert R.table == Q.table
    assert io.dumps(io.dump_quantum(Wq, R)) == text
    low, R2 = io.load_quantum(io.loads(text), M=2)
    assert low.M == R2.M == 2
    with pytest.raises(io.FormatError):
        io.load_quantum(io.loads(text), M=4)


def test_rational_document_lifts_trivially():
    Vq, Q = io.load_quantum(io.dump_algebra(heisenberg(3)), M=3)
    assert Vq.M == 3 and Q.trivial


def bad_doc(path, value):
    doc = json.loads(io.dumps(io.dump_algebra(dual_numbers())))
    target = doc
    for key in path[:-1]:
        target = target[key]
    target[path[-1]] = value
    return doc


@pytest.mark.parametrize("path,value,where", [
    (["format_version"], 2, "$.format_version"),
    (["kind"], "hopf", "$.kind"),
    (["vacuum"], [["1", [1, 0]]], "$.vacuum[0]"),
    (["vacuum"], [["zz", [1, 1]]], "$.vacuum[0]"),
    (["vacuum"], [["1", [1.5, 1]]], "$.vacuum[0]"),
    (["sigma"], 0, "$.sigma"),
    (["grading"], [0], "$.grading"),
    (["labels"], ["1", "1"], "$.labels"),
    (["truncation", "n_vanish"], "x", "$.truncation.n_vanish"),
    (["exchange"], "matrix", "$.exchange"),
])
def test_format_errors_name_the_field(path, value, where):
    with pytest.raises(io.FormatError) as err:
        io.load_algebra(bad_doc(path, value))
    assert err.value.where == where


def test_strict_rejects_unknown_fields():
    doc = io.dump_algebra(dual_numbers())
    doc["colour"] = "blue"
    with pytest.raises(io.FormatError) as err:
        io.load_algebra(doc)
    assert err.value.where == "$"
    assert io.load_algebra(doc, strict=False).dim == 2


def test_json_syntax_error_has_position():
    with pytest.raises(io.FormatError) as err:
        io.loads('{"kind":\n  oops}')
    assert err.value.where.startswith("line 2 column")


def test_load_any_dispatch():
    assert io.load_any(io.dump_hopf(sweedler())).dim == 4
    with pytest.raises(io.FormatError):
        io.load_any({"kind": "report"})


@settings(max_examples=50, deadline=None)
@given(st.integers(-10 ** 30, 10 ** 30), st.integers(1, 10 ** 30))
def test_rational_encoding_exact(n, d):
    q = Fraction(n, d)
    assert io.dec_q(json.loads(json.dumps(io.enc_q(q))), "$") == q


def test_plain_rejects_floats():
    assert io.plain({"x": Fraction(1, 3), "v": Verdict.PASS, "s": {2, 1}}) == {"x": [1, 3], "v": "pass", "s": [1, 2]}
    with pytest.raises(TypeError):
        io.plain({"x": 0.5})


def test_report_doc():
    rep = AxiomReport()
    rep.add("thing", Verdict.FAIL, ("a", Fraction(1, 2)), tag="t")
    doc = io.report_doc(rep, "check", {"algebra": "builtin:x"}, {"n": 3}, exit_status=1)
    assert doc["verdict"] == "fail" and doc["exit_status"] == 1
    assert doc["checks"][0]["witness"] == ["a", [1, 2]]
    json.loads(io.dumps(doc), parse_float=lambda t: pytest.fail(f"float {t} in report"))
