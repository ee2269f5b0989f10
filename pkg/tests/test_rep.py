from fractions import Fraction

import pytest

from hopfva.exactlin import unit
from hopfva.fieldalg.suites import sample_triples
from hopfva.fixtures import charge_conjugation_action, dual_numbers, heisenberg, trivial_action
from hopfva.hopf import cyclic_group, group_algebra
from hopfva.report import TruncationEscape, Verdict
from hopfva.rep import (NotHopfRep, ModuleData, check_holomorphic_module, check_hopf_rep, check_module,
                        check_module_iso, generated_submodule, induced_module, is_simple_truncated,
                        pair_from_smash_module, regular_module, round_trip, smash_module_from_pair,
                        tensor_hopf, tensor_plain)

Z2 = cyclic_group(2)
kZ2 = group_algebra(Z2, "kZ2")


@pytest.fixture(scope="module")
def h3():
    return heisenberg(3)


def module_sample(V, M, count=80, seed=3):
    return [(a, b, m) for a, b, m in sample_triples(V, count, seed) if m < M.dim]


@pytest.mark.parametrize("kind", ["left", "right", "strong", "vertex", "s_local"])
def test_regular_module_kinds(h3, kind):
    M = regular_module(h3)
    assert check_module(h3, M, kind).ok


def test_regular_module_sampled_at_degree_four():
    V = heisenberg(4)
    rep = check_module(V, regular_module(V), "vertex", sample=module_sample(V, regular_module(V)),
                       pair_sample=[(1, 1), (1, 2), (2, 3)])
    assert rep.ok, rep


def test_corrupted_action_fails(h3):
    M = regular_module(h3)
    a = h3.index("a[1]")
    action = {k: {n: dict(v) for n, v in per.items()} for k, per in M.action.items()}
    action[(a, a)][-1] = {h3.index("a[2]"): Fraction(1)}
    bad = ModuleData(M.labels, M.s_cols, action, M.n_vanish, M.grading, M.degree_cap, name="bad")
    rep = check_module(h3, bad, "left")
    assert rep.verdict is Verdict.FAIL
    assert rep.failures()[0].witness is not None


def test_unknown_kind(h3):
    with pytest.raises(ValueError):
        check_module(h3, regular_module(h3), "twisted")


def test_module_iso_identity_and_failure(h3):
    M = regular_module(h3)
    ident = {m: unit(m) for m in range(M.dim)}
    assert check_module_iso(h3, M, M, ident).ok
    scaled = dict(ident)
    scaled[0] = {0: Fraction(2)}
    assert not check_module_iso(h3, M, M, scaled).ok


def test_cyclic_from_vacuum(h3):
    M = regular_module(h3)
    assert generated_submodule(h3, M, [h3.vacuum]).closure.rank == M.dim
    assert generated_submodule(h3, M, [{}]).closure.rank == 0


def test_one_step_equals_closure_below_cap():
    V = heisenberg(6)
    g = generated_submodule(V, regular_module(V), [unit(V.index("a[2]"))])
    assert g.ranks_through(V.grading, 5) == (19, 19)


def test_simplicity(h3):
    assert is_simple_truncated(h3, regular_module(h3)) == (True, None)


def test_finite_dimensional_module_is_holomorphic():
    V = dual_numbers()
    assert check_holomorphic_module(V, regular_module(V)).ok
    B = heisenberg(3)
    assert not check_holomorphic_module(B, regular_module(B)).ok


def test_tensor_with_line_is_same_module(h3):
    M = regular_module(h3)
    assert tensor_plain(M, 1).tensors() == M.tensors()


def test_hopf_rep_regular_and_fault(h3):
    act = charge_conjugation_action(h3, Z2)
    M = regular_module(h3)
    assert check_hopf_rep(h3, kZ2, act, M, act, check_s=True).ok
    mixed = dict(act)
    one, a1 = 0, h3.index("a[1]")
    mixed[(1, one)], mixed[(1, a1)] = unit(a1), unit(one)
    assert not check_hopf_rep(h3, kZ2, act, M, mixed).ok
    with pytest.raises(NotHopfRep):
        tensor_hopf(h3, kZ2, act, M, mixed)


def test_tensor_hopf_vacuum_is_identity(h3):
    act = charge_conjugation_action(h3, Z2)
    N, S = tensor_hopf(h3, kZ2, act, regular_module(h3), act)
    W = S.carrier
    for m in range(N.dim):
        assert N.act(W, W.vacuum, -1, unit(m)) == unit(m)
    sample = [t for t in sample_triples(W, 60, 5) if t[2] < N.dim]
    assert check_module(W, N, "left", sample=sample).ok


def test_induced_module_sampled(h3):
    act = charge_conjugation_action(h3, Z2)
    flip = {(0, 0): unit(0), (0, 1): unit(1), (1, 0): unit(1), (1, 1): unit(0)}
    N, S = induced_module(h3, kZ2, act, 2, flip)
    W = S.carrier
    assert N.dim == 2 * h3.dim
    sample = [t for t in sample_triples(W, 60, 7) if t[2] < N.dim]
    assert check_module(W, N, "left", sample=sample).ok


def test_smash_module_generators(h3):
    act = charge_conjugation_action(h3, Z2)
    M = regular_module(h3)
    N, S = smash_module_from_pair(h3, kZ2, act, M, act)
    W = S.carrier
    for m in range(M.dim):
        # (1#g) acts as g, (a#1) acts as Y^M(a,z)
        assert N.act(W, unit(1), -1, unit(m)) == act[(1, m)]
        a = h3.index("a[1]")
        for n in range(-2, 2):
            try:
                expect = M.act(h3, unit(a), n, unit(m))
            except TruncationEscape:
                continue
            assert N.act(W, unit(2 * a), n, unit(m)) == expect


def test_trivial_hopf_correspondence(h3):
    k = group_algebra(cyclic_group(1))
    triv = trivial_action(h3, k)
    M = regular_module(h3)
    N, _ = smash_module_from_pair(h3, k, triv, M, triv)
    assert N.tensors() == M.tensors()


def test_round_trip(h3):
    act = charge_conjugation_action(h3, Z2)
    assert round_trip(h3, kZ2, act, regular_module(h3), act).ok


def test_pair_from_regular_smash_module(h3):
    act = charge_conjugation_action(h3, Z2)
    M = regular_module(h3)
    N, S = smash_module_from_pair(h3, kZ2, act, M, act)
    pair = pair_from_smash_module(h3, kZ2, act, S, N)
    assert pair.report.ok
    assert pair.module.tensors() == M.tensors()
    assert all(pair.action.get((0, m)) == unit(m) for m in range(M.dim))
