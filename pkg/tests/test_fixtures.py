from fractions import Fraction
from itertools import product

import pytest
from sympy.functions.combinatorial.numbers import partition

from fock import mode
from hopfva.exactlin import apply_map, unit
from hopfva.fieldalg.suites import (check_field_algebra, check_structure_predicate, find_locality,
                                    run_axiom_suite)
from hopfva.fixtures import (builtin_groups_and_actions, charge_conjugation_matrix,
                             differential_va, dual_numbers, group_by_name, heisenberg,
                             partition_basis, partition_of, swap_matrix)
from hopfva.report import TruncationEscape


@pytest.mark.parametrize("D", range(1, 8))
def test_partition_counts(D):
    assert len(partition_basis(D)) == sum(int(partition(k)) for k in range(D + 1))


def test_heisenberg_dim_at_4():
    assert heisenberg(4).dim == 12


def test_alpha_products():
    V = heisenberg(4)
    a = V.index("a[1]")
    assert V.prod(a, 1, a) == unit(0)
    assert V.prod(a, 0, a) == {}
    for n in range(2, V.n_vanish):
        assert V.prod(a, n, a) == {}


def test_heisenberg_against_fock_oracle():
    V = heisenberg(4)
    for a, b in product(range(V.dim), repeat=2):
        pa, pb = partition_of(V, a), partition_of(V, b)
        for n in range(-5, 6):
            try:
                ours = V.prod(a, n, b)
            except TruncationEscape:
                continue
            theirs = mode(pa, n, {pb: Fraction(1)})
            assert {partition_of(V, k): c for k, c in ours.items()} == theirs, (V.labels[a], n, V.labels[b])


def test_heisenberg_truncation_coherence():
    small, big = heisenberg(3), heisenberg(4)
    for a, b in product(range(small.dim), repeat=2):
        for n in range(-4, 4):
            try:
                x = small.prod(a, n, b)
            except TruncationEscape:
                continue
            y = big.prod(big.index(small.labels[a]), n, big.index(small.labels[b]))
            assert {small.labels[k]: c for k, c in x.items()} == {big.labels[k]: c for k, c in y.items()}


def test_heisenberg_vertex_suite():
    V = heisenberg(3)
    rep = run_axiom_suite(V, ("vacuum", "translation", "associativity", "skew", "locality"))
    assert rep.ok, rep
    assert rep["locality: (z-w)^n [Y(a,z),Y(b,w)] = 0"].detail["pairs"] > 0


def test_alpha_locality_order_two():
    V = heisenberg(4)
    a = unit(V.index("a[1]"))
    assert find_locality(V, a, a).order_n == 2


def test_differential_basis_and_products():
    V = differential_va(2, 2)
    assert V.labels == ["1", "x", "y", "x^2", "x*y", "y^2"]
    x, y = V.index("x"), V.index("y")
    assert V.prod(x, -1, y) == unit(V.index("x*y"))
    # Y(x,z)y = (x + z)y: the z^1 coefficient is (sx)y = y
    assert V.prod(x, -2, y) == unit(y)
    for a, b in product(range(V.dim), repeat=2):
        assert V.prod(a, 0, b) == {}


def test_differential_is_field_algebra_and_commutative():
    V = differential_va(2, 3)
    assert check_field_algebra(V).ok
    for a, b in [(1, 2), (3, 4), (2, 7)]:
        assert find_locality(V, unit(a), unit(b)).order_n == 0


def test_differential_custom_derivation():
    V = differential_va(2, 2, s_spec=[1, 0])
    assert V.s(unit(V.index("y"))) == {}
    assert V.s(unit(V.index("x"))) == unit(0)


def test_dual_numbers():
    V = dual_numbers()
    assert V.prod(1, -1, 1) == {}
    assert check_structure_predicate(V, "holomorphic").ok


def test_catalog_groups():
    cat = builtin_groups_and_actions()
    assert {g: G.order for g, G in cat.groups.items()} == {"Z2": 2, "Z3": 3, "S3": 6}
    assert "swap" in cat.actions and "charge-conjugation" in cat.actions
    with pytest.raises(KeyError):
        group_by_name("Z5")


def test_swap_is_automorphism():
    V = differential_va(2, 3)
    rep = check_structure_predicate(V, "automorphism", swap_matrix(V))
    assert rep.ok, rep


def test_charge_conjugation_involutive_and_commutes_with_s():
    V = heisenberg(4)
    sigma = charge_conjugation_matrix(V)
    for i in range(V.dim):
        assert apply_map(sigma, sigma[i]) == unit(i)
    rep = check_structure_predicate(V, "automorphism", sigma)
    assert rep.ok, rep


def test_fixture_documents_are_deterministic():
    from hopfva.io import dump_algebra, dumps
    assert dumps(dump_algebra(heisenberg(3))) == dumps(dump_algebra(heisenberg(3)))
