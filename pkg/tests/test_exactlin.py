from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hopfva.exactlin import (DimensionMismatch, Inconsistent, apply_map, invert, kernel,
                             quotient_coords, rank_of, solve_columns, span, unit, vec)

DIM = 5
coef = st.fractions(min_value=-3, max_value=3, max_denominator=4)
vectors = st.dictionaries(st.integers(0, DIM - 1), coef, max_size=DIM).map(
    lambda d: {k: v for k, v in d.items() if v})
row_lists = st.lists(vectors, max_size=6)


def sympy_rank(rows, dim):
    if not rows:
        return 0
    M = sympy.Matrix([[sympy.Rational(r.get(j, 0).numerator, r.get(j, 0).denominator)
                       if r.get(j) else 0 for j in range(dim)] for r in rows])
    return M.rank()


@settings(max_examples=60, deadline=None)
@given(row_lists)
def test_rank_matches_sympy(rows):
    assert rank_of(rows, DIM) == sympy_rank(rows, DIM)


@given(row_lists, vectors)
def test_reduce_is_projection_onto_complement(rows, v):
    S = span(rows, DIM)
    r = S.reduce(v)
    assert S.reduce(r) == r
    assert not set(r) & set(S.pivots)
    # v - r lies in the span
    diff = {k: v.get(k, 0) - r.get(k, 0) for k in set(v) | set(r)}
    assert S.contains({k: c for k, c in diff.items() if c})


@given(row_lists)
def test_rows_are_reduced_echelon(rows):
    S = span(rows, DIM)
    for row, p in zip(S.rows, S.pivots):
        assert row[p] == 1 and min(row) == p
        for other, q in zip(S.rows, S.pivots):
            if q != p:
                assert other.get(p, 0) == 0


@given(row_lists, st.lists(coef, min_size=6, max_size=6))
def test_solve_columns_reconstructs_rhs(cols, xs):
    rhs = {}
    for c, x in zip(cols, xs):
        for k, v in c.items():
            rhs[k] = rhs.get(k, 0) + x * v
    rhs = {k: v for k, v in rhs.items() if v}
    sol = solve_columns(cols, rhs)
    back = {}
    for j, x in sol.items():
        for k, v in cols[j].items():
            back[k] = back.get(k, 0) + x * v
    assert {k: v for k, v in back.items() if v} == rhs


def test_inconsistent_system_raises():
    with pytest.raises(Inconsistent):
        solve_columns([{0: Fraction(1)}], {1: Fraction(1)})


def test_kernel_of_projection():
    cols = {0: unit(0), 1: {}, 2: unit(0)}
    ker = kernel(cols, 3)
    assert len(ker) == 2
    for v in ker:
        assert apply_map(cols, v) == {}


def test_invert_round_trip():
    cols = {0: vec([(0, 1), (1, 2)]), 1: vec([(1, 1)])}
    inv = invert(cols, 2)
    for j in range(2):
        assert apply_map(cols, inv[j]) == unit(j)


def test_quotient_coordinates():
    S = span([vec([(0, 1), (1, -1)])], 3)
    # e0 and e1 have the same class
    assert quotient_coords(3, S, unit(0)) == quotient_coords(3, S, unit(1))
    assert S.non_pivots() == [1, 2]


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        span([unit(7)], 3)


def test_vec_drops_zeros_and_merges():
    assert vec([(0, 1), (0, -1), (1, (1, 2))]) == {1: Fraction(1, 2)}
