"""Coefficient-level kernels for two-variable identities.

Positions are written in mode indices: (p, q) is the coefficient of
z^{-p-1} w^{-q-1}.  Every kernel returns a small outcome record instead of
raising on truncation, so sweeps can count what they could not decide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from ..exactlin import Vec, axpy
from ..formal import Window, binom
from ..report import TruncationEscape
from .data import FieldAlgebraData

_UNKNOWN = object()
Pair = Tuple[Vec, Vec]


@dataclass
class Outcome:
    """Result of sweeping one identity over a set of positions."""

    decided: int = 0
    skipped: int = 0
    failure: Optional[Tuple] = None

    def merge(self, other: "Outcome") -> "Outcome":
        self.decided += other.decided
        self.skipped += other.skipped
        if self.failure is None:
            self.failure = other.failure
        return self


def mode_positions(w: Window) -> List[Tuple[int, int]]:
    """Mode pairs (p, q) for the exponent window (i, j) = (-p-1, -q-1)."""
    return [(-i - 1, -j - 1) for i in range(w.i_min, w.i_max + 1)
            for j in range(w.j_min, w.j_max + 1)]


class Composite:
    """Memoized x_p (y_q c) for fixed vectors x, y, c."""

    __slots__ = ("V", "x", "y", "c", "inner", "outer")

    def __init__(self, V: FieldAlgebraData, x: Vec, y: Vec, c: Vec):
        self.V, self.x, self.y, self.c = V, x, y, c
        self.inner: Dict[int, object] = {}
        self.outer: Dict[Tuple[int, int], object] = {}

    def get(self, p: int, q: int) -> Vec:
        key = (p, q)
        r = self.outer.get(key)
        if r is None:
            try:
                yc = self._inner(q)
                r = self.V.prodv(self.x, p, yc) if yc else {}
            except TruncationEscape:
                r = _UNKNOWN
            self.outer[key] = r
        if r is _UNKNOWN:
            raise TruncationEscape(f"coefficient at modes {(p, q)} is beyond the cap")
        return r

    def _inner(self, q: int) -> Vec:
        r = self.inner.get(q)
        if r is None:
            try:
                r = self.V.prodv(self.y, q, self.c)
            except TruncationEscape:
                r = _UNKNOWN
            self.inner[q] = r
        if r is _UNKNOWN:
            raise TruncationEscape("inner product beyond the cap")
        return r


def _vec_degrees(V: FieldAlgebraData, v: Vec) -> Optional[Tuple[int, int]]:
    if V.grading is None or not v:
        return None
    ds = [V.grading[k] for k in v]
    return min(ds), max(ds)


def _homogeneous_degrees(V, a, b, c, pairs):
    """(deg a, deg b, deg c) when every vector, pairs included, is homogeneous compatibly."""
    if V.grading is None:
        return None
    da, db, dc = _vec_degrees(V, a), _vec_degrees(V, b), _vec_degrees(V, c)
    if not (da and db and dc) or da[0] != da[1] or db[0] != db[1] or dc[0] != dc[1]:
        return None
    for ai, bi in pairs:
        x, y = _vec_degrees(V, ai), _vec_degrees(V, bi)
        if x is None or y is None:
            continue
        if x != da or y != db:
            return None
    return da[0], db[0], dc[0]


def position_degree(V: FieldAlgebraData, da: int, db: int, dc: int, p: int, q: int) -> int:
    return da + db + dc + V.sigma * (p + 1) + V.sigma * (q + 1)


def multiplied(n: int, get: Callable[[int, int], Vec], p: int, q: int) -> Vec:
    """Coefficient of (z-w)^n X at modes (p, q), n >= 0."""
    if n == 0:
        return get(p, q)
    acc: Vec = {}
    for k in range(n + 1):
        c = binom(n, k) * (-1) ** k
        axpy(acc, c, get(p + n - k, q + k))
    return acc


def exchange_outcome(V: FieldAlgebraData, a: Vec, b: Vec, pairs: Sequence[Pair], n: int,
                     c: Vec, positions: Iterable[Tuple[int, int]]) -> Outcome:
    """(z-w)^n Y(a,z)Y(b,w)c against (z-w)^n sum_i Y(b^i,w)Y(a^i,z)c."""
    out = Outcome()
    left = Composite(V, a, b, c)
    rights = [Composite(V, bi, ai, c) for ai, bi in pairs]
    degs = _homogeneous_degrees(V, a, b, c, pairs)
    for p, q in positions:
        if degs is not None:
            d = position_degree(V, *degs, p + n, q)
            if d < V._min_deg:
                continue
            if V.degree_cap is not None and d > V.degree_cap:
                out.skipped += 1
                continue
        try:
            lhs = multiplied(n, left.get, p, q)
            rhs: Vec = {}
            for r in rights:
                # right composite stores b^i_{q'} (a^i_{p'} c) under key (q', p')
                axpy(rhs, 1, multiplied(n, lambda pp, qq, r=r: r.get(qq, pp), p, q))
        except TruncationEscape:
            out.skipped += 1
            continue
        out.decided += 1
        if lhs != rhs:
            out.failure = (p, q)
            return out
    return out


def exchange_columns(V: FieldAlgebraData, a: Vec, b: Vec, cands: Sequence[Pair], n: int,
                     c: Vec, positions: Iterable[Tuple[int, int]]):
    """Linear-system rows for an unknown combination of candidate pairs.

    Returns (lhs entries, candidate columns) keyed by (p, q, coordinate), plus
    the number of positions used and skipped.
    """
    left = Composite(V, a, b, c)
    rights = [Composite(V, bi, ai, c) for ai, bi in cands]
    rhs: Dict = {}
    cols: List[Dict] = [{} for _ in cands]
    used = skipped = 0
    for p, q in positions:
        try:
            lhs = multiplied(n, left.get, p, q)
            vals = [multiplied(n, lambda pp, qq, r=r: r.get(qq, pp), p, q) for r in rights]
        except TruncationEscape:
            skipped += 1
            continue
        if not lhs and not any(vals):
            continue
        used += 1
        for k, v in lhs.items():
            rhs[(p, q, k)] = v
        for col, v in zip(cols, vals):
            for k, x in v.items():
                col[(p, q, k)] = x
    return rhs, cols, used, skipped


# --- associativity ------------------------------------------------------------

def assoc_outcome(V: FieldAlgebraData, a: Vec, b: Vec, c: Vec, n: int,
                  positions: Iterable[Tuple[int, int]]) -> Outcome:
    """(x+y)^n Y(a,x+y)Y(b,y)c = (x+y)^n Y(Y(a,x)b,y)c at exponents x^i y^j.

    The left side is expanded in nonnegative powers of y.
    """
    out = Outcome()
    left = Composite(V, a, b, c)
    ab: Dict[int, object] = {}
    nv = V.n_vanish

    def a_r_b(r):
        v = ab.get(r)
        if v is None:
            try:
                v = V.prodv(a, r, b)
            except TruncationEscape:
                v = _UNKNOWN
            ab[r] = v
        if v is _UNKNOWN:
            raise TruncationEscape("a_r b beyond the cap")
        return v

    for i, j in positions:
        try:
            lhs: Vec = {}
            for k in range(0, nv + j + 1):
                p = n - 1 - i - k
                # no shortcut on p >= nv: b_q c may lie beyond the cap
                q = k - 1 - j
                if q >= nv:
                    break
                coef = binom(n - p - 1, k)
                if coef:
                    axpy(lhs, coef, left.get(p, q))
            rhs: Vec = {}
            for t in range(n + 1):
                r = n - t - 1 - i
                l = t - 1 - j
                if r >= nv:
                    continue
                x = a_r_b(r)
                # evaluated first: a_r b beyond the cap must escape, not vanish
                if x and l < nv:
                    axpy(rhs, binom(n, t), V.prodv(x, l, c))
        except TruncationEscape:
            out.skipped += 1
            continue
        if not lhs and not rhs:
            continue
        out.decided += 1
        if lhs != rhs:
            out.failure = (i, j)
            return out
    return out


# --- one-variable identities ----------------------------------------------------

def skew_rhs(V: FieldAlgebraData, a: Vec, b: Vec, n: int,
             pairs: Optional[Sequence[Pair]] = None) -> Vec:
    """sum_k (-1)^{n+k+1} s^{(k)} (b^i_{n+k} a^i): the z^{-n-1} coefficient of e^{zs} sum Y(b^i,-z)a^i."""
    if pairs is None:
        pairs = [(a, b)]
    acc: Vec = {}
    for ai, bi in pairs:
        k = 0
        while n + k < V.n_vanish:
            x = V.prodv(bi, n + k, ai)
            if x:
                y = V.s_power(x, k)
                if y:
                    axpy(acc, Fraction((-1) ** ((n + k + 1) % 2), factorial(k)), y)
            k += 1
    return acc


def wick_coefficient(V: FieldAlgebraData, a: Vec, b: Vec, m: int, k: int, c: Vec) -> Vec:
    """(Y(a,z)_{-m-1}Y(b,z))_k c: the normal-ordered product with the m-th divided derivative of Y(a)."""
    acc: Vec = {}
    nv = V.n_vanish
    # creation part: p <= -1, q = k - p - m - 1 grows as p falls
    p = -1
    while True:
        q = k - p - m - 1
        if q >= nv:
            break
        coef = binom(-p - 1, m)
        if coef:
            bc = V.prodv(b, q, c)
            if bc:
                axpy(acc, coef, V.prodv(a, p, bc))
        p -= 1
    for p in range(0, nv):
        q = k - p - m - 1
        coef = binom(-p - 1, m)
        if coef:
            ac = V.prodv(a, p, c)
            if ac:
                axpy(acc, coef, V.prodv(b, q, ac))
    return acc


def commutator_coefficient(V: FieldAlgebraData, a: Vec, b: Vec, m: int, k: int, c: Vec) -> Vec:
    """(Y(a,z)_m Y(b,z))_k c = sum_j C(m,j)(-1)^j [a_{m-j}, b_{k+j}] c, m >= 0."""
    acc: Vec = {}
    for j in range(m + 1):
        coef = binom(m, j) * (-1) ** j
        x = V.prodv(a, m - j, V.prodv(b, k + j, c))
        y = V.prodv(b, k + j, V.prodv(a, m - j, c))
        axpy(acc, coef, x)
        axpy(acc, -coef, y)
    return acc


def field_product_coefficient(V: FieldAlgebraData, a: Vec, b: Vec, n: int, k: int, c: Vec) -> Vec:
    if n >= 0:
        return commutator_coefficient(V, a, b, n, k, c)
    return wick_coefficient(V, a, b, -n - 1, k, c)


def borcherds_sides(V: FieldAlgebraData, a: Vec, b: Vec, pairs: Sequence[Pair],
                    m: int, k: int, l: int, c: Vec) -> Tuple[Vec, Vec]:
    """Component form of the three-term delta identity.

    sum_j C(m,j) (a_{l+j} b)_{m+k-j} c
      = sum_j (-1)^j C(l,j) (a_{m+l-j} b_{k+j} c - (-1)^l sum_i b^i_{l+k-j} a^i_{m+j} c)
    """
    nv = V.n_vanish
    lhs: Vec = {}
    j = 0
    while l + j < nv:
        coef = binom(m, j)
        if coef:
            x = V.prodv(a, l + j, b)
            if x:
                axpy(lhs, coef, V.prodv(x, m + k - j, c))
        elif m >= 0 and j > m:
            break
        j += 1
    rhs: Vec = {}
    j = 0
    while k + j < nv:
        coef = binom(l, j) * (-1) ** j
        if coef:
            bc = V.prodv(b, k + j, c)
            if bc:
                axpy(rhs, coef, V.prodv(a, m + l - j, bc))
        elif l >= 0 and j > l:
            break
        j += 1
    sign = (-1) ** (l % 2)
    j = 0
    while m + j < nv:
        coef = binom(l, j) * (-1) ** j
        if coef:
            for ai, bi in pairs:
                ac = V.prodv(ai, m + j, c)
                if ac:
                    axpy(rhs, -sign * coef, V.prodv(bi, l + k - j, ac))
        elif l >= 0 and j > l:
            break
        j += 1
    return lhs, rhs


def residue_formula_sides(V: FieldAlgebraData, a: Vec, b: Vec, pairs: Sequence[Pair],
                          n: int, k: int, c: Vec) -> Tuple[Vec, Vec]:
    """Res_z of i_{z,w}(z-w)^n Y(a,z)Y(b,w)c - i_{w,z}(z-w)^n sum_i Y(b^i,w)Y(a^i,z)c,
    at w^{-k-1}, against (a_n b)_k c."""
    nv = V.n_vanish
    first: Vec = {}
    j = 0
    while k + j < nv and (n < 0 or j <= n):
        bc = V.prodv(b, k + j, c)
        if bc:
            axpy(first, binom(n, j) * (-1) ** j, V.prodv(a, n - j, bc))
        j += 1
    j = 0
    while j < nv and (n < 0 or j <= n):
        coef = binom(n, j) * (-1) ** ((n - j) % 2)
        for ai, bi in pairs:
            ac = V.prodv(ai, j, c)
            if ac:
                axpy(first, -coef, V.prodv(bi, n + k - j, ac))
        j += 1
    return V.prodv(V.prodv(a, n, b), k, c), first
