"""Formal distributions in one and two variables, truncated explicitly.

Nothing here is lazy: each object carries the finite data it knows about and
says where that knowledge stops.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple, Union

from .exactlin import Vec, axpy, scale
from .report import TruncationEscape

#: key used for scalar-valued coefficients
SCALAR = ()


def binom(n: int, k: int) -> Fraction:
    """Generalized binomial coefficient, any integer n, k >= 0."""
    if k < 0:
        return Fraction(0)
    num = 1
    for i in range(k):
        num *= n - i
    return Fraction(num, factorial(k))


def scalar(c) -> Vec:
    c = Fraction(c)
    return {SCALAR: c} if c else {}


# --- one variable -----------------------------------------------------------

@dataclass
class LaurentPoly:
    """Finite Laurent data  sum_e terms[e] z^e  with vector coefficients.

    ``order`` is None for an exact object; otherwise coefficients at
    exponents >= order are not known (the object is exact modulo z^order).
    """

    terms: Dict[int, Vec] = field(default_factory=dict)
    order: Optional[int] = None

    def __post_init__(self):
        self.terms = {e: v for e, v in self.terms.items() if v}

    def coeff(self, e: int) -> Vec:
        if self.order is not None and e >= self.order:
            raise TruncationEscape(f"coefficient z^{e} beyond truncation order {self.order}")
        return self.terms.get(e, {})

    @property
    def exact(self) -> bool:
        return self.order is None

    def lowest(self) -> Optional[int]:
        return min(self.terms) if self.terms else None

    def derivative(self) -> "LaurentPoly":
        out = {}
        for e, v in self.terms.items():
            if e:
                out[e - 1] = scale(e, v)
        return LaurentPoly(out, None if self.order is None else self.order - 1)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = {e: dict(v) for e, v in self.terms.items()}
        for e, v in other.terms.items():
            axpy(out.setdefault(e, {}), 1, v)
        return LaurentPoly(out, _min_order(self.order, other.order))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + other.scaled(-1)

    def scaled(self, c) -> "LaurentPoly":
        return LaurentPoly({e: scale(c, v) for e, v in self.terms.items()}, self.order)

    def truncate(self, order: int) -> "LaurentPoly":
        o = order if self.order is None else min(order, self.order)
        return LaurentPoly({e: v for e, v in self.terms.items() if e < o}, o)

    def agrees(self, other: "LaurentPoly") -> bool:
        """Equality on the exponents both sides know."""
        o = _min_order(self.order, other.order)
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(e, {}) == other.terms.get(e, {})
                   for e in keys if o is None or e < o)


def _min_order(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def residue(p: LaurentPoly) -> Vec:
    return dict(p.coeff(-1))


def exp_s_apply(s: Union[Callable[[Vec], Vec], Mapping[int, Vec]], a: Vec,
                order: int) -> Tuple[LaurentPoly, bool]:
    """e^{zs} a = sum_k s^k a / k! z^k up to z^order.

    Returns the polynomial and whether it is exact (s^{order+1} a = 0).  An
    inexact result carries ``order + 1`` as its truncation order.
    """
    if not callable(s):
        cols = s

        def s(x, cols=cols):
            acc: Vec = {}
            for k, c in x.items():
                axpy(acc, c, cols.get(k, {}))
            return acc
    terms: Dict[int, Vec] = {}
    cur = dict(a)
    for k in range(order + 1):
        if not cur:
            return LaurentPoly(terms), True
        terms[k] = scale(Fraction(1, factorial(k)), cur)
        cur = s(cur)
    exact = not cur
    return LaurentPoly(terms, None if exact else order + 1), exact


# --- two variables ----------------------------------------------------------

@dataclass(frozen=True)
class Window:
    i_min: int
    i_max: int
    j_min: int
    j_max: int

    def __post_init__(self):
        if self.i_min > self.i_max or self.j_min > self.j_max:
            raise ValueError("empty window")

    def __contains__(self, ij) -> bool:
        i, j = ij
        return self.i_min <= i <= self.i_max and self.j_min <= j <= self.j_max

    def points(self) -> Iterator[Tuple[int, int]]:
        for i in range(self.i_min, self.i_max + 1):
            for j in range(self.j_min, self.j_max + 1):
                yield i, j

    def shrink(self, di_lo=0, di_hi=0, dj_lo=0, dj_hi=0) -> Optional["Window"]:
        a, b = self.i_min + di_lo, self.i_max - di_hi
        c, d = self.j_min + dj_lo, self.j_max - dj_hi
        if a > b or c > d:
            return None
        return Window(a, b, c, d)

    def intersect(self, other: "Window") -> Optional["Window"]:
        a, b = max(self.i_min, other.i_min), min(self.i_max, other.i_max)
        c, d = max(self.j_min, other.j_min), min(self.j_max, other.j_max)
        if a > b or c > d:
            return None
        return Window(a, b, c, d)

    def as_list(self) -> List[int]:
        return [self.i_min, self.i_max, self.j_min, self.j_max]


@dataclass
class BiWindow:
    """Coefficients of z^i w^j known on ``window``.

    ``unknown`` lists positions inside the window whose value lies beyond a
    truncation; they never take part in comparisons.  ``exact`` marks
    objects that vanish identically outside the window (polynomials), which
    lets products with them stay sound.
    """

    window: Window
    coeffs: Dict[Tuple[int, int], Vec] = field(default_factory=dict)
    exact: bool = False
    unknown: frozenset = frozenset()

    def __post_init__(self):
        self.coeffs = {ij: v for ij, v in self.coeffs.items()
                       if v and ij in self.window and ij not in self.unknown}
        self.unknown = frozenset(ij for ij in self.unknown if ij in self.window)

    def known(self, ij) -> bool:
        return ij in self.window and ij not in self.unknown

    def __getitem__(self, ij) -> Vec:
        if ij not in self.window:
            if self.exact:
                return {}
            raise TruncationEscape(f"position {ij} outside window {self.window}")
        if ij in self.unknown:
            raise TruncationEscape(f"position {ij} is beyond the truncation")
        return self.coeffs.get(ij, {})

    def support(self) -> List[Tuple[int, int]]:
        return sorted(self.coeffs)

    def _common(self, other: "BiWindow", window: Optional[Window]):
        w = self.window.intersect(other.window)
        if window is not None and w is not None:
            w = w.intersect(window)
        return w, self.unknown | other.unknown

    def agrees(self, other: "BiWindow", window: Optional[Window] = None) -> bool:
        return not self.disagreements(other, window)

    def disagreements(self, other: "BiWindow", window: Optional[Window] = None) -> List[Tuple[int, int]]:
        w, unk = self._common(other, window)
        if w is None:
            return []
        keys = {ij for ij in set(self.coeffs) | set(other.coeffs) if ij in w and ij not in unk}
        return sorted(ij for ij in keys if self.coeffs.get(ij, {}) != other.coeffs.get(ij, {}))

    def decidable(self, other: "BiWindow", window: Optional[Window] = None) -> int:
        """Number of positions both sides know."""
        w, unk = self._common(other, window)
        if w is None:
            return 0
        return sum(1 for ij in w.points() if ij not in unk)

    def is_zero(self, window: Optional[Window] = None) -> bool:
        w = self.window if window is None else self.window.intersect(window)
        if w is None:
            return True
        return not any(ij in w for ij in self.coeffs)

    def transpose(self) -> "BiWindow":
        w = self.window
        return BiWindow(Window(w.j_min, w.j_max, w.i_min, w.i_max),
                        {(j, i): v for (i, j), v in self.coeffs.items()}, self.exact,
                        frozenset((j, i) for i, j in self.unknown))

    def __add__(self, other: "BiWindow") -> "BiWindow":
        w = self.window.intersect(other.window)
        if w is None:
            return BiWindow(self.window, {}, False, frozenset(self.window.points()))
        out: Dict[Tuple[int, int], Vec] = {}
        for src in (self.coeffs, other.coeffs):
            for ij, v in src.items():
                if ij in w:
                    axpy(out.setdefault(ij, {}), 1, v)
        return BiWindow(w, out, self.exact and other.exact, self.unknown | other.unknown)

    def scaled(self, c) -> "BiWindow":
        return BiWindow(self.window, {ij: scale(c, v) for ij, v in self.coeffs.items()},
                        self.exact, self.unknown)

    def __sub__(self, other: "BiWindow") -> "BiWindow":
        return self + other.scaled(-1)


def _scalar_times(c: Vec, v: Vec) -> Vec:
    """Multiply a scalar-valued coefficient into a vector coefficient."""
    if SCALAR in c and len(c) == 1:
        return scale(c[SCALAR], v)
    if SCALAR in v and len(v) == 1:
        return scale(v[SCALAR], c)
    raise TypeError("at least one factor must be scalar-valued")


def mul(x: BiWindow, y: BiWindow, window: Optional[Window] = None) -> BiWindow:
    """Product of two bivariate objects, one of them scalar-valued.

    If ``y`` is exact the default output window is the interior of ``x``:
    positions whose every shift by the support of ``y`` stays inside
    ``x.window``; positions needing an unknown input become unknown.
    Otherwise the caller must name a window where the finite convolution is
    complete.
    """
    if not y.exact and x.exact:
        x, y = y, x
    sup = y.support() or [(0, 0)]
    if window is None:
        if not y.exact:
            raise ValueError("product of two inexact objects needs an explicit window")
        di = [i for i, _ in sup]
        dj = [j for _, j in sup]
        w = x.window
        lo_i, hi_i = w.i_min + max(di), w.i_max + min(di)
        lo_j, hi_j = w.j_min + max(dj), w.j_max + min(dj)
        if lo_i > hi_i or lo_j > hi_j:
            return BiWindow(Window(0, 0, 0, 0), {}, False, frozenset({(0, 0)}))
        window = Window(lo_i, hi_i, lo_j, hi_j)
    unknown = set()
    if x.unknown and y.exact:
        for i, j in window.points():
            if any((i - a, j - b) in x.unknown for a, b in sup):
                unknown.add((i, j))
    out: Dict[Tuple[int, int], Vec] = {}
    for (i1, j1), u in x.coeffs.items():
        for (i2, j2), v in y.coeffs.items():
            ij = (i1 + i2, j1 + j2)
            if ij in window and ij not in unknown:
                axpy(out.setdefault(ij, {}), 1, _scalar_times(u, v))
    return BiWindow(window, out, False, frozenset(unknown))


def delta_window(w: Window) -> BiWindow:
    """delta(z, w) = sum_n z^{-n-1} w^n clipped to the window."""
    c = {}
    for i in range(w.i_min, w.i_max + 1):
        j = -1 - i
        if w.j_min <= j <= w.j_max:
            c[(i, j)] = scalar(1)
    return BiWindow(w, c)


def expand_izw(n: int, w: Window) -> BiWindow:
    """(z - w)^n expanded in nonnegative powers of w."""
    c = {}
    for k in range(max(0, w.j_min), w.j_max + 1):
        if n >= 0 and k > n:
            break
        i = n - k
        if w.i_min <= i <= w.i_max:
            c[(i, k)] = scalar(binom(n, k) * (-1) ** k)
    return BiWindow(w, c, exact=n >= 0 and _covers(w, n))


def expand_iwz(n: int, w: Window) -> BiWindow:
    """(z - w)^n expanded in nonnegative powers of z."""
    c = {}
    for k in range(max(0, w.i_min), w.i_max + 1):
        if n >= 0 and k > n:
            break
        j = n - k
        if w.j_min <= j <= w.j_max:
            c[(k, j)] = scalar(binom(n, k) * (-1) ** ((n - k) % 2))
    return BiWindow(w, c, exact=n >= 0 and _covers(w, n))


def _covers(w: Window, n: int) -> bool:
    return w.i_min <= 0 and w.j_min <= 0 and w.i_max >= n and w.j_max >= n


def poly_zw(n: int) -> BiWindow:
    """(z - w)^n for n >= 0 as an exact object."""
    if n < 0:
        raise ValueError("negative powers need an expansion direction")
    return expand_izw(n, Window(0, n, 0, n))


# --- scalar series in one variable ------------------------------------------

@dataclass(frozen=True)
class ScalarSeries:
    """sum_k coeffs[k] z^{lowest_exp + k}, known modulo z^order.

    ``order is None`` marks an exact Laurent polynomial.
    """

    lowest_exp: int
    coeffs: Tuple[Fraction, ...]
    order: Optional[int] = None

    @staticmethod
    def from_dict(terms: Mapping[int, object], order: Optional[int] = None) -> "ScalarSeries":
        terms = {e: Fraction(c) for e, c in terms.items() if c}
        if order is not None:
            terms = {e: c for e, c in terms.items() if e < order}
        if not terms:
            return ScalarSeries(0 if order is None else order, (), order)
        lo, hi = min(terms), max(terms)
        return ScalarSeries(lo, tuple(terms.get(e, Fraction(0)) for e in range(lo, hi + 1)), order)

    def as_dict(self) -> Dict[int, Fraction]:
        return {self.lowest_exp + k: c for k, c in enumerate(self.coeffs) if c}

    def coeff(self, e: int) -> Fraction:
        if self.order is not None and e >= self.order:
            raise TruncationEscape(f"series coefficient z^{e} beyond order {self.order}")
        k = e - self.lowest_exp
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "ScalarSeries") -> "ScalarSeries":
        d = self.as_dict()
        for e, c in other.as_dict().items():
            d[e] = d.get(e, 0) + c
        return ScalarSeries.from_dict(d, _min_order(self.order, other.order))

    def scaled(self, c) -> "ScalarSeries":
        return ScalarSeries.from_dict({e: c * v for e, v in self.as_dict().items()}, self.order)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __mul__(self, other: "ScalarSeries") -> "ScalarSeries":
        a, b = self.as_dict(), other.as_dict()
        order = None
        # known modulo z^(order): error terms start at lowest(other) + order(self)
        if self.order is not None:
            lo = min(b) if b else self.order
            order = self.order + (lo if b else 0)
        if other.order is not None:
            lo = min(a) if a else other.order
            o2 = other.order + (lo if a else 0)
            order = o2 if order is None else min(order, o2)
        d: Dict[int, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return ScalarSeries.from_dict(d, order)

    def derivative(self) -> "ScalarSeries":
        return ScalarSeries.from_dict({e - 1: e * c for e, c in self.as_dict().items() if e},
                                      None if self.order is None else self.order - 1)

    def divided_power_derivative(self, j: int) -> "ScalarSeries":
        s = self
        for _ in range(j):
            s = s.derivative()
        return s.scaled(Fraction(1, factorial(j)))

    def negate_variable(self) -> "ScalarSeries":
        """f(-z)."""
        return ScalarSeries.from_dict({e: c * (-1) ** (e % 2) for e, c in self.as_dict().items()},
                                      self.order)

    def agrees(self, other: "ScalarSeries") -> bool:
        o = _min_order(self.order, other.order)
        a, b = self.as_dict(), other.as_dict()
        return all(a.get(e, 0) == b.get(e, 0) for e in set(a) | set(b) if o is None or e < o)


def power_series_divide(num: List[Fraction], den: List[Fraction], n: int) -> List[Fraction]:
    """First n Taylor coefficients of num/den (den[0] != 0)."""
    if not den or den[0] == 0:
        raise ZeroDivisionError("denominator must have nonzero constant term")
    out: List[Fraction] = []
    for k in range(n):
        acc = num[k] if k < len(num) else Fraction(0)
        for i in range(1, min(k, len(den) - 1) + 1):
            acc -= den[i] * out[k - i]
        out.append(acc / den[0])
    return out


def exp_profile_series(c, order: int) -> ScalarSeries:
    """c e^{cz}/(e^{cz} - 1) = z^{-1} * N(z)/D(z), known through z^(order-1).

    N(z) = c e^{cz}, D(z) = (e^{cz} - 1)/z; both have nonzero constant terms.
    """
    c = Fraction(c)
    if c == 0:
        raise ValueError("exp profile needs c != 0")
    m = order + 1  # coefficients z^{-1} .. z^{order-1}
    num = [c ** (k + 1) / factorial(k) for k in range(m)]
    den = [c ** (k + 1) / factorial(k + 1) for k in range(m)]
    q = power_series_divide(num, den, m)
    return ScalarSeries(-1, tuple(q), order)


def inverse_z_series() -> ScalarSeries:
    return ScalarSeries(-1, (Fraction(1),), None)
