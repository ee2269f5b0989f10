"""Structure-constant carrier for field algebras with an explicit truncation contract."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from ..exactlin import Vec, axpy, unit
from ..formal import LaurentPoly, Window
from ..report import TruncationEscape

Products = Dict[Tuple[int, int], Dict[int, Vec]]
ExchangeHint = Callable[[int, int], List[Tuple[Vec, Vec]]]


@dataclass(frozen=True)
class TruncContract:
    """What a verdict was certified under.

    ``degree_cap``: products whose output degree exceeds it are unknown.
    ``n_range``: smallest and largest product index that can be nonzero.
    ``window``: default exponent rectangle for two-variable identities.
    """

    degree_cap: Optional[int]
    n_range: Tuple[int, int]
    window: Window

    def as_dict(self) -> Dict[str, Any]:
        return {"degree_cap": self.degree_cap, "n_range": list(self.n_range),
                "window": self.window.as_list()}


@dataclass
class FieldAlgebraData:
    """(V, 1, s, Y) by structure constants a_n b.

    ``sigma`` fixes the grading law deg(a_n b) = deg a + deg b + sigma*(n+1)
    and deg(s a) = deg a - sigma.  Vertex algebras use sigma = -1; the
    differential fixtures, where s lowers polynomial degree, use +1.
    Products with n >= n_vanish are zero.
    """

    labels: List[str]
    vacuum: Vec
    s_cols: Dict[int, Vec]
    products: Products
    n_vanish: int
    grading: Optional[List[int]] = None
    degree_cap: Optional[int] = None
    sigma: int = -1
    window: Optional[Window] = None
    name: str = ""
    provenance: Dict[str, Any] = field(default_factory=dict)
    exchange_hint: Optional[ExchangeHint] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.grading is not None and len(self.grading) != len(self.labels):
            raise ValueError("grading length differs from basis size")
        if self.degree_cap is not None and self.grading is None:
            raise ValueError("a degree cap needs a grading")
        self._min_deg = min(self.grading) if self.grading else 0
        self._index = {l: i for i, l in enumerate(self.labels)}

    # --- shape ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self._index[label]

    def basis(self, i: int) -> Vec:
        return unit(i)

    def deg(self, i: int) -> int:
        return self.grading[i] if self.grading is not None else 0

    def vec_deg(self, v: Vec) -> Optional[int]:
        """Degree of a homogeneous vector, None for 0; raises if mixed."""
        if self.grading is None or not v:
            return None
        ds = {self.grading[k] for k in v}
        if len(ds) != 1:
            raise ValueError("vector is not homogeneous")
        return ds.pop()

    @property
    def contract(self) -> TruncContract:
        return TruncContract(self.degree_cap, (self.n_min(), self.n_vanish - 1),
                             self.window or self.default_window())

    def n_min(self) -> int:
        lo = 0
        for per in self.products.values():
            if per:
                lo = min(lo, min(per))
        return lo

    def default_window(self) -> Window:
        """Exponents i = -n-1 over every mode that can matter inside the cap."""
        cap = self.degree_cap if self.degree_cap is not None else max(2, -self.n_min())
        return Window(-self.n_vanish, cap + 1, -self.n_vanish, cap + 1)

    # --- knowledge -----------------------------------------------------

    def out_deg(self, a: int, n: int, b: int) -> int:
        return self.grading[a] + self.grading[b] + self.sigma * (n + 1)

    def product_status(self, a: int, n: int, b: int) -> str:
        """'zero', 'known', or 'unknown' for the basis product a_n b."""
        if n >= self.n_vanish:
            return "zero"
        if self.grading is None:
            return "known"
        d = self.out_deg(a, n, b)
        if d < self._min_deg:
            return "zero"
        if self.degree_cap is not None and d > self.degree_cap:
            return "unknown"
        return "known"

    def prod(self, a: int, n: int, b: int) -> Vec:
        if n >= self.n_vanish:
            return {}
        if self.grading is not None:
            d = self.grading[a] + self.grading[b] + self.sigma * (n + 1)
            if d < self._min_deg:
                return {}
            if self.degree_cap is not None and d > self.degree_cap:
                raise TruncationEscape(
                    f"{self.labels[a]}_({n}){self.labels[b]} has degree {d} > cap {self.degree_cap}")
        per = self.products.get((a, b))
        if per is None:
            return {}
        return per.get(n, {})

    def act(self, a: int, n: int, x: Vec) -> Vec:
        """a_n applied to a vector."""
        acc: Vec = {}
        for b, c in x.items():
            r = self.prod(a, n, b)
            if r:
                axpy(acc, c, r)
        return acc

    def prodv(self, x: Vec, n: int, y: Vec) -> Vec:
        acc: Vec = {}
        for a, c in x.items():
            r = self.act(a, n, y)
            if r:
                axpy(acc, c, r)
        return acc

    def s_status(self, i: int) -> str:
        if self.grading is None or self.degree_cap is None:
            return "known"
        return "unknown" if self.grading[i] - self.sigma > self.degree_cap else "known"

    def s(self, x: Vec) -> Vec:
        acc: Vec = {}
        for i, c in x.items():
            if self.s_status(i) == "unknown":
                raise TruncationEscape(f"s({self.labels[i]}) leaves the degree cap")
            img = self.s_cols.get(i)
            if img:
                axpy(acc, c, img)
        return acc

    def s_power(self, x: Vec, k: int) -> Vec:
        for _ in range(k):
            if not x:
                break
            x = self.s(x)
        return x

    def modes(self, a: int, b: int) -> List[int]:
        """Indices n with a_n b possibly nonzero and known, ascending."""
        per = self.products.get((a, b), {})
        return sorted(n for n in per if per[n])

    def known_range(self, a: int, b: int) -> Tuple[Optional[int], int]:
        """(lowest known n or None if unbounded below, n_vanish)."""
        if self.grading is None or self.degree_cap is None:
            return None, self.n_vanish
        if self.sigma < 0:
            lo = self.grading[a] + self.grading[b] - self.degree_cap - 1
            return lo, self.n_vanish
        return None, self.n_vanish

    # --- fields --------------------------------------------------------

    def eval_Y(self, x: Vec, y: Vec) -> LaurentPoly:
        """Y(x, z)y as a Laurent polynomial; inexact above the known modes."""
        terms: Dict[int, Vec] = {}
        order: Optional[int] = None
        for a, c in x.items():
            for b, d in y.items():
                lo, hi = self.known_range(a, b)
                per = self.products.get((a, b), {})
                if lo is not None:
                    o = -lo  # modes n < lo are unknown, i.e. exponents >= -lo
                    order = o if order is None else min(order, o)
                elif self.grading is not None and self.degree_cap is not None:
                    # lower-side truncation: some low exponents are unknown
                    for n in range(-self.grading[a] - 2, hi):
                        if self.product_status(a, n, b) == "unknown":
                            raise TruncationEscape(
                                f"Y({self.labels[a]},z){self.labels[b]} needs a product beyond the cap")
                for n, v in per.items():
                    if lo is None or n >= lo:
                        axpy(terms.setdefault(-n - 1, {}), c * d, v)
        return LaurentPoly(terms, order)

    def with_products(self, products: Products, **changes) -> "FieldAlgebraData":
        kw = dict(labels=list(self.labels), vacuum=dict(self.vacuum), s_cols=dict(self.s_cols),
                  products=products, n_vanish=self.n_vanish, grading=self.grading,
                  degree_cap=self.degree_cap, sigma=self.sigma, window=self.window,
                  name=self.name, provenance=dict(self.provenance))
        kw.update(changes)
        return FieldAlgebraData(**kw)


def identity_exchange(a: int, b: int) -> List[Tuple[Vec, Vec]]:
    """Exchange hint of a vertex algebra: Y(a,z)Y(b,w) ~ Y(b,w)Y(a,z)."""
    return [(unit(a), unit(b))]


def vector_label(V: FieldAlgebraData, v: Vec) -> str:
    if not v:
        return "0"
    parts = []
    for k in sorted(v):
        c = v[k]
        parts.append(V.labels[k] if c == 1 else f"{c}*{V.labels[k]}")
    return " + ".join(parts)
