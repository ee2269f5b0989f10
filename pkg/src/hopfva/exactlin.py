"""Exact rational scalars and sparse linear algebra.

Vectors are plain ``dict`` objects mapping a coordinate key to a nonzero
:class:`fractions.Fraction`.  Keys are usually basis indices, but any
hashable, orderable key works (the h-adic layer uses ``(index, power)``).
Zero entries are never stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

Rat = Fraction
Vec = Dict[Hashable, Fraction]


class DimensionMismatch(ValueError):
    pass


class Inconsistent(ValueError):
    """The right-hand side is not in the column span."""


def rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, tuple):
        return Fraction(x[0], x[1])
    return Fraction(x)


def vec(items: Iterable[Tuple[Hashable, object]] = ()) -> Vec:
    out: Vec = {}
    for k, c in items:
        c = rat(c)
        if c:
            c = out.get(k, 0) + c
            if c:
                out[k] = c
            else:
                out.pop(k, None)
    return out


def unit(k: Hashable) -> Vec:
    return {k: Fraction(1)}


def axpy(acc: Vec, c, x: Vec) -> Vec:
    """acc += c*x in place; returns acc."""
    if not c:
        return acc
    if c == 1:
        # skip the multiplications on the common unit-coefficient path
        for k, v in x.items():
            w = acc.get(k)
            if w is None:
                acc[k] = v
            else:
                w += v
                if w:
                    acc[k] = w
                else:
                    del acc[k]
        return acc
    for k, v in x.items():
        w = acc.get(k)
        if w is None:
            acc[k] = c * v
        else:
            w += c * v
            if w:
                acc[k] = w
            else:
                del acc[k]
    return acc


def add(x: Vec, y: Vec) -> Vec:
    return axpy(dict(x), 1, y)


def sub(x: Vec, y: Vec) -> Vec:
    return axpy(dict(x), -1, y)


def scale(c, x: Vec) -> Vec:
    if not c:
        return {}
    return {k: c * v for k, v in x.items()}


def lincomb(terms: Iterable[Tuple[object, Vec]]) -> Vec:
    acc: Vec = {}
    for c, x in terms:
        axpy(acc, c, x)
    return acc


def apply_map(cols: Dict[Hashable, Vec], x: Vec) -> Vec:
    """Apply a linear map given column-wise (basis key -> image)."""
    acc: Vec = {}
    for k, c in x.items():
        img = cols.get(k)
        if img:
            axpy(acc, c, img)
    return acc


def compose(f: Dict[Hashable, Vec], g: Dict[Hashable, Vec]) -> Dict[Hashable, Vec]:
    """Column-wise f∘g."""
    return {k: apply_map(f, v) for k, v in g.items()}


def dense(x: Vec, dim: int) -> List[Fraction]:
    out = [Fraction(0)] * dim
    for k, v in x.items():
        out[k] = v
    return out


def fmt_vec(x: Vec, labels: Optional[Sequence[str]] = None) -> str:
    if not x:
        return "0"
    parts = []
    for k in sorted(x, key=repr):
        name = labels[k] if labels is not None and isinstance(k, int) else repr(k)
        parts.append(f"{x[k]}*{name}")
    return " + ".join(parts)


@dataclass(frozen=True)
class Subspace:
    """Row span kept in reduced row-echelon form.

    ``rows[i]`` has pivot ``pivots[i]`` with coefficient 1 and every other
    row vanishes in that column.  Rows are sorted by pivot.
    """

    ambient_dim: int
    rows: Tuple[Vec, ...] = field(default=())
    pivots: Tuple[int, ...] = field(default=())

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec) -> Vec:
        r = dict(v)
        for row, p in zip(self.rows, self.pivots):
            c = r.get(p)
            if c:
                axpy(r, -c, row)
        return r

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def non_pivots(self) -> List[int]:
        ps = set(self.pivots)
        return [i for i in range(self.ambient_dim) if i not in ps]

    def coordinates(self, v: Vec) -> Vec:
        """Coordinates of v in the row basis; raises Inconsistent if v is outside."""
        r = self.reduce(v)
        if r:
            raise Inconsistent("vector not in subspace")
        return {i: v[p] for i, p in enumerate(self.pivots) if v.get(p)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim
                and self.pivots == other.pivots and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots))


def _check_dims(rows: Sequence[Vec], dim: int) -> None:
    for r in rows:
        for k in r:
            if not (isinstance(k, int) and 0 <= k < dim):
                raise DimensionMismatch(f"index {k!r} outside ambient dimension {dim}")


def span(rows: Iterable[Vec], dim: int) -> Subspace:
    """RREF of the row span (pivot = lowest column index of each reduced row)."""
    rows = [r for r in rows if r]
    _check_dims(rows, dim)
    basis: Dict[int, Vec] = {}
    for r in rows:
        v = dict(r)
        for q, b in basis.items():
            c = v.get(q)
            if c:
                axpy(v, -c, b)
        if not v:
            continue
        p = min(v)
        inv = 1 / v[p]
        v = {k: c * inv for k, c in v.items()}
        for b in basis.values():
            c = b.get(p)
            if c:
                axpy(b, -c, v)
        basis[p] = v
    pivots = tuple(sorted(basis))
    return Subspace(dim, tuple(basis[p] for p in pivots), pivots)


def extend(sub: Subspace, rows: Iterable[Vec]) -> Subspace:
    return span(list(sub.rows) + list(rows), sub.ambient_dim)


def rref_solve(matrix: Sequence[Vec], dim: int,
               rhs: Optional[Vec] = None) -> Tuple[Subspace, Optional[Vec]]:
    """RREF of ``matrix`` (rows over ``dim`` columns) and optionally one solution x.

    The system solved is ``sum_j x_j * matrix[j] = rhs``, i.e. rhs is sought as a
    combination of the rows.  Returns x as a sparse vector over row indices.
    """
    _check_dims(matrix, dim)
    sub = span(matrix, dim)
    if rhs is None:
        return sub, None
    _check_dims([rhs], dim)
    # augmented elimination tracking row combinations
    basis: Dict[int, Tuple[Vec, Vec]] = {}
    for j, r in enumerate(matrix):
        v, comb = dict(r), {j: Fraction(1)}
        while v:
            p = min(v)
            if p not in basis:
                break
            c = v[p]
            bv, bc = basis[p]
            axpy(v, -c, bv)
            axpy(comb, -c, bc)
        if not v:
            continue
        p = min(v)
        inv = 1 / v[p]
        basis[p] = (scale(inv, v), scale(inv, comb))
    r, x = dict(rhs), {}
    while r:
        p = min(r)
        if p not in basis:
            raise Inconsistent(f"rhs has component at column {p} outside the row span")
        c = r[p]
        bv, bc = basis[p]
        axpy(r, -c, bv)
        axpy(x, c, bc)
    return sub, x


def solve_columns(columns: Sequence[Vec], rhs: Vec) -> Vec:
    """Solve sum_j x_j * columns[j] = rhs for keys of arbitrary hashable type."""
    keys = sorted({k for c in columns for k in c} | set(rhs), key=repr)
    index = {k: i for i, k in enumerate(keys)}
    rows = [{index[k]: v for k, v in c.items()} for c in columns]
    _, x = rref_solve(rows, len(keys), {index[k]: v for k, v in rhs.items()})
    return x


def quotient_coords(ambient_dim: int, sub: Subspace, v: Vec) -> Vec:
    """Class of v in V/sub, in the basis of non-pivot coordinates.

    Returned keys are positions in ``sub.non_pivots()``.
    """
    if sub.ambient_dim != ambient_dim:
        raise DimensionMismatch("subspace ambient dimension differs")
    _check_dims([v], ambient_dim)
    r = sub.reduce(v)
    pos = {c: i for i, c in enumerate(sub.non_pivots())}
    return {pos[k]: c for k, c in r.items()}


def kernel(columns: Dict[int, Vec], dim_in: int) -> List[Vec]:
    """Basis of the kernel of a linear map given by columns (index -> image)."""
    keys = sorted({k for v in columns.values() for k in v}, key=repr)
    index = {k: i for i, k in enumerate(keys)}
    width = len(keys)
    # augmented rows [image | e_j]; kernel vectors appear where image reduces to 0
    rows = []
    for j in range(dim_in):
        img = {index[k]: c for k, c in columns.get(j, {}).items()}
        img[width + j] = Fraction(1)
        rows.append(img)
    sub = span(rows, width + dim_in)
    out = []
    for row, p in zip(sub.rows, sub.pivots):
        if p >= width:
            out.append({k - width: c for k, c in row.items()})
    return out


def rank_of(vectors: Iterable[Vec], dim: int) -> int:
    return span(vectors, dim).rank


def invert(cols: Dict[int, Vec], dim: int) -> Dict[int, Vec]:
    """Inverse of a square matrix given column-wise; raises Inconsistent if singular."""
    out = {}
    rows = [cols.get(j, {}) for j in range(dim)]
    for i in range(dim):
        _, x = rref_solve(rows, dim, {i: Fraction(1)})
        out[i] = x
    if rank_of(rows, dim) != dim:
        raise Inconsistent("matrix is singular")
    return out
