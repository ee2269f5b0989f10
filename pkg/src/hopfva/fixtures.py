"""Deterministic test algebras, groups and actions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .exactlin import Vec, axpy, unit
from .fieldalg.data import FieldAlgebraData, identity_exchange
from .formal import binom
from .hopf import (FinHopf, GroupTable, cyclic_group, permutation_sign, symmetric_group_3)

HAction = Dict[Tuple[int, int], Vec]
Partition = Tuple[int, ...]

# --- free boson ---------------------------------------------------------------


def partitions_of(n: int, largest: Optional[int] = None) -> List[Partition]:
    """Partitions of n with parts <= largest, in descending lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        return [()]
    out = []
    for k in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - k, k):
            out.append((k,) + rest)
    return out


def partition_basis(D: int) -> List[Partition]:
    return [p for w in range(D + 1) for p in partitions_of(w)]


def partition_label(p: Partition) -> str:
    return "1" if not p else "a[" + ",".join(map(str, p)) + "]"


State = Dict[Partition, Fraction]


def _add_part(p: Partition, k: int) -> Partition:
    return tuple(sorted(p + (k,), reverse=True))


def _alpha(m: int, state: State) -> State:
    """Oscillator alpha_m on Fock states with [alpha_m, alpha_n] = m delta_{m+n,0}."""
    out: State = {}
    if m == 0:
        return out
    if m < 0:
        for p, c in state.items():
            q = _add_part(p, -m)
            out[q] = out.get(q, 0) + c
    else:
        for p, c in state.items():
            mult = p.count(m)
            if mult:
                lst = list(p)
                lst.remove(m)
                q = tuple(lst)
                out[q] = out.get(q, 0) + c * m * mult
    return {p: c for p, c in out.items() if c}


@lru_cache(maxsize=None)
def _mode(lam: Partition, n: int, c: Partition) -> Tuple[Tuple[Partition, Fraction], ...]:
    """(e_lam)_n e_c, where e_lam = alpha_{-lam_1} ... alpha_{-lam_r} 1.

    Recursion on the first part k of lam = (k,) + mu via the Borcherds
    identity for (alpha_{(-k)} e_mu)_n c.
    """
    if not lam:
        return (((c, Fraction(1)),) if n == -1 else ())
    wl, wc = sum(lam), sum(c)
    if wl + wc - n - 1 < 0:
        return ()
    k, mu = lam[0], lam[1:]
    wmu = sum(mu)
    acc: State = {}
    j = 0
    while n + j < wmu + wc:
        inner = dict(_mode(mu, n + j, c))
        if inner:
            coef = binom(k + j - 1, j)
            for p, v in _alpha(-k - j, inner).items():
                acc[p] = acc.get(p, 0) + coef * v
        j += 1
    sign = (-1) ** k
    for j in range(1, wc + 1):
        ac = _alpha(j, {c: Fraction(1)})
        if not ac:
            continue
        coef = binom(k + j - 1, j) * sign
        for q, cq in ac.items():
            for p, v in _mode(mu, n - k - j, q):
                acc[p] = acc.get(p, 0) - coef * cq * v
    return tuple(sorted((p, v) for p, v in acc.items() if v))


def heisenberg(D: int) -> FieldAlgebraData:
    """Rank-one free boson, states of weight <= D, on the partition basis."""
    if D < 1:
        raise ValueError("degree cap must be at least 1")
    basis = partition_basis(D)
    index = {p: i for i, p in enumerate(basis)}
    grading = [sum(p) for p in basis]
    products: Dict[Tuple[int, int], Dict[int, Vec]] = {}
    for a, pa in enumerate(basis):
        for b, pb in enumerate(basis):
            per: Dict[int, Vec] = {}
            w = grading[a] + grading[b]
            for n in range(w - D - 1, w):
                v = {index[p]: c for p, c in _mode(pa, n, pb)}
                if v:
                    per[n] = v
            if per:
                products[(a, b)] = per
    s_cols = {}
    for i, p in enumerate(basis):
        if grading[i] + 1 <= D:
            v = {index[q]: c for q, c in _mode(p, -2, ())}
            if v:
                s_cols[i] = v
    return FieldAlgebraData(
        labels=[partition_label(p) for p in basis], vacuum=unit(0), s_cols=s_cols,
        products=products, n_vanish=2 * D, grading=grading, degree_cap=D, sigma=-1,
        name=f"heisenberg({D})", provenance={"fixture": "heisenberg", "D": D},
        exchange_hint=identity_exchange,
    )


def partition_of(V: FieldAlgebraData, i: int) -> Partition:
    lab = V.labels[i]
    if lab == "1":
        return ()
    return tuple(int(t) for t in lab[2:-1].split(","))


def charge_conjugation_matrix(V: FieldAlgebraData) -> Dict[int, Vec]:
    return {i: {i: Fraction((-1) ** len(partition_of(V, i)))} for i in range(V.dim)}


# --- commutative differential algebras ---------------------------------------

VAR_NAMES = "xyzuvw"


def monomials(nvars: int, D: int) -> List[Tuple[int, ...]]:
    out = []
    for d in range(D + 1):
        level = []

        def rec(prefix, left, slots):
            if slots == 1:
                level.append(prefix + (left,))
                return
            for e in range(left, -1, -1):
                rec(prefix + (e,), left - e, slots - 1)
        rec((), d, nvars)
        out.extend(level)
    return out


def monomial_label(m: Tuple[int, ...]) -> str:
    parts = []
    for v, e in zip(VAR_NAMES, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) or "1"


def _poly_derive(poly: Dict[Tuple[int, ...], Fraction], coeffs: Sequence[Fraction]) -> Dict:
    out: Dict[Tuple[int, ...], Fraction] = {}
    for m, c in poly.items():
        for i, ci in enumerate(coeffs):
            if ci and m[i]:
                q = m[:i] + (m[i] - 1,) + m[i + 1:]
                out[q] = out.get(q, 0) + c * ci * m[i]
    return {m: c for m, c in out.items() if c}


def differential_va(nvars: int = 2, D: int = 4,
                    s_spec: Optional[Sequence] = None) -> FieldAlgebraData:
    """k[x1..xn] truncated at total degree D with Y(a,z)b = (e^{zs}a)b.

    ``s_spec`` gives constant coefficients c_i of s = sum c_i d/dx_i
    (default: all ones).
    """
    if nvars > len(VAR_NAMES):
        raise ValueError("too many variables")
    coeffs = [Fraction(c) for c in (s_spec if s_spec is not None else [1] * nvars)]
    if len(coeffs) != nvars:
        raise ValueError("s_spec length differs from variable count")
    basis = monomials(nvars, D)
    index = {m: i for i, m in enumerate(basis)}
    grading = [sum(m) for m in basis]
    s_cols = {}
    for i, m in enumerate(basis):
        v = {index[q]: c for q, c in _poly_derive({m: Fraction(1)}, coeffs).items()}
        if v:
            s_cols[i] = v
    products: Dict[Tuple[int, int], Dict[int, Vec]] = {}
    for a, ma in enumerate(basis):
        powers = []  # s^k a / k!
        cur = {ma: Fraction(1)}
        k = 0
        while cur:
            powers.append({m: c / factorial(k) for m, c in cur.items()})
            cur = _poly_derive(cur, coeffs)
            k += 1
        for b, mb in enumerate(basis):
            per: Dict[int, Vec] = {}
            for k, p in enumerate(powers):
                v: Vec = {}
                for m, c in p.items():
                    q = tuple(x + y for x, y in zip(m, mb))
                    if sum(q) <= D:
                        v[index[q]] = v.get(index[q], 0) + c
                v = {i: c for i, c in v.items() if c}
                if v:
                    per[-k - 1] = v
            if per:
                products[(a, b)] = per
    return FieldAlgebraData(
        labels=[monomial_label(m) for m in basis], vacuum=unit(0), s_cols=s_cols,
        products=products, n_vanish=0, grading=grading, degree_cap=D, sigma=1,
        name=f"differential_va({nvars},{D})",
        provenance={"fixture": "differential_va", "vars": nvars, "D": D,
                    "s": [[c.numerator, c.denominator] for c in coeffs]},
        exchange_hint=identity_exchange,
    )


def dual_numbers() -> FieldAlgebraData:
    """k[e]/(e^2) with s = 0: a two-dimensional holomorphic vertex algebra."""
    one = Fraction(1)
    products = {(0, 0): {-1: {0: one}}, (0, 1): {-1: {1: one}}, (1, 0): {-1: {1: one}}}
    return FieldAlgebraData(labels=["1", "e"], vacuum=unit(0), s_cols={}, products=products,
                            n_vanish=0, name="dual_numbers",
                            provenance={"fixture": "dual_numbers"},
                            exchange_hint=identity_exchange)


# --- groups and actions -------------------------------------------------------

def act_vec(action: HAction, h: Vec, v: Vec) -> Vec:
    acc: Vec = {}
    for i, c in h.items():
        for j, d in v.items():
            r = action.get((i, j))
            if r:
                axpy(acc, c * d, r)
    return acc


def trivial_action(V: FieldAlgebraData, H: FinHopf) -> HAction:
    return {(h, v): {v: H.counit[h]} for h in range(H.dim) for v in range(V.dim)
            if H.counit.get(h)}


def swap_matrix(V: FieldAlgebraData) -> Dict[int, Vec]:
    """x <-> y on a two-variable differential fixture."""
    return {i: unit(_relabel_monomial(V, i)) for i in range(V.dim)}


def _swap_label(lab: str) -> str:
    return lab.replace("x", "#").replace("y", "x").replace("#", "y") if lab != "1" else lab


def _relabel_monomial(V: FieldAlgebraData, i: int) -> int:
    lab = _swap_label(V.labels[i])
    # x*y stays x*y once normalised
    parts = sorted(lab.split("*"), key=lambda t: VAR_NAMES.index(t[0])) if lab != "1" else ["1"]
    return V.index("*".join(parts))


def swap_action(V: FieldAlgebraData, G: GroupTable) -> HAction:
    """Z/2 (either order-two group) acting by x <-> y."""
    if G.order != 2:
        raise ValueError("swap action needs a group of order 2")
    act: HAction = {}
    for v in range(V.dim):
        act[(G.identity, v)] = unit(v)
        act[(1 - G.identity, v)] = unit(_relabel_monomial(V, v))
    return act


def s3_sign_action(V: FieldAlgebraData, G: GroupTable) -> HAction:
    """S3 on k[x,y] through the sign character: odd permutations swap x and y."""
    perms = list(permutations(range(3)))
    act: HAction = {}
    for g in range(G.order):
        odd = permutation_sign(perms[g]) < 0
        for v in range(V.dim):
            act[(g, v)] = unit(_relabel_monomial(V, v) if odd else v)
    return act


def charge_conjugation_action(V: FieldAlgebraData, G: GroupTable) -> HAction:
    if G.order != 2:
        raise ValueError("charge conjugation needs a group of order 2")
    sigma = charge_conjugation_matrix(V)
    act: HAction = {}
    for v in range(V.dim):
        act[(G.identity, v)] = unit(v)
        act[(1 - G.identity, v)] = sigma[v]
    return act


def parity_coaction(V: FieldAlgebraData, G: GroupTable) -> Dict[int, List[Tuple[int, int, Fraction]]]:
    """rho(v) = v (x) g^{parity(v)} on the boson, graded by number of parts mod 2."""
    odd = 1 - G.identity
    return {v: [(v, odd if len(partition_of(V, v)) % 2 else G.identity, Fraction(1))]
            for v in range(V.dim)}


def sweedler_dual_numbers_action() -> HAction:
    """Sweedler's algebra on k[e]/(e^2): g.e = -e, x.e = 1, x.1 = 0."""
    one = Fraction(1)
    act: HAction = {(0, 0): {0: one}, (0, 1): {1: one},
                    (1, 0): {0: one}, (1, 1): {1: -one},
                    (2, 1): {0: one},
                    (3, 1): {0: one}}
    return act


@dataclass
class Catalog:
    groups: Dict[str, GroupTable] = field(default_factory=dict)
    actions: Dict[str, str] = field(default_factory=dict)


def builtin_groups_and_actions() -> Catalog:
    return Catalog(
        groups={"Z2": cyclic_group(2), "Z3": cyclic_group(3), "S3": symmetric_group_3()},
        actions={
            "swap": "Z2 on differential_va(2, D) by x <-> y",
            "s3-sign": "S3 on differential_va(2, D), odd permutations swap x and y",
            "charge-conjugation": "Z2 on heisenberg(D), a[l] -> (-1)^len(l) a[l]",
            "trivial": "any H acting through the counit",
            "parity-coaction": "heisenberg(D) as a kZ2-comodule graded by number of parts mod 2",
            "sweedler": "Sweedler's four-dimensional Hopf algebra on k[e]/(e^2)",
        },
    )


def group_by_name(name: str) -> GroupTable:
    cat = builtin_groups_and_actions()
    if name not in cat.groups:
        raise KeyError(f"unknown group {name!r}; known: {sorted(cat.groups)}")
    return cat.groups[name]
