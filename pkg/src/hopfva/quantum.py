"""Truncated h-adic layer: braidings, Q- and QS-locality, weak associativity, quantum smash.

A k[[h]]-module V[[h]] is modelled mod h^M by the k-space V (x) k^M with
basis vectors v h^p.  Products are k[h]-bilinear, so every classical
routine runs unchanged on this lifted carrier.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .actions import act_on, check_h_module_field_algebra
from .constructions import smash_product
from .exactlin import Inconsistent, Vec, axpy, scale, solve_columns, unit
from .fieldalg.data import FieldAlgebraData, Products
from .fieldalg.kernel import (Composite, Pair, _homogeneous_degrees, mode_positions, multiplied,
                              position_degree)
from .fieldalg.suites import N_MAX_DEFAULT, _window, run_axiom_suite, test_vectors
from .fixtures import HAction, monomials
from .formal import Window
from .hopf import FinHopf
from .report import AxiomReport, TruncationEscape, Verdict, WitnessError, tally


class BraidingInvalid(ValueError):
    """F is not 1 + O(h)."""


class BraidingIncompatible(WitnessError):
    """G_h(u, a1 v) is not one value across the summands a1 of Delta(a)."""


# --- h-adic scalars -------------------------------------------------------------

@dataclass(frozen=True)
class HSeries:
    """sum_p coeffs[p] h^p modulo h^M."""

    coeffs: Tuple[Fraction, ...]
    M: int

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coeffs[:self.M])
        object.__setattr__(self, "coeffs", c + (Fraction(0),) * (self.M - len(c)))

    @classmethod
    def const(cls, c, M: int) -> "HSeries":
        return cls((Fraction(c),), M)

    @classmethod
    def exp(cls, c, M: int) -> "HSeries":
        """e^{c h}."""
        c = Fraction(c)
        return cls(tuple(c ** k / factorial(k) for k in range(M)), M)

    def _check(self, other: "HSeries"):
        if self.M != other.M:
            raise ValueError("HSeries with different truncations")

    def __add__(self, other: "HSeries") -> "HSeries":
        self._check(other)
        return HSeries(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)), self.M)

    def __sub__(self, other: "HSeries") -> "HSeries":
        return self + other.scaled(-1)

    def scaled(self, c) -> "HSeries":
        return HSeries(tuple(c * x for x in self.coeffs), self.M)

    def __mul__(self, other: "HSeries") -> "HSeries":
        self._check(other)
        out = [Fraction(0)] * self.M
        for p, x in enumerate(self.coeffs):
            if x:
                for q in range(self.M - p):
                    out[p + q] += x * other.coeffs[q]
        return HSeries(tuple(out), self.M)

    def truncate(self, M: int) -> "HSeries":
        if M > self.M:
            raise ValueError("cannot raise the truncation")
        return HSeries(self.coeffs[:M], M)

    def inverse(self) -> "HSeries":
        if not self.coeffs or self.coeffs[0] == 0:
            raise ZeroDivisionError("constant term is zero")
        out = [Fraction(0)] * self.M
        out[0] = 1 / self.coeffs[0]
        for k in range(1, self.M):
            s = sum(self.coeffs[j] * out[k - j] for j in range(1, k + 1))
            out[k] = -s / self.coeffs[0]
        return HSeries(tuple(out), self.M)


# --- braidings --------------------------------------------------------------------

FTerms = List[Tuple[int, int, Fraction]]  # (h power, z power, coefficient)


@dataclass
class QBraiding:
    """Diagonal braiding Q(a(x)b) = a(x)b(x)F_ab(z; h); missing pairs have F = 1.

    ``table[(a, b)]`` maps z-exponents to HSeries coefficients.
    """

    table: Dict[Tuple[int, int], Dict[int, HSeries]] = field(default_factory=dict)
    M: int = 1

    def __post_init__(self):
        for key, F in self.table.items():
            for k, c in F.items():
                if c.M != self.M:
                    raise ValueError(f"F{key}: coefficient truncated at h^{c.M}, braiding at h^{self.M}")
                if c.coeffs and c.coeffs[0] != (1 if k == 0 else 0):
                    raise BraidingInvalid(f"F{key} is not 1 + O(h) at z^{k}")
            if 0 not in F:
                raise BraidingInvalid(f"F{key} has no constant term")

    def terms(self, a: int, b: int) -> FTerms:
        F = self.table.get((a, b))
        if F is None:
            return [(0, 0, Fraction(1))]
        return [(p, k, c) for k, s in sorted(F.items()) for p, c in enumerate(s.coeffs) if c]

    def equal_F(self, x: Tuple[int, int], y: Tuple[int, int]) -> bool:
        return sorted(self.terms(*x)) == sorted(self.terms(*y))

    def truncate(self, M: int) -> "QBraiding":
        return QBraiding({k: {e: s.truncate(M) for e, s in F.items()} for k, F in self.table.items()}, M)

    @property
    def trivial(self) -> bool:
        return all(self.terms(a, b) == [(0, 0, Fraction(1))] for a, b in self.table)


def trivial_braiding(M: int) -> QBraiding:
    return QBraiding({}, M)


# --- quantum carriers ------------------------------------------------------------

@dataclass
class QCarrier:
    """A lifted carrier with its h-layout and a braiding on the h^0 basis."""

    W: FieldAlgebraData
    M: int
    hdeg: List[int]
    up: List[Optional[int]]  # index of v*h, None when it reaches h^M
    base: List[int]  # h^0 indices, in basis order
    braid: Callable[[int, int], FTerms]
    tests: List[int]
    name: str = ""

    def shift(self, v: Vec, p: int) -> Vec:
        for _ in range(p):
            v = {self.up[k]: c for k, c in v.items() if self.up[k] is not None}
            if not v:
                break
        return v


@dataclass
class QVertex:
    """Structure constants over k[h]/h^M: products[(a,b)][n] = {p: Vec}."""

    base: FieldAlgebraData
    M: int
    corrections: Dict[Tuple[int, int], Dict[int, Dict[int, Vec]]] = field(default_factory=dict)
    name: str = ""

    def truncate(self, M: int) -> "QVertex":
        corr = {k: {n: {p: v for p, v in per.items() if p < M} for n, per in d.items()}
                for k, d in self.corrections.items()}
        return QVertex(self.base, M, corr, self.name)

    def index(self, k: int, p: int = 0) -> int:
        return k * self.M + p

    def lifted(self) -> FieldAlgebraData:
        return lift(self.base, self.M, self.corrections, self.name)

    def carrier(self, Q: QBraiding) -> QCarrier:
        W = self.lifted()
        M = self.M
        if M == 0:
            return QCarrier(W, 0, [], [], [], lambda i, j: [], [], name=W.name)
        hdeg = [i % M for i in range(W.dim)]
        up = [i + 1 if i % M + 1 < M else None for i in range(W.dim)]
        base = [k * M for k in range(self.base.dim)]
        tests = [k * M for k in test_vectors(self.base)]
        return QCarrier(W, M, hdeg, up, base, lambda i, j: Q.terms(i // M, j // M), tests,
                        name=W.name)


def _shift_vec(v: Vec, p: int, M: int) -> Vec:
    return {k * M + p: c for k, c in v.items()} if p < M else {}


def lift(V: FieldAlgebraData, M: int, corrections=None, name: str = "") -> FieldAlgebraData:
    """V (x) k[h]/h^M as a k-space, index k*M + p for v_k h^p."""
    if M < 0:
        raise ValueError("negative truncation")
    if M == 0:
        # everything vanishes mod h^0
        return FieldAlgebraData([], {}, {}, {}, 0, name=name or f"{V.name} mod h^0")
    corrections = corrections or {}
    products: Products = {}
    keys = set(V.products) | set(corrections)
    nv = V.n_vanish
    for a, b in keys:
        levels: Dict[int, Dict[int, Vec]] = {}
        for n, v in V.products.get((a, b), {}).items():
            levels.setdefault(n, {})[0] = v
        for n, per in corrections.get((a, b), {}).items():
            nv = max(nv, n + 1)
            for r, v in per.items():
                if 0 < r < M and v:
                    levels.setdefault(n, {})[r] = v
        for p, q in product(range(M), repeat=2):
            if p + q >= M:
                continue
            per_n = {}
            for n, lv in levels.items():
                acc: Vec = {}
                for r, v in lv.items():
                    axpy(acc, 1, _shift_vec(v, p + q + r, M))
                if acc:
                    per_n[n] = acc
            if per_n:
                products[(a * M + p, b * M + q)] = per_n
    s_cols = {k * M + p: _shift_vec(img, p, M) for k, img in V.s_cols.items() for p in range(M) if img}
    labels = [l if p == 0 else f"{l}*h^{p}" for l in V.labels for p in range(M)]
    grading = None if V.grading is None else [V.grading[k] for k in range(V.dim) for _ in range(M)]
    hint = None
    if V.exchange_hint is not None:
        def hint(i, j, _h=V.exchange_hint):
            (a, p), (b, q) = divmod(i, M), divmod(j, M)
            out = []
            for x, y in _h(a, b):
                xs = {k * M + p + q: c for k, c in x.items()} if p + q < M else {}
                out.append((xs, {k * M: c for k, c in y.items()}))
            return out
    gens = V.provenance.get("right_generators")
    prov = {"lift": {"M": M, "of": V.name}}
    if gens:
        prov["right_generators"] = [g * M for g in gens]
    return FieldAlgebraData(labels, {k * M: c for k, c in V.vacuum.items()}, s_cols, products, nv,
                            grading, V.degree_cap, V.sigma, V.window,
                            name=name or (V.name if M == 1 else f"{V.name}[h]/h^{M}"),
                            provenance=prov, exchange_hint=hint)


def lift_action(act: HAction, M: int) -> HAction:
    return {(h, k * M + p): _shift_vec(v, p, M) for (h, k), v in act.items() for p in range(M) if v}


# --- Q-locality and QS-locality --------------------------------------------------

def q_exchange_outcome(C: QCarrier, a: int, b: int, pairs: Sequence[Pair], n: int, c: int,
                       positions) -> Optional[Tuple[int, int, Optional[Tuple]]]:
    """(z-w)^n Y(a,z)Y(b,w)c F_ab(z-w) against (z-w)^n sum Y(b^i,w)Y(a^i,z)c mod h^M.

    Returns (decided, skipped, failure) or None when (z-w)^n F still has a pole.
    """
    W = C.W
    terms = C.braid(a, b)
    if any(n + k < 0 for _, k, _ in terms):
        return None
    av, bv, cv = unit(a), unit(b), unit(c)
    left = Composite(W, av, bv, cv)
    rights = [Composite(W, bi, ai, cv) for ai, bi in pairs]
    degs = _homogeneous_degrees(W, av, bv, cv, pairs)
    decided = skipped = 0
    for p, q in positions:
        try:
            lhs: Vec = {}
            live = False
            escape = False
            for hp, k, coef in terms:
                if degs is not None:
                    d = position_degree(W, *degs, p + n + k, q)
                    if d < W._min_deg:
                        continue
                    if W.degree_cap is not None and d > W.degree_cap:
                        escape = True
                        break
                live = True
                x = multiplied(n + k, left.get, p, q)
                if x:
                    axpy(lhs, coef, C.shift(x, hp))
            if escape:
                skipped += 1
                continue
            if not live:
                continue
            rhs: Vec = {}
            for r in rights:
                axpy(rhs, 1, multiplied(n, lambda pp, qq, r=r: r.get(qq, pp), p, q))
        except TruncationEscape:
            skipped += 1
            continue
        decided += 1
        if lhs != rhs:
            return decided, skipped, (p, q)
    return decided, skipped, None


@dataclass
class QCertificate:
    a: int
    b: int
    order_n: int
    pairs: List[Pair]
    kind: str
    M: int
    decided: int
    skipped: int
    source: str = ""


def q_search(C: QCarrier, a: int, b: int, pairs: Sequence[Pair], kind: str, n_max: int,
             window: Optional[Window] = None, source: str = "") -> Tuple[Optional[QCertificate], Optional[Tuple]]:
    positions = mode_positions(_window(C.W, window))
    last = None
    for n in range(n_max + 1):
        dec = skip = 0
        fail = None
        allowed = True
        for c in C.tests:
            o = q_exchange_outcome(C, a, b, pairs, n, c, positions)
            if o is None:
                allowed = False
                break
            dec += o[0]
            skip += o[1]
            if o[2] is not None:
                fail = (n, C.W.labels[c], o[2])
                break
        if not allowed:
            continue
        if fail is None:
            if dec == 0:
                return None, last
            return QCertificate(a, b, n, [(dict(x), dict(y)) for x, y in pairs], kind, C.M, dec, skip,
                                source), last
        last = fail
    return None, last


def find_q_locality(C: QCarrier, a: int, b: int, n_max: int = N_MAX_DEFAULT,
                    window: Optional[Window] = None):
    return q_search(C, a, b, [(unit(a), unit(b))], "q_local", n_max, window, "identity")


def _q_candidates(C: QCarrier, a: int, b: int) -> List[Tuple[int, int]]:
    W = C.W
    ks = [k for k in range(W.dim) if W.grading is None or W.deg(k) == W.deg(a)]
    ls = [l for l in C.base if W.grading is None or W.deg(l) == W.deg(b)]
    return [(k, l) for k in ks for l in ls]


def solve_qs_locality(C: QCarrier, a: int, b: int, n_max: int = N_MAX_DEFAULT,
                      window: Optional[Window] = None) -> Optional[QCertificate]:
    """Linear solve for the exchange partners (e_k h^p, e_l) mod h^M."""
    cands = _q_candidates(C, a, b)
    positions = mode_positions(_window(C.W, window))
    W = C.W
    terms = C.braid(a, b)
    for n in range(n_max + 1):
        if any(n + k < 0 for _, k, _ in terms):
            continue
        rhs: Dict = {}
        cols: List[Dict] = [{} for _ in cands]
        used = 0
        for c in C.tests:
            cv = unit(c)
            left = Composite(W, unit(a), unit(b), cv)
            rights = [Composite(W, unit(l), unit(k), cv) for k, l in cands]
            for p, q in positions:
                try:
                    lhs: Vec = {}
                    for hp, k, coef in terms:
                        x = multiplied(n + k, left.get, p, q)
                        if x:
                            axpy(lhs, coef, C.shift(x, hp))
                    vals = [multiplied(n, lambda pp, qq, r=r: r.get(qq, pp), p, q) for r in rights]
                except TruncationEscape:
                    continue
                if not lhs and not any(vals):
                    continue
                used += 1
                for key, v in lhs.items():
                    rhs[(c, p, q, key)] = v
                for col, v in zip(cols, vals):
                    for key, x in v.items():
                        col[(c, p, q, key)] = x
        if used == 0:
            continue
        try:
            lam = solve_columns(cols, rhs)
        except Inconsistent:
            continue
        grouped: Dict[int, Vec] = {}
        for idx, coef in lam.items():
            k, l = cands[idx]
            axpy(grouped.setdefault(l, {}), coef, unit(k))
        pairs = [(v, unit(l)) for l, v in sorted(grouped.items()) if v]
        cert, _ = q_search(C, a, b, pairs, "qs_local", n, window, "solved")
        if cert is not None and cert.order_n == n:
            return cert
    return None


def find_qs_locality(C: QCarrier, a: int, b: int, n_max: int = N_MAX_DEFAULT,
                     window: Optional[Window] = None, use_hint: bool = True) -> Optional[QCertificate]:
    if use_hint and C.W.exchange_hint is not None:
        cert, _ = q_search(C, a, b, C.W.exchange_hint(a, b), "qs_local", n_max, window, "hint")
        if cert is not None:
            return cert
    return solve_qs_locality(C, a, b, n_max, window)


def _vacuous(C: QCarrier, rep: AxiomReport, name: str, tag: str) -> bool:
    if C.M == 0:
        rep.add(name, Verdict.PASS, tag=tag, M=0, vacuous=True)
        return True
    return False


def _pairs(C: QCarrier, pairs) -> List[Tuple[int, int]]:
    if pairs is None:
        return [(a, b) for a in C.base for b in C.base]
    return [(C.base[a], C.base[b]) for a, b in pairs]


def check_q_locality(C: QCarrier, n_max: int = N_MAX_DEFAULT, pairs=None,
                     window: Optional[Window] = None) -> AxiomReport:
    """Q-locality for each basis pair; ``pairs`` index the h^0 basis."""
    rep = AxiomReport()
    if _vacuous(C, rep, "Q-locality mod h^0", "q-locality"):
        return rep
    orders: Dict[Tuple[str, str], int] = {}
    bad = None
    undecided = 0
    for a, b in _pairs(C, pairs):
        cert, last = find_q_locality(C, a, b, n_max, window)
        if cert is None:
            if last is None:
                undecided += 1
                continue
            n, c, pos = last
            bad = {"a": C.W.labels[a], "b": C.W.labels[b], "c": c, "modes": list(pos), "n_max": n_max}
            break
        orders[(C.W.labels[a], C.W.labels[b])] = cert.order_n
    rep.add(f"Q-locality mod h^{C.M}", tally("", [bad] if bad else [], len(orders)), bad,
            tag="q-locality", M=C.M, pairs=len(orders), undecided=undecided,
            orders={f"{x},{y}": n for (x, y), n in orders.items()})
    return rep


def check_qs_locality(C: QCarrier, n_max: int = N_MAX_DEFAULT, pairs=None,
                      window: Optional[Window] = None,
                      use_hint: bool = True) -> Tuple[AxiomReport, Dict[Tuple[int, int], Optional[QCertificate]]]:
    rep = AxiomReport()
    if _vacuous(C, rep, "QS-locality mod h^0", "qs-locality"):
        return rep, {}
    certs = {(a, b): find_qs_locality(C, a, b, n_max, window, use_hint) for a, b in _pairs(C, pairs)}
    missing = [k for k, v in certs.items() if v is None]
    bad = None
    if missing:
        a, b = missing[0]
        bad = {"a": C.W.labels[a], "b": C.W.labels[b], "n_max": n_max, "status": "not found"}
    found = len(certs) - len(missing)
    rep.add(f"QS-locality mod h^{C.M}", tally("", [bad] if bad else [], found), bad,
            tag="qs-locality", M=C.M, pairs=found,
            orders=sorted({c.order_n for c in certs.values() if c}))
    return rep, certs


def check_weak_associativity(C: QCarrier, sample=None, n_max: int = N_MAX_DEFAULT,
                             window: Optional[Window] = None) -> AxiomReport:
    """Weak associativity mod h^M on h^0 basis triples (k[h]-linearity covers the rest)."""
    rep = AxiomReport()
    if _vacuous(C, rep, "weak associativity mod h^0", "associativity"):
        return rep
    if sample is None:
        triples = [(a, b, c) for a in C.base for b in C.base for c in C.tests]
    else:
        triples = [(C.base[a], C.base[b], C.base[c]) for a, b, c in sample]
    sub = run_axiom_suite(C.W, "associativity", triples, n_max, window)
    rep.extend(sub, prefix=f"weak associativity mod h^{C.M}: ")
    return rep


def check_pole_bound(C: QCarrier) -> AxiomReport:
    """Each mod-h^M reduction of Y(a,z)b has bounded pole order."""
    top = max((n for per in C.W.products.values() for n in per), default=-1)
    rep = AxiomReport()
    ok = top < C.W.n_vanish
    rep.add(f"pole order bounded mod h^{C.M}", Verdict.PASS if ok else Verdict.FAIL,
            None if ok else top, tag="codomain", M=C.M, max_pole=top + 1)
    return rep


# --- the quantum smash ---------------------------------------------------------------

@dataclass
class QuantumSmash:
    carrier: QCarrier
    induced: Dict[Tuple[int, int], FTerms]
    report: AxiomReport


def induced_braiding(V: FieldAlgebraData, H: FinHopf, act: HAction, Q: QBraiding) -> Dict[Tuple, FTerms]:
    """F(u#a, v#b) := G(u, a1 v), required to be one value over all a1 with a1 v != 0."""
    nh = H.dim
    out: Dict[Tuple, FTerms] = {}
    for u, a, v in product(range(V.dim), range(nh), range(V.dim)):
        seen: Optional[Tuple[str, FTerms]] = None
        for h1, _h2, _c in H.comult.get(a, []):
            w = act_on(act, h1, unit(v))
            if not w:
                continue
            gs = {tuple(sorted(Q.terms(u, k))) for k in w}
            if len(gs) > 1:
                raise BraidingIncompatible(
                    f"Q(u (x) a1 v) is not diagonal: F varies over the support of "
                    f"{H.labels[h1]}.{V.labels[v]}", (V.labels[u], H.labels[a], V.labels[v]))
            g = list(gs.pop())
            if seen is not None and sorted(seen[1]) != sorted(g):
                raise BraidingIncompatible(
                    f"G(u, a1 v) differs between a1 = {seen[0]} and a1 = {H.labels[h1]}",
                    (V.labels[u], H.labels[a], V.labels[v]))
            seen = (H.labels[h1], g)
        g = seen[1] if seen else [(0, 0, Fraction(1))]
        for b in range(nh):
            out[(u * nh + a, v * nh + b)] = g
    return out


def quantum_smash(Vq: QVertex, H: FinHopf, act: HAction, Q: QBraiding, verify: bool = True,
                  n_max: int = N_MAX_DEFAULT, pairs=None, triples=None,
                  window: Optional[Window] = None) -> QuantumSmash:
    """V#H over k[h]/h^M with the induced braiding, then QS-locality and weak associativity."""
    from .actions import ActionInvalid

    M = Vq.M
    base = Vq.base
    W0 = Vq.lifted()
    act_l = lift_action(act, M)
    rep = AxiomReport()
    sub = check_h_module_field_algebra(W0, H, act_l)
    rep.extend(sub, prefix="H-module quantum algebra: ")
    if sub.failures():
        c = sub.failures()[0]
        raise ActionInvalid(f"action fails {c.name}", c.witness)
    induced = induced_braiding(base, H, act, Q)
    S = smash_product(W0, H, act_l, verify=False)
    nh = H.dim
    W = S.carrier
    hdeg = [(i // nh) % M for i in range(W.dim)]
    up = [i + nh if (i // nh) % M + 1 < M else None for i in range(W.dim)]
    base_idx = [(k * M) * nh + h for k in range(base.dim) for h in range(nh)]
    pos = {idx: n for n, idx in enumerate(base_idx)}

    def braid(i, j):
        return induced[(pos[i], pos[j])]

    tests = [i for i in (test_vectors(W)) if hdeg[i] == 0]
    C = QCarrier(W, M, hdeg, up, base_idx, braid, tests, name=W.name)
    qs, _ = check_qs_locality(C, n_max, pairs, window)
    rep.extend(qs)
    rep.extend(check_weak_associativity(C, triples, n_max, window))
    return QuantumSmash(C, induced, rep)


# --- fixtures ---------------------------------------------------------------------------

def twisted_polynomial(D: int, M: int, c=1) -> Tuple[QVertex, QBraiding]:
    """k[x,y] (degree <= D, s = 0) with a *_h b = e^{c h x(a) y(b)} ab.

    x(.) and y(.) are the exponents of x and y.  The twist is a bicharacter,
    so the product stays associative, and F_ab = e^{c h (x(b)y(a) - x(a)y(b))}
    makes it Q-local with n = 0.
    """
    from .fixtures import differential_va

    V = differential_va(2, D, s_spec=[0, 0])
    mons = monomials(2, D)
    corrections: Dict[Tuple[int, int], Dict[int, Dict[int, Vec]]] = {}
    for (a, b), per in V.products.items():
        e = HSeries.exp(Fraction(c) * mons[a][0] * mons[b][1], M)
        for n, v in per.items():
            levels = {p: scale(x, v) for p, x in enumerate(e.coeffs) if p > 0 and x}
            if levels:
                corrections.setdefault((a, b), {})[n] = levels
    table = {}
    for a, b in product(range(V.dim), repeat=2):
        w = mons[b][0] * mons[a][1] - mons[a][0] * mons[b][1]
        if w:
            table[(a, b)] = {0: HSeries.exp(Fraction(c) * w, M)}
    return QVertex(V, M, corrections, name=f"twisted k[x,y] deg<={D} mod h^{M}"), QBraiding(table, M)


def x_parity_action(V: FieldAlgebraData, D: int) -> HAction:
    """Z/2 generator acting by (-1)^{x-degree} on monomials of k[x,y]."""
    mons = monomials(2, D)
    act: HAction = {}
    for k, m in enumerate(mons):
        act[(0, k)] = unit(k)
        act[(1, k)] = {k: Fraction(-1) ** m[0]}
    return act


def dual_numbers_braiding(M: int) -> QBraiding:
    """F_{e,e} = 1 + h, all other pairs 1: Q-local since e*e = 0."""
    return QBraiding({(1, 1): {0: HSeries((1, 1), M)}}, M)
