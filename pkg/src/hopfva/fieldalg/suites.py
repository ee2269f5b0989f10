"""Axiom suites, locality searches and derived identities over a FieldAlgebraData."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ..exactlin import Inconsistent, Subspace, Vec, apply_map, axpy, scale, solve_columns, unit
from ..formal import BiWindow, LaurentPoly, ScalarSeries, Window, mul, poly_zw
from ..report import AxiomReport, TruncationEscape, Verdict, tally
from .data import FieldAlgebraData, vector_label
from .kernel import (Outcome, Pair, assoc_outcome, borcherds_sides, exchange_columns,
                     exchange_outcome, field_product_coefficient, mode_positions,
                     residue_formula_sides, skew_rhs)

N_MAX_DEFAULT = 8


@dataclass
class LocalityCertificate:
    """(z-w)^n Y(a,z)Y(b,w) = (z-w)^n sum_i f_i(z-w) Y(b^i,w)Y(a^i,z) on ``window``."""

    a: Vec
    b: Vec
    order_n: int
    pairs: List[Pair]
    kind: str = "local"
    window: Optional[Window] = None
    decided: int = 0
    skipped: int = 0
    series: Optional[List[ScalarSeries]] = None
    source: str = ""

    def describe(self, V: FieldAlgebraData) -> Dict:
        return {
            "kind": self.kind, "n": self.order_n,
            "a": vector_label(V, self.a), "b": vector_label(V, self.b),
            "pairs": [[vector_label(V, x), vector_label(V, y)] for x, y in self.pairs],
            "decided": self.decided, "skipped": self.skipped, "source": self.source,
        }


@dataclass
class SearchResult:
    certificate: Optional[LocalityCertificate]
    witness: Optional[Tuple] = None  # (n, c label, position) of the last failure seen
    decided: int = 0
    skipped: int = 0


def _window(V: FieldAlgebraData, window: Optional[Window]) -> Window:
    return window or V.window or V.default_window()


def _basis_vectors(V: FieldAlgebraData) -> List[Vec]:
    return [unit(i) for i in range(V.dim)]


def test_vectors(V: FieldAlgebraData) -> List[int]:
    """Basis vectors c on which two-variable identities are evaluated.

    A smash product records right generators v#1: every field (a#h)_n
    commutes with right multiplication on the H leg, so identities between
    composites of fields hold on all of V#H once they hold on V#1.
    """
    gens = V.provenance.get("right_generators")
    return list(gens) if gens else list(range(V.dim))


# --- locality --------------------------------------------------------------------

def check_exchange(V: FieldAlgebraData, a: Vec, b: Vec, pairs: Sequence[Pair], n: int,
                   window: Optional[Window] = None) -> Outcome:
    positions = mode_positions(_window(V, window))
    total = Outcome()
    for c in test_vectors(V):
        o = exchange_outcome(V, a, b, pairs, n, unit(c), positions)
        total.decided += o.decided
        total.skipped += o.skipped
        if o.failure is not None:
            total.failure = (c, o.failure)
            return total
    return total


def search_exchange(V: FieldAlgebraData, a: Vec, b: Vec, pairs: Sequence[Pair], kind: str,
                    n_max: int = N_MAX_DEFAULT, window: Optional[Window] = None,
                    source: str = "") -> SearchResult:
    if not a or not b:
        return SearchResult(LocalityCertificate(a, b, 0, [], kind, _window(V, window), source="zero"))
    last = None
    for n in range(n_max + 1):
        o = check_exchange(V, a, b, pairs, n, window)
        if o.failure is None:
            if o.decided == 0:
                return SearchResult(None, last, 0, o.skipped)
            cert = LocalityCertificate(a, b, n, [(dict(x), dict(y)) for x, y in pairs], kind,
                                       _window(V, window), o.decided, o.skipped, source=source)
            return SearchResult(cert, last, o.decided, o.skipped)
        c, pos = o.failure
        last = (n, V.labels[c], pos)
    return SearchResult(None, last)


def find_locality(V: FieldAlgebraData, a: Vec, b: Vec, N_max: int = N_MAX_DEFAULT,
                  window: Optional[Window] = None) -> Optional[LocalityCertificate]:
    return search_exchange(V, a, b, [(a, b)], "local", N_max, window, "identity").certificate


def candidate_pairs(V: FieldAlgebraData, a: Vec, b: Vec, full: bool = False) -> List[Tuple[int, int]]:
    """(k, l) basis pairs allowed as (a^i, b^i) in an S-locality solve."""
    da = {V.deg(i) for i in a}
    db = {V.deg(i) for i in b}
    # a module extension only allows algebra vectors as exchange partners
    top = V.provenance.get("module", {}).get("v_dim", V.dim)
    ks = [k for k in range(top) if V.grading is None or V.deg(k) in da]
    ls = [l for l in range(top) if V.grading is None or V.deg(l) in db]
    if not full:
        smash = V.provenance.get("smash")
        if smash:
            nh, unit_h = smash["h_dim"], smash["h_unit"]
            ls = [l for l in ls if l % nh == unit_h]
    return [(k, l) for k in ks for l in ls]


def solve_s_locality(V: FieldAlgebraData, a: Vec, b: Vec, N_max: int = N_MAX_DEFAULT,
                     window: Optional[Window] = None, full: bool = False) -> SearchResult:
    """Linear solve for sum_{k,l} lam_{kl} Y(e_l,w)Y(e_k,z) over a candidate block."""
    cands = candidate_pairs(V, a, b, full)
    cand_vecs = [(unit(k), unit(l)) for k, l in cands]
    positions = mode_positions(_window(V, window))
    for n in range(N_max + 1):
        rhs: Dict = {}
        cols: List[Dict] = [{} for _ in cands]
        used = 0
        for c in test_vectors(V):
            r, cs, u, _ = exchange_columns(V, a, b, cand_vecs, n, unit(c), positions)
            used += u
            for key, v in r.items():
                rhs[(c,) + key] = v
            for col, cc in zip(cols, cs):
                for key, v in cc.items():
                    col[(c,) + key] = v
        if used == 0:
            continue
        try:
            lam = solve_columns(cols, rhs)
        except Inconsistent:
            continue
        grouped: Dict[int, Vec] = {}
        for idx, coef in lam.items():
            k, l = cands[idx]
            axpy(grouped.setdefault(k, {}), coef, unit(l))
        pairs = [(unit(k), v) for k, v in sorted(grouped.items()) if v]
        res = search_exchange(V, a, b, pairs, "s_local", n, window, "solved")
        if res.certificate is not None and res.certificate.order_n == n:
            return res
    return SearchResult(None)


def find_s_locality(V: FieldAlgebraData, a: Vec, b: Vec, N_max: int = N_MAX_DEFAULT,
                    window: Optional[Window] = None, use_hint: bool = True,
                    full: bool = False) -> Optional[LocalityCertificate]:
    """Exchange hint first when the carrier knows one, then the linear solve."""
    if not a or not b:
        return LocalityCertificate(a, b, 0, [], "s_local", _window(V, window), source="zero")
    if use_hint and V.exchange_hint is not None:
        pairs = _hint_pairs(V, a, b)
        res = search_exchange(V, a, b, pairs, "s_local", N_max, window, "hint")
        if res.certificate is not None:
            return res.certificate
    return solve_s_locality(V, a, b, N_max, window, full).certificate


def _hint_pairs(V: FieldAlgebraData, a: Vec, b: Vec) -> List[Pair]:
    """Bilinear extension of the basis-level exchange hint."""
    out: List[Pair] = []
    for i, x in a.items():
        for j, y in b.items():
            for ai, bi in V.exchange_hint(i, j):
                out.append((scale(x * y, ai), dict(bi)))
    return out


def product_biwindow(V: FieldAlgebraData, x: Vec, y: Vec, c: Vec, w: Window,
                     swapped: bool = False) -> BiWindow:
    """Y(x,z)Y(y,w)c, or Y(y,w)Y(x,z)c when swapped, as a z^i w^j array."""
    coeffs = {}
    unknown = set()
    # the field applied first depends on one exponent only
    first = {}
    for e in (range(w.i_min, w.i_max + 1) if swapped else range(w.j_min, w.j_max + 1)):
        try:
            first[e] = V.prodv(x, -e - 1, c) if swapped else V.prodv(y, -e - 1, c)
        except TruncationEscape:
            first[e] = None
    for i, j in w.points():
        inner = first[i] if swapped else first[j]
        try:
            if inner is None:
                raise TruncationEscape("inner product beyond the cap")
            v = V.prodv(y, -j - 1, inner) if swapped else V.prodv(x, -i - 1, inner)
        except TruncationEscape:
            unknown.add((i, j))
            continue
        if v:
            coeffs[(i, j)] = v
    return BiWindow(w, coeffs, False, frozenset(unknown))


def reverify_certificate(V: FieldAlgebraData, cert: LocalityCertificate,
                         window: Optional[Window] = None) -> Outcome:
    """Recompute both sides through two-variable arrays and polynomial products."""
    w = _window(V, window or cert.window)
    n = cert.order_n
    wide = Window(w.i_min - n, w.i_max, w.j_min - n, w.j_max)
    poly = poly_zw(n)
    out = Outcome()
    for c in test_vectors(V):
        e = unit(c)
        lhs = mul(product_biwindow(V, cert.a, cert.b, e, wide), poly)
        rhs = None
        for ai, bi in cert.pairs:
            part = mul(product_biwindow(V, ai, bi, e, wide, swapped=True), poly)
            rhs = part if rhs is None else rhs + part
        if rhs is None:
            rhs = BiWindow(lhs.window, {}, False, frozenset())
        bad = lhs.disagreements(rhs, w)
        out.decided += lhs.decidable(rhs, w)
        if bad:
            out.failure = (c, bad[0])
            return out
    return out


# --- axiom suites ------------------------------------------------------------------

SUITES = ("vacuum", "translation", "associativity", "strong", "skew", "locality", "slocal")


def _pairs_of(V: FieldAlgebraData, sample) -> List[Tuple[int, int]]:
    if sample is None or sample == "all":
        return [(a, b) for a in range(V.dim) for b in range(V.dim)]
    seen = []
    for t in sample:
        if tuple(t[:2]) not in seen:
            seen.append(tuple(t[:2]))
    return seen


def _triples_of(V: FieldAlgebraData, sample) -> List[Tuple[int, int, int]]:
    if sample is None or sample == "all":
        return list(product(range(V.dim), repeat=3))
    return [tuple(t) for t in sample if len(t) == 3]


def sample_triples(V: FieldAlgebraData, count: int, seed: int = 0,
                   pred: Optional[Callable[[int, int, int], bool]] = None) -> List[Tuple[int, int, int]]:
    """Deterministic sample of basis triples satisfying pred."""
    pool = [t for t in product(range(V.dim), repeat=3) if pred is None or pred(*t)]
    rng = random.Random(seed)
    if len(pool) <= count:
        return pool
    return sorted(rng.sample(pool, count))


def mode_range(V: FieldAlgebraData, window: Optional[Window] = None) -> range:
    w = _window(V, window)
    return range(-w.i_max - 1, -w.i_min)


def _candidate_modes(V: FieldAlgebraData, a: int, b: int, extra_below: int = 0) -> range:
    lo = V.n_min() - extra_below
    if V.grading is not None and V.sigma < 0 and V.degree_cap is not None:
        lo = min(lo, V.deg(a) + V.deg(b) - V.degree_cap - 1)
    return range(lo, V.n_vanish)


def run_axiom_suite(V: FieldAlgebraData, suite: Union[str, Sequence[str]] = ("vacuum", "translation", "associativity"),
                    sample=None, n_max: int = N_MAX_DEFAULT, window: Optional[Window] = None,
                    report: Optional[AxiomReport] = None) -> AxiomReport:
    suites = [suite] if isinstance(suite, str) else list(suite)
    rep = report if report is not None else AxiomReport()
    contract = V.contract.as_dict()
    if window is not None:
        contract["window"] = window.as_list()
    for s in suites:
        if s not in SUITES:
            raise ValueError(f"unknown suite {s!r}")
        globals()["_suite_" + s](V, rep, sample, n_max, window, contract)
    return rep


def _suite_vacuum(V, rep, sample, n_max, window, contract):
    bad = None
    checked = skipped = 0
    vac = V.vacuum
    for a in range(V.dim):
        for n in _candidate_modes(V, 0, a):
            try:
                got = V.prodv(vac, n, unit(a))
            except TruncationEscape:
                skipped += 1
                continue
            checked += 1
            if got != (unit(a) if n == -1 else {}):
                bad = (V.labels[a], n)
                break
        if bad:
            break
    rep.add("vacuum: Y(1,z)a = a", tally("", [bad] if bad else [], checked),
            bad, tag="vacuum", contract=contract, checked=checked, skipped=skipped)
    bad = None
    checked = skipped = 0
    for a in range(V.dim):
        try:
            for n in range(0, V.n_vanish):
                if V.prodv(unit(a), n, vac):
                    bad = (V.labels[a], n, "pole")
                    break
            if bad:
                break
            if V.prodv(unit(a), -1, vac) != unit(a):
                bad = (V.labels[a], -1, "constant term")
                break
            sa = V.s(unit(a))
            if V.prodv(unit(a), -2, vac) != sa:
                bad = (V.labels[a], -2, "linear term is not sa")
                break
            checked += 1
        except TruncationEscape:
            skipped += 1
    rep.add("vacuum: Y(a,z)1 = a + (sa)z + ...", tally("", [bad] if bad else [], checked),
            bad, tag="vacuum", contract=contract, checked=checked, skipped=skipped)
    s1 = V.s(vac)
    rep.add("vacuum: s1 = 0", Verdict.PASS if not s1 else Verdict.FAIL,
            None if not s1 else vector_label(V, s1), tag="vacuum", contract=contract)


def _suite_translation(V, rep, sample, n_max, window, contract):
    for name, which in (("translation: [s,Y(a,z)]b = d/dz Y(a,z)b", 0),
                        ("translation: Y(sa,z)b = d/dz Y(a,z)b", 1)):
        bad = None
        checked = skipped = 0
        for a, b in _pairs_of(V, sample):
            for n in _candidate_modes(V, a, b, extra_below=1):
                try:
                    rhs = scale(-n, V.prod(a, n - 1, b)) if V.product_status(a, n - 1, b) != "zero" \
                        else {}
                    if which == 0:
                        lhs = axpy(V.s(V.prod(a, n, b)), -1, V.act(a, n, V.s(unit(b))))
                    else:
                        lhs = V.prodv(V.s(unit(a)), n, unit(b))
                except TruncationEscape:
                    skipped += 1
                    continue
                checked += 1
                if lhs != rhs:
                    bad = (V.labels[a], V.labels[b], n)
                    break
            if bad:
                break
        rep.add(name, tally("", [bad] if bad else [], checked), bad, tag="translation",
                contract=contract, checked=checked, skipped=skipped)


def _assoc_positions(V: FieldAlgebraData, window: Optional[Window], n: int) -> List[Tuple[int, int]]:
    w = _window(V, window)
    return [(i, j) for i in range(w.i_min, w.i_max + n + 1) for j in range(w.j_min - n, w.j_max + 1)]


def associativity_order(V: FieldAlgebraData, a: int, b: int, c: int, n_max: int = N_MAX_DEFAULT,
                        window: Optional[Window] = None) -> Tuple[Optional[int], Outcome]:
    """Smallest n <= n_max with the associativity relation holding on the window."""
    last = None
    vacuous = None
    for n in range(n_max + 1):
        o = assoc_outcome(V, unit(a), unit(b), unit(c), n, _assoc_positions(V, window, n))
        if o.failure is not None:
            last = o
        elif o.decided:
            return n, o
        else:
            vacuous = o
    # some n could not be decided either way: no verdict for this triple
    if vacuous is not None or last is None:
        return None, Outcome(0, vacuous.skipped if vacuous else 0)
    return None, last


def _suite_associativity(V, rep, sample, n_max, window, contract):
    orders: Dict[int, int] = {}
    bad = None
    inconclusive = 0
    checked = 0
    for a, b, c in _triples_of(V, sample):
        n, o = associativity_order(V, a, b, c, n_max, window)
        if o.failure is not None:
            bad = (V.labels[a], V.labels[b], V.labels[c], o.failure)
            break
        if n is None:
            inconclusive += 1
            continue
        checked += 1
        orders[n] = orders.get(n, 0) + 1
    rep.add("associativity", tally("", [bad] if bad else [], checked), bad,
            tag="associativity", contract=contract, triples=checked,
            undecided=inconclusive, max_n=max(orders) if orders else None,
            n_histogram={str(k): v for k, v in sorted(orders.items())})


def _suite_strong(V, rep, sample, n_max, window, contract):
    bad = None
    checked = skipped = 0
    modes = mode_range(V, window)
    for a, b, c in _triples_of(V, sample):
        for n in _candidate_modes(V, a, b):
            try:
                ab = V.prod(a, n, b)
            except TruncationEscape:
                skipped += 1
                continue
            for k in modes:
                try:
                    lhs = V.prodv(ab, k, unit(c))
                    rhs = field_product_coefficient(V, unit(a), unit(b), n, k, unit(c))
                except TruncationEscape:
                    skipped += 1
                    continue
                checked += 1
                if lhs != rhs:
                    bad = (V.labels[a], V.labels[b], V.labels[c], n, k)
                    break
            if bad:
                break
        if bad:
            break
    rep.add("strong: Y(a_n b,z) = Y(a,z)_n Y(b,z)", tally("", [bad] if bad else [], checked),
            bad, tag="n-th product", contract=contract, checked=checked, skipped=skipped)


def _suite_skew(V, rep, sample, n_max, window, contract):
    bad = None
    checked = skipped = 0
    for a, b in _pairs_of(V, sample):
        for n in _candidate_modes(V, a, b):
            try:
                lhs = V.prod(a, n, b)
                rhs = skew_rhs(V, unit(a), unit(b), n)
            except TruncationEscape:
                skipped += 1
                continue
            checked += 1
            if lhs != rhs:
                bad = (V.labels[a], V.labels[b], n)
                break
        if bad:
            break
    rep.add("skew: Y(a,z)b = e^{zs}Y(b,-z)a", tally("", [bad] if bad else [], checked), bad,
            tag="skew-symmetry", contract=contract, checked=checked, skipped=skipped)


def _suite_locality(V, rep, sample, n_max, window, contract):
    orders: Dict[int, int] = {}
    bad = None
    undecided = 0
    for a, b in _pairs_of(V, sample):
        res = search_exchange(V, unit(a), unit(b), [(unit(a), unit(b))], "local", n_max, window,
                              "identity")
        if res.certificate is None:
            if res.witness is None:
                undecided += 1
                continue
            n, c, pos = res.witness
            bad = {"a": V.labels[a], "b": V.labels[b], "c": c, "modes": list(pos),
                   "n_max": n_max}
            break
        orders[res.certificate.order_n] = orders.get(res.certificate.order_n, 0) + 1
    checked = sum(orders.values())
    rep.add("locality: (z-w)^n [Y(a,z),Y(b,w)] = 0", tally("", [bad] if bad else [], checked),
            bad, tag="locality", contract=contract, pairs=checked, undecided=undecided,
            n_histogram={str(k): v for k, v in sorted(orders.items())})


def _suite_slocal(V, rep, sample, n_max, window, contract):
    certs = s_locality_sweep(V, _pairs_of(V, sample), n_max, window)
    missing = [k for k, c in certs.items() if c is None]
    bad = None
    if missing:
        a, b = missing[0]
        bad = {"a": V.labels[a], "b": V.labels[b], "n_max": n_max, "status": "not found"}
    found = len(certs) - len(missing)
    rep.add("s-locality: (z-w)^n Y(a,z)Y(b,w) = (z-w)^n sum Y(b^i,w)Y(a^i,z)",
            tally("", [bad] if bad else [], found), bad, tag="s-locality", contract=contract,
            pairs=found, orders=sorted({c.order_n for c in certs.values() if c}))


def s_locality_sweep(V: FieldAlgebraData, pairs: Iterable[Tuple[int, int]],
                     n_max: int = N_MAX_DEFAULT, window: Optional[Window] = None,
                     use_hint: bool = True) -> Dict[Tuple[int, int], Optional[LocalityCertificate]]:
    return {(a, b): find_s_locality(V, unit(a), unit(b), n_max, window, use_hint)
            for a, b in pairs}


def check_field_algebra(V: FieldAlgebraData, sample=None, n_max=N_MAX_DEFAULT, window=None) -> AxiomReport:
    return run_axiom_suite(V, ("vacuum", "translation", "associativity"), sample, n_max, window)


def check_vertex_algebra(V: FieldAlgebraData, sample=None, n_max=N_MAX_DEFAULT, window=None,
                         pair_sample=None) -> AxiomReport:
    rep = run_axiom_suite(V, ("vacuum", "translation", "associativity"), sample, n_max, window)
    return run_axiom_suite(V, ("skew", "locality"), pair_sample, n_max, window, rep)


# --- derived structures ---------------------------------------------------------

def y_op(V: FieldAlgebraData) -> FieldAlgebraData:
    """Y^op(a,z)b = e^{zs}Y(b,-z)a on the same carrier."""
    products: Dict[Tuple[int, int], Dict[int, Vec]] = {}
    extra = 0 if V.grading is not None else V.dim
    for a in range(V.dim):
        for b in range(V.dim):
            per = {}
            for n in _candidate_modes(V, a, b, extra_below=extra):
                if V.product_status(a, n, b) == "known":
                    try:
                        v = skew_rhs(V, unit(a), unit(b), n)
                    except TruncationEscape:
                        # Y(b,-z)a needs a product the contract does not know
                        continue
                    if v:
                        per[n] = v
            if per:
                products[(a, b)] = per
    return V.with_products(products, name=f"op({V.name})", exchange_hint=None,
                           provenance={**V.provenance, "opposite": True})


def nth_field_product(V: FieldAlgebraData, a: Vec, b: Vec, n: int,
                      window: Optional[Window] = None) -> Dict[int, LaurentPoly]:
    """Y(a,z)_n Y(b,z) applied to each basis c, as Laurent data in z."""
    out = {}
    for c in range(V.dim):
        terms: Dict[int, Vec] = {}
        order = None
        for k in mode_range(V, window):
            try:
                v = field_product_coefficient(V, a, b, n, k, unit(c))
            except TruncationEscape:
                e = -k - 1
                order = e if order is None else min(order, e)
                continue
            if v:
                terms[-k - 1] = v
        if order is not None:
            terms = {e: v for e, v in terms.items() if e < order}
        out[c] = LaurentPoly(terms, order)
    return out


# --- consequences of an S-locality certificate ------------------------------------

def check_consequences(V: FieldAlgebraData, cert: LocalityCertificate,
                       window: Optional[Window] = None,
                       cert_lookup: Optional[Callable[[Vec, Vec], Optional[LocalityCertificate]]] = None,
                       cube: int = 3) -> AxiomReport:
    """Three-term delta identity, skew with exchange, residue formula, op-commutator, op via exchange."""
    rep = AxiomReport()
    contract = V.contract.as_dict()
    a, b, pairs = cert.a, cert.b, cert.pairs
    modes = list(mode_range(V, window))
    lookup = cert_lookup or (lambda x, y: find_s_locality(V, x, y, window=window))

    def sweep(name, tag, cases):
        bad = None
        checked = skipped = 0
        for key, fn in cases:
            try:
                lhs, rhs = fn()
            except TruncationEscape:
                skipped += 1
                continue
            checked += 1
            if lhs != rhs:
                bad = key
                break
        rep.add(name, tally("", [bad] if bad else [], checked), bad, tag=tag,
                contract=contract, checked=checked, skipped=skipped)

    small = [m for m in modes if -cube - 1 <= m <= cube]
    sweep("delta identity", "jacobi-type", [
        ((m, k, l, V.labels[c]), lambda m=m, k=k, l=l, c=c: borcherds_sides(V, a, b, pairs, m, k, l, unit(c)))
        for m in small for k in small for l in small for c in range(V.dim)])
    sweep("skew with exchange: Y(a,z)b = e^{zs} sum Y(b^i,-z)a^i", "skew-exchange", [
        ((n,), lambda n=n: (V.prodv(a, n, b), skew_rhs(V, a, b, n, pairs))) for n in modes])
    sweep("residue formula", "residue", [
        ((n, k, V.labels[c]), lambda n=n, k=k, c=c: residue_formula_sides(V, a, b, pairs, n, k, unit(c)))
        for n in modes for k in modes for c in range(V.dim)])

    cases = []
    for c in range(V.dim):
        cc = lookup(a, unit(c))
        if cc is None:
            continue
        for p in small:
            for q in small:
                cases.append(((p, q, V.labels[c]),
                              lambda p=p, q=q, c=c, cc=cc: _op_commutator(V, a, b, unit(c), cc.pairs, p, q)))
    sweep("op-commutator expansion", "op-commutator", cases)

    back = lookup(b, a)
    if back is not None:
        sweep("op field via exchange: Y^op(a,z)b = sum Y(a^i,z)b^i", "op-exchange", [
            ((n,), lambda n=n: (skew_rhs(V, a, b, n),
                                _sum_products(V, [(beta, alpha) for alpha, beta in back.pairs], n)))
            for n in modes])
    return rep


def _sum_products(V, pairs, n):
    acc: Vec = {}
    for x, y in pairs:
        axpy(acc, 1, V.prodv(x, n, y))
    return acc


def _op_commutator(V, a, b, c, ac_pairs, p, q):
    """a_p(b^op_q c) - b^op_q(a_p c) against sum_i sum_j C(p,j) (a^i_j b)^op_{p+q-j} c^i."""
    from ..formal import binom
    bop_c = skew_rhs(V, b, c, q)
    lhs = V.prodv(a, p, bop_c)
    lhs = axpy(lhs, -1, _op_apply(V, b, q, V.prodv(a, p, c)))
    rhs: Vec = {}
    for ai, ci in ac_pairs:
        for j in range(0, V.n_vanish):
            x = V.prodv(ai, j, b)
            if x:
                axpy(rhs, binom(p, j), skew_rhs(V, x, ci, p + q - j))
    return lhs, rhs


def _op_apply(V, x: Vec, r: int, y: Vec) -> Vec:
    """x^op_r y, linear in y."""
    acc: Vec = {}
    for k, c in y.items():
        axpy(acc, c, skew_rhs(V, x, unit(k), r))
    return acc


# --- structure predicates -------------------------------------------------------------

def check_structure_predicate(V: FieldAlgebraData, kind: str, data=None,
                              sample=None) -> AxiomReport:
    """kind in automorphism | derivation | left_ideal | right_ideal | holomorphic."""
    rep = AxiomReport()
    contract = V.contract.as_dict()
    pairs = _pairs_of(V, sample)
    if kind in ("automorphism", "derivation"):
        f = data
        f1 = apply_map(f, V.vacuum)
        if kind == "automorphism":
            ok = f1 == V.vacuum
            rep.add("g(1) = 1", Verdict.PASS if ok else Verdict.FAIL, None if ok else vector_label(V, f1),
                    tag="automorphism", contract=contract)
            bad = None
            for i in range(V.dim):
                try:
                    if apply_map(f, V.s(unit(i))) != V.s(f.get(i, {})):
                        bad = V.labels[i]
                        break
                except TruncationEscape:
                    continue
            rep.add("g s = s g", Verdict.PASS if bad is None else Verdict.FAIL, bad,
                    tag="automorphism", contract=contract)
        else:
            ok = not f1
            rep.add("f(1) = 0", Verdict.PASS if ok else Verdict.FAIL, None if ok else vector_label(V, f1),
                    tag="derivation", contract=contract)
        bad = None
        checked = skipped = 0
        for a, b in pairs:
            for n in _candidate_modes(V, a, b):
                try:
                    lhs = apply_map(f, V.prod(a, n, b))
                    if kind == "automorphism":
                        rhs = V.prodv(f.get(a, {}), n, f.get(b, {}))
                    else:
                        rhs = axpy(V.prodv(f.get(a, {}), n, unit(b)), 1, V.prodv(unit(a), n, f.get(b, {})))
                except TruncationEscape:
                    skipped += 1
                    continue
                checked += 1
                if lhs != rhs:
                    bad = (V.labels[a], V.labels[b], n)
                    break
            if bad:
                break
        name = "g(a_n b) = g(a)_n g(b)" if kind == "automorphism" else "f(a_n b) = f(a)_n b + a_n f(b)"
        rep.add(name, tally("", [bad] if bad else [], checked), bad, tag=kind, contract=contract,
                checked=checked, skipped=skipped)
        return rep
    if kind in ("left_ideal", "right_ideal"):
        U: Subspace = data
        bad = None
        checked = skipped = 0
        for a in range(V.dim):
            for row in U.rows:
                for n in range(V.n_min() - 1, V.n_vanish):
                    try:
                        v = V.prodv(unit(a), n, row) if kind == "left_ideal" else V.prodv(row, n, unit(a))
                    except TruncationEscape:
                        skipped += 1
                        continue
                    checked += 1
                    if not U.contains(v):
                        bad = (V.labels[a], vector_label(V, row), n)
                        break
                if bad:
                    break
            if bad:
                break
        rep.add(kind.replace("_", " "), tally("", [bad] if bad else [], checked), bad, tag=kind,
                contract=contract, checked=checked, skipped=skipped)
        return rep
    if kind == "holomorphic":
        bad = None
        for a, b in pairs:
            for n in range(0, V.n_vanish):
                try:
                    if V.prod(a, n, b):
                        bad = (V.labels[a], V.labels[b], n)
                        break
                except TruncationEscape:
                    continue
            if bad:
                break
        rep.add("holomorphic: Y(a,z)b has no pole", Verdict.PASS if bad is None else Verdict.FAIL, bad,
                tag="holomorphic", contract=contract)
        return rep
    raise ValueError(f"unknown predicate {kind!r}")
