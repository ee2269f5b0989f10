"""Hopf actions and coactions on field algebras."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

from .exactlin import (Inconsistent, Vec, apply_map, axpy, invert, kernel, scale, solve_columns,
                       span, unit)
from .fieldalg.data import FieldAlgebraData, vector_label
from .fieldalg.suites import _candidate_modes
from .fixtures import HAction, act_vec
from .hopf import FinHopf, NoIntegral, dual_hopf, left_integral
from .report import AxiomReport, TruncationEscape, Verdict, WitnessError, tally

HCoaction = Dict[int, List[Tuple[int, int, Fraction]]]  # v -> [(v0, h, coefficient)]


class NotClosed(WitnessError):
    """A product of fixed vectors left the fixed subspace."""


class ActionInvalid(WitnessError):
    """The action fails a module field algebra axiom."""


def act_on(act: HAction, h: int, v: Vec) -> Vec:
    return act_vec(act, unit(h), v)


def action_matrix(V: FieldAlgebraData, act: HAction, h: Vec) -> Dict[int, Vec]:
    return {v: act_vec(act, h, unit(v)) for v in range(V.dim)}


def check_h_module_field_algebra(V: FieldAlgebraData, H: FinHopf, act: HAction,
                                 pairs=None) -> AxiomReport:
    rep = AxiomReport()
    contract = V.contract.as_dict()
    eh = [unit(h) for h in range(H.dim)]
    bad = next(((H.labels[h], H.labels[g], V.labels[v])
                for h, g, v in product(range(H.dim), range(H.dim), range(V.dim))
                if act_vec(act, H.mul(eh[h], eh[g]), unit(v)) != act_on(act, h, act_on(act, g, unit(v)))),
               None)
    rep.add("H-module: (hg)v = h(gv)", Verdict.FAIL if bad else Verdict.PASS, bad, tag="module",
            contract=contract)
    bad = next((V.labels[v] for v in range(V.dim) if act_vec(act, H.unit, unit(v)) != unit(v)), None)
    rep.add("H-module: 1v = v", Verdict.FAIL if bad else Verdict.PASS, bad, tag="module",
            contract=contract)
    bad = next((H.labels[h] for h in range(H.dim)
                if act_on(act, h, V.vacuum) != scale(H.counit.get(h, 0), V.vacuum)), None)
    rep.add("h1 = eps(h)1", Verdict.FAIL if bad else Verdict.PASS, bad, tag="vacuum",
            contract=contract)
    bad = None
    skipped = 0
    for h, v in product(range(H.dim), range(V.dim)):
        try:
            if act_on(act, h, V.s(unit(v))) != V.s(act_on(act, h, unit(v))):
                bad = (H.labels[h], V.labels[v])
                break
        except TruncationEscape:
            skipped += 1
    rep.add("h s a = s h a", Verdict.FAIL if bad else Verdict.PASS, bad, tag="translation",
            contract=contract, skipped=skipped)
    bad = None
    checked = skipped = 0
    todo = pairs if pairs is not None else list(product(range(V.dim), repeat=2))
    for h in range(H.dim):
        hs = H.comult.get(h, [])
        for a, b in todo:
            parts = [(c, act_on(act, h1, unit(a)), act_on(act, h2, unit(b))) for h1, h2, c in hs]
            for n in _candidate_modes(V, a, b):
                try:
                    lhs = act_on(act, h, V.prod(a, n, b))
                    rhs: Vec = {}
                    for c, ha, hb in parts:
                        axpy(rhs, c, V.prodv(ha, n, hb))
                except TruncationEscape:
                    skipped += 1
                    continue
                checked += 1
                if lhs != rhs:
                    bad = (H.labels[h], V.labels[a], V.labels[b], n)
                    break
            if bad:
                break
        if bad:
            break
    rep.add("h(a_n b) = sum (h1 a)_n (h2 b)", tally("", [bad] if bad else [], checked), bad,
            tag="products", contract=contract, checked=checked, skipped=skipped)
    return rep


def require_action(V: FieldAlgebraData, H: FinHopf, act: HAction) -> None:
    rep = check_h_module_field_algebra(V, H, act)
    if rep.failures():
        c = rep.failures()[0]
        raise ActionInvalid(f"action fails {c.name}", c.witness)


# --- fixed points -------------------------------------------------------------

def fixed_vectors(V: FieldAlgebraData, H: FinHopf, act: HAction) -> List[Vec]:
    """Basis of {v : hv = eps(h)v}, ordered by degree then reduced form."""
    blocks: Dict[int, List[int]] = {}
    for i in range(V.dim):
        blocks.setdefault(V.deg(i), []).append(i)
    out: List[Vec] = []
    for d in sorted(blocks):
        idx = blocks[d]
        # equations (h - eps(h)) x = 0, one column per block basis vector
        cols = {}
        for k, v in enumerate(idx):
            img = {}
            for h in range(H.dim):
                w = axpy(act_on(act, h, unit(v)), -H.counit.get(h, 0), unit(v))
                for j, c in w.items():
                    img[(h, j)] = c
            cols[k] = img
        ker = kernel(cols, len(idx))
        sub = span([{idx[k]: c for k, c in x.items()} for x in ker], V.dim)
        out.extend(sub.rows)
    return out


def fixed_subalgebra(V: FieldAlgebraData, H: FinHopf, act: HAction) -> Tuple[FieldAlgebraData, Dict[int, Vec]]:
    """(V^H, embedding columns); products restricted and re-expressed in V^H coordinates."""
    rows = fixed_vectors(V, H, act)

    def coordinates(v: Vec, where) -> Vec:
        if not v:
            return {}
        try:
            return solve_columns(rows, v)
        except Inconsistent:
            raise NotClosed(f"{vector_label(V, v)} is not fixed", where)

    grading = [V.vec_deg(r) if V.grading is not None else 0 for r in rows] if V.grading is not None else None
    products: Dict[Tuple[int, int], Dict[int, Vec]] = {}
    skipped = 0
    lo = V.n_min() - 1
    for i, x in enumerate(rows):
        for j, y in enumerate(rows):
            per = {}
            for n in range(lo, V.n_vanish):
                try:
                    v = V.prodv(x, n, y)
                except TruncationEscape:
                    skipped += 1
                    continue
                if v:
                    per[n] = coordinates(v, (vector_label(V, x), vector_label(V, y), n))
            if per:
                products[(i, j)] = per
    s_cols = {}
    for i, x in enumerate(rows):
        try:
            s_cols[i] = coordinates(V.s(x), ("s", vector_label(V, x)))
        except TruncationEscape:
            pass
    vac = coordinates(V.vacuum, ("vacuum",))
    labels = [vector_label(V, r) for r in rows]
    W = FieldAlgebraData(labels, vac, {k: v for k, v in s_cols.items() if v}, products, V.n_vanish,
                         grading, V.degree_cap, V.sigma, V.window, name=f"{V.name}^{H.name}",
                         provenance={"fixed": V.name, "closure_skipped": skipped})
    emb = {i: dict(r) for i, r in enumerate(rows)}
    return W, emb


# --- comodules and dual actions ----------------------------------------------

def comodule_from_dual(V: FieldAlgebraData, H: FinHopf, coact: HCoaction) -> HAction:
    """rho_k . v = sum v0 <rho_k, v1> for the dual basis rho_k."""
    act: HAction = {}
    for v, terms in coact.items():
        for v0, h, c in terms:
            axpy(act.setdefault((h, v), {}), c, unit(v0))
    return {k: x for k, x in act.items() if x}


def coaction_from_dual_action(V: FieldAlgebraData, H: FinHopf, act: HAction) -> HCoaction:
    """rho(v) = sum_k (rho_k . v) (x) h_k."""
    out: HCoaction = {}
    for v in range(V.dim):
        terms = []
        for k in range(H.dim):
            for v0, c in sorted(act_on(act, k, unit(v)).items()):
                terms.append((v0, k, c))
        out[v] = terms
    return out


def coaction_vec(coact: HCoaction, v: Vec) -> Vec:
    """rho(v) as a vector over (v0, h) pairs."""
    acc: Vec = {}
    for i, a in v.items():
        for v0, h, c in coact.get(i, []):
            axpy(acc, a * c, {(v0, h): Fraction(1)})
    return acc


def check_h_comodule_field_algebra(V: FieldAlgebraData, H: FinHopf, coact: HCoaction) -> AxiomReport:
    rep = AxiomReport()
    contract = V.contract.as_dict()
    bad = None
    for v in range(V.dim):
        rho = coaction_vec(coact, unit(v))
        left: Vec = {}
        right: Vec = {}
        for (v0, h), c in rho.items():
            for (w0, g), d in coaction_vec(coact, unit(v0)).items():
                axpy(left, c * d, {(w0, g, h): Fraction(1)})
            for (h1, h2), d in H.delta(unit(h)).items():
                axpy(right, c * d, {(v0, h1, h2): Fraction(1)})
        if left != right:
            bad = (V.labels[v], "coassociativity")
            break
        back: Vec = {}
        for (v0, h), c in rho.items():
            axpy(back, c * H.counit.get(h, 0), unit(v0))
        if back != unit(v):
            bad = (V.labels[v], "counit")
            break
    rep.add("comodule: coassociative and counital", Verdict.FAIL if bad else Verdict.PASS, bad,
            tag="comodule", contract=contract)
    one = {(k, h): c * d for k, c in V.vacuum.items() for h, d in H.unit.items()}
    ok = coaction_vec(coact, V.vacuum) == one
    rep.add("rho(1) = 1 (x) 1", Verdict.PASS if ok else Verdict.FAIL, None if ok else "vacuum",
            tag="vacuum", contract=contract)
    bad = None
    for v in range(V.dim):
        try:
            lhs = coaction_vec(coact, V.s(unit(v)))
            rhs: Vec = {}
            for (v0, h), c in coaction_vec(coact, unit(v)).items():
                for k, d in V.s(unit(v0)).items():
                    axpy(rhs, c * d, {(k, h): Fraction(1)})
        except TruncationEscape:
            continue
        if lhs != rhs:
            bad = V.labels[v]
            break
    rep.add("rho s = (s (x) 1) rho", Verdict.FAIL if bad else Verdict.PASS, bad, tag="translation",
            contract=contract)
    bad = None
    checked = skipped = 0
    for a, b in product(range(V.dim), repeat=2):
        ra, rb = coaction_vec(coact, unit(a)), coaction_vec(coact, unit(b))
        for n in _candidate_modes(V, a, b):
            try:
                lhs = coaction_vec(coact, V.prod(a, n, b))
                rhs: Vec = {}
                for (a0, h), c in ra.items():
                    for (b0, g), d in rb.items():
                        x = V.prod(a0, n, b0)
                        hg = H.mul(unit(h), unit(g))
                        for k, e in x.items():
                            for l, f in hg.items():
                                axpy(rhs, c * d * e * f, {(k, l): Fraction(1)})
            except TruncationEscape:
                skipped += 1
                continue
            checked += 1
            if lhs != rhs:
                bad = (V.labels[a], V.labels[b], n)
                break
        if bad:
            break
    rep.add("rho(a_n b) = sum (a0)_n b0 (x) a1 b1", tally("", [bad] if bad else [], checked), bad,
            tag="products", contract=contract, checked=checked, skipped=skipped)
    return rep


# --- averaging and total integrals -----------------------------------------------

@dataclass
class HatT:
    matrix: Dict[int, Vec]
    integral: Vec
    surjective: Verdict
    c: Optional[Vec]
    image_rank: int
    fixed_dim: int


def hat_t(V: FieldAlgebraData, H: FinHopf, act: HAction) -> HatT:
    """v -> tv for the normalized left integral t; compares the image with V^H."""
    integ = left_integral(H)
    if not integ.normalized:
        raise NoIntegral(f"{H.name}: every left integral has eps(t) = 0", integ.t)
    t = integ.t
    mat = action_matrix(V, act, t)
    image = span(mat.values(), V.dim)
    fixed = span(fixed_vectors(V, H, act), V.dim)
    same = image.rank == fixed.rank and all(fixed.contains(r) for r in image.rows)
    c = None
    if same:
        try:
            coef = solve_columns([mat[v] for v in range(V.dim)], V.vacuum)
            c = {k: x for k, x in coef.items()}
        except Inconsistent:
            same = False
    return HatT(mat, t, Verdict.PASS if same else Verdict.FAIL, c, image.rank, fixed.rank)


def projector_report(V: FieldAlgebraData, ht: HatT) -> AxiomReport:
    rep = AxiomReport()
    bad = next((V.labels[v] for v in range(V.dim)
                if apply_map(ht.matrix, ht.matrix[v]) != ht.matrix[v]), None)
    rep.add("t^2 = t on V", Verdict.FAIL if bad else Verdict.PASS, bad, tag="projector")
    return rep


def harpoon(H: FinHopf, h: Vec, f: Vec) -> Vec:
    """(h -> f)(x) = f(x h) for f in the dual basis coordinates."""
    out: Vec = {}
    for x in range(H.dim):
        val = sum((f.get(k, 0) * c for k, c in H.mul(unit(x), h).items()), Fraction(0))
        if val:
            out[x] = val
    return out


@dataclass
class TotalIntegral:
    phi: Dict[int, Vec]  # dual basis index -> V vector
    report: AxiomReport


def total_integral(V: FieldAlgebraData, H: FinHopf, act: HAction, c: Vec) -> TotalIntegral:
    """phi(f) = theta^{-1}(f) c with theta(h) = h -> T, T a left integral of H*."""
    Hd = dual_hopf(H)
    T = _dual_integral(H, Hd)
    theta = {h: harpoon(H, unit(h), T) for h in range(H.dim)}
    theta_inv = invert(theta, H.dim)
    phi = {k: act_vec(act, theta_inv[k], c) for k in range(H.dim)}
    rep = AxiomReport()
    eps = dict(Hd.unit)
    ok = apply_map(phi, eps) == V.vacuum
    rep.add("phi(1) = 1", Verdict.PASS if ok else Verdict.FAIL, None if ok else vector_label(V, apply_map(phi, eps)),
            tag="total-integral")
    coact = coaction_from_dual_action(V, H, act)
    bad = None
    for k in range(H.dim):
        lhs = coaction_vec(coact, phi[k])
        rhs: Vec = {}
        for (k1, k2), d in Hd.delta(unit(k)).items():
            for v, e in phi[k1].items():
                axpy(rhs, d * e, {(v, k2): Fraction(1)})
        if lhs != rhs:
            bad = Hd.labels[k]
            break
    rep.add("phi is a comodule map", Verdict.FAIL if bad else Verdict.PASS, bad, tag="total-integral")
    bad = None
    for h, k in product(range(H.dim), range(H.dim)):
        if apply_map(phi, harpoon(H, unit(h), unit(k))) != act_on(act, h, phi[k]):
            bad = (H.labels[h], Hd.labels[k])
            break
    rep.add("phi is an H-module map", Verdict.FAIL if bad else Verdict.PASS, bad, tag="total-integral")
    return TotalIntegral(phi, rep)


def _dual_integral(H: FinHopf, Hd: FinHopf) -> Vec:
    """Left integral T of H* scaled so that t -> T = eps for the normalized t of H."""
    T = left_integral(Hd).t
    t = left_integral(H).t
    img = harpoon(H, t, T)
    eps = dict(Hd.unit)
    k = next(iter(eps))
    lam = img.get(k, 0) / eps[k]
    if not lam or scale(lam, eps) != img:
        raise NoIntegral("t -> T is not a multiple of the counit", img)
    return scale(1 / lam, T)


def c_from_total_integral(H: FinHopf, act: HAction, phi: Dict[int, Vec]) -> Vec:
    """c = phi(T), so that t c = phi(t -> T) = 1."""
    return apply_map(phi, _dual_integral(H, dual_hopf(H)))
