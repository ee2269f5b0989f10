"""f-products and the quotient algebra A(V) = V / V_(g)V, with its isomorphism checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

from .actions import act_on, require_action
from .constructions import (SmashAlgebra, double_smash, matrix_algebra, smash_product,
                            tensor_vec)
from .exactlin import Inconsistent, Subspace, Vec, apply_map, axpy, solve_columns, span, unit
from .fieldalg.data import FieldAlgebraData
from .fixtures import HAction
from .formal import ScalarSeries, exp_profile_series, inverse_z_series
from .hopf import (AssocAlgebra, FinHopf, GroupTable, NotModuleAlgebra, check_algebra_hom,
                   check_assoc, check_module_algebra, dual_hopf, group_algebra, matrix_units,
                   smash_assoc, tensor_assoc)
from .report import AxiomReport, TruncationEscape, Verdict, WitnessError


class NotWellDefined(WitnessError):
    """The f-product does not descend to classes at this truncation."""


class NotIso(WitnessError):
    """A proposed isomorphism is not bijective or not multiplicative."""


@dataclass(frozen=True)
class FProfile:
    kind: str = "inverse_z"  # or "exp"
    c: Fraction = Fraction(1)
    series_order: Optional[int] = None

    def f(self, V: Optional[FieldAlgebraData] = None) -> ScalarSeries:
        if self.kind == "inverse_z":
            return inverse_z_series()
        if self.kind == "exp":
            return exp_profile_series(self.c, self._order(V))
        raise ValueError(f"unknown profile {self.kind!r}")

    def g(self, V: Optional[FieldAlgebraData] = None) -> ScalarSeries:
        return self.f(V).derivative()

    def _order(self, V: Optional[FieldAlgebraData]) -> int:
        if self.series_order is not None:
            return self.series_order
        cap = V.degree_cap if V is not None and V.degree_cap is not None else 3
        nv = V.n_vanish if V is not None else 0
        return max(cap + 3, nv + 1)

    @property
    def homogeneous(self) -> bool:
        return self.kind == "inverse_z"

    def describe(self) -> str:
        return "zinv" if self.kind == "inverse_z" else f"exp:{self.c}"


def parse_profile(text: str) -> FProfile:
    """'zinv' or 'exp:c' with c a nonzero rational."""
    if text in ("zinv", "inverse_z"):
        return FProfile()
    if text.startswith("exp:"):
        c = Fraction(text[4:])
        if not c:
            raise ValueError("exp profile needs c != 0")
        return FProfile("exp", c)
    raise ValueError(f"unknown profile {text!r}; use zinv or exp:c")


def residue_product(V: FieldAlgebraData, series: ScalarSeries, a: Vec, b: Vec) -> Vec:
    """Res_z series(z) Y(a,z)b = sum_e series_e a_e b."""
    acc: Vec = {}
    terms = series.as_dict()
    top = V.n_vanish - 1
    if series.order is not None and series.order <= top:
        raise TruncationEscape(f"profile known below z^{series.order}, products reach a_{top}")
    for e, c in terms.items():
        if e <= top:
            axpy(acc, c, V.prodv(a, e, b))
    return acc


def f_product(V: FieldAlgebraData, prof: FProfile, a: Vec, b: Vec) -> Vec:
    return residue_product(V, prof.f(V), a, b)


def g_product(V: FieldAlgebraData, prof: FProfile, a: Vec, b: Vec) -> Vec:
    return residue_product(V, prof.g(V), a, b)


def _graded_drop(V: FieldAlgebraData, prof: FProfile, fn, a: Vec, b: Vec) -> Vec:
    """Bilinear in basis pairs; for homogeneous profiles a pair beyond the cap lies in
    the degree > cap ideal and is dropped."""
    drop = prof.homogeneous and V.grading is not None
    acc: Vec = {}
    for i, x in a.items():
        for j, y in b.items():
            try:
                axpy(acc, x * y, fn(V, prof, unit(i), unit(j)))
            except TruncationEscape:
                if not drop:
                    raise
    return acc


@dataclass
class Quotient:
    algebra: AssocAlgebra
    projection: Dict[int, Vec]  # V basis -> class coordinates
    reps: List[int]  # V basis index representing each class
    subspace: Subspace
    report: AxiomReport
    degrees: Optional[List[int]] = None

    def cls(self, v: Vec) -> Vec:
        return apply_map(self.projection, v)


def zhu_quotient(V: FieldAlgebraData, prof: FProfile = FProfile(), verify: bool = True) -> Quotient:
    gens = []
    for a, b in product(range(V.dim), repeat=2):
        x = _graded_drop(V, prof, g_product, unit(a), unit(b))
        if x:
            gens.append(x)
    U = span(gens, V.dim)
    reps = U.non_pivots()
    pos = {r: i for i, r in enumerate(reps)}
    proj = {}
    for v in range(V.dim):
        red = U.reduce(unit(v))
        proj[v] = {pos[k]: c for k, c in red.items()}
    mult = {}
    for i, j in product(range(len(reps)), repeat=2):
        x = _graded_drop(V, prof, f_product, unit(reps[i]), unit(reps[j]))
        img = apply_map(proj, x)
        if img:
            mult[(i, j)] = img
    labels = [f"[{V.labels[r]}]" for r in reps]
    A = AssocAlgebra(labels, mult, apply_map(proj, V.vacuum), name=f"A({V.name})")
    rep = AxiomReport()
    degrees = [V.deg(r) for r in reps] if V.grading is not None else None
    Q = Quotient(A, proj, reps, U, rep, degrees)
    if verify:
        rep.extend(check_assoc(A))
        _check_well_defined(V, prof, Q, gens)
        if rep.failures():
            c = rep.failures()[0]
            if c.tag == "well-defined":
                raise NotWellDefined(f"f-product does not descend: {c.witness}", c.witness)
    return Q


def _check_well_defined(V: FieldAlgebraData, prof: FProfile, Q: Quotient, gens: List[Vec]) -> None:
    """Perturb each representative by a generator of V_(g)V and compare classes."""
    rows = Q.subspace.rows
    bad = None
    checked = 0
    for i, j in product(range(len(Q.reps)), repeat=2):
        a, b = unit(Q.reps[i]), unit(Q.reps[j])
        base = Q.cls(_graded_drop(V, prof, f_product, a, b))
        u = rows[(i + j) % len(rows)] if rows else {}
        for x, y in ((axpy(dict(a), 1, u), b), (a, axpy(dict(b), 1, u))):
            checked += 1
            if Q.cls(_graded_drop(V, prof, f_product, x, y)) != base:
                bad = (Q.algebra.labels[i], Q.algebra.labels[j])
                break
        if bad:
            break
    Q.report.add("f-product descends to classes", Verdict.FAIL if bad else Verdict.PASS, bad,
                 tag="well-defined", checked=checked)


def stability_report(V_small: FieldAlgebraData, V_big: FieldAlgebraData, prof: FProfile = FProfile(),
                     degree: Optional[int] = None) -> AxiomReport:
    """Structure constants of classes of degree <= degree agree between two caps."""
    Qs, Qb = zhu_quotient(V_small, prof), zhu_quotient(V_big, prof)
    A, B = Qs.algebra, Qb.algebra
    top = degree if degree is not None else V_small.degree_cap - 2
    cap = V_small.degree_cap
    by_label = {l: k for k, l in enumerate(B.labels)}
    bad = None
    checked = 0
    low = [i for i in range(A.dim) if Qs.degrees[i] <= top]
    for i, j in product(low, low):
        if A.labels[i] not in by_label or A.labels[j] not in by_label:
            bad = ("class missing", A.labels[i], A.labels[j])
            break
        x = A.mult.get((i, j), {})
        y = B.mult.get((by_label[A.labels[i]], by_label[A.labels[j]]), {})
        # only compare inside the smaller cap
        y = {by_label_inv: c for by_label_inv, c in y.items() if Qb.degrees[by_label_inv] <= cap}
        xl = {A.labels[k]: c for k, c in x.items()}
        yl = {B.labels[k]: c for k, c in y.items()}
        checked += 1
        if xl != yl:
            bad = (A.labels[i], A.labels[j])
            break
    rep = AxiomReport()
    rep.add(f"structure constants stable in degrees <= {top}", Verdict.FAIL if bad else Verdict.PASS,
            bad, tag="stability", pairs=checked)
    return rep


# --- induced H-action ---------------------------------------------------------------

def induced_action(V: FieldAlgebraData, H: FinHopf, act: HAction, Q: Quotient,
                   prof: FProfile = FProfile()) -> Tuple[Dict, AxiomReport]:
    rep = AxiomReport()
    bad = None
    for h in range(H.dim):
        for row in Q.subspace.rows:
            if not Q.subspace.contains(_act(act, h, row)):
                bad = (H.labels[h], "V_(g)V not preserved")
                break
        if bad:
            break
    rep.add("H preserves V_(g)V", Verdict.FAIL if bad else Verdict.PASS, bad, tag="descends")
    tensor = {}
    for h, i in product(range(H.dim), range(len(Q.reps))):
        img = Q.cls(act_on(act, h, unit(Q.reps[i])))
        if img:
            tensor[(h, i)] = img
    # projection o action = induced action o projection
    bad = None
    for h, v in product(range(H.dim), range(V.dim)):
        lhs = Q.cls(act_on(act, h, unit(v)))
        rhs: Vec = {}
        for i, c in Q.projection[v].items():
            axpy(rhs, c, tensor.get((h, i), {}))
        if lhs != rhs:
            bad = (H.labels[h], V.labels[v])
            break
    rep.add("projection intertwines the actions", Verdict.FAIL if bad else Verdict.PASS, bad, tag="descends")
    rep.extend(check_module_algebra(Q.algebra, H, tensor), prefix="A(V): ")
    return tensor, rep


def _act(act: HAction, h: int, v: Vec) -> Vec:
    acc: Vec = {}
    for k, c in v.items():
        axpy(acc, c, act_on(act, h, unit(k)))
    return acc


@dataclass
class IsoResult:
    phi: Dict[int, Vec]
    psi: Dict[int, Vec]
    report: AxiomReport
    dims: Tuple[int, int]


def _iso_report(A: AssocAlgebra, B: AssocAlgebra, phi: Dict[int, Vec], psi: Dict[int, Vec],
                rep: AxiomReport) -> AxiomReport:
    rep.add("dimensions agree", Verdict.PASS if A.dim == B.dim else Verdict.FAIL,
            None if A.dim == B.dim else (A.dim, B.dim), tag="iso", dims=[A.dim, B.dim])
    bad = next((A.labels[i] for i in range(A.dim) if apply_map(psi, phi.get(i, {})) != unit(i)), None)
    rep.add("psi phi = id", Verdict.FAIL if bad else Verdict.PASS, bad, tag="iso")
    bad = next((B.labels[i] for i in range(B.dim) if apply_map(phi, psi.get(i, {})) != unit(i)), None)
    rep.add("phi psi = id", Verdict.FAIL if bad else Verdict.PASS, bad, tag="iso")
    rep.extend(check_algebra_hom(A, B, phi), prefix="phi ")
    rep.extend(check_algebra_hom(B, A, psi), prefix="psi ")
    return rep


def _require_iso(rep: AxiomReport, strict: bool) -> None:
    if not strict:
        return
    for c in rep.failures():
        if c.tag in ("iso", "algebra-hom") or c.name.startswith(("phi ", "psi ")):
            raise NotIso(f"{c.name} fails", c.witness)


def check_smash_iso(V: FieldAlgebraData, H: FinHopf, act: HAction, prof: FProfile = FProfile(),
                    S: Optional[SmashAlgebra] = None, strict: bool = False) -> IsoResult:
    """A(V)#H -> A(V#H), [v]#h -> [v#h], against its inverse [v#h] -> [v]#h."""
    require_action(V, H, act)
    QV = zhu_quotient(V, prof)
    tensor, rep = induced_action(V, H, act, QV, prof)
    if rep.failures():
        c = rep.failures()[0]
        raise NotModuleAlgebra(f"induced action fails {c.name}", c.witness)
    AH = smash_assoc(QV.algebra, H, tensor, verify=False)
    S = S or smash_product(V, H, act, verify=False)
    QS = zhu_quotient(S.carrier, prof)
    rep.extend(QS.report, prefix="A(V#H): ")
    nh = H.dim
    phi = {}
    for i, h in product(range(QV.algebra.dim), range(nh)):
        phi[i * nh + h] = QS.cls(unit(QV.reps[i] * nh + h))
    psi = {}
    for j, r in enumerate(QS.reps):
        v, h = divmod(r, nh)
        psi[j] = tensor_vec(QV.projection[v], unit(h), nh)
    _iso_report(AH, QS.algebra, phi, psi, rep)
    _require_iso(rep, strict)
    return IsoResult(phi, psi, rep, (AH.dim, QS.algebra.dim))


def check_matrix_iso(V: FieldAlgebraData, n: int, prof: FProfile = FProfile(), strict: bool = False) -> IsoResult:
    """A(V)(x)M(n,k) -> A(M(n,V)), [u](x)E_ij -> [uE_ij]."""
    QV = zhu_quotient(V, prof)
    target = tensor_assoc(QV.algebra, matrix_units(n))
    M = matrix_algebra(V, n)
    QM = zhu_quotient(M, prof)
    rep = AxiomReport()
    rep.extend(QM.report, prefix="A(M(n,V)): ")
    nn = n * n
    phi = {i * nn + ij: QM.cls(unit(QV.reps[i] * nn + ij)) for i in range(QV.algebra.dim) for ij in range(nn)}
    psi = {}
    for j, r in enumerate(QM.reps):
        u, ij = divmod(r, nn)
        psi[j] = tensor_vec(QV.projection[u], unit(ij), nn)
    _iso_report(target, QM.algebra, phi, psi, rep)
    _require_iso(rep, strict)
    return IsoResult(phi, psi, rep, (target.dim, QM.algebra.dim))


def check_double_smash_iso(V: FieldAlgebraData, G: GroupTable, act: HAction,
                           prof: FProfile = FProfile(), strict: bool = False) -> IsoResult:
    """A(V)#kG#(kG)* -> A(V#kG#(kG)*), [v]#g#rho_a -> [v#g#rho_a]."""
    H = group_algebra(G)
    Hd = dual_hopf(H)
    QV = zhu_quotient(V, prof)
    tensor, rep = induced_action(V, H, act, QV, prof)
    AH = smash_assoc(QV.algebra, H, tensor, verify=False)
    n = G.order
    rho = {(h, i): unit(i) for i in range(AH.dim) for h in [i % n]}
    rep.extend(check_module_algebra(AH, Hd, rho), prefix="A(V)#kG as (kG)*-module: ")
    AHH = smash_assoc(AH, Hd, rho, verify=False)
    D, drep = double_smash(V, G, act, verify=False)
    rep.extend(drep, prefix="double smash: ")
    QD = zhu_quotient(D.carrier, prof)
    rep.extend(QD.report, prefix="A(V#H#H*): ")
    phi = {}
    for i, g, a in product(range(QV.algebra.dim), range(n), range(n)):
        phi[(i * n + g) * n + a] = QD.cls(unit((QV.reps[i] * n + g) * n + a))
    psi = {}
    for j, r in enumerate(QD.reps):
        v, g, a = D.split(r)
        psi[j] = {(k * n + g) * n + a: c for k, c in QV.projection[v].items()}
    _iso_report(AHH, QD.algebra, phi, psi, rep)
    _require_iso(rep, strict)
    return IsoResult(phi, psi, rep, (AHH.dim, QD.algebra.dim))


def check_cor47(V: FieldAlgebraData, G: GroupTable, n: int, act: HAction,
                prof: FProfile = FProfile()) -> AxiomReport:
    rep = AxiomReport()
    m = check_matrix_iso(V, n, prof)
    rep.extend(m.report, prefix=f"M({n}): ")
    d = check_double_smash_iso(V, G, act, prof)
    rep.extend(d.report, prefix="double smash: ")
    return rep


# --- the f/g span constraint -------------------------------------------------------------

def span_constraint(prof: FProfile, max_j: Optional[int] = None, V: Optional[FieldAlgebraData] = None) -> AxiomReport:
    """f(z) d^(j) g(-z) and g(z) d^(j) f(z) lie in span{d^(k) g(z)} modulo the series order."""
    f, g = prof.f(V), prof.g(V)
    order_cap = prof._order(V) if prof.kind == "exp" else 6
    top = max_j if max_j is not None else order_cap
    rep = AxiomReport()
    for which in ("f(z) d^(j)g(-z)", "g(z) d^(j)f(z)"):
        bad = None
        for j in range(top + 1):
            s = f * g.negate_variable().divided_power_derivative(j) if which.startswith("f") \
                else g * f.divided_power_derivative(j)
            if not _in_derivative_span(s, g):
                bad = j
                break
        rep.add(f"{which} in span of d^(k)g", Verdict.FAIL if bad is not None else Verdict.PASS,
                bad, tag="span-constraint", profile=prof.describe(), j_max=top)
    return rep


def _in_derivative_span(s: ScalarSeries, g: ScalarSeries) -> bool:
    d = s.as_dict()
    if not d:
        return True
    low = min(d)
    k_max = max(0, -2 - low)
    cols = []
    for k in range(k_max + 1):
        cols.append(g.divided_power_derivative(k))
    order = s.order
    for c in cols:
        if c.order is not None:
            order = c.order if order is None else min(order, c.order)
    lo = min([low] + [min(c.as_dict()) for c in cols if c.as_dict()])
    hi = order if order is not None else max([max(d)] + [max(c.as_dict()) for c in cols if c.as_dict()]) + 1
    rows = range(lo, hi)
    rhs = {e: d.get(e, 0) for e in rows if d.get(e, 0)}
    mats = [{e: c.as_dict().get(e, 0) for e in rows if c.as_dict().get(e, 0)} for c in cols]
    try:
        solve_columns(mats, rhs)
        return True
    except Inconsistent:
        return False
