"""Modules over field algebras, Hopf representations, and the V#H-module correspondence."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .actions import act_on
from .constructions import SmashAlgebra, smash_product, tensor_vec
from .exactlin import Subspace, Vec, axpy, span, unit
from .fieldalg.data import FieldAlgebraData, Products
from .fieldalg.suites import N_MAX_DEFAULT, run_axiom_suite, y_op
from .fixtures import HAction
from .formal import Window
from .hopf import FinHopf
from .report import AxiomReport, TruncationEscape, Verdict, WitnessError, tally

MODULE_KINDS = ("left", "right", "strong", "vertex", "s_local")


class NotHopfRep(WitnessError):
    """h(a_n m) differs from sum (h1 a)_n (h2 m), or h s_M differs from s_M h."""


@dataclass
class ModuleData:
    """(M, s_M, Y^M) by structure constants: action[(a, m)][n] = a_n m."""

    labels: List[str]
    s_cols: Dict[int, Vec]
    action: Products
    n_vanish: int
    grading: Optional[List[int]] = None
    degree_cap: Optional[int] = None
    name: str = ""
    algebra: str = ""
    _ext: Dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def extension(self, V: FieldAlgebraData, opposite: bool = False) -> FieldAlgebraData:
        key = (id(V), opposite)
        if key not in self._ext:
            self._ext[key] = module_extension(y_op(V) if opposite else V, self)
        return self._ext[key]

    def act(self, V: FieldAlgebraData, a: Vec, n: int, m: Vec) -> Vec:
        """a_n m; raises TruncationEscape beyond the contract."""
        E = self.extension(V)
        shift = V.dim
        out = E.prodv(a, n, {shift + k: c for k, c in m.items()})
        return {k - shift: c for k, c in out.items()}

    def s(self, m: Vec) -> Vec:
        acc: Vec = {}
        for k, c in m.items():
            axpy(acc, c, self.s_cols.get(k, {}))
        return acc

    def tensors(self) -> Tuple:
        act = {k: {n: v for n, v in per.items() if v} for k, per in self.action.items()}
        return ({k: v for k, v in act.items() if v}, {k: v for k, v in self.s_cols.items() if v})


def module_extension(V: FieldAlgebraData, M: ModuleData) -> FieldAlgebraData:
    """V + M with V acting on M and M acting by zero.

    Every module identity with the module vector in the last slot is the
    matching field-algebra identity of this carrier, evaluated on M.
    """
    dv = V.dim
    if (V.grading is None) != (M.grading is None):
        raise ValueError("algebra and module must both be graded or both ungraded")
    products = dict(V.products)
    for (a, m), per in M.action.items():
        products[(a, dv + m)] = {n: {dv + k: c for k, c in v.items()} for n, v in per.items() if v}
    s_cols = dict(V.s_cols)
    for m, img in M.s_cols.items():
        if img:
            s_cols[dv + m] = {dv + k: c for k, c in img.items()}
    grading = None if V.grading is None else list(V.grading) + list(M.grading)
    caps = [c for c in (V.degree_cap, M.degree_cap) if c is not None]
    cap = min(caps) if caps else None
    return FieldAlgebraData(list(V.labels) + [f"M:{l}" for l in M.labels], dict(V.vacuum), s_cols,
                            products, max(V.n_vanish, M.n_vanish), grading, cap, V.sigma, V.window,
                            name=f"{V.name}+{M.name}",
                            provenance={"module": {"v_dim": dv},
                                        "right_generators": list(range(dv, dv + M.dim))},
                            exchange_hint=V.exchange_hint)


def regular_module(V: FieldAlgebraData) -> ModuleData:
    return ModuleData(list(V.labels), dict(V.s_cols), dict(V.products), V.n_vanish,
                      None if V.grading is None else list(V.grading), V.degree_cap,
                      name=f"{V.name} (regular)", algebra=V.name)


# --- module suites ---------------------------------------------------------------

def _module_pairs(V: FieldAlgebraData, M: ModuleData, sample) -> List[Tuple[int, int]]:
    if sample is None:
        return [(a, V.dim + m) for a in range(V.dim) for m in range(M.dim)]
    return sorted({(t[0], V.dim + t[-1]) for t in sample})


def _module_triples(V: FieldAlgebraData, M: ModuleData, sample) -> List[Tuple[int, int, int]]:
    if sample is None:
        return [(a, b, V.dim + m) for a, b, m in product(range(V.dim), range(V.dim), range(M.dim))]
    return [(a, b, V.dim + m) for a, b, m in sample]


def _check_module_vacuum(V: FieldAlgebraData, M: ModuleData, rep: AxiomReport) -> None:
    E = M.extension(V)
    bad = None
    checked = 0
    for m in range(M.dim):
        for n in range(min(-2, E.n_min()), E.n_vanish):
            try:
                got = E.prodv(V.vacuum, n, unit(V.dim + m))
            except TruncationEscape:
                continue
            checked += 1
            if got != (unit(V.dim + m) if n == -1 else {}):
                bad = (M.labels[m], n)
                break
        if bad:
            break
    rep.add("module vacuum: Y^M(1,z) = id", tally("", [bad] if bad else [], checked), bad,
            tag="vacuum", checked=checked)


def check_module(V: FieldAlgebraData, M: ModuleData, kind: str = "left", sample=None,
                 pair_sample=None, n_max: int = N_MAX_DEFAULT,
                 window: Optional[Window] = None) -> AxiomReport:
    """Module axioms; ``sample`` holds (a, b, m) triples, ``pair_sample`` (a, b) or (a, m) pairs."""
    if kind not in MODULE_KINDS:
        raise ValueError(f"unknown module kind {kind!r}")
    rep = AxiomReport()
    _check_module_vacuum(V, M, rep)
    E = M.extension(V)
    tr = _module_pairs(V, M, None if sample is None else [(t[0], t[-1]) for t in sample])
    run_axiom_suite(E, "translation", tr, n_max, window, rep)
    triples = _module_triples(V, M, sample)
    if kind == "strong":
        run_axiom_suite(E, "strong", triples, n_max, window, rep)
    elif kind == "right":
        sub = AxiomReport()
        run_axiom_suite(M.extension(V, opposite=True), "associativity", triples, n_max, window, sub)
        rep.extend(sub, prefix="right ")
    else:
        run_axiom_suite(E, "associativity", triples, n_max, window, rep)
    if kind in ("vertex", "s_local"):
        pairs = pair_sample if pair_sample is not None else list(product(range(V.dim), repeat=2))
        run_axiom_suite(E, "locality" if kind == "vertex" else "slocal", pairs, n_max, window, rep)
    return rep


def check_module_iso(V: FieldAlgebraData, M1: ModuleData, M2: ModuleData, f: Dict[int, Vec]) -> AxiomReport:
    """f a_n = a_n f for every basis a, every mode, on every basis vector of M1."""
    rep = AxiomReport()
    bad = None
    checked = skipped = 0

    def fmap(v: Vec) -> Vec:
        acc: Vec = {}
        for k, c in v.items():
            axpy(acc, c, f.get(k, {}))
        return acc

    nv = max(M1.n_vanish, M2.n_vanish)
    lo = min(-1, M1.extension(V).n_min(), M2.extension(V).n_min())
    for a, m in product(range(V.dim), range(M1.dim)):
        for n in range(lo, nv):
            try:
                lhs = fmap(M1.act(V, unit(a), n, unit(m)))
                rhs = M2.act(V, unit(a), n, fmap(unit(m)))
            except TruncationEscape:
                skipped += 1
                continue
            checked += 1
            if lhs != rhs:
                bad = (V.labels[a], n, M1.labels[m])
                break
        if bad:
            break
    rep.add("f Y^M1(a,z) = Y^M2(a,z) f", tally("", [bad] if bad else [], checked), bad,
            tag="module-iso", checked=checked, skipped=skipped)
    rank = span([fmap(unit(m)) for m in range(M1.dim)], M2.dim).rank
    ok = rank == M1.dim == M2.dim
    rep.add("f invertible", Verdict.PASS if ok else Verdict.FAIL,
            None if ok else {"rank": rank, "dims": [M1.dim, M2.dim]}, tag="module-iso")
    return rep


def check_holomorphic_module(V: FieldAlgebraData, M: ModuleData) -> AxiomReport:
    """Y^M(a,z)m has no pole: a_n m = 0 for all n >= 0."""
    bad = next(((V.labels[a], n, M.labels[m]) for (a, m), per in M.action.items()
                for n, v in per.items() if n >= 0 and v), None)
    rep = AxiomReport()
    rep.add("Y^M(a,z)m in M[[z]]", Verdict.FAIL if bad else Verdict.PASS, bad, tag="holomorphic",
            finite_dim=M.dim)
    return rep


# --- submodules -------------------------------------------------------------------

@dataclass
class Generated:
    closure: Subspace
    one_step: Subspace
    skipped: int
    closure_vectors: List[Vec] = field(default_factory=list)
    one_step_vectors: List[Vec] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return self.closure.rank == self.one_step.rank and all(
            self.closure.contains(r) for r in self.one_step.rows)

    def ranks_through(self, grading: Sequence[int], degree: int) -> Tuple[int, int]:
        """Ranks of both spans cut to homogeneous vectors of degree <= degree.

        Near the cap the one-step span misses vectors needing a_n with a above
        the cap, so comparisons use a carrier with headroom.
        """
        def cut(vs):
            keep = [v for v in vs if v and max(grading[k] for k in v) <= degree]
            return span(keep, len(grading)).rank
        return cut(self.closure_vectors), cut(self.one_step_vectors)


def _all_modes(E: FieldAlgebraData, dv: int) -> range:
    return range(min(-1, E.n_min()), E.n_vanish)


def generated_submodule(V: FieldAlgebraData, M: ModuleData, S: Sequence[Vec]) -> Generated:
    """<S> by closure under every a_n, and the one-step span {a_n x : x in S}."""
    skipped = 0
    modes = _all_modes(M.extension(V), V.dim)

    def images(x: Vec) -> List[Vec]:
        nonlocal skipped
        out = []
        for a in range(V.dim):
            for n in modes:
                try:
                    y = M.act(V, unit(a), n, x)
                except TruncationEscape:
                    skipped += 1
                    continue
                if y:
                    out.append(y)
        return out

    seeds = [dict(x) for x in S if x]
    one_vecs = seeds + [y for x in seeds for y in images(x)]
    one = span(one_vecs, M.dim)
    sub = span(seeds, M.dim)
    found = list(seeds)
    frontier = list(seeds)
    while frontier:
        new = []
        for x in frontier:
            for y in images(x):
                if not sub.contains(y):
                    sub = span(list(sub.rows) + [y], M.dim)
                    new.append(y)
        found.extend(new)
        frontier = new
    return Generated(sub, one, skipped, found, one_vecs)


def is_simple_truncated(V: FieldAlgebraData, M: ModuleData) -> Tuple[bool, Optional[str]]:
    """Closure from each basis vector reaches all of M (a truncated-scale test only)."""
    for m in range(M.dim):
        g = generated_submodule(V, M, [unit(m)])
        if g.closure.rank < M.dim:
            return False, M.labels[m]
    return True, None


# --- tensor representations ----------------------------------------------------------

def tensor_plain(M: ModuleData, n: int, labels: Optional[List[str]] = None) -> ModuleData:
    """M (x) N for a plain n-dimensional space N."""
    labels = labels or [f"x{i + 1}" for i in range(n)]
    action = {}
    for (a, m), per in M.action.items():
        for y in range(n):
            action[(a, m * n + y)] = {k: tensor_vec(v, unit(y), n) for k, v in per.items()}
    s_cols = {m * n + y: tensor_vec(img, unit(y), n) for m, img in M.s_cols.items() for y in range(n)}
    grading = None if M.grading is None else [M.grading[m] for m in range(M.dim) for _ in range(n)]
    return ModuleData([f"{l}(x){x}" for l in M.labels for x in labels], s_cols, action, M.n_vanish,
                      grading, M.degree_cap, name=f"{M.name}(x)k^{n}", algebra=M.algebra)


def check_hopf_rep(V: FieldAlgebraData, H: FinHopf, act_V: HAction, M: ModuleData, act_M: HAction,
                   check_s: bool = False) -> AxiomReport:
    """h(a_n m) = sum (h1 a)_n (h2 m) on every basis tuple; optionally h s_M = s_M h."""
    rep = AxiomReport()
    E = M.extension(V)
    bad = None
    checked = skipped = 0
    for h, a, m in product(range(H.dim), range(V.dim), range(M.dim)):
        hm_cache = {}
        for n in _all_modes(E, V.dim):
            try:
                lhs = _hvec(act_M, h, M.act(V, unit(a), n, unit(m)))
                rhs: Vec = {}
                for h1, h2, c in H.comult.get(h, []):
                    if h2 not in hm_cache:
                        hm_cache[h2] = act_on(act_M, h2, unit(m))
                    axpy(rhs, c, M.act(V, act_on(act_V, h1, unit(a)), n, hm_cache[h2]))
            except TruncationEscape:
                skipped += 1
                continue
            checked += 1
            if lhs != rhs:
                bad = (H.labels[h], V.labels[a], n, M.labels[m])
                break
        if bad:
            break
    rep.add("h(a_n m) = sum (h1 a)_n (h2 m)", tally("", [bad] if bad else [], checked), bad,
            tag="hopf-rep", checked=checked, skipped=skipped)
    bad = next(((H.labels[h], H.labels[g], M.labels[m])
                for h, g, m in product(range(H.dim), range(H.dim), range(M.dim))
                if _hvec(act_M, h, act_on(act_M, g, unit(m))) != _hvec_h(act_M, H.mul(unit(h), unit(g)), unit(m))),
               None)
    rep.add("M is an H-module", Verdict.FAIL if bad else Verdict.PASS, bad, tag="hopf-rep")
    if check_s:
        bad = next(((H.labels[h], M.labels[m]) for h, m in product(range(H.dim), range(M.dim))
                    if _hvec(act_M, h, M.s(unit(m))) != M.s(act_on(act_M, h, unit(m)))), None)
        rep.add("h s_M = s_M h", Verdict.FAIL if bad else Verdict.PASS, bad, tag="hopf-rep")
    return rep


def _hvec(act: HAction, h: int, v: Vec) -> Vec:
    acc: Vec = {}
    for k, c in v.items():
        axpy(acc, c, act_on(act, h, unit(k)))
    return acc


def _hvec_h(act: HAction, h: Vec, v: Vec) -> Vec:
    acc: Vec = {}
    for i, c in h.items():
        axpy(acc, c, _hvec(act, i, v))
    return acc


def tensor_hopf(V: FieldAlgebraData, H: FinHopf, act_V: HAction, M: ModuleData, act_M: HAction,
                S: Optional[SmashAlgebra] = None, verify: bool = True) -> Tuple[ModuleData, SmashAlgebra]:
    """M (x) H over V#H: Y(a#h,z)(m#g) = sum Y^M(a,z)(h1 m) # h2 g."""
    if verify:
        rep = check_hopf_rep(V, H, act_V, M, act_M)
        if not rep.ok:
            c = rep.failures()[0]
            raise NotHopfRep(f"{c.name} fails", c.witness)
    S = S or smash_product(V, H, act_V, verify=False)
    nh = H.dim
    E = M.extension(V)
    action: Products = {}
    for a, h, m, g in product(range(V.dim), range(nh), range(M.dim), range(nh)):
        per: Dict[int, Vec] = {}
        for h1, h2, c in H.comult.get(h, []):
            hm = act_on(act_M, h1, unit(m))
            right = H.mul(unit(h2), unit(g))
            if not hm or not right:
                continue
            for n in _all_modes(E, V.dim):
                try:
                    x = M.act(V, unit(a), n, hm)
                except TruncationEscape:
                    continue
                if x:
                    axpy(per.setdefault(n, {}), c, tensor_vec(x, right, nh))
        per = {n: v for n, v in per.items() if v}
        if per:
            action[(a * nh + h, m * nh + g)] = per
    s_cols = {m * nh + g: tensor_vec(img, unit(g), nh) for m, img in M.s_cols.items() for g in range(nh)}
    grading = None if M.grading is None else [M.grading[m] for m in range(M.dim) for _ in range(nh)]
    N = ModuleData([f"{l}#{hl}" for l in M.labels for hl in H.labels], s_cols, action, M.n_vanish,
                   grading, M.degree_cap, name=f"{M.name}#{H.name}", algebra=S.carrier.name)
    return N, S


def induced_module(V: FieldAlgebraData, H: FinHopf, act_V: HAction, n: int, act_N: HAction,
                   S: Optional[SmashAlgebra] = None) -> Tuple[ModuleData, SmashAlgebra]:
    """V (x) N over V#H for an H-module N: Y(a#h,z)(b(x)x) = sum Y(a,z)(h1 b) (x) h2 x."""
    S = S or smash_product(V, H, act_V, verify=False)
    nh = H.dim
    action: Products = {}
    for a, h, b, x in product(range(V.dim), range(nh), range(V.dim), range(n)):
        per: Dict[int, Vec] = {}
        for h1, h2, c in H.comult.get(h, []):
            hb = act_on(act_V, h1, unit(b))
            hx = act_on(act_N, h2, unit(x))
            if not hb or not hx:
                continue
            for k in range(V.n_min(), V.n_vanish):
                try:
                    y = V.prodv(unit(a), k, hb)
                except TruncationEscape:
                    continue
                if y:
                    axpy(per.setdefault(k, {}), c, tensor_vec(y, hx, n))
        per = {k: v for k, v in per.items() if v}
        if per:
            action[(a * nh + h, b * n + x)] = per
    s_cols = {b * n + x: tensor_vec(img, unit(x), n) for b, img in V.s_cols.items() for x in range(n)}
    grading = None if V.grading is None else [V.grading[b] for b in range(V.dim) for _ in range(n)]
    N = ModuleData([f"{l}(x)x{x + 1}" for l in V.labels for x in range(n)], s_cols, action,
                   V.n_vanish, grading, V.degree_cap, name=f"{V.name}(x)N", algebra=S.carrier.name)
    return N, S


# --- the pair <-> V#H-module correspondence ---------------------------------------------

def smash_module_from_pair(V: FieldAlgebraData, H: FinHopf, act_V: HAction, M: ModuleData,
                           act_M: HAction, S: Optional[SmashAlgebra] = None,
                           verify: bool = True) -> Tuple[ModuleData, SmashAlgebra]:
    """Y(a#h,z)m = Y^M(a,z)(hm)."""
    if verify:
        rep = check_hopf_rep(V, H, act_V, M, act_M, check_s=True)
        if not rep.ok:
            c = rep.failures()[0]
            raise NotHopfRep(f"{c.name} fails", c.witness)
    S = S or smash_product(V, H, act_V, verify=False)
    nh = H.dim
    action: Products = {}
    for a, h, m in product(range(V.dim), range(nh), range(M.dim)):
        hm = act_on(act_M, h, unit(m))
        per: Dict[int, Vec] = {}
        for k, c in hm.items():
            for n, v in M.action.get((a, k), {}).items():
                axpy(per.setdefault(n, {}), c, v)
        per = {n: v for n, v in per.items() if v}
        if per:
            action[(a * nh + h, m)] = per
    N = ModuleData(list(M.labels), dict(M.s_cols), action, M.n_vanish,
                   None if M.grading is None else list(M.grading), M.degree_cap,
                   name=f"{M.name} over {S.carrier.name}", algebra=S.carrier.name)
    return N, S


@dataclass
class Pair:
    module: ModuleData
    action: HAction
    report: AxiomReport


def pair_from_smash_module(V: FieldAlgebraData, H: FinHopf, act_V: HAction, S: SmashAlgebra,
                           N: ModuleData) -> Pair:
    """hm = (1#h)_{-1}m and Y^M(a,z) = Y(a#1,z); then the identities relating them."""
    nh = H.dim
    W = S.carrier
    one = dict(H.unit)
    vac_v = V.vacuum
    act_M: HAction = {}
    rep = AxiomReport()
    for h, m in product(range(nh), range(N.dim)):
        img = N.act(W, tensor_vec(vac_v, unit(h), nh), -1, unit(m))
        if img:
            act_M[(h, m)] = img
    action: Products = {}
    for (x, m), per in N.action.items():
        a, h = divmod(x, nh)
        if unit(h) != one:
            continue
        action[(a, m)] = {n: dict(v) for n, v in per.items() if v}
    if len(one) != 1:
        # H unit is not a basis vector: assemble a#1 by linearity
        action = {}
        for a, m in product(range(V.dim), range(N.dim)):
            per = {}
            for h, c in one.items():
                for n, v in N.action.get((a * nh + h, m), {}).items():
                    axpy(per.setdefault(n, {}), c, v)
            per = {n: v for n, v in per.items() if v}
            if per:
                action[(a, m)] = per
    M = ModuleData(list(N.labels), dict(N.s_cols), action, N.n_vanish,
                   None if N.grading is None else list(N.grading), N.degree_cap,
                   name=f"{N.name} restricted", algebra=V.name)
    # h(gm) = (hg)m
    bad = next(((H.labels[h], H.labels[g], N.labels[m])
                for h, g, m in product(range(nh), range(nh), range(N.dim))
                if _hvec(act_M, h, act_on(act_M, g, unit(m))) != _hvec_h(act_M, H.mul(unit(h), unit(g)), unit(m))),
               None)
    rep.add("extracted action: h(gm) = (hg)m", Verdict.FAIL if bad else Verdict.PASS, bad,
            tag="correspondence")
    bad = next((N.labels[m] for m in range(N.dim) if _hvec_h(act_M, one, unit(m)) != unit(m)), None)
    rep.add("extracted action: 1m = m", Verdict.FAIL if bad else Verdict.PASS, bad, tag="correspondence")
    sub = check_hopf_rep(V, H, act_V, M, act_M, check_s=True)
    rep.extend(sub, prefix="h Y^M(a,z)m = sum Y^M(h1 a,z) h2 m: ")
    # (a#h)_n m = a_n (hm)
    bad = None
    checked = skipped = 0
    E = N.extension(W)
    for a, h, m in product(range(V.dim), range(nh), range(N.dim)):
        hm = act_on(act_M, h, unit(m))
        for n in _all_modes(E, W.dim):
            try:
                lhs = N.act(W, unit(a * nh + h), n, unit(m))
                rhs = M.act(V, unit(a), n, hm)
            except TruncationEscape:
                skipped += 1
                continue
            checked += 1
            if lhs != rhs:
                bad = (V.labels[a], H.labels[h], n, N.labels[m])
                break
        if bad:
            break
    rep.add("Y(a#h,z)m = Y^M(a,z)hm", tally("", [bad] if bad else [], checked), bad,
            tag="correspondence", checked=checked, skipped=skipped)
    return Pair(M, act_M, rep)


def round_trip(V: FieldAlgebraData, H: FinHopf, act_V: HAction, M: ModuleData, act_M: HAction) -> AxiomReport:
    """pair -> V#H-module -> pair, and V#H-module -> pair -> V#H-module, tensor-exact."""
    rep = AxiomReport()
    N, S = smash_module_from_pair(V, H, act_V, M, act_M)
    back = pair_from_smash_module(V, H, act_V, S, N)
    rep.extend(back.report)
    same_m = back.module.tensors() == M.tensors()
    same_a = _clean(back.action) == _clean(act_M)
    rep.add("pair -> module -> pair is the identity", Verdict.PASS if same_m and same_a else Verdict.FAIL,
            None if same_m and same_a else {"module": same_m, "action": same_a}, tag="round-trip")
    N2, _ = smash_module_from_pair(V, H, act_V, back.module, back.action, S, verify=False)
    same = N2.tensors() == N.tensors()
    rep.add("module -> pair -> module is the identity", Verdict.PASS if same else Verdict.FAIL,
            None if same else "tensors differ", tag="round-trip")
    return rep


def _clean(act: HAction) -> HAction:
    return {k: v for k, v in act.items() if v}
