"""Finite-dimensional Hopf algebras and associative algebras as structure tensors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Dict, List, Sequence, Tuple

from .exactlin import DimensionMismatch, Vec, apply_map, axpy, kernel, scale, unit
from .report import AxiomReport, Verdict, WitnessError

Tensor2 = Dict[Tuple[int, int], Vec]
Coproduct = Dict[int, List[Tuple[int, int, Fraction]]]


class NoIntegral(WitnessError):
    pass


class NotModuleAlgebra(WitnessError):
    pass


class HopfAxiomError(WitnessError):
    pass


# --- groups -----------------------------------------------------------------

@dataclass(frozen=True)
class GroupTable:
    elements: Tuple[str, ...]
    cayley: Dict[Tuple[int, int], int]
    identity: int
    inverse: Dict[int, int]

    def __post_init__(self):
        n = len(self.elements)
        idx = range(n)
        for i, j in product(idx, idx):
            if not 0 <= self.cayley.get((i, j), -1) < n:
                raise ValueError(f"Cayley table incomplete at {(i, j)}")
        for i, j, k in product(idx, idx, idx):
            m = self.cayley
            if m[m[i, j], k] != m[i, m[j, k]]:
                raise ValueError(f"not associative at {(i, j, k)}")
        for i in idx:
            e = self.identity
            if self.cayley[e, i] != i or self.cayley[i, e] != i:
                raise ValueError("identity law fails")
            if self.cayley[i, self.inverse[i]] != e or self.cayley[self.inverse[i], i] != e:
                raise ValueError(f"inverse law fails at {i}")

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.cayley[i, j]

    def index(self, label: str) -> int:
        return self.elements.index(label)

    def is_abelian(self) -> bool:
        return all(self.cayley[i, j] == self.cayley[j, i]
                   for i in range(self.order) for j in range(self.order))


def _from_mult(labels: Sequence[str], elems: Sequence, op) -> GroupTable:
    pos = {e: i for i, e in enumerate(elems)}
    cayley = {(i, j): pos[op(a, b)] for (i, a), (j, b) in product(enumerate(elems), repeat=2)}
    ident = next(i for i in range(len(elems))
                 if all(cayley[i, j] == j for j in range(len(elems))))
    inverse = {i: next(j for j in range(len(elems)) if cayley[i, j] == ident)
               for i in range(len(elems))}
    return GroupTable(tuple(labels), cayley, ident, inverse)


def cyclic_group(n: int) -> GroupTable:
    labels = ["e"] + [f"g{k}" if n > 2 else "g" for k in range(1, n)]
    return _from_mult(labels, list(range(n)), lambda a, b: (a + b) % n)


def symmetric_group_3() -> GroupTable:
    """Permutations of {0,1,2} in lexicographic order; product is composition p∘q."""
    perms = list(permutations(range(3)))
    labels = ["e" if p == (0, 1, 2) else "p" + "".join(map(str, p)) for p in perms]
    return _from_mult(labels, perms, lambda p, q: tuple(p[q[i]] for i in range(3)))


def permutation_sign(p: Sequence[int]) -> int:
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def s3_signs() -> List[int]:
    return [permutation_sign(p) for p in permutations(range(3))]


# --- Hopf algebras ----------------------------------------------------------

@dataclass
class FinHopf:
    labels: List[str]
    mult: Tensor2
    unit: Vec
    comult: Coproduct
    counit: Dict[int, Fraction]
    antipode: Dict[int, Vec]
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.labels)

    def mul(self, x: Vec, y: Vec) -> Vec:
        acc: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                axpy(acc, a * b, self.mult.get((i, j), {}))
        return acc

    def delta(self, x: Vec) -> Vec:
        """Δ(x) as a vector over pairs (j, k)."""
        acc: Vec = {}
        for i, a in x.items():
            for j, k, c in self.comult.get(i, []):
                axpy(acc, a, {(j, k): c})
        return acc

    def eps(self, x: Vec) -> Fraction:
        return sum((a * self.counit.get(i, 0) for i, a in x.items()), Fraction(0))

    def S(self, x: Vec) -> Vec:
        return apply_map(self.antipode, x)

    def is_grouplike(self, i: int) -> bool:
        return self.comult.get(i, []) == [(i, i, Fraction(1))]


def _tensor_mul(H: FinHopf, x: Vec, y: Vec) -> Vec:
    acc: Vec = {}
    for (i1, i2), a in x.items():
        for (j1, j2), b in y.items():
            l = H.mult.get((i1, j1), {})
            r = H.mult.get((i2, j2), {})
            for k1, c1 in l.items():
                for k2, c2 in r.items():
                    axpy(acc, a * b * c1 * c2, {(k1, k2): Fraction(1)})
    return acc


def check_hopf_axioms(H: FinHopf) -> AxiomReport:
    n = H.dim
    for key, v in H.mult.items():
        if any(not (0 <= k < n) for k in (*key, *v)):
            raise DimensionMismatch(f"multiplication entry {key} outside dimension {n}")
    for i, terms in H.comult.items():
        if not 0 <= i < n or any(not (0 <= j < n and 0 <= k < n) for j, k, _ in terms):
            raise DimensionMismatch(f"coproduct entry {i} outside dimension {n}")
    rep = AxiomReport()
    idx = range(n)
    e = [unit(i) for i in idx]

    def first(pred, tuples):
        for t in tuples:
            if not pred(*t):
                return t
        return None

    def sweep(name, pred, tuples, tag):
        w = first(pred, tuples)
        rep.add(name, Verdict.PASS if w is None else Verdict.FAIL,
                None if w is None else [H.labels[i] for i in w], tag=tag)

    sweep("associativity",
          lambda i, j, k: H.mul(H.mul(e[i], e[j]), e[k]) == H.mul(e[i], H.mul(e[j], e[k])),
          product(idx, idx, idx), "hopf")
    sweep("unit", lambda i: H.mul(H.unit, e[i]) == e[i] == H.mul(e[i], H.unit),
          ((i,) for i in idx), "hopf")

    def coassoc(i):
        left: Vec = {}
        right: Vec = {}
        for j, k, c in H.comult.get(i, []):
            for a, b, d in H.comult.get(j, []):
                axpy(left, c * d, {(a, b, k): Fraction(1)})
            for a, b, d in H.comult.get(k, []):
                axpy(right, c * d, {(j, a, b): Fraction(1)})
        return left == right

    sweep("coassociativity", coassoc, ((i,) for i in idx), "hopf")

    def counit(i):
        left: Vec = {}
        right: Vec = {}
        for j, k, c in H.comult.get(i, []):
            axpy(left, c * H.counit.get(j, 0), e[k])
            axpy(right, c * H.counit.get(k, 0), e[j])
        return left == e[i] == right

    sweep("counit", counit, ((i,) for i in idx), "hopf")
    sweep("comultiplication is multiplicative",
          lambda i, j: H.delta(H.mul(e[i], e[j])) == _tensor_mul(H, H.delta(e[i]), H.delta(e[j])),
          product(idx, idx), "hopf")
    sweep("counit is multiplicative",
          lambda i, j: H.eps(H.mul(e[i], e[j])) == H.counit.get(i, 0) * H.counit.get(j, 0),
          product(idx, idx), "hopf")
    sweep("unit is grouplike",
          lambda: H.delta(H.unit) == {(a, b): c * d for a, c in H.unit.items()
                                      for b, d in H.unit.items()} and H.eps(H.unit) == 1,
          [()], "hopf")

    def antipode(i):
        left: Vec = {}
        right: Vec = {}
        for j, k, c in H.comult.get(i, []):
            axpy(left, c, H.mul(H.S(e[j]), e[k]))
            axpy(right, c, H.mul(e[j], H.S(e[k])))
        want = scale(H.counit.get(i, 0), H.unit)
        return left == want == right

    sweep("antipode", antipode, ((i,) for i in idx), "hopf")
    return rep


def require_hopf(H: FinHopf) -> None:
    rep = check_hopf_axioms(H)
    if not rep.ok:
        bad = rep.failures()[0]
        raise HopfAxiomError(f"{H.name or 'H'} fails {bad.name}", bad.witness)


def group_algebra(G: GroupTable, name: str = "") -> FinHopf:
    n = G.order
    return FinHopf(
        labels=list(G.elements),
        mult={(i, j): unit(G.mul(i, j)) for i in range(n) for j in range(n)},
        unit=unit(G.identity),
        comult={i: [(i, i, Fraction(1))] for i in range(n)},
        counit={i: Fraction(1) for i in range(n)},
        antipode={i: unit(G.inverse[i]) for i in range(n)},
        name=name or f"k[{n}]",
    )


def dual_hopf(H: FinHopf, check: bool = True) -> FinHopf:
    """Transpose every structure tensor; basis = dual basis rho_i."""
    if check:
        require_hopf(H)
    n = H.dim
    mult: Tensor2 = {}
    for k, terms in H.comult.items():
        for i, j, c in terms:
            axpy(mult.setdefault((i, j), {}), c, unit(k))
    mult = {k: v for k, v in mult.items() if v}
    comult: Coproduct = {k: [] for k in range(n)}
    for (i, j), v in sorted(H.mult.items()):
        for k, c in v.items():
            comult[k].append((i, j, c))
    antipode: Dict[int, Vec] = {}
    for i, img in H.antipode.items():
        for k, c in img.items():
            axpy(antipode.setdefault(k, {}), c, unit(i))
    return FinHopf(
        labels=[_dual_label(l) for l in H.labels],
        mult=mult,
        unit={k: c for k, c in H.counit.items() if c},
        comult={k: v for k, v in comult.items() if v},
        counit={k: c for k, c in H.unit.items()},
        antipode={k: v for k, v in antipode.items() if v},
        name=f"dual({H.name})",
    )


def _dual_label(l: str) -> str:
    if l.startswith("rho_"):
        return l[4:]
    return "rho_" + l


@dataclass(frozen=True)
class Integral:
    t: Vec
    normalized: bool


def left_integral(H: FinHopf) -> Integral:
    """Solve h t = ε(h) t over all basis h; normalize ε(t) = 1 when possible."""
    n = H.dim
    cols = {}
    for j in range(n):
        img: Vec = {}
        for h in range(n):
            v = axpy(dict(H.mult.get((h, j), {})), -H.counit.get(h, 0), unit(j))
            for k, c in v.items():
                img[(h, k)] = c
        cols[j] = img
    ker = kernel(cols, n)
    if not ker:
        raise NoIntegral("no nonzero left integral; structure tensors are inconsistent", None)
    for t in ker:
        et = H.eps(t)
        if et:
            return Integral(scale(1 / et, t), True)
    return Integral(ker[0], False)


def sweedler() -> FinHopf:
    """Four-dimensional Hopf algebra on g, x with g^2 = 1, x^2 = 0, xg = -gx.

    Basis 1, g, x, gx; Δx = x⊗1 + g⊗x; S(x) = -gx. Not cocommutative, so it
    is the smallest place where non-grouplike coproducts matter.
    """
    forms = [(0, 0), (1, 0), (0, 1), (1, 1)]  # g^a x^b
    pos = {f: i for i, f in enumerate(forms)}
    mult: Tensor2 = {}
    for (i, (a, b)), (j, (c, d)) in product(enumerate(forms), repeat=2):
        if b + d < 2:
            mult[(i, j)] = {pos[((a + c) % 2, b + d)]: Fraction((-1) ** (b * c))}
    one = Fraction(1)
    comult = {
        0: [(0, 0, one)],
        1: [(1, 1, one)],
        2: [(2, 0, one), (1, 2, one)],
        3: [(3, 1, one), (0, 3, one)],
    }
    return FinHopf(["1", "g", "x", "gx"], mult, unit(0), comult,
                   {0: one, 1: one, 2: Fraction(0), 3: Fraction(0)},
                   {0: unit(0), 1: unit(1), 2: {3: -one}, 3: unit(2)}, name="sweedler")


# --- associative algebras ---------------------------------------------------

@dataclass
class AssocAlgebra:
    labels: List[str]
    mult: Tensor2
    unit: Vec
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.labels)

    def mul(self, x: Vec, y: Vec) -> Vec:
        acc: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                axpy(acc, a * b, self.mult.get((i, j), {}))
        return acc


def check_assoc(A: AssocAlgebra) -> AxiomReport:
    rep = AxiomReport()
    idx = range(A.dim)
    e = [unit(i) for i in idx]
    bad = None
    for i, j in product(idx, idx):
        ij = A.mult.get((i, j), {})
        for k in idx:
            if A.mul(ij, e[k]) != A.mul(e[i], A.mult.get((j, k), {})):
                bad = (i, j, k)
                break
        if bad:
            break
    rep.add("associativity", Verdict.FAIL if bad else Verdict.PASS,
            [A.labels[i] for i in bad] if bad else None, tag="assoc",
            checked=A.dim ** 3)
    w = next((i for i in idx if A.mul(A.unit, e[i]) != e[i] or A.mul(e[i], A.unit) != e[i]), None)
    rep.add("unit", Verdict.FAIL if w is not None else Verdict.PASS,
            A.labels[w] if w is not None else None, tag="assoc")
    return rep


def check_algebra_hom(A: AssocAlgebra, B: AssocAlgebra, phi: Dict[int, Vec]) -> AxiomReport:
    """phi(1) = 1 and phi(xy) = phi(x)phi(y) on every basis pair of A."""
    rep = AxiomReport()
    rep.add("unital", Verdict.PASS if apply_map(phi, A.unit) == B.unit else Verdict.FAIL,
            None if apply_map(phi, A.unit) == B.unit else "unit", tag="hom")
    bad = None
    count = 0
    for i, j in product(range(A.dim), range(A.dim)):
        count += 1
        if apply_map(phi, A.mult.get((i, j), {})) != B.mul(phi.get(i, {}), phi.get(j, {})):
            bad = (A.labels[i], A.labels[j])
            break
    rep.add("multiplicative", Verdict.FAIL if bad else Verdict.PASS, bad, tag="hom",
            pairs=count)
    return rep


def hopf_as_algebra(H: FinHopf) -> AssocAlgebra:
    return AssocAlgebra(list(H.labels), dict(H.mult), dict(H.unit), name=H.name)


def tensor_assoc(A: AssocAlgebra, B: AssocAlgebra, sep: str = "⊗") -> AssocAlgebra:
    nb = B.dim
    mult: Tensor2 = {}
    for (i1, j1), x in A.mult.items():
        for (i2, j2), y in B.mult.items():
            acc: Vec = {}
            for k1, c1 in x.items():
                for k2, c2 in y.items():
                    acc[k1 * nb + k2] = acc.get(k1 * nb + k2, 0) + c1 * c2
            mult[(i1 * nb + i2, j1 * nb + j2)] = {k: c for k, c in acc.items() if c}
    u = {a * nb + b: c * d for a, c in A.unit.items() for b, d in B.unit.items()}
    labels = [f"{la}{sep}{lb}" for la in A.labels for lb in B.labels]
    return AssocAlgebra(labels, mult, u, name=f"{A.name}{sep}{B.name}")


def matrix_units(n: int) -> AssocAlgebra:
    """M(n, k) with basis E_ij at index i*n + j (0-based), labels E11..."""
    mult: Tensor2 = {}
    for i, j, l in product(range(n), repeat=3):
        mult[(i * n + j, j * n + l)] = unit(i * n + l)
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return AssocAlgebra(labels, mult, {i * n + i: Fraction(1) for i in range(n)}, name=f"M{n}")


ActionTensor = Dict[Tuple[int, int], Vec]


def check_module_algebra(A: AssocAlgebra, H: FinHopf, action: ActionTensor) -> AxiomReport:
    rep = AxiomReport()

    def act(h: Vec, a: Vec) -> Vec:
        acc: Vec = {}
        for i, c in h.items():
            for j, d in a.items():
                axpy(acc, c * d, action.get((i, j), {}))
        return acc

    ea = [unit(i) for i in range(A.dim)]
    eh = [unit(i) for i in range(H.dim)]
    bad = next(((h, g, a) for h, g, a in product(range(H.dim), range(H.dim), range(A.dim))
                if act(H.mul(eh[h], eh[g]), ea[a]) != act(eh[h], act(eh[g], ea[a]))), None)
    rep.add("module", Verdict.FAIL if bad else Verdict.PASS,
            bad and (H.labels[bad[0]], H.labels[bad[1]], A.labels[bad[2]]), tag="module-algebra")
    bad = next((a for a in range(A.dim) if act(H.unit, ea[a]) != ea[a]), None)
    rep.add("unit acts trivially", Verdict.FAIL if bad is not None else Verdict.PASS,
            None if bad is None else A.labels[bad], tag="module-algebra")
    bad = next((h for h in range(H.dim)
                if act(eh[h], A.unit) != scale(H.counit.get(h, 0), A.unit)), None)
    rep.add("h1 = eps(h)1", Verdict.FAIL if bad is not None else Verdict.PASS,
            None if bad is None else H.labels[bad], tag="module-algebra")
    bad = None
    for h, a, b in product(range(H.dim), range(A.dim), range(A.dim)):
        lhs = act(eh[h], A.mult.get((a, b), {}))
        rhs: Vec = {}
        for h1, h2, c in H.comult.get(h, []):
            axpy(rhs, c, A.mul(act(eh[h1], ea[a]), act(eh[h2], ea[b])))
        if lhs != rhs:
            bad = (H.labels[h], A.labels[a], A.labels[b])
            break
    rep.add("h(ab) = (h1 a)(h2 b)", Verdict.FAIL if bad else Verdict.PASS, bad,
            tag="module-algebra")
    return rep


def smash_assoc(A: AssocAlgebra, H: FinHopf, action: ActionTensor, verify: bool = True) -> AssocAlgebra:
    """A#H with (a#h)(b#g) = Σ a(h1 b) # h2 g; basis index a*dim(H) + h."""
    if verify:
        rep = check_module_algebra(A, H, action)
        if not rep.ok:
            bad = rep.failures()[0]
            raise NotModuleAlgebra(f"action fails {bad.name}", bad.witness)
    nh = H.dim
    mult: Tensor2 = {}
    for a, h, b, g in product(range(A.dim), range(nh), range(A.dim), range(nh)):
        acc: Vec = {}
        for h1, h2, c in H.comult.get(h, []):
            hb = action.get((h1, b), {})
            right = H.mult.get((h2, g), {})
            for bb, d in hb.items():
                for k, e in A.mult.get((a, bb), {}).items():
                    for q, f in right.items():
                        axpy(acc, c * d * e * f, unit(k * nh + q))
        if acc:
            mult[(a * nh + h, b * nh + g)] = acc
    u = {a * nh + h: c * d for a, c in A.unit.items() for h, d in H.unit.items()}
    labels = [f"{la}#{lh}" for la in A.labels for lh in H.labels]
    out = AssocAlgebra(labels, mult, u, name=f"{A.name}#{H.name}")
    if verify:
        rep = check_assoc(out)
        if not rep.ok:
            raise NotModuleAlgebra("smash product is not associative", rep.failures()[0].witness)
    return out
