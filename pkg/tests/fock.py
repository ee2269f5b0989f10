"""Free-boson Fock space written from the oscillator relations, used as a test oracle.

States are dicts partition -> Fraction with partitions as descending tuples.
[a_m, a_n] = m delta_{m+n,0}; a_{-m} (m > 0) adds a part m, a_m removes one
with factor m times its multiplicity.
"""

from fractions import Fraction
from functools import lru_cache


def _norm(p):
    return tuple(sorted(p, reverse=True))


def osc(m, state):
    out = {}
    for p, c in state.items():
        if m < 0:
            q = _norm(p + (-m,))
            out[q] = out.get(q, 0) + c
        elif m > 0:
            k = p.count(m)
            if k:
                lst = list(p)
                lst.remove(m)
                q = tuple(lst)
                out[q] = out.get(q, 0) + c * m * k
    return {q: c for q, c in out.items() if c}


def weight(state):
    return max((sum(p) for p in state), default=0)


def gbinom(n, k):
    num = 1
    for i in range(k):
        num *= n - i
    return Fraction(num, _fact(k))


def _fact(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def mode(lam, n, state):
    """(a_{-lam} 1)_(n) applied to state, via Y(a_{-k}u,z) = :d^(k-1)a(z)/(k-1)! Y(u,z):."""
    out = {}
    for p, c in state.items():
        for q, d in _mode_basis(tuple(lam), n, p):
            out[q] = out.get(q, 0) + c * d
    return {q: c for q, c in out.items() if c}


@lru_cache(maxsize=None)
def _mode_basis(lam, n, p):
    if not lam:
        return ((p, Fraction(1)),) if n == -1 else ()
    k, rest = lam[0], lam[1:]
    wu, wc = sum(rest), sum(p)
    out = {}
    # u_(j) c vanishes once j >= wt u + wt c, and a_m c vanishes for m > wt c
    for m in range(n - k - wu - wc + 1, wc + 1):
        if m == 0:
            continue
        coef = gbinom(-m - 1, k - 1)
        if not coef:
            continue
        j = n - m - k
        if m < 0:
            part = osc(m, mode(rest, j, {p: Fraction(1)}))
        else:
            part = mode(rest, j, osc(m, {p: Fraction(1)}))
        for q, c in part.items():
            out[q] = out.get(q, 0) + coef * c
    return tuple((q, c) for q, c in out.items() if c)
