"""JSON documents for algebras, Hopf algebras, actions, modules and reports.

Coefficients are ``[num, den]`` integer pairs; tensors are sparse triplets
keyed by basis labels.  ``dumps(load(text))`` reproduces ``text`` exactly for
anything this module wrote.
"""

from __future__ import annotations

import enum
import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .exactlin import Vec
from .fieldalg.data import FieldAlgebraData, identity_exchange
from .formal import Window
from .hopf import AssocAlgebra, FinHopf, GroupTable
from .quantum import HSeries, QBraiding, QVertex
from .rep import ModuleData
from .report import AxiomReport

FORMAT_VERSION = 1
KINDS = ("algebra", "hopf", "group", "action", "module", "assoc", "report")


class FormatError(ValueError):
    """Malformed document; ``where`` names the offending field or line."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


# --- scalars and vectors ---------------------------------------------------------

def enc_q(c: Fraction) -> List[int]:
    c = Fraction(c)
    return [c.numerator, c.denominator]


def dec_q(x: Any, where: str) -> Fraction:
    if (not isinstance(x, list) or len(x) != 2
            or not all(isinstance(t, int) and not isinstance(t, bool) for t in x)):
        raise FormatError("expected a [num, den] integer pair", where)
    if x[1] <= 0:
        raise FormatError("denominator must be positive", where)
    return Fraction(x[0], x[1])


def enc_vec(v: Vec, labels: Sequence[str]) -> List[list]:
    return [[labels[k], enc_q(c)] for k, c in sorted(v.items()) if c]


def dec_vec(x: Any, index: Dict[str, int], where: str) -> Vec:
    if not isinstance(x, list):
        raise FormatError("expected a list of [label, [num, den]]", where)
    out: Vec = {}
    for i, t in enumerate(x):
        w = f"{where}[{i}]"
        if not isinstance(t, list) or len(t) != 2:
            raise FormatError("expected [label, [num, den]]", w)
        k = _label(t[0], index, w)
        c = dec_q(t[1], w)
        if k in out:
            raise FormatError(f"label {t[0]!r} repeated", w)
        if c:
            out[k] = c
    return out


def _label(x: Any, index: Dict[str, int], where: str) -> int:
    if not isinstance(x, str) or x not in index:
        raise FormatError(f"unknown basis label {x!r}", where)
    return index[x]


def _int(x: Any, where: str, allow_none: bool = False) -> Optional[int]:
    if x is None and allow_none:
        return None
    if not isinstance(x, int) or isinstance(x, bool):
        raise FormatError("expected an integer", where)
    return x


def _fields(doc: Any, required: Sequence[str], optional: Sequence[str], where: str,
            strict: bool) -> Dict[str, Any]:
    if not isinstance(doc, dict):
        raise FormatError("expected an object", where)
    missing = [k for k in required if k not in doc]
    if missing:
        raise FormatError(f"missing field(s) {missing}", where)
    if strict:
        extra = sorted(set(doc) - set(required) - set(optional))
        if extra:
            raise FormatError(f"unknown field(s) {extra}", where)
    return doc


def _labels(x: Any, where: str) -> Tuple[List[str], Dict[str, int]]:
    if not isinstance(x, list) or not all(isinstance(t, str) for t in x):
        raise FormatError("expected a list of strings", where)
    index = {l: i for i, l in enumerate(x)}
    if len(index) != len(x):
        raise FormatError("basis labels are not distinct", where)
    return list(x), index


def _header(kind: str) -> Dict[str, Any]:
    return {"format_version": FORMAT_VERSION, "kind": kind}


def _check_header(doc: Any, kind: str) -> None:
    if not isinstance(doc, dict):
        raise FormatError("expected an object", "$")
    if doc.get("format_version") != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {doc.get('format_version')!r}",
                          "$.format_version")
    if doc.get("kind") != kind:
        raise FormatError(f"expected kind {kind!r}, got {doc.get('kind')!r}", "$.kind")


# --- text ------------------------------------------------------------------------

def dumps(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"


def loads(text: str) -> Dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(e.msg, f"line {e.lineno} column {e.colno}") from None
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object", "line 1")
    return doc


def read(path: str) -> Dict[str, Any]:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write(path: str, doc: Dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


def load_any(doc: Dict[str, Any], strict: bool = True):
    kind = doc.get("kind")
    loaders = {"algebra": load_algebra, "hopf": load_hopf, "group": load_group,
               "module": load_module}
    if kind not in loaders:
        raise FormatError(f"kind must be one of {sorted(loaders)} here, got {kind!r}", "$.kind")
    return loaders[kind](doc, strict=strict)


# --- algebras --------------------------------------------------------------------

_ALG_REQ = ("format_version", "kind", "name", "scalar", "labels", "vacuum", "s", "grading",
            "sigma", "products", "truncation")
_ALG_OPT = ("provenance", "exchange", "corrections", "braiding")


def dump_algebra(V: FieldAlgebraData) -> Dict[str, Any]:
    L = V.labels
    doc = _header("algebra")
    doc["name"] = V.name
    doc["scalar"] = {"kind": "rational"}
    doc["labels"] = list(L)
    doc["vacuum"] = enc_vec(V.vacuum, L)
    doc["s"] = [[L[i], enc_vec(v, L)] for i, v in sorted(V.s_cols.items()) if v]
    doc["grading"] = None if V.grading is None else list(V.grading)
    doc["sigma"] = V.sigma
    doc["products"] = [[L[a], n, L[b], enc_vec(v, L)]
                       for (a, b), per in sorted(V.products.items())
                       for n, v in sorted(per.items()) if v]
    doc["truncation"] = {"degree_cap": V.degree_cap, "n_vanish": V.n_vanish,
                         "window": V.window.as_list() if V.window is not None else None}
    if V.exchange_hint is identity_exchange:
        doc["exchange"] = "identity"
    if V.provenance:
        doc["provenance"] = json.loads(json.dumps(V.provenance))
    return doc


def load_algebra(doc: Dict[str, Any], strict: bool = True) -> FieldAlgebraData:
    _check_header(doc, "algebra")
    _fields(doc, _ALG_REQ, _ALG_OPT, "$", strict)
    scalar = _fields(doc["scalar"], ("kind",), ("M",), "$.scalar", strict)
    if scalar["kind"] not in ("rational", "h-series"):
        raise FormatError("scalar kind must be 'rational' or 'h-series'", "$.scalar.kind")
    labels, index = _labels(doc["labels"], "$.labels")
    vac = dec_vec(doc["vacuum"], index, "$.vacuum")
    s_cols: Dict[int, Vec] = {}
    if not isinstance(doc["s"], list):
        raise FormatError("expected a list", "$.s")
    for i, t in enumerate(doc["s"]):
        w = f"$.s[{i}]"
        if not isinstance(t, list) or len(t) != 2:
            raise FormatError("expected [label, vector]", w)
        s_cols[_label(t[0], index, w)] = dec_vec(t[1], index, w)
    grading = doc["grading"]
    if grading is not None:
        if not isinstance(grading, list) or len(grading) != len(labels):
            raise FormatError("grading must list one integer per basis vector", "$.grading")
        grading = [_int(g, f"$.grading[{i}]") for i, g in enumerate(grading)]
    sigma = _int(doc["sigma"], "$.sigma")
    if sigma not in (-1, 1):
        raise FormatError("sigma must be -1 or 1", "$.sigma")
    products = _dec_products(doc["products"], index, index, "$.products")
    tr = _fields(doc["truncation"], ("degree_cap", "n_vanish", "window"), (), "$.truncation", strict)
    cap = _int(tr["degree_cap"], "$.truncation.degree_cap", allow_none=True)
    n_vanish = _int(tr["n_vanish"], "$.truncation.n_vanish")
    window = _dec_window(tr["window"], "$.truncation.window")
    hint = doc.get("exchange")
    if hint not in (None, "identity"):
        raise FormatError("exchange must be 'identity' when present", "$.exchange")
    prov = doc.get("provenance", {})
    if not isinstance(prov, dict):
        raise FormatError("expected an object", "$.provenance")
    try:
        V = FieldAlgebraData(labels, vac, s_cols, products, n_vanish, grading, cap, sigma, window,
                             name=_str(doc["name"], "$.name"), provenance=prov,
                             exchange_hint=identity_exchange if hint else None)
    except ValueError as e:
        raise FormatError(str(e), "$") from None
    if V.vacuum == {} and labels:
        raise FormatError("vacuum is zero", "$.vacuum")
    return V


def _str(x: Any, where: str) -> str:
    if not isinstance(x, str):
        raise FormatError("expected a string", where)
    return x


def _dec_window(x: Any, where: str) -> Optional[Window]:
    if x is None:
        return None
    if not isinstance(x, list) or len(x) != 4:
        raise FormatError("window must be [i_min, i_max, j_min, j_max]", where)
    try:
        return Window(*[_int(t, f"{where}[{i}]") for i, t in enumerate(x)])
    except ValueError as e:
        raise FormatError(str(e), where) from None


def _dec_products(x: Any, left: Dict[str, int], right: Dict[str, int], where: str,
                  out_index: Optional[Dict[str, int]] = None) -> Dict[Tuple[int, int], Dict[int, Vec]]:
    if not isinstance(x, list):
        raise FormatError("expected a list of [a, n, b, vector]", where)
    out_index = out_index or right
    products: Dict[Tuple[int, int], Dict[int, Vec]] = {}
    for i, t in enumerate(x):
        w = f"{where}[{i}]"
        if not isinstance(t, list) or len(t) != 4:
            raise FormatError("expected [a, n, b, vector]", w)
        a, b = _label(t[0], left, w), _label(t[2], right, w)
        n = _int(t[1], w)
        per = products.setdefault((a, b), {})
        if n in per:
            raise FormatError(f"product ({t[0]}, {n}, {t[2]}) repeated", w)
        v = dec_vec(t[3], out_index, w)
        if v:
            per[n] = v
    return {k: per for k, per in products.items() if per}


# --- quantum algebras ------------------------------------------------------------

def dump_quantum(Vq: QVertex, Q: QBraiding) -> Dict[str, Any]:
    if Q.M != Vq.M:
        raise ValueError("braiding and algebra use different h-orders")
    doc = dump_algebra(Vq.base)
    L = Vq.base.labels
    doc["name"] = Vq.name or Vq.base.name
    doc["scalar"] = {"kind": "h-series", "M": Vq.M}
    doc["corrections"] = [[L[a], n, L[b], p, enc_vec(v, L)]
                          for (a, b), d in sorted(Vq.corrections.items())
                          for n, per in sorted(d.items())
                          for p, v in sorted(per.items()) if v]
    doc["braiding"] = [[L[a], L[b], k, [enc_q(c) for c in s.coeffs]]
                       for (a, b), F in sorted(Q.table.items()) for k, s in sorted(F.items())]
    return doc


def load_quantum(doc: Dict[str, Any], strict: bool = True,
                 M: Optional[int] = None) -> Tuple[QVertex, QBraiding]:
    """A rational document lifts with Q = 1; ``M`` truncates or sets the h-order."""
    V = load_algebra(doc, strict)
    scalar = doc["scalar"]
    index = {l: i for i, l in enumerate(V.labels)}
    if scalar["kind"] == "rational":
        m = 1 if M is None else M
        return QVertex(V, m, {}, name=V.name), QBraiding({}, m)
    doc_M = _int(scalar.get("M"), "$.scalar.M")
    if doc_M < 0:
        raise FormatError("M must be non-negative", "$.scalar.M")
    corr: Dict[Tuple[int, int], Dict[int, Dict[int, Vec]]] = {}
    for i, t in enumerate(doc.get("corrections", [])):
        w = f"$.corrections[{i}]"
        if not isinstance(t, list) or len(t) != 5:
            raise FormatError("expected [a, n, b, h power, vector]", w)
        a, b = _label(t[0], index, w), _label(t[2], index, w)
        n, p = _int(t[1], w), _int(t[3], w)
        if not 0 < p < doc_M:
            raise FormatError(f"h power {p} outside 1..{doc_M - 1}", w)
        corr.setdefault((a, b), {}).setdefault(n, {})[p] = dec_vec(t[4], index, w)
    table: Dict[Tuple[int, int], Dict[int, HSeries]] = {}
    for i, t in enumerate(doc.get("braiding", [])):
        w = f"$.braiding[{i}]"
        if not isinstance(t, list) or len(t) != 4 or not isinstance(t[3], list):
            raise FormatError("expected [a, b, z power, [coefficients]]", w)
        a, b = _label(t[0], index, w), _label(t[1], index, w)
        k = _int(t[2], w)
        if len(t[3]) != doc_M:
            raise FormatError(f"expected {doc_M} h-coefficients", w)
        table.setdefault((a, b), {})[k] = HSeries(tuple(dec_q(c, w) for c in t[3]), doc_M)
    try:
        Q = QBraiding(table, doc_M)
    except ValueError as e:
        raise FormatError(str(e), "$.braiding") from None
    Vq = QVertex(V, doc_M, corr, name=V.name)
    if M is not None:
        if M > doc_M:
            raise FormatError(f"document is only known mod h^{doc_M}", "$.scalar.M")
        Vq, Q = Vq.truncate(M), Q.truncate(M)
    return Vq, Q


# --- Hopf algebras and groups ----------------------------------------------------

def dump_hopf(H: FinHopf) -> Dict[str, Any]:
    L = H.labels
    doc = _header("hopf")
    doc["name"] = H.name
    doc["labels"] = list(L)
    doc["mult"] = [[L[a], L[b], enc_vec(v, L)] for (a, b), v in sorted(H.mult.items()) if v]
    doc["unit"] = enc_vec(H.unit, L)
    doc["comult"] = [[L[h], L[x], L[y], enc_q(c)] for h, terms in sorted(H.comult.items())
                     for x, y, c in terms if c]
    doc["counit"] = [[L[h], enc_q(c)] for h, c in sorted(H.counit.items()) if c]
    doc["antipode"] = [[L[h], enc_vec(v, L)] for h, v in sorted(H.antipode.items()) if v]
    return doc


def load_hopf(doc: Dict[str, Any], strict: bool = True) -> FinHopf:
    _check_header(doc, "hopf")
    _fields(doc, ("format_version", "kind", "name", "labels", "mult", "unit", "comult", "counit",
                  "antipode"), (), "$", strict)
    labels, index = _labels(doc["labels"], "$.labels")
    mult: Dict[Tuple[int, int], Vec] = {}
    for i, t in enumerate(_list(doc["mult"], "$.mult")):
        w = f"$.mult[{i}]"
        _shape(t, 3, w)
        mult[(_label(t[0], index, w), _label(t[1], index, w))] = dec_vec(t[2], index, w)
    comult: Dict[int, List[Tuple[int, int, Fraction]]] = {}
    for i, t in enumerate(_list(doc["comult"], "$.comult")):
        w = f"$.comult[{i}]"
        _shape(t, 4, w)
        comult.setdefault(_label(t[0], index, w), []).append(
            (_label(t[1], index, w), _label(t[2], index, w), dec_q(t[3], w)))
    counit = {}
    for i, t in enumerate(_list(doc["counit"], "$.counit")):
        w = f"$.counit[{i}]"
        _shape(t, 2, w)
        counit[_label(t[0], index, w)] = dec_q(t[1], w)
    antipode = {}
    for i, t in enumerate(_list(doc["antipode"], "$.antipode")):
        w = f"$.antipode[{i}]"
        _shape(t, 2, w)
        antipode[_label(t[0], index, w)] = dec_vec(t[1], index, w)
    return FinHopf(labels, mult, dec_vec(doc["unit"], index, "$.unit"), comult, counit, antipode,
                   name=_str(doc["name"], "$.name"))


def dump_group(G: GroupTable, name: str = "") -> Dict[str, Any]:
    E = G.elements
    doc = _header("group")
    doc["name"] = name
    doc["elements"] = list(E)
    doc["identity"] = E[G.identity]
    doc["cayley"] = [[E[a], E[b], E[c]] for (a, b), c in sorted(G.cayley.items())]
    return doc


def load_group(doc: Dict[str, Any], strict: bool = True) -> GroupTable:
    _check_header(doc, "group")
    _fields(doc, ("format_version", "kind", "name", "elements", "identity", "cayley"), (), "$", strict)
    elems, index = _labels(doc["elements"], "$.elements")
    e = _label(doc["identity"], index, "$.identity")
    cayley = {}
    for i, t in enumerate(_list(doc["cayley"], "$.cayley")):
        w = f"$.cayley[{i}]"
        _shape(t, 3, w)
        cayley[(_label(t[0], index, w), _label(t[1], index, w))] = _label(t[2], index, w)
    inverse = {}
    for a in range(len(elems)):
        inv = [b for b in range(len(elems)) if cayley.get((a, b)) == e]
        if len(inv) != 1:
            raise FormatError(f"element {elems[a]!r} has no unique inverse", "$.cayley")
        inverse[a] = inv[0]
    try:
        return GroupTable(tuple(elems), cayley, e, inverse)
    except ValueError as err:
        raise FormatError(str(err), "$.cayley") from None


def _list(x: Any, where: str) -> list:
    if not isinstance(x, list):
        raise FormatError("expected a list", where)
    return x


def _shape(t: Any, n: int, where: str) -> None:
    if not isinstance(t, list) or len(t) != n:
        raise FormatError(f"expected a list of length {n}", where)


# --- actions ---------------------------------------------------------------------

def dump_action(act: Dict[Tuple[int, int], Vec], V: FieldAlgebraData, H: FinHopf) -> Dict[str, Any]:
    doc = _header("action")
    doc["algebra"] = V.name
    doc["hopf"] = H.name
    doc["entries"] = [[H.labels[h], V.labels[v], enc_vec(out, V.labels)]
                      for (h, v), out in sorted(act.items()) if out]
    return doc


def load_action(doc: Dict[str, Any], V: FieldAlgebraData, H: FinHopf,
                strict: bool = True) -> Dict[Tuple[int, int], Vec]:
    _check_header(doc, "action")
    _fields(doc, ("format_version", "kind", "algebra", "hopf", "entries"), (), "$", strict)
    vi = {l: i for i, l in enumerate(V.labels)}
    hi = {l: i for i, l in enumerate(H.labels)}
    act = {}
    for i, t in enumerate(_list(doc["entries"], "$.entries")):
        w = f"$.entries[{i}]"
        _shape(t, 3, w)
        act[(_label(t[0], hi, w), _label(t[1], vi, w))] = dec_vec(t[2], vi, w)
    return act


# --- modules ---------------------------------------------------------------------

def dump_module(M: ModuleData, V: FieldAlgebraData) -> Dict[str, Any]:
    L = M.labels
    doc = _header("module")
    doc["name"] = M.name
    doc["algebra"] = M.algebra or V.name
    doc["labels"] = list(L)
    doc["s"] = [[L[i], enc_vec(v, L)] for i, v in sorted(M.s_cols.items()) if v]
    doc["grading"] = None if M.grading is None else list(M.grading)
    doc["action"] = [[V.labels[a], n, L[m], enc_vec(v, L)]
                     for (a, m), per in sorted(M.action.items()) for n, v in sorted(per.items()) if v]
    doc["truncation"] = {"degree_cap": M.degree_cap, "n_vanish": M.n_vanish}
    return doc


def load_module(doc: Dict[str, Any], V: Optional[FieldAlgebraData] = None,
                strict: bool = True) -> ModuleData:
    """Needs the algebra document the module refers to for label lookup."""
    _check_header(doc, "module")
    _fields(doc, ("format_version", "kind", "name", "algebra", "labels", "s", "grading", "action",
                  "truncation"), (), "$", strict)
    if V is None:
        raise FormatError("a module document needs its algebra document", "$.algebra")
    if doc["algebra"] != V.name:
        raise FormatError(f"module refers to algebra {doc['algebra']!r}, got {V.name!r}", "$.algebra")
    labels, index = _labels(doc["labels"], "$.labels")
    vi = {l: i for i, l in enumerate(V.labels)}
    s_cols = {}
    for i, t in enumerate(_list(doc["s"], "$.s")):
        w = f"$.s[{i}]"
        _shape(t, 2, w)
        s_cols[_label(t[0], index, w)] = dec_vec(t[1], index, w)
    grading = doc["grading"]
    if grading is not None and (not isinstance(grading, list) or len(grading) != len(labels)):
        raise FormatError("grading must list one integer per basis vector", "$.grading")
    action = _dec_products(doc["action"], vi, index, "$.action")
    tr = _fields(doc["truncation"], ("degree_cap", "n_vanish"), (), "$.truncation", strict)
    return ModuleData(labels, s_cols, action, _int(tr["n_vanish"], "$.truncation.n_vanish"),
                      grading, _int(tr["degree_cap"], "$.truncation.degree_cap", allow_none=True),
                      name=_str(doc["name"], "$.name"), algebra=doc["algebra"])


# --- associative algebras and reports ---------------------------------------------

def dump_assoc(A: AssocAlgebra, degrees: Optional[Sequence[int]] = None) -> Dict[str, Any]:
    L = A.labels
    doc = _header("assoc")
    doc["name"] = A.name
    doc["labels"] = list(L)
    doc["unit"] = enc_vec(A.unit, L)
    doc["mult"] = [[L[a], L[b], enc_vec(v, L)] for (a, b), v in sorted(A.mult.items()) if v]
    if degrees is not None:
        doc["degrees"] = list(degrees)
    return doc


def plain(x: Any) -> Any:
    """JSON-ready copy: fractions become [num, den], tuples lists, sets sorted lists."""
    if isinstance(x, Fraction):
        return enc_q(x)
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(plain(v) for v in x)
    if isinstance(x, enum.Enum):
        return x.value
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not allowed in documents")
    return str(x)


def report_doc(report: AxiomReport, tool: str, inputs: Dict[str, str],
               extra: Optional[Dict[str, Any]] = None, exit_status: int = 0) -> Dict[str, Any]:
    doc = _header("report")
    doc["tool"] = tool
    doc["inputs"] = dict(sorted(inputs.items()))
    doc["verdict"] = report.verdict.value
    doc["checks"] = plain([c.as_dict() for c in report.checks])
    if extra:
        doc["result"] = plain(extra)
    doc["exit_status"] = exit_status
    return doc
