"""Command-line front end: load documents, run checks, build constructions.

Exit status: 0 pass, 1 fail, 2 inconclusive, 3 usage or format error.
"""

from __future__ import annotations

import argparse
import hashlib
import random
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from . import io
from .actions import check_h_module_field_algebra, fixed_subalgebra
from .constructions import double_smash, make_e, matrix_algebra, smash_product
from .exactlin import Vec
from .fieldalg.data import FieldAlgebraData
from .fieldalg.suites import check_field_algebra, run_axiom_suite, sample_triples, test_vectors
from .fixtures import (builtin_groups_and_actions, charge_conjugation_action, differential_va,
                       dual_numbers, heisenberg, s3_sign_action, swap_action,
                       sweedler_dual_numbers_action, trivial_action)
from .formal import Window
from .hopf import (FinHopf, GroupTable, check_hopf_axioms, dual_hopf, group_algebra, left_integral,
                   sweedler)
from .quantum import (BraidingInvalid, QVertex, check_pole_bound, check_q_locality,
                      check_weak_associativity, dual_numbers_braiding, quantum_smash,
                      twisted_polynomial, x_parity_action)
from .report import AxiomReport, TruncationEscape, Verdict, WitnessError
from .rep import check_module, regular_module
from .zhu import check_cor47, check_smash_iso, parse_profile, zhu_quotient

EXIT = {Verdict.PASS: 0, Verdict.FAIL: 1, Verdict.INCONCLUSIVE: 2}
USAGE_ERROR = 3
SUITE_SETS = {
    "field": ("vacuum", "translation", "associativity"),
    "vertex": ("vacuum", "translation", "associativity", "skew", "locality"),
    "slocal": ("vacuum", "translation", "associativity", "slocal"),
}
# sampling kicks in above these sizes
FULL_TRIPLES = 1000
FULL_PAIRS = 400


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Run:
    """Inputs, digests and the output report of one invocation."""

    def __init__(self, args):
        self.args = args
        self.inputs: Dict[str, str] = {}
        self.report = AxiomReport()
        self.result: Dict[str, Any] = {}
        self.output: Optional[Dict[str, Any]] = None

    def doc(self, role: str, path: str) -> Dict[str, Any]:
        with open(path, "rb") as fh:
            raw = fh.read()
        self.inputs[role] = hashlib.sha256(raw).hexdigest()
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError:
            raise io.FormatError("not UTF-8 text", path) from None
        try:
            return io.loads(text)
        except io.FormatError as e:
            raise io.FormatError(str(e), path) from None

    def algebra(self) -> FieldAlgebraData:
        if self.args.algebra is None:
            raise UsageError("an algebra document is required")
        return io.load_algebra(self.doc("algebra", self.args.algebra), strict=not self.args.lenient)

    def hopf(self) -> FinHopf:
        if self.args.hopf is None:
            raise UsageError("--hopf is required")
        return h_from_arg(self, self.args.hopf)

    def action(self, V: FieldAlgebraData, H: FinHopf):
        if self.args.action is None:
            raise UsageError("--action is required")
        return io.load_action(self.doc("action", self.args.action), V, H, strict=not self.args.lenient)

    def group(self) -> GroupTable:
        g = self.args.group
        if g is None:
            raise UsageError("--group is required")
        cat = builtin_groups_and_actions()
        if g in cat.groups:
            self.inputs["group"] = g
            return cat.groups[g]
        return io.load_group(self.doc("group", g), strict=not self.args.lenient)


def h_from_arg(run: Run, arg: str) -> FinHopf:
    named = _named_hopf(arg)
    if named is not None:
        run.inputs["hopf"] = arg
        return named
    return io.load_hopf(run.doc("hopf", arg), strict=not run.args.lenient)


def _named_hopf(name: str) -> Optional[FinHopf]:
    cat = builtin_groups_and_actions()
    if name.startswith("k") and name[1:] in cat.groups:
        return group_algebra(cat.groups[name[1:]], name=name)
    if name.startswith("k") and name.endswith("*") and name[1:-1] in cat.groups:
        return dual_hopf(group_algebra(cat.groups[name[1:-1]], name=name[:-1]))
    if name == "sweedler":
        return sweedler()
    return None


# --- options -------------------------------------------------------------------------

def _window(args) -> Optional[Window]:
    if args.window is None:
        return None
    try:
        return Window(*args.window)
    except ValueError as e:
        raise UsageError(f"--window: {e}") from None


def _triples(V: FieldAlgebraData, args):
    if args.sample == "all" or (args.sample is None and V.dim ** 3 <= FULL_TRIPLES):
        return None
    count = FULL_TRIPLES // 10 if args.sample is None else _count(args.sample, "--sample")
    tests = set(test_vectors(V))
    return sample_triples(V, count, seed=args.seed, pred=lambda a, b, c: c in tests)


def _pairs(V: FieldAlgebraData, args):
    if args.pairs == "all" or (args.pairs is None and V.dim ** 2 <= FULL_PAIRS):
        return None
    count = FULL_PAIRS // 4 if args.pairs is None else _count(args.pairs, "--pairs")
    pool = [(a, b) for a in range(V.dim) for b in range(V.dim)]
    rng = random.Random(args.seed)
    return sorted(rng.sample(pool, min(count, len(pool))))


def _count(text: str, flag: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise UsageError(f"{flag} takes a positive integer or 'all'") from None
    if n <= 0:
        raise UsageError(f"{flag} takes a positive integer or 'all'")
    return n


def _profile(args):
    try:
        return parse_profile(args.profile)
    except ValueError as e:
        raise UsageError(f"--profile: {e}") from None


def _coeff(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad coefficient {text!r}") from None


def _label_vec(V: FieldAlgebraData, items: Sequence[str]) -> Vec:
    """['a[1]=1/2', '1'] -> vector; a bare label means coefficient 1."""
    v: Vec = {}
    for it in items:
        lab, _, c = it.partition("=")
        if lab not in V.labels:
            raise UsageError(f"unknown basis label {lab!r}")
        v[V.index(lab)] = v.get(V.index(lab), 0) + (_coeff(c) if c else 1)
    return {k: c for k, c in v.items() if c}


# --- commands ------------------------------------------------------------------------

def cmd_check(run: Run) -> None:
    a = run.args
    suite = a.suite
    if suite in SUITE_SETS:
        V = run.algebra()
        w = _window(a)
        rep = run_axiom_suite(V, SUITE_SETS[suite][:3], _triples(V, a), a.nmax, w)
        if len(SUITE_SETS[suite]) > 3:
            run_axiom_suite(V, SUITE_SETS[suite][3:], _pairs(V, a), a.nmax, w, rep)
        run.report.extend(rep)
        run.result["algebra"] = {"name": V.name, "dim": V.dim}
    elif suite == "module":
        V = run.algebra()
        if a.module is None:
            raise UsageError("--module is required")
        M = io.load_module(run.doc("module", a.module), V, strict=not a.lenient)
        run.report.extend(check_module(V, M, a.module_kind, n_max=a.nmax, window=_window(a)))
        run.result["module"] = {"name": M.name, "dim": M.dim, "kind": a.module_kind}
    elif suite == "hopf":
        H = run.hopf()
        run.report.extend(check_hopf_axioms(H))
        run.result["hopf"] = {"name": H.name, "dim": H.dim}
    elif suite == "action":
        V = run.algebra()
        H = run.hopf()
        act = run.action(V, H)
        run.report.extend(check_h_module_field_algebra(V, H, act, pairs=_pairs(V, a)))
    elif suite == "quantum":
        if a.algebra is None:
            raise UsageError("an algebra document is required")
        doc = run.doc("algebra", a.algebra)
        Vq, Q = io.load_quantum(doc, strict=not a.lenient, M=a.hmod)
        C = Vq.carrier(Q)
        pairs = _pairs(Vq.base, a)
        run.report.extend(check_q_locality(C, a.nmax, pairs, _window(a)))
        run.report.extend(check_weak_associativity(C, _triples(Vq.base, a), a.nmax, _window(a)))
        run.report.extend(check_pole_bound(C))
        run.result["h_order"] = Vq.M
    else:
        raise UsageError(f"unknown suite {suite!r}")


def cmd_smash(run: Run) -> None:
    a = run.args
    if a.algebra is None:
        raise UsageError("an algebra document is required")
    doc = run.doc("algebra", a.algebra)
    V = io.load_algebra(doc, strict=not a.lenient)
    H = run.hopf()
    act = run.action(V, H)
    if a.hmod is not None or doc["scalar"]["kind"] == "h-series":
        Vq, Q = io.load_quantum(doc, strict=not a.lenient, M=a.hmod)
        qs = quantum_smash(Vq, H, act, Q, n_max=a.nmax, pairs=_pairs(Vq.base, a), window=_window(a))
        run.report.extend(qs.report)
        run.result["h_order"] = Vq.M
        return
    S = smash_product(V, H, act)
    run.report.add("action is an H-module field algebra structure", Verdict.PASS, tag="smash")
    run.output = io.dump_algebra(S.carrier)
    run.result["carrier"] = {"name": S.carrier.name, "dim": S.carrier.dim}


def cmd_double_smash(run: Run) -> None:
    V = run.algebra()
    G = run.group()
    act = run.action(V, group_algebra(G, name="kG"))
    D, rep = double_smash(V, G, act)
    run.report.extend(rep)
    run.output = io.dump_algebra(D.carrier)
    run.result["carrier"] = {"name": D.carrier.name, "dim": D.carrier.dim}


def cmd_matrix(run: Run) -> None:
    V = run.algebra()
    M = matrix_algebra(V, run.args.n)
    run.report.extend(check_field_algebra(M, _triples(M, run.args), run.args.nmax, _window(run.args)))
    run.output = io.dump_algebra(M)
    run.result["carrier"] = {"name": M.name, "dim": M.dim}


def cmd_fixed(run: Run) -> None:
    V = run.algebra()
    H = run.hopf()
    act = run.action(V, H)
    F, emb = fixed_subalgebra(V, H, act)
    run.report.extend(check_field_algebra(F, _triples(F, run.args), run.args.nmax, _window(run.args)))
    run.output = io.dump_algebra(F)
    run.result["fixed"] = {"name": F.name, "dim": F.dim,
                           "embedding": {F.labels[i]: io.enc_vec(v, V.labels) for i, v in emb.items()}}


def cmd_zhu(run: Run) -> None:
    V = run.algebra()
    prof = _profile(run.args)
    Q = zhu_quotient(V, prof)
    run.report.extend(Q.report)
    run.output = io.dump_assoc(Q.algebra, Q.degrees)
    run.result["quotient"] = {"profile": prof.describe(), "dim": Q.algebra.dim,
                              "classes": Q.algebra.labels}


def cmd_iso_check(run: Run) -> None:
    a = run.args
    V = run.algebra()
    prof = _profile(a)
    if a.which == "thm35":
        H = run.hopf()
        act = run.action(V, H)
        res = check_smash_iso(V, H, act, prof)
        run.report.extend(res.report)
        run.result["dims"] = list(res.dims)
        run.result["verified_products"] = _hom_pairs(res.report, "phi multiplicative")
    else:
        G = run.group()
        act = run.action(V, group_algebra(G, name="kG"))
        rep = check_cor47(V, G, a.n, act, prof)
        run.report.extend(rep)
        run.result["verified_products"] = {
            "matrix": _hom_pairs(rep, f"M({a.n}): phi multiplicative"),
            "double_smash": _hom_pairs(rep, "double smash: phi multiplicative")}
    run.result["profile"] = prof.describe()


def _hom_pairs(rep: AxiomReport, name: str) -> int:
    try:
        c = rep[name]
    except KeyError:
        return 0
    return c.detail.get("pairs", 0) if c.verdict is Verdict.PASS else 0


def cmd_integral(run: Run) -> None:
    H = run.hopf()
    try:
        integ = left_integral(H)
    except WitnessError as e:
        run.report.add("left integral exists", Verdict.FAIL, io.plain(e.witness) or str(e),
                       tag="integral")
        return
    run.report.add("left integral exists", Verdict.PASS, tag="integral")
    run.result["integral"] = {"t": io.enc_vec(integ.t, H.labels), "normalized": integ.normalized}


def cmd_make_e(run: Run) -> None:
    V = run.algebra()
    H = run.hopf()
    act = run.action(V, H)
    c = _label_vec(V, run.args.c or [V.labels[next(iter(V.vacuum))]])
    S = smash_product(V, H, act)
    e, rep = make_e(V, H, act, c, S)
    run.report.extend(rep)
    run.result["e"] = io.enc_vec(e, S.carrier.labels)


FIXTURES = ("heisenberg", "differential", "dual-numbers", "dual-numbers-braided", "twisted")
GROUP_FIXTURES = ("Z2", "Z3", "S3")
HOPF_FIXTURES = ("kZ2", "kZ3", "kS3", "kZ2*", "kZ3*", "kS3*", "sweedler")
ACTION_FIXTURES = ("charge-conjugation", "swap", "s3-sign", "trivial", "sweedler", "x-parity")


def cmd_fixture(run: Run) -> None:
    a = run.args
    name = a.name
    cat = builtin_groups_and_actions()
    run.inputs["fixture"] = name
    if name == "heisenberg":
        doc = io.dump_algebra(heisenberg(a.D))
    elif name == "differential":
        doc = io.dump_algebra(differential_va(a.vars, a.D))
    elif name == "dual-numbers":
        doc = io.dump_algebra(dual_numbers())
    elif name == "dual-numbers-braided":
        M = a.hmod if a.hmod is not None else 2
        doc = io.dump_quantum(QVertex(dual_numbers(), M, name="dual_numbers"), dual_numbers_braiding(M))
    elif name == "twisted":
        Vq, Q = twisted_polynomial(a.D, a.hmod if a.hmod is not None else 2)
        doc = io.dump_quantum(Vq, Q)
    elif name in GROUP_FIXTURES:
        doc = io.dump_group(cat.groups[name], name)
    elif name in HOPF_FIXTURES:
        doc = io.dump_hopf(_named_hopf(name))
    elif name == "module:regular":
        V = heisenberg(a.D)
        doc = io.dump_module(regular_module(V), V)
    elif name.startswith("action:") and name[7:] in ACTION_FIXTURES:
        doc = _action_fixture(name[7:], a)
    else:
        raise UsageError(f"unknown fixture {name!r}")
    run.report.add("fixture generated", Verdict.PASS, tag="fixture")
    run.output = doc


def _action_fixture(kind: str, a) -> Dict[str, Any]:
    cat = builtin_groups_and_actions()
    if kind == "charge-conjugation":
        V, G = heisenberg(a.D), cat.groups["Z2"]
        return io.dump_action(charge_conjugation_action(V, G), V, group_algebra(G, name="kZ2"))
    if kind == "swap":
        V, G = differential_va(2, a.D), cat.groups["Z2"]
        return io.dump_action(swap_action(V, G), V, group_algebra(G, name="kZ2"))
    if kind == "s3-sign":
        V, G = differential_va(2, a.D), cat.groups["S3"]
        return io.dump_action(s3_sign_action(V, G), V, group_algebra(G, name="kS3"))
    if kind == "trivial":
        V = heisenberg(a.D)
        H = group_algebra(cat.groups[a.group or "Z2"], name=f"k{a.group or 'Z2'}")
        return io.dump_action(trivial_action(V, H), V, H)
    if kind == "sweedler":
        return io.dump_action(sweedler_dual_numbers_action(), dual_numbers(), sweedler())
    V = twisted_polynomial(a.D, 1)[0].base
    return io.dump_action(x_parity_action(V, a.D), V, group_algebra(cat.groups["Z2"], name="kZ2"))


COMMANDS = {
    "check": cmd_check, "smash": cmd_smash, "double-smash": cmd_double_smash, "matrix": cmd_matrix,
    "fixed": cmd_fixed, "zhu": cmd_zhu, "iso-check": cmd_iso_check, "integral": cmd_integral,
    "make-e": cmd_make_e, "fixture": cmd_fixture,
}


# --- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hopfva", description="Exact checks for field algebras and Hopf actions.")
    p.add_argument("--version", action="version", version=f"hopfva {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, algebra=True):
        if algebra == "optional":
            sp.add_argument("algebra", nargs="?", help="algebra document (not needed for --suite hopf)")
        elif algebra:
            sp.add_argument("algebra", help="algebra document")
        sp.add_argument("--hopf", help="Hopf document or a built-in name such as kZ2, kS3*, sweedler")
        sp.add_argument("--action", help="action document")
        sp.add_argument("--group", help="group document or Z2 | Z3 | S3")
        sp.add_argument("--window", type=int, nargs=4, metavar=("IMIN", "IMAX", "JMIN", "JMAX"))
        sp.add_argument("--nmax", type=int, default=8, help="largest (z-w) power tried")
        sp.add_argument("--hmod", type=int, help="work modulo h^M")
        sp.add_argument("--profile", default="zinv", help="zinv or exp:c")
        sp.add_argument("--sample", help="number of basis triples, or 'all'")
        sp.add_argument("--pairs", help="number of basis pairs, or 'all'")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--report", "-r", help="write the report here (default: stdout)")
        sp.add_argument("--out", "-o", help="write the constructed document here")
        sp.add_argument("--lenient", action="store_true", help="ignore unknown document fields")
        return sp

    c = common(sub.add_parser("check", help="run an axiom suite"), algebra="optional")
    c.add_argument("--suite", required=True,
                   choices=("field", "vertex", "slocal", "module", "hopf", "action", "quantum"))
    c.add_argument("--module", help="module document")
    c.add_argument("--module-kind", default="left",
                   choices=("left", "right", "strong", "vertex", "s_local"))
    common(sub.add_parser("smash", help="V#H (with --hmod: the quantum smash product)"))
    common(sub.add_parser("double-smash", help="V#kG#(kG)*"))
    m = common(sub.add_parser("matrix", help="M(n, V)"))
    m.add_argument("--n", type=int, default=2)
    common(sub.add_parser("fixed", help="the fixed subalgebra V^H"))
    common(sub.add_parser("zhu", help="the quotient A(V) for the chosen profile"))
    i = common(sub.add_parser("iso-check", help="compare A of a construction with its algebraic model"))
    i.add_argument("which", choices=("thm35", "cor47"))
    i.add_argument("--n", type=int, default=2)
    common(sub.add_parser("integral", help="a left integral of --hopf"), algebra=False)
    e = common(sub.add_parser("make-e", help="the idempotent e in V#H"))
    e.add_argument("--c", nargs="+", help="c as label=coefficient items (default: the vacuum)")
    f = common(sub.add_parser("fixture", help="emit a built-in document"), algebra=False)
    f.add_argument("name", help=", ".join(FIXTURES + GROUP_FIXTURES + HOPF_FIXTURES)
                   + ", module:regular, action:" + "|".join(ACTION_FIXTURES))
    f.add_argument("--D", type=int, default=4, help="degree cap")
    f.add_argument("--vars", type=int, default=2)
    return p


def _reorder(argv: List[str]) -> List[str]:
    # "iso-check ALGEBRA thm35" and "iso-check thm35 ALGEBRA" both work
    if len(argv) >= 3 and argv[0] == "iso-check" and argv[1] in ("thm35", "cor47"):
        return [argv[0]] + argv[2:3] + [argv[1]] + argv[3:]
    return argv


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_reorder(argv))
    except UsageError as e:
        print(f"hopfva: usage error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except SystemExit as e:  # --help and --version
        return int(e.code or 0)
    if args.command is None:
        build_parser().print_help(sys.stderr)
        return USAGE_ERROR
    run = Run(args)
    try:
        COMMANDS[args.command](run)
    except (UsageError, io.FormatError, FileNotFoundError, BraidingInvalid) as e:
        print(f"hopfva: {type(e).__name__}: {e}", file=sys.stderr)
        return USAGE_ERROR
    except WitnessError as e:
        run.report.add(type(e).__name__, Verdict.FAIL, io.plain(e.witness) if e.witness is not None
                       else str(e), tag="error", message=str(e))
        run.output = None
    except TruncationEscape as e:
        run.report.add(type(e).__name__, Verdict.INCONCLUSIVE, tag="truncation", message=str(e))
        run.output = None
    status = EXIT[run.report.verdict] if run.report.checks else EXIT[Verdict.INCONCLUSIVE]
    options = {k: v for k, v in sorted(vars(args).items())
               if k not in ("report", "out", "algebra", "hopf", "action", "group", "module")}
    extra = dict(run.result, options=options)
    doc = io.report_doc(run.report, f"hopfva {__version__}", run.inputs, extra, status)
    if args.out and run.output is not None:
        io.write(args.out, run.output)
    elif run.output is not None and not args.report:
        # no --out: the constructed document goes to stdout, the report to stderr
        sys.stdout.write(io.dumps(run.output))
        sys.stderr.write(io.dumps(doc))
        return status
    if args.report:
        io.write(args.report, doc)
    else:
        sys.stdout.write(io.dumps(doc))
    return status


if __name__ == "__main__":
    sys.exit(main())
