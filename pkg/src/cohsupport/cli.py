"""Session files and the command line front end.

A session is line oriented::

    ring p=101 vars x,y,z
    ideal x*y, y*z
    module M = coker [[x+z]]
    complex L = lzeta chi1-chi2
    sum N = M (+) L

``R`` and ``k`` are always defined.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .algebra import InhomogeneousError, PolyParseError, PolyRing, format_poly, parse_poly
from .audit import run_audit, standard_objects
from .groebner import Ideal, variety_equal
from .invariants import embedding_invariants, golod_test, serre_series_truncated
from .resolutions import CohenPresentationError, QuotientRing, RComplex, RModule, direct_sum, homology_dimensions
from .support import MINOR_LIMIT, build_L_zeta, hyperplane_test, product_ideal, realize_variety, support_variety

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT = 0, 1, 2
BUILTINS = ("R", "k")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")


class SessionError(ValueError):
    def __init__(self, msg, line=None, column=None):
        where = ""
        if line is not None:
            where = "line %d" % line + (", column %d" % column if column is not None else "") + ": "
        super().__init__(where + msg)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Definition:
    kind: str  # "module", "complex" or "sum"
    name: str
    body: tuple
    line: int = field(default=0, compare=False)


@dataclass
class Session:
    p: int = 101
    variables: Tuple[str, ...] = ()
    ideal: Tuple[str, ...] = ()
    definitions: Tuple[Definition, ...] = ()
    options: Dict[str, str] = field(default_factory=dict)

    @property
    def Q(self) -> PolyRing:
        return PolyRing(self.p, self.variables)

    def names(self) -> List[str]:
        return list(BUILTINS) + [d.name for d in self.definitions]


# ---------------------------------------------------------------------------
# parsing


def _split_top(text: str, sep: str = ",") -> List[Tuple[str, int]]:
    """Split at separators outside brackets; returns (piece, offset)."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    out.append((text[start:], start))
    return out


def _parse_matrix(text: str, line: int, col0: int) -> List[List[Tuple[str, int]]]:
    s = text.strip()
    lead = len(text) - len(text.lstrip())
    if not (s.startswith("[") and s.endswith("]")):
        raise SessionError("matrix must look like [[a, b], [c, d]]", line, col0 + lead)
    rows = []
    for piece, off in _split_top(s[1:-1]):
        p = piece.strip()
        poff = col0 + lead + 1 + off + (len(piece) - len(piece.lstrip()))
        if not (p.startswith("[") and p.endswith("]")):
            raise SessionError("each matrix row must be bracketed", line, poff)
        rows.append([(e.strip(), poff + 1 + o) for e, o in _split_top(p[1:-1])])
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise SessionError("matrix rows must have equal length", line, col0 + lead)
    return rows


def _canonical(text: str, ring: PolyRing, line: int, col: int, homogeneous=True) -> str:
    try:
        f = parse_poly(text, ring)
    except PolyParseError as exc:
        c = col + (exc.column or 0)
        raise SessionError("cannot parse %r: %s" % (text, exc), line, c) from None
    if homogeneous and not f.is_homogeneous():
        raise SessionError("inhomogeneous polynomial %r" % text, line, col)
    return format_poly(f)


def parse_session(text: str) -> Session:
    s = Session()
    have_ring = False
    defs: List[Definition] = []
    R: Optional[QuotientRing] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        word, _, rest = stripped.partition(" ")
        rest_col = indent + len(word) + 2
        if word == "ring":
            if have_ring:
                raise SessionError("only one ring per session", lineno, 1)
            m = re.fullmatch(r"\s*(?:p\s*=\s*(\d+)\s+)?vars\s+(.+)", rest)
            if not m:
                raise SessionError("expected 'ring p=<prime> vars x,y,...'", lineno, rest_col)
            p = int(m.group(1)) if m.group(1) else 101
            names = tuple(v.strip() for v in m.group(2).split(","))
            if any(not _NAME.match(v) for v in names) or len(set(names)) != len(names):
                raise SessionError("bad variable list", lineno, rest_col)
            try:
                PolyRing(p, names)
            except ValueError as exc:
                raise SessionError(str(exc), lineno, rest_col) from None
            s.p, s.variables = p, names
            have_ring = True
        elif word == "ideal":
            if not have_ring:
                raise SessionError("ideal before ring", lineno, 1)
            if s.ideal:
                raise SessionError("ideal given twice", lineno, 1)
            gens = tuple(_canonical(g, s.Q, lineno, rest_col + off) for g, off in _split_top(rest))
            try:
                R = QuotientRing.of(s.Q, *gens)
            except CohenPresentationError as exc:
                raise SessionError(str(exc), lineno, rest_col) from None
            s.ideal = gens
        elif word == "option":
            m = re.fullmatch(r"\s*(\w+)\s*=\s*(\S+)\s*", rest)
            if not m:
                raise SessionError("expected 'option key=value'", lineno, rest_col)
            s.options[m.group(1)] = m.group(2)
        elif word in ("module", "complex", "sum"):
            if not have_ring:
                raise SessionError("%s before ring" % word, lineno, 1)
            if R is None:
                R = QuotientRing(s.Q, ())
                s.ideal = ()
            m = re.fullmatch(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(.*)", rest)
            if not m:
                raise SessionError("expected '%s NAME = ...'" % word, lineno, rest_col)
            name, body = m.group(1), m.group(2)
            body_col = rest_col + m.start(2)
            if name in BUILTINS or any(d.name == name for d in defs):
                raise SessionError("name %r already defined" % name, lineno, rest_col)
            defs.append(Definition(word, name, _parse_body(word, body, s, R, defs, lineno, body_col), lineno))
        else:
            raise SessionError("unknown statement %r" % word, lineno, indent + 1)
    if not have_ring:
        raise SessionError("no ring declared")
    s.definitions = tuple(defs)
    return s


def _parse_body(kind, body, s: Session, R: QuotientRing, defs, lineno, col) -> tuple:
    if kind == "module":
        m = re.fullmatch(r"coker\s+(\[.*\])(?:\s+shifts\s+([-\d,\s]+))?\s*", body)
        if not m:
            raise SessionError("expected 'coker [[...]]' optionally followed by 'shifts a,b,...'", lineno, col)
        rows = _parse_matrix(m.group(1), lineno, col + m.start(1))
        canon = tuple(tuple(_canonical(e, s.Q, lineno, c) for e, c in row) for row in rows)
        shifts = tuple(int(x) for x in m.group(2).split(",")) if m.group(2) else None
        if shifts is not None and len(shifts) != len(canon):
            raise SessionError("need one shift per matrix row", lineno, col + m.start(2))
        try:
            _module_from(R, canon, shifts)
        except (InhomogeneousError, ValueError) as exc:
            raise SessionError(str(exc), lineno, col) from None
        return ("coker", canon, shifts)
    if kind == "complex":
        m = re.fullmatch(r"(lzeta|realize)\s+(.+)", body.strip())
        if not m:
            raise SessionError("expected 'lzeta <form>' or 'realize <form>, <form>, ...'", lineno, col)
        forms = []
        for text, off in _split_top(m.group(2)):
            form = _canonical(text, R.S, lineno, col + m.start(2) + off)
            try:
                build_L_zeta(R, parse_poly(form, R.S))
            except ValueError as exc:
                raise SessionError(str(exc), lineno, col) from None
            forms.append(form)
        if m.group(1) == "lzeta" and len(forms) != 1:
            raise SessionError("lzeta takes a single form", lineno, col)
        return (m.group(1), tuple(forms))
    # sum
    names = tuple(x.strip() for x in body.split("(+)"))
    known = set(BUILTINS) | {d.name for d in defs}
    for x in names:
        if x not in known:
            raise SessionError("unknown name %r" % x, lineno, col)
    if len(names) < 2:
        raise SessionError("a sum needs at least two summands", lineno, col)
    return names


def _module_from(R: QuotientRing, rows, shifts) -> RModule:
    Q = R.Q
    polys = [[parse_poly(e, Q) for e in row] for row in rows]
    return RModule.coker(R, polys, shifts)


def format_session(s: Session) -> str:
    out = ["ring p=%d vars %s" % (s.p, ",".join(s.variables))]
    if s.ideal:
        out.append("ideal " + ", ".join(s.ideal))
    for k, v in sorted(s.options.items()):
        out.append("option %s=%s" % (k, v))
    for d in s.definitions:
        if d.kind == "module":
            _, rows, shifts = d.body
            mat = "[" + ", ".join("[" + ", ".join(r) + "]" for r in rows) + "]"
            tail = " shifts " + ",".join(str(x) for x in shifts) if shifts is not None else ""
            out.append("module %s = coker %s%s" % (d.name, mat, tail))
        elif d.kind == "complex":
            out.append("complex %s = %s %s" % (d.name, d.body[0], ", ".join(d.body[1])))
        else:
            out.append("sum %s = %s" % (d.name, " (+) ".join(d.body)))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# evaluation


class Workspace:
    """A parsed session turned into a ring and named objects."""

    def __init__(self, session: Session, p: Optional[int] = None):
        if p is not None and p != session.p:
            Q = PolyRing(p, session.variables)
            try:
                gens = [format_poly(parse_poly(g, Q)) for g in session.ideal]
            except ValueError as exc:
                raise SessionError(str(exc)) from None
            session = Session(p, session.variables, tuple(gens), session.definitions, dict(session.options))
        self.session = session
        try:
            self.R = QuotientRing.of(session.Q, *session.ideal)
        except CohenPresentationError as exc:
            raise SessionError(str(exc)) from None
        self.objects: Dict[str, RComplex] = {
            "R": RComplex.from_module(RModule.free(self.R)),
            "k": RComplex.from_module(RModule.residue_field(self.R)),
        }
        for d in session.definitions:
            self.objects[d.name] = self._build(d)

    def _build(self, d: Definition) -> RComplex:
        R = self.R
        if d.kind == "module":
            _, rows, shifts = d.body
            M = _module_from(R, rows, shifts)
            return RComplex.from_module(RModule(R, M.shifts, M.relations, d.name))
        if d.kind == "complex":
            forms = [parse_poly(f, R.S) for f in d.body[1]]
            C = realize_variety(R, forms, d.name)
            C.name = d.name
            return C
        return direct_sum(*(self.objects[x] for x in d.body), name=d.name)

    def get(self, name: str) -> RComplex:
        if name not in self.objects:
            raise SessionError("unknown object %r (known: %s)" % (name, ", ".join(self.objects)))
        return self.objects[name]

    def form(self, text: str):
        try:
            return parse_poly(text, self.R.S)
        except PolyParseError as exc:
            raise SessionError("cannot parse form %r: %s" % (text, exc)) from None

    def ideal_S(self, text: str) -> Ideal:
        gens = [self.form(t) for t, _ in _split_top(text)]
        try:
            return Ideal(self.R.S, tuple(gens))
        except InhomogeneousError as exc:
            raise SessionError(str(exc)) from None


def _support_doc(V) -> dict:
    return {"fitting_ideal": [format_poly(g) for g in V.ideal.generators],
            "fitting_dim": V.dim, "dim": V.dim, "codim": V.codim, "n": V.n,
            "empty": V.is_empty(), "method": V.method,
            "certificates": [format_poly(c) for c in V.certificates()],
            "stats": {"T_rank": V.stats.get("T_rank"), "T_reduced_rank": V.stats.get("T_reduced_rank"),
                      "homology_generators": V.stats.get("homology_generators"),
                      "homology_relations": V.stats.get("homology_relations")}}


def _check(name, passed, **detail) -> dict:
    out = {"name": name, "pass": bool(passed)}
    out.update(detail)
    return out


def cmd_invariants(ws: Workspace, args) -> Tuple[dict, list]:
    prof = embedding_invariants(ws.R)
    checks = [_check("profile identities", prof.consistent())]
    return prof.as_dict(), checks


def cmd_support(ws: Workspace, args) -> Tuple[dict, list]:
    V = support_variety(ws.get(args.name), seed=args.seed)
    doc = _support_doc(V)
    doc["object"] = args.name
    checks = []
    if args.expect:
        eq = {}
        for text in args.expect:
            J = ws.ideal_S(text)
            eq[text] = variety_equal(V.ideal, J)
            checks.append(_check("variety_equal", eq[text], expected=text))
        doc["variety_equal"] = eq
    for text in args.hyperplane or ():
        chi = ws.form(text)
        try:
            doc.setdefault("hyperplane", {})[text] = hyperplane_test(V, chi)
        except ValueError as exc:
            raise SessionError(str(exc)) from None
    return doc, checks


def cmd_lzeta(ws: Workspace, args) -> Tuple[dict, list]:
    zeta = ws.form(args.form)
    try:
        L = build_L_zeta(ws.R, zeta)
    except ValueError as exc:
        raise SessionError(str(exc)) from None
    top = max(g.degree() for g in ws.R.f) + 1
    hom = homology_dimensions(L, range(0, top + 1))
    totals = {str(j): sum(row.values()) for j, row in hom.items()}
    V = support_variety(L, seed=args.seed)
    ok = variety_equal(V.ideal, Ideal(ws.R.S, (zeta,)))
    doc = {"form": format_poly(zeta), "homology_ranks": totals, "support": _support_doc(V), "variety_equal": ok}
    checks = [_check("homology is k in degrees 1 and 2", totals == {"1": 1, "2": 1}),
              _check("support equals the hypersurface", ok, expected=format_poly(zeta))]
    return doc, checks


def cmd_golod(ws: Workspace, args) -> Tuple[dict, list]:
    v = golod_test(ws.R, args.truncate)
    serre = serre_series_truncated(ws.R, args.truncate).coefficients
    doc = v.as_dict()
    doc["serre_full"] = list(serre)
    checks = [_check("serre bound", all(b <= s for b, s in zip(v.betti, serre)))]
    return doc, checks


def cmd_audit(ws: Workspace, args) -> Tuple[dict, list]:
    if args.objects:
        objects = [(name, ws.get(name)) for name in args.objects]
    else:
        objects = standard_objects(ws.R)
    tests = [ws.form(t) for t in (args.hyperplane or ())]
    report = run_audit(ws.R, objects, args.truncate, tests, seed=args.seed)
    doc = report.as_dict()
    checks = []
    for group, rows in report.rows.items():
        for row in rows:
            for c in row.checks:
                checks.append(_check("%s: %s: %s" % (group, row.object, c.name), c.passed,
                                     lhs=c.lhs, relation=c.relation, rhs=c.rhs))
    checks.append(_check("ci characterization", report.verdicts["ci"]["pass"]))
    return doc, checks


def cmd_realize(ws: Workspace, args) -> Tuple[dict, list]:
    forms = [ws.form(t) for t in args.forms]
    try:
        M = realize_variety(ws.R, forms)
    except ValueError as exc:
        raise SessionError(str(exc)) from None
    V = support_variety(M, seed=args.seed)
    target = product_ideal([Ideal(ws.R.S, (z,)) for z in forms])
    ok = variety_equal(V.ideal, target)
    doc = {"forms": [format_poly(z) for z in forms], "support": _support_doc(V), "variety_equal": ok}
    return doc, [_check("support equals the union of hyperplanes", ok)]


COMMANDS = {
    "invariants": cmd_invariants,
    "support": cmd_support,
    "lzeta": cmd_lzeta,
    "golod": cmd_golod,
    "audit": cmd_audit,
    "realize": cmd_realize,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=argparse.SUPPRESS, help="prime characteristic (default: from the session, else 101)")
    common.add_argument("--truncate", type=int, default=argparse.SUPPRESS, help="truncation N for resolutions over R (default 8)")
    common.add_argument("--order", default=argparse.SUPPRESS, choices=["degrevlex"], help="monomial order")
    common.add_argument("--json", default=argparse.SUPPRESS, metavar="PATH", help="also write the report to PATH")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="randomize the homotopy solver")

    parser = argparse.ArgumentParser(prog="cohsupport", parents=[common],
                                     description="Cohomological support varieties over graded quotient rings.")
    parser.add_argument("session", help="session file")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("invariants", parents=[common])
    sp = sub.add_parser("support", parents=[common])
    sp.add_argument("name")
    sp.add_argument("--expect", action="append", help="ideal of S to compare with, e.g. 'chi1*chi5'")
    sp.add_argument("--hyperplane", action="append", help="linear form in the chi variables to test")
    lz = sub.add_parser("lzeta", parents=[common])
    lz.add_argument("form")
    sub.add_parser("golod", parents=[common])
    au = sub.add_parser("audit", parents=[common])
    au.add_argument("--objects", nargs="+")
    au.add_argument("--hyperplane", action="append")
    re_ = sub.add_parser("realize", parents=[common])
    re_.add_argument("forms", nargs="+")
    return parser


def run(command: str, session: Session, args) -> Tuple[dict, int]:
    """Execute one command and return the JSON document and exit status."""
    ws = Workspace(session, getattr(args, "p", None))
    s = ws.session
    results, checks = COMMANDS[command](ws, args)
    passed = all(c["pass"] for c in checks)
    doc = {
        "command": command,
        "inputs": {"ring": {"p": s.p, "vars": list(s.variables), "ideal": list(s.ideal)},
                   "minimal_generators": [format_poly(g) for g in ws.R.f],
                   "objects": sorted(ws.objects),
                   "arguments": {k: v for k, v in sorted(vars(args).items())
                                 if k not in ("session", "command", "json", "p", "truncate", "order", "seed")}},
        "environment": {"p": s.p, "truncate": args.truncate, "order": args.order, "seed": args.seed,
                        "caps": {"exactness_cap": "max shift + #variables + 2", "minor_limit": MINOR_LIMIT,
                                 "residue_field_degree_cap": "1 + (i-1)(D-1), D = max Groebner degree"},
                        "version": __version__},
        "results": results,
        "checks": checks,
        "passed": passed,
    }
    return doc, EXIT_OK if passed else EXIT_CHECK_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    for key, default in (("truncate", 8), ("order", "degrevlex"), ("seed", None), ("json", None)):
        if not hasattr(args, key):
            setattr(args, key, default)
    try:
        text = Path(args.session).read_text(encoding="utf-8")
        session = parse_session(text)
        if args.truncate < 1:
            raise SessionError("--truncate must be positive")
        if args.command == "golod" and args.truncate < 2:
            raise SessionError("the Golod test needs --truncate >= 2")
        doc, status = run(args.command, session, args)
    except (OSError, SessionError, InhomogeneousError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    out = json.dumps(doc, indent=2, sort_keys=True)
    print(out)
    if args.json:
        Path(args.json).write_text(out + "\n", encoding="utf-8")
    return status


if __name__ == "__main__":
    sys.exit(main())
