"""Line-oriented script format for ad-hoc computations.

::

    ring R = Z | GF <p> [vars <n>] | ORDER <poly>
    module M over R gens <shifts...> rels [[...], ...]
    complex C = koszul(R; a, b, ...)
    complex C over R = terms [<rank or [shifts]>, ...] diffs [<matrix>, ...]
    compute X = dlambda <k> <module|complex>
    compute X = dtensor <A> <B>
    compute X = cone <src> <tgt> maps [<matrix>, ...]
    compute X = homology <module|complex>
    assert chi <id> = <rational>
    assert homology <id> deg <n> invariants [<ints>]
    assert homology <id> deg <n> hilbert [<ints>]

Matrices are written row by row, ``[[a, b], [c, d]]``.  A module's relation
matrix has one row per generator and one column per relation.  Parse errors
and undefined names abort the script; engine errors turn the affected
assertions into failed checks.
"""

from __future__ import annotations

import re
import time
from pathlib import Path

from .complexes import (
    ChainComplex,
    ComplexMap,
    FPModule,
    FreeModule,
    HomologyData,
    chi_of_homology,
    cone,
    homology,
    koszul_complex,
)
from .derived import _as_complex, derived_exterior, derived_tensor
from .errors import DLEError, InvalidParameter, ParseError, UndefinedName, WrongRingKind
from .linalg import Matrix
from .parsing import parse_element, parse_int_poly, parse_rational
from .report import CheckResult, Report, render
from .rings import GradedPoly, Integers, MonogenicOrder, PrimeField

_ID = r"[A-Za-z_][A-Za-z0-9_]*"


_TOKEN = re.compile(r"\[|\]|,|[^\[\],]+")


def split_list(text: str, line: int):
    """Parse a bracketed, comma-separated (possibly nested) list of raw strings."""
    tokens = [t.strip() for t in _TOKEN.findall(text) if t.strip()]
    pos = 0

    def expect(tok):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != tok:
            found = tokens[pos] if pos < len(tokens) else "end of line"
            raise ParseError(f"expected {tok!r}, found {found!r}", line)
        pos += 1

    def item():
        nonlocal pos
        if pos < len(tokens) and tokens[pos] == "[":
            return parse()
        if pos >= len(tokens) or tokens[pos] in ",]":
            raise ParseError("empty list entry", line)
        pos += 1
        return tokens[pos - 1]

    def parse():
        nonlocal pos
        expect("[")
        items = []
        if pos < len(tokens) and tokens[pos] == "]":
            pos += 1
            return items
        items.append(item())
        while pos < len(tokens) and tokens[pos] == ",":
            pos += 1
            items.append(item())
        expect("]")
        return items

    out = parse()
    if pos != len(tokens):
        raise ParseError(f"trailing text after list: {' '.join(tokens[pos:])!r}", line)
    return out


def _int(text, line, what="integer"):
    try:
        return int(text)
    except (TypeError, ValueError):
        raise ParseError(f"{what} expected, got {text!r}", line) from None


def _int_list(items, line):
    if any(isinstance(x, list) for x in items):
        raise ParseError("expected a flat list of integers", line)
    return [_int(x, line) for x in items]


class Session:
    """Environment of one script run: named rings, modules, complexes and results."""

    def __init__(self):
        self.rings = {}
        self.objects = {}
        self.checks = []
        self.current_ring = None

    # -- lookup ------------------------------------------------------------

    def ring(self, name, line):
        if name not in self.rings:
            raise UndefinedName(name, line)
        return self.rings[name]

    def obj(self, name, line):
        if name not in self.objects:
            raise UndefinedName(name, line)
        return self.objects[name]

    def element(self, R, text, line):
        try:
            return parse_element(R, text)
        except InvalidParameter as exc:
            raise ParseError(str(exc), line) from None

    def matrix(self, R, rows, nrows, ncols, line):
        if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
            raise ParseError("a matrix is a list of rows", line)
        if nrows is not None and len(rows) != nrows:
            if not (ncols == 0 and not rows):
                raise ParseError(f"matrix needs {nrows} rows, got {len(rows)}", line)
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ParseError(f"every row needs {ncols} entries", line)
        data = [[self.element(R, e, line) for e in r] for r in rows] if rows else [[] for _ in range(nrows)]
        return Matrix(R, nrows, ncols, data)

    # -- statements -----------------------------------------------------------

    def stmt_ring(self, rest, line):
        m = re.fullmatch(rf"({_ID})\s*=\s*(.+)", rest)
        if not m:
            raise ParseError("ring <id> = Z | GF <p> [vars <n>] | ORDER <poly>", line)
        name, desc = m.group(1), m.group(2).strip()
        try:
            if desc == "Z":
                R = Integers()
            elif (g := re.fullmatch(r"GF\s+(\d+)(?:\s+vars\s+(\d+))?", desc)):
                p, nv = int(g.group(1)), int(g.group(2) or 0)
                R = GradedPoly(p, nv) if nv else PrimeField(p)
            elif (g := re.fullmatch(r"ORDER\s+(.+)", desc)):
                R = MonogenicOrder(parse_int_poly(g.group(1)))
            else:
                raise ParseError(f"unknown ring descriptor {desc!r}", line)
        except ParseError:
            raise
        except (InvalidParameter, ValueError) as exc:
            raise ParseError(str(exc), line) from None
        except DLEError as exc:
            raise ParseError(f"{type(exc).__name__}: {exc}", line) from None
        self.rings[name] = R
        self.current_ring = name

    def stmt_module(self, rest, line):
        m = re.fullmatch(rf"({_ID})\s+over\s+({_ID})\s+gens\s+(.*?)\s*rels\s*(\[.*\])", rest)
        if not m:
            raise ParseError("module <id> over <ring> gens <shifts...> rels [rows]", line)
        name, R = m.group(1), self.ring(m.group(2), line)
        shifts = [_int(s, line, "generator shift") for s in m.group(3).split()]
        rows = split_list(m.group(4), line)
        g = len(shifts)
        ncols = len(rows[0]) if rows and isinstance(rows[0], list) else 0
        rel = self.matrix(R, rows, g, ncols, line)
        gens = FreeModule(R, g, tuple(shifts) if isinstance(R, GradedPoly) else None)
        try:
            self.objects[name] = FPModule(R, gens, rel)
        except DLEError as exc:
            raise ParseError(f"{type(exc).__name__}: {exc}", line) from None

    def stmt_complex(self, rest, line):
        m = re.fullmatch(rf"({_ID})\s*=\s*koszul\(\s*({_ID})\s*;(.*)\)", rest)
        if m:
            R = self.ring(m.group(2), line)
            elems = [e for e in m.group(3).split(",") if e.strip()]
            if not elems:
                raise ParseError("koszul needs at least one element", line)
            try:
                self.objects[m.group(1)] = koszul_complex(R, [self.element(R, e, line) for e in elems])
            except DLEError as exc:
                raise ParseError(f"{type(exc).__name__}: {exc}", line) from None
            return
        m = re.fullmatch(rf"({_ID})(?:\s+over\s+({_ID}))?\s*=\s*terms\s*(\[.*\])\s*diffs\s*(\[.*\])", rest)
        if not m:
            raise ParseError("complex <id> = koszul(<ring>; elems) | [over <ring>] = terms [...] diffs [...]", line)
        rname = m.group(2) or self.current_ring
        if rname is None:
            raise ParseError("no ring defined", line)
        R = self.ring(rname, line)
        terms = []
        for t in split_list(m.group(3), line):
            if isinstance(t, list):
                sh = _int_list(t, line)
                terms.append(FreeModule(R, len(sh), tuple(sh) if isinstance(R, GradedPoly) else None))
            else:
                terms.append(FreeModule(R, _int(t, line, "rank")))
        mats = split_list(m.group(4), line)
        if len(mats) != max(len(terms) - 1, 0):
            raise ParseError(f"{len(terms)} terms need {len(terms) - 1} differentials", line)
        diffs = [self.matrix(R, rows, terms[n - 1].rank, terms[n].rank, line) for n, rows in enumerate(mats, 1)]
        try:
            self.objects[m.group(1)] = ChainComplex(R, terms, diffs)
        except DLEError as exc:
            raise ParseError(f"{type(exc).__name__}: {exc}", line) from None

    def stmt_compute(self, rest, line):
        m = re.fullmatch(rf"({_ID})\s*=\s*(\w+)\s*(.*)", rest)
        if not m:
            raise ParseError("compute <id> = <operation> ...", line)
        name, op, args = m.group(1), m.group(2), m.group(3).strip()
        if op == "dlambda":
            a = re.fullmatch(rf"(\d+)\s+({_ID})", args)
            if not a:
                raise ParseError("dlambda <k> <module|complex>", line)
            k, src = int(a.group(1)), self.obj(a.group(2), line)
            thunk = lambda: derived_exterior(k, src)  # noqa: E731
        elif op == "dtensor":
            a = re.fullmatch(rf"({_ID})\s+({_ID})", args)
            if not a:
                raise ParseError("dtensor <A> <B>", line)
            A, B = self.obj(a.group(1), line), self.obj(a.group(2), line)
            thunk = lambda: derived_tensor(A, B)  # noqa: E731
        elif op == "cone":
            a = re.fullmatch(rf"({_ID})\s+({_ID})\s+maps\s*(\[.*\])", args)
            if not a:
                raise ParseError("cone <src> <tgt> maps [<matrix>, ...]", line)
            S, T = self.obj(a.group(1), line), self.obj(a.group(2), line)
            if not isinstance(S, ChainComplex) or not isinstance(T, ChainComplex):
                raise ParseError("cone needs two complexes", line)
            mats = [self.matrix(S.ring, rows, T.rank(n), S.rank(n), line)
                    for n, rows in enumerate(split_list(a.group(3), line))]
            thunk = lambda: cone(ComplexMap(S, T, mats))  # noqa: E731
        elif op == "homology":
            a = re.fullmatch(_ID, args)
            if not a:
                raise ParseError("homology <id>", line)
            X = self.obj(args, line)
            thunk = lambda: X if isinstance(X, HomologyData) else homology(_as_complex(X))  # noqa: E731
        else:
            raise ParseError(f"unknown operation {op!r}", line)
        try:
            self.objects[name] = thunk()
        except DLEError as exc:
            self.objects[name] = exc

    def _homology(self, X):
        if isinstance(X, DLEError):
            raise X
        return X if isinstance(X, HomologyData) else homology(_as_complex(X))

    def _record(self, name, expected, compute, line):
        t0 = time.perf_counter()
        try:
            actual = render(compute())
            ok = actual == expected
        except DLEError as exc:
            actual, ok = type(exc).__name__, False
        ms = round((time.perf_counter() - t0) * 1000.0, 3)
        self.checks.append(CheckResult(name, expected, actual, ok, f"script line {line}", ms))

    def stmt_assert(self, rest, line):
        m = re.fullmatch(rf"chi\s+({_ID})\s*=\s*(\S+)", rest)
        if m:
            X = self.obj(m.group(1), line)
            try:
                val = parse_rational(m.group(2))
            except InvalidParameter as exc:
                raise ParseError(str(exc), line) from None
            self._record(f"chi {m.group(1)}", render(val), lambda: chi_of_homology(self._homology(X)), line)
            return
        m = re.fullmatch(rf"homology\s+({_ID})\s+deg\s+(\d+)\s+(invariants|hilbert)\s*(\[.*\])", rest)
        if not m:
            raise ParseError("assert chi <id> = <q> | assert homology <id> deg <n> invariants|hilbert [...]", line)
        X = self.obj(m.group(1), line)
        deg, kind = int(m.group(2)), m.group(3)
        values = _int_list(split_list(m.group(4), line), line)
        if kind == "hilbert":
            while values and values[-1] == 0:
                values.pop()

        def actual():
            H = self._homology(X)
            g = H[deg]
            if g is None:
                return []
            return group_invariants(g) if kind == "invariants" else trimmed_hilbert(g)

        self._record(f"homology {m.group(1)} deg {deg} {kind}", render(values), actual, line)


def group_invariants(g):
    """Torsion invariant factors then a 0 per free summand; ``[p] * dim`` over a field."""
    if g.kind == "Z":
        return list(g.torsion) + [0] * g.free_rank
    if g.kind == "field":
        return [g.p] * g.dim
    if not g.finite:
        return [0]
    return [g.p] * g.length


def trimmed_hilbert(g):
    if g.kind != "graded":
        raise WrongRingKind("Hilbert functions need a graded ring")
    h = list(g.hilbert)
    while h and h[-1] == 0:
        h.pop()
    return h


_STATEMENTS = {"ring": "stmt_ring", "module": "stmt_module", "complex": "stmt_complex",
               "compute": "stmt_compute", "assert": "stmt_assert"}


def run_script_text(text: str, label="<script>") -> Report:
    s = Session()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        head, _, rest = body.partition(" ")
        if head not in _STATEMENTS:
            raise ParseError(f"unknown statement {head!r}", lineno)
        getattr(s, _STATEMENTS[head])(rest.strip(), lineno)
    return Report("script", s.checks, params={"path": label})


def run_script(path) -> Report:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InvalidParameter(f"cannot read {path}: {exc.strerror}") from None
    return run_script_text(text, str(path))

