"""Finitely presented modules, chain complexes of free modules and their homology.

Complexes are homological, start in degree 0 and carry finitely many terms.
``d[n]`` is the matrix of the differential from degree ``n`` to ``n - 1``
(``d[0]`` is ``None``).  Over graded rings each term records generator
degrees and every differential is a :class:`~dle.linalg.GradedMap`.

The multiplicative Euler characteristic is the alternating product
``prod |H_n| ** (-1) ** n`` of homology orders, returned as a
:class:`fractions.Fraction`.  Over a graded ring ``|H| = p ** length(H)``.
"""

from __future__ import annotations

import contextvars
import os
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, prod

import numpy as np

from . import kernels
from .errors import (
    GradedCutoffExceeded,
    InfiniteHomology,
    InhomogeneousElement,
    NotAChainComplex,
    NotAChainMap,
    RingMismatch,
    ShapeMismatch,
    WrongRingKind,
)
from .linalg import (
    GradedMap,
    Matrix,
    block_matrix,
    graded_piece_rows,
    invariant_factors,
    kron,
    restrict_scalars,
    smith_normal_form,
)
from .rings import GradedPoly, Integers, MonogenicOrder, PrimeField


@dataclass(frozen=True)
class FreeModule:
    ring: object
    rank: int
    shifts: tuple | None = None

    def __post_init__(self):
        graded = isinstance(self.ring, GradedPoly)
        if graded:
            shifts = tuple(self.shifts) if self.shifts is not None else (0,) * self.rank
            if len(shifts) != self.rank:
                raise ShapeMismatch("one shift per generator is required")
            object.__setattr__(self, "shifts", shifts)
        elif self.shifts is not None:
            raise ValueError("shifts are only meaningful over graded rings")

    def direct_sum(self, other):
        if self.shifts is None:
            return FreeModule(self.ring, self.rank + other.rank)
        return FreeModule(self.ring, self.rank + other.rank, self.shifts + other.shifts)


def zero_free(ring):
    return FreeModule(ring, 0, () if isinstance(ring, GradedPoly) else None)


def is_graded(ring):
    return isinstance(ring, GradedPoly)


# ---------------------------------------------------------------------------
# chain complexes


class ChainComplex:
    """A bounded complex ``C_top -> ... -> C_1 -> C_0`` of finite free modules."""

    def __init__(self, ring, terms, diffs, check=True):
        self.ring = ring
        self.terms = [t if isinstance(t, FreeModule) else FreeModule(ring, t) for t in terms]
        diffs = list(diffs)
        if len(diffs) == len(self.terms) and (not diffs or diffs[0] is None):
            diffs = diffs[1:]
        if len(diffs) != max(len(self.terms) - 1, 0):
            raise ShapeMismatch(f"{len(self.terms)} terms need {len(self.terms) - 1} differentials")
        self.d = [None]
        for n, m in enumerate(diffs, start=1):
            if isinstance(m, GradedMap):
                m = m.matrix
            if m.shape != (self.terms[n - 1].rank, self.terms[n].rank):
                raise ShapeMismatch(f"d[{n}] has shape {m.shape}, expected "
                                    f"{(self.terms[n - 1].rank, self.terms[n].rank)}")
            self.d.append(m)
        if check:
            self.check()

    @classmethod
    def from_ints(cls, ring, ranks, diffs):
        return cls(ring, ranks, [Matrix.from_ints(ring, m, r) for m, r in zip(diffs, ranks[1:])])

    def check(self):
        if is_graded(self.ring):
            for n in range(1, len(self.terms)):
                GradedMap(self.terms[n].shifts, self.terms[n - 1].shifts, self.d[n])
        for n in range(2, len(self.terms)):
            if not (self.d[n - 1] @ self.d[n]).is_zero():
                raise NotAChainComplex(f"d[{n - 1}] d[{n}] != 0")

    @property
    def length(self):
        """Top degree with a nonzero term (``-1`` for the zero complex)."""
        for n in range(len(self.terms) - 1, -1, -1):
            if self.terms[n].rank:
                return n
        return -1

    def rank(self, n):
        return self.terms[n].rank if 0 <= n < len(self.terms) else 0

    def term(self, n):
        if 0 <= n < len(self.terms):
            return self.terms[n]
        return zero_free(self.ring)

    def diff(self, n):
        """Differential out of degree ``n`` as a matrix (zero outside the range)."""
        if 1 <= n < len(self.terms):
            return self.d[n]
        return Matrix(self.ring, self.rank(n - 1), self.rank(n))

    def graded_diff(self, n):
        return GradedMap(self.term(n).shifts, self.term(n - 1).shifts, self.diff(n))

    def ranks(self):
        return [t.rank for t in self.terms]

    def max_shift(self):
        shifts = [s for t in self.terms for s in (t.shifts or ())]
        return max(shifts) if shifts else 0

    def trimmed(self):
        """Drop trailing zero terms."""
        top = self.length
        keep = max(top + 1, 1)
        return ChainComplex(self.ring, self.terms[:keep], self.d[1:keep], check=False)

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        a, b = self.trimmed(), other.trimmed()
        return a.ring == b.ring and a.terms == b.terms and a.d[1:] == b.d[1:]

    def __repr__(self):
        return f"ChainComplex({self.ring.describe()}, ranks={self.ranks()})"


def concentrated(ring, module: FreeModule, degree=0):
    terms = [zero_free(ring)] * degree + [module]
    diffs = [Matrix(ring, terms[n - 1].rank, terms[n].rank) for n in range(1, len(terms))]
    return ChainComplex(ring, terms, diffs, check=False)


def unit_complex(ring):
    shifts = (0,) if is_graded(ring) else None
    return concentrated(ring, FreeModule(ring, 1, shifts))


@dataclass(frozen=True)
class ComplexMap:
    """Degreewise maps ``f[n]: source_n -> target_n``."""

    source: ChainComplex
    target: ChainComplex
    maps: tuple

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        top = max(len(self.source.terms), len(self.target.terms))
        if len(self.maps) < top:
            pad = [Matrix(self.source.ring, self.target.rank(n), self.source.rank(n))
                   for n in range(len(self.maps), top)]
            object.__setattr__(self, "maps", self.maps + tuple(pad))

    def component(self, n):
        if 0 <= n < len(self.maps):
            return self.maps[n]
        return Matrix(self.source.ring, self.target.rank(n), self.source.rank(n))

    def is_chain_map(self):
        for n in range(1, len(self.maps) + 1):
            lhs = self.target.diff(n) @ self.component(n)
            rhs = self.component(n - 1) @ self.source.diff(n)
            if lhs != rhs:
                return False
        return True

    def check(self):
        if not self.is_chain_map():
            raise NotAChainMap("map does not commute with the differentials")


def cone(phi: ComplexMap) -> ChainComplex:
    """Mapping cone: ``cone_n = T_n + S_{n-1}``, ``d(t, s) = (d t + phi s, -d s)``."""
    phi.check()
    S, T = phi.source, phi.target
    R = S.ring
    top = max(len(T.terms), len(S.terms) + 1)
    terms = [T.term(n).direct_sum(S.term(n - 1)) for n in range(top)]
    diffs = []
    for n in range(1, top):
        grid = [[T.diff(n), phi.component(n - 1)],
                [None, -S.diff(n - 1)]]
        diffs.append(block_matrix(R, grid, [T.rank(n - 1), S.rank(n - 2)], [T.rank(n), S.rank(n - 1)]))
    return ChainComplex(R, terms, diffs)


def tot_tensor(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    """Total complex of ``C (x) D`` with ``d(a b) = da b + (-1)^|a| a db``.

    Degree-``n`` basis: blocks ``C_i (x) D_{n-i}`` for increasing ``i``, each
    first-factor-major.
    """
    if C.ring != D.ring:
        raise RingMismatch(f"{C.ring.describe()} vs {D.ring.describe()}")
    R = C.ring
    top = max(C.length, 0) + max(D.length, 0)
    blocks = [[(i, n - i) for i in range(n + 1) if C.rank(i) and D.rank(n - i)] for n in range(top + 1)]
    terms = []
    for n in range(top + 1):
        rk = sum(C.rank(i) * D.rank(j) for i, j in blocks[n])
        if is_graded(R):
            shifts = tuple(a + b for i, j in blocks[n] for a in C.term(i).shifts for b in D.term(j).shifts)
            terms.append(FreeModule(R, rk, shifts))
        else:
            terms.append(FreeModule(R, rk))
    diffs = []
    for n in range(1, top + 1):
        grid = []
        for (i2, j2) in blocks[n - 1]:
            row = []
            for (i, j) in blocks[n]:
                if i2 == i - 1 and j2 == j:
                    row.append(kron(C.diff(i), Matrix.identity(R, D.rank(j))))
                elif i2 == i and j2 == j - 1:
                    blk = kron(Matrix.identity(R, C.rank(i)), D.diff(j))
                    row.append(-blk if i % 2 else blk)
                else:
                    row.append(None)
            grid.append(row)
        diffs.append(block_matrix(R, grid, [C.rank(i) * D.rank(j) for i, j in blocks[n - 1]],
                                  [C.rank(i) * D.rank(j) for i, j in blocks[n]]))
    return ChainComplex(R, terms, diffs)


def direct_sum(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    R = C.ring
    top = max(len(C.terms), len(D.terms))
    terms = [C.term(n).direct_sum(D.term(n)) for n in range(top)]
    diffs = [block_matrix(R, [[C.diff(n), None], [None, D.diff(n)]],
                          [C.rank(n - 1), D.rank(n - 1)], [C.rank(n), D.rank(n)]) for n in range(1, top)]
    return ChainComplex(R, terms, diffs, check=False)


def shifted(C: ChainComplex, k: int) -> ChainComplex:
    """``C`` moved up by ``k >= 0`` homological degrees (differential signs kept)."""
    R = C.ring
    terms = [zero_free(R)] * k + list(C.terms)
    diffs = [Matrix(R, terms[n - 1].rank, terms[n].rank) if n <= k else C.d[n - k] for n in range(1, len(terms))]
    return ChainComplex(R, terms, diffs, check=False)


# ---------------------------------------------------------------------------
# exterior powers of free modules and maps


def wedge_expand(ring, vectors):
    """Expand ``v_1 ^ ... ^ v_k`` for sparse vectors ``{index: coeff}``.

    Returns ``{sorted index tuple: coeff}`` in the standard wedge basis.
    """
    add, mul, iz = ring.add, ring.mul, ring.is_zero
    cur = {(): ring.one()}
    for v in vectors:
        nxt = {}
        for key, c in cur.items():
            for idx, a in v.items():
                if idx in key:
                    continue
                pos = 0
                for t in key:
                    if t > idx:
                        break
                    pos += 1
                coeff = mul(c, a)
                if (len(key) - pos) % 2:
                    coeff = ring.neg(coeff)
                nk = key[:pos] + (idx,) + key[pos:]
                old = nxt.get(nk)
                val = coeff if old is None else add(old, coeff)
                if iz(val):
                    nxt.pop(nk, None)
                else:
                    nxt[nk] = val
        cur = nxt
        if not cur:
            break
    return cur


def exterior_basis(n, k):
    """k-element subsets of ``range(n)`` in lexicographic order."""
    return list(combinations(range(n), k))


def exterior_power_free(k: int, F: FreeModule) -> FreeModule:
    basis = exterior_basis(F.rank, k)
    if F.shifts is None:
        return FreeModule(F.ring, len(basis))
    return FreeModule(F.ring, len(basis), tuple(sum(F.shifts[i] for i in S) for S in basis))


def sparse_columns(M: Matrix):
    iz = M.ring.is_zero
    cols = [dict() for _ in range(M.cols)]
    for i, row in enumerate(M.data):
        for j, a in enumerate(row):
            if not iz(a):
                cols[j][i] = a
    return cols


def exterior_power_map(k: int, M: Matrix) -> Matrix:
    """``Lambda^k M``: entry ``(I, J)`` is the ``I x J`` minor of ``M``."""
    R = M.ring
    src = exterior_basis(M.cols, k)
    tgt = exterior_basis(M.rows, k)
    index = {S: i for i, S in enumerate(tgt)}
    cols = sparse_columns(M)
    out = Matrix(R, len(tgt), len(src))
    for j, S in enumerate(src):
        for key, c in wedge_expand(R, [cols[s] for s in S]).items():
            out.data[index[key]][j] = c
    return out


# ---------------------------------------------------------------------------
# presentations, Koszul complexes, resolutions over Z


@dataclass(frozen=True)
class FPModule:
    """``coker(relations: R^rels -> generators)``."""

    ring: object
    generators: FreeModule
    relations: Matrix

    def __post_init__(self):
        if self.relations.rows != self.generators.rank:
            raise ShapeMismatch("relation matrix rows must match the generator count")
        if is_graded(self.ring):
            GradedMap.infer(self.relations, self.generators.shifts)

    @property
    def relation_shifts(self):
        return GradedMap.infer(self.relations, self.generators.shifts).source

    @classmethod
    def cyclic_Z(cls, *orders):
        """``Z/n_1 + ... + Z/n_k`` over the integers."""
        Z = Integers()
        k = len(orders)
        rel = Matrix(Z, k, k)
        for i, n in enumerate(orders):
            rel.data[i][i] = n
        return cls(Z, FreeModule(Z, k), rel)

    @classmethod
    def free(cls, ring, rank, shifts=None):
        return cls(ring, FreeModule(ring, rank, shifts), Matrix(ring, rank, 0))

    def presentation_complex(self):
        """``0 -> R^rels -> R^gens -> 0`` (not necessarily a resolution)."""
        rels = self.relations
        if is_graded(self.ring):
            src = FreeModule(self.ring, rels.cols, self.relation_shifts)
        else:
            src = FreeModule(self.ring, rels.cols)
        return ChainComplex(self.ring, [self.generators, src], [rels])


def koszul_complex(ring, elements) -> ChainComplex:
    """Koszul complex ``Lambda^j(R^v)`` on ``a_1..a_v``.

    ``d(e_{i_1} ^ ... ^ e_{i_j}) = sum_t (-1)^t a_{i_t} e_{... omit i_t ...}``.
    """
    elements = [ring.from_int(a) if isinstance(a, int) else a for a in elements]
    v = len(elements)
    if v < 1:
        raise ValueError("need at least one element")
    if is_graded(ring):
        degs = []
        for a in elements:
            dd = ring.degree_of(a) if a else 0
            if dd is None:
                raise InhomogeneousElement(f"{ring.fmt(a)} is not homogeneous")
            degs.append(dd)
    terms = []
    bases = [exterior_basis(v, j) for j in range(v + 1)]
    for j in range(v + 1):
        if is_graded(ring):
            terms.append(FreeModule(ring, len(bases[j]), tuple(sum(degs[i] for i in S) for S in bases[j])))
        else:
            terms.append(FreeModule(ring, len(bases[j])))
    diffs = []
    for j in range(1, v + 1):
        index = {S: i for i, S in enumerate(bases[j - 1])}
        m = Matrix(ring, len(bases[j - 1]), len(bases[j]))
        for col, S in enumerate(bases[j]):
            for t, i in enumerate(S):
                a = elements[i]
                m.data[index[S[:t] + S[t + 1:]]][col] = a if t % 2 == 0 else ring.neg(a)
        diffs.append(m)
    return ChainComplex(ring, terms, diffs)


def free_resolution_Z(M: FPModule) -> ChainComplex:
    """Length <= 1 free resolution of a finitely presented abelian group.

    The relation columns are used directly when independent; otherwise a
    basis of their span is taken from the Smith form.
    """
    if not isinstance(M.ring, Integers):
        raise WrongRingKind("free_resolution_Z needs an integer presentation")
    Z = M.ring
    rels = M.relations
    g = M.generators.rank
    if rels.cols == 0:
        return concentrated(Z, FreeModule(Z, g))
    snf = smith_normal_form(rels)
    r = snf.rank
    if r == rels.cols:
        d1 = rels
    else:
        # image of rels = U^{-1} D, and D has r nonzero diagonal entries
        uinv = _unimodular_inverse(snf.U)
        d1 = Matrix(Z, g, r, [[uinv.data[i][j] * snf.invariant_factors[j] for j in range(r)] for i in range(g)])
    if r == 0:
        return concentrated(Z, FreeModule(Z, g))
    return ChainComplex(Z, [FreeModule(Z, g), FreeModule(Z, r)], [d1])


def _unimodular_inverse(U: Matrix) -> Matrix:
    from .linalg import solve

    n = U.rows
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        cols.append(solve(U, e))
    return Matrix(U.ring, n, n, [[cols[j][i] for j in range(n)] for i in range(n)])


# ---------------------------------------------------------------------------
# minimal reduction


def reduce_complex(C: ChainComplex) -> ChainComplex:
    """Cancel unit entries of the differentials (Gaussian elimination lemma).

    The result is homotopy equivalent to ``C``; homology and Euler
    characteristic are unchanged.  Over the integers, units are ``+-1``; over a
    graded ring, nonzero constants (degree-0 entries).
    """
    R = C.ring
    if isinstance(R, MonogenicOrder):
        raise WrongRingKind("restrict scalars before reducing")
    top = len(C.terms) - 1
    if top < 1:
        return C
    mul, sub, iz, is_unit = R.mul, R.sub, R.is_zero, R.is_unit
    # cols[n][j] = {i: value} for d[n]; rows[n][i] = set of j
    cols = [None]
    rows = [None]
    for n in range(1, top + 1):
        m = C.d[n]
        cn = {j: {} for j in range(m.cols)}
        rn = {i: set() for i in range(m.rows)}
        for i, row in enumerate(m.data):
            for j, a in enumerate(row):
                if not iz(a):
                    cn[j][i] = a
                    rn[i].add(j)
        cols.append(cn)
        rows.append(rn)
    alive = [set(range(t.rank)) for t in C.terms]

    for n in range(1, top + 1):
        cn, rn = cols[n], rows[n]
        while True:
            best = None
            for j, col in cn.items():
                for i, a in col.items():
                    if is_unit(a):
                        cost = (len(col) - 1) * (len(rn[i]) - 1)
                        if best is None or cost < best[0]:
                            best = (cost, i, j)
                            if cost == 0:
                                break
                if best is not None and best[0] == 0:
                    break
            if best is None:
                break
            _, i0, j0 = best
            col0 = cn.pop(j0)
            uinv = R.inv(col0.pop(i0))
            row_js = [j for j in rn.pop(i0) if j != j0]
            for i in col0:
                rn[i].discard(j0)
            for j in row_js:
                colj = cn[j]
                f = mul(colj.pop(i0), uinv)
                for i, v in col0.items():
                    new = sub(colj.get(i, R.zero()), mul(v, f))
                    if iz(new):
                        if i in colj:
                            del colj[i]
                            rn[i].discard(j)
                    else:
                        if i not in colj:
                            rn[i].add(j)
                        colj[i] = new
            # degree n+1 loses row j0, degree n-1 loses column i0
            if n + 1 <= top:
                for j in rows[n + 1].pop(j0, ()):
                    cols[n + 1][j].pop(j0, None)
            if n - 1 >= 1:
                for i in cols[n - 1].pop(i0, {}):
                    rows[n - 1][i].discard(i0)
            alive[n].discard(j0)
            alive[n - 1].discard(i0)

    order = [sorted(a) for a in alive]
    pos = [{old: new for new, old in enumerate(o)} for o in order]
    terms = []
    for n, t in enumerate(C.terms):
        if t.shifts is None:
            terms.append(FreeModule(R, len(order[n])))
        else:
            terms.append(FreeModule(R, len(order[n]), tuple(t.shifts[k] for k in order[n])))
    diffs = []
    for n in range(1, top + 1):
        m = Matrix(R, len(order[n - 1]), len(order[n]))
        for j, col in cols[n].items():
            if j not in pos[n]:
                continue
            jj = pos[n][j]
            for i, a in col.items():
                m.data[pos[n - 1][i]][jj] = a
        diffs.append(m)
    return ChainComplex(R, terms, diffs, check=False)


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologyGroup:
    """Isomorphism invariants of one homology group.

    Over Z (and orders, via restriction of scalars): ``torsion`` invariant
    factors and ``free_rank``.  Over a prime field: ``dim``.  Over a graded
    ring: ``hilbert`` (dimensions in internal degrees ``0..cutoff``), its sum
    ``length`` and the ``finite`` certificate.
    """

    kind: str
    torsion: tuple = ()
    free_rank: int = 0
    dim: int = 0
    hilbert: tuple = ()
    finite: bool = True
    p: int | None = None

    @property
    def length(self):
        return sum(self.hilbert) if self.kind == "graded" else self.dim

    def is_zero(self):
        if self.kind == "Z":
            return not self.torsion and self.free_rank == 0
        if self.kind == "field":
            return self.dim == 0
        return not any(self.hilbert)

    def order(self):
        """``|H|`` as an int, or ``None`` when the group is infinite or uncertified."""
        if self.kind == "Z":
            return None if self.free_rank else prod(self.torsion)
        if self.kind == "field":
            return self.p ** self.dim
        return self.p ** self.length if self.finite else None

    def invariants(self):
        if self.kind == "Z":
            return ("Z", self.torsion, self.free_rank)
        if self.kind == "field":
            return ("field", self.dim)
        return ("graded", tuple(self.hilbert), self.finite)

    def describe(self):
        if self.kind == "Z":
            parts = [f"Z/{d}" for d in self.torsion] + (["Z^%d" % self.free_rank] if self.free_rank else [])
            return " + ".join(parts) if parts else "0"
        if self.kind == "field":
            return f"k^{self.dim}" if self.dim else "0"
        tag = "" if self.finite else " (uncertified)"
        return f"hilbert {list(self.hilbert)}{tag}"


@dataclass(frozen=True)
class HomologyData:
    groups: tuple
    cutoff: int | None = None
    window: int | None = None

    def __getitem__(self, n):
        if 0 <= n < len(self.groups):
            return self.groups[n]
        return None

    def degrees(self):
        return range(len(self.groups))

    def invariants(self):
        """Invariants trimmed of trailing zero groups (for comparisons)."""
        inv = [g.invariants() for g in self.groups]
        while inv and self.groups[len(inv) - 1].is_zero():
            inv.pop()
        return inv

    def is_acyclic(self):
        return all(g.is_zero() for g in self.groups)


_GRADED_OVERRIDES = contextvars.ContextVar("graded_overrides", default=(None, None))


@contextmanager
def graded_defaults(cutoff=None, window=None):
    """Override the default graded cutoff and finiteness window inside a block."""
    token = _GRADED_OVERRIDES.set((cutoff, window))
    try:
        yield
    finally:
        _GRADED_OVERRIDES.reset(token)


def default_cutoff(C: ChainComplex) -> int:
    forced = _GRADED_OVERRIDES.get()[0]
    if forced is not None:
        return forced
    env = os.environ.get("DLE_CUTOFF")
    if env:
        return int(env)
    nterms = sum(1 for t in C.terms if t.rank)
    return C.max_shift() + 2 * (C.ring.nvars + nterms) + 4


def default_window(ring) -> int:
    forced = _GRADED_OVERRIDES.get()[1]
    if forced is not None:
        return forced
    return ring.nvars + 1


def homology(C: ChainComplex, cutoff=None, window=None, strict=True, reduce=True) -> HomologyData:
    """Per-degree isomorphism invariants of the homology of ``C``.

    With ``strict`` (the default) a graded complex whose homology is not
    certified finite-length raises :class:`GradedCutoffExceeded`.
    """
    R = C.ring
    if isinstance(R, MonogenicOrder):
        C = restrict_complex(C)
        R = C.ring
    if isinstance(R, GradedPoly):
        return _graded_homology(C, cutoff, window, strict, reduce)
    if reduce and isinstance(R, (Integers, PrimeField)):
        C = reduce_complex(C)
    top = len(C.terms)
    groups = []
    if isinstance(R, Integers):
        facs = [invariant_factors(C.diff(n)) if C.rank(n) and C.rank(n - 1) else () for n in range(top + 1)]
        ranks = [len(f) for f in facs]
        for n in range(top):
            tors = tuple(d for d in facs[n + 1] if d != 1)
            free = C.rank(n) - ranks[n] - ranks[n + 1]
            groups.append(HomologyGroup("Z", torsion=tors, free_rank=free))
    elif isinstance(R, PrimeField):
        ranks = [kernels.rank_mod_p(C.diff(n).data, R.p, C.rank(n - 1), C.rank(n)) for n in range(top + 1)]
        for n in range(top):
            groups.append(HomologyGroup("field", dim=C.rank(n) - ranks[n] - ranks[n + 1], p=R.p))
    else:
        raise WrongRingKind(R.describe())
    return HomologyData(tuple(groups))


def restrict_complex(C: ChainComplex) -> ChainComplex:
    """View a complex over ``Z[x]/(f)`` as a complex of free abelian groups."""
    R = C.ring
    Z = Integers()
    terms = [FreeModule(Z, t.rank * R.n) for t in C.terms]
    return ChainComplex(Z, terms, [restrict_scalars(C.d[n]) for n in range(1, len(C.terms))], check=False)


def graded_dims(shifts, d, nvars):
    return sum(comb(d - s + nvars - 1, nvars - 1) for s in shifts if d >= s)


def _graded_piece_array(C, n, d):
    rows, nr, nc = graded_piece_rows(C.graded_diff(n), d)
    if nr == 0 or nc == 0:
        return np.zeros((nr, nc), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def graded_hilbert(C: ChainComplex, cutoff: int, reduce=True):
    """Hilbert functions ``[H_n(d) for d in 0..cutoff]`` for every degree ``n``."""
    R = C.ring
    if reduce:
        C = reduce_complex(C)
    top = len(C.terms)
    p, nv = R.p, R.nvars
    out = [[0] * (cutoff + 1) for _ in range(top)]
    for d in range(cutoff + 1):
        rk = [0] * (top + 1)
        for n in range(1, top):
            if C.rank(n) and C.rank(n - 1):
                rk[n] = kernels.rank_array(_graded_piece_array(C, n, d), p)
        for n in range(top):
            out[n][d] = graded_dims(C.term(n).shifts, d, nv) - rk[n] - rk[n + 1]
    return out


def _graded_homology(C, cutoff, window, strict, reduce):
    R = C.ring
    if cutoff is None:
        cutoff = default_cutoff(C)
    if window is None:
        window = default_window(R)
    if cutoff < C.max_shift():
        raise GradedCutoffExceeded(f"cutoff {cutoff} is below the largest generator degree {C.max_shift()}")
    if any(s < 0 for t in C.terms for s in (t.shifts or ())):
        raise ValueError("negative generator degrees are not supported")
    hil = graded_hilbert(C, cutoff, reduce)
    groups = []
    for n, h in enumerate(hil):
        tail = h[max(0, cutoff + 1 - window):]
        finite = len(tail) >= window and not any(tail)
        groups.append(HomologyGroup("graded", hilbert=tuple(h), finite=finite, p=R.p))
    if strict:
        bad = [n for n, g in enumerate(groups) if not g.finite]
        if bad:
            raise GradedCutoffExceeded(
                f"homology in degree {bad[0]} is nonzero in the window below cutoff {cutoff}")
    return HomologyData(tuple(groups), cutoff, window)


def euler_char(C: ChainComplex, cutoff=None, window=None) -> Fraction:
    """Multiplicative Euler characteristic ``prod |H_n| ** (-1) ** n``."""
    try:
        H = homology(C, cutoff, window, strict=True)
    except GradedCutoffExceeded as exc:
        raise InfiniteHomology(str(exc)) from exc
    return chi_of_homology(H)


def chi_of_homology(H: HomologyData) -> Fraction:
    out = Fraction(1)
    for n, g in enumerate(H.groups):
        o = g.order()
        if o is None:
            raise InfiniteHomology(f"H_{n} is infinite ({g.describe()})")
        out *= Fraction(o) if n % 2 == 0 else Fraction(1, o)
    return out


def cochain_chi(C: ChainComplex) -> Fraction:
    """Euler characteristic of the two-term cochain complex ``C_1 -> C_0`` read
    cohomologically (``C_1`` in cochain degree 0): the reciprocal of ``euler_char``."""
    return 1 / euler_char(C)


# ---------------------------------------------------------------------------
# resolution checks


@dataclass
class ResolutionCertificate:
    passed: bool
    failing_degree: int | None = None
    detail: str = ""
    homology: HomologyData | None = field(default=None, repr=False)

    def __bool__(self):
        return self.passed


def _module_invariants(C: ChainComplex, cutoff):
    """Invariants of ``H_0`` (= the presented module) used to compare presentations."""
    if is_graded(C.ring):
        H = _graded_homology(C, cutoff, default_window(C.ring), strict=False, reduce=True)
        return H[0].hilbert
    H = homology(C)
    return H[0].invariants()


def verify_resolution(P: ChainComplex, M: FPModule, cutoff=None, window=None) -> ResolutionCertificate:
    """Check ``coker d_1 = M`` (by invariants) and exactness in degrees >= 1.

    Over graded rings the comparison of ``H_0`` uses Hilbert functions up to
    the cutoff, a numerical invariant.
    """
    if P.ring != M.ring:
        raise RingMismatch("resolution and module live over different rings")
    if is_graded(P.ring):
        if cutoff is None:
            cutoff = max(default_cutoff(P), default_cutoff(M.presentation_complex()))
        if cutoff < P.max_shift():
            raise GradedCutoffExceeded("cutoff below the largest generator degree")
        H = _graded_homology(P, cutoff, window or default_window(P.ring), strict=False, reduce=True)
        target = _module_invariants(M.presentation_complex(), cutoff)
        if H[0].hilbert != tuple(target):
            return ResolutionCertificate(False, 0, "Hilbert function of coker d_1 differs", H)
    else:
        H = homology(P)
        if H[0].invariants() != _module_invariants(M.presentation_complex(), cutoff):
            return ResolutionCertificate(False, 0, f"coker d_1 = {H[0].describe()}", H)
    for n in range(1, len(H.groups)):
        if not H[n].is_zero():
            return ResolutionCertificate(False, n, f"H_{n} = {H[n].describe()}", H)
    return ResolutionCertificate(True, None, "ok", H)
