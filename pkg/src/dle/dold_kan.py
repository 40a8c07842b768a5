"""The Dold-Kan correspondence and levelwise functors on simplicial modules.

Conventions
-----------
``K(C)_n`` is the direct sum, over monotone surjections ``eta: [n] -> [j]``,
of copies of ``C_j``.  A surjection is encoded by its jump set
``{t in 1..n : eta(t) = eta(t-1) + 1}``.  A simplicial operator ``theta`` acts
on the ``eta`` summand through the epi-mono factorization
``eta theta = mu epsilon``: by the identity into the ``epsilon`` summand when
``mu`` is an identity, by the differential of ``C`` when ``mu`` is the coface
``delta^0``, and by zero otherwise.

``N(A)_n`` is the Moore subcomplex ``ker d_1 ∩ ... ∩ ker d_n`` with
differential ``d_0``; with these conventions ``N(K(C)) = C`` on the nose.

Every degeneracy of ``K(C)``, of its levelwise exterior powers and of levelwise
tensor products sends basis elements to basis elements (up to sign).  The
degenerate part ``D_n`` is therefore a coordinate subspace and ``N(A)`` is
isomorphic to ``A/D`` with the nondegenerate basis elements as a free basis
and ``sum (-1)^i d_i`` as differential.  :func:`normalized_complex` builds that
model directly from the combinatorics without materializing whole levels;
it is the engine behind derived exterior powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb

from .complexes import (
    ChainComplex,
    FreeModule,
    homology,
    is_graded,
    tot_tensor,
    wedge_expand,
    zero_free,
)
from .errors import RingMismatch, SimplicialIdentityError, WrongRingKind
from .linalg import Matrix, kernel_basis, vstack
from .rings import Integers, PrimeField

# ---------------------------------------------------------------------------
# surjection combinatorics


@lru_cache(maxsize=None)
def _eta(n, J):
    out = [0] * (n + 1)
    jumps = set(J)
    for t in range(1, n + 1):
        out[t] = out[t - 1] + (1 if t in jumps else 0)
    return out


def _jumps(g):
    return tuple(t for t in range(1, len(g)) if g[t] != g[t - 1])


@lru_cache(maxsize=None)
def face_rule(n, J, i):
    """Factor ``eta delta^i`` for the surjection with jump set ``J`` on ``[n]``.

    Returns ``(J', kind)`` with ``kind`` one of ``"id"``, ``"d0"``, ``"zero"``.
    """
    eta = _eta(n, J)
    g = [eta[t] if t < i else eta[t + 1] for t in range(n)]
    j = len(J)
    image = set(g)
    Jp = _jumps(g)
    if len(image) == j + 1:
        return Jp, "id"
    missed = next(v for v in range(j + 1) if v not in image)
    return Jp, ("d0" if missed == 0 else "zero")


@lru_cache(maxsize=None)
def degeneracy_rule(n, J, i):
    """Jump set of ``eta sigma^i`` (``sigma^i: [n+1] -> [n]`` repeats ``i``)."""
    eta = _eta(n, J)
    g = [eta[t] if t <= i else eta[t - 1] for t in range(n + 2)]
    return _jumps(g)


@dataclass(frozen=True)
class SurjectionIndex:
    """Monotone surjection ``[n] -> [k]`` given by its jump set."""

    n: int
    k: int
    jumps: tuple

    def __post_init__(self):
        if len(self.jumps) != self.k or any(not 1 <= t <= self.n for t in self.jumps):
            raise ValueError("jump set must be a k-subset of {1..n}")

    def values(self):
        return tuple(_eta(self.n, self.jumps))


def _full_mask(n):
    return ((1 << n) - 1) << 1


def _mask(J):
    m = 0
    for t in J:
        m |= 1 << t
    return m


# ---------------------------------------------------------------------------
# sparse maps and explicit simplicial modules


class SparseMap:
    """A module map stored as one ``{row: coefficient}`` dict per column."""

    __slots__ = ("ring", "nrows", "cols")

    def __init__(self, ring, nrows, cols):
        self.ring = ring
        self.nrows = nrows
        self.cols = cols

    @property
    def ncols(self):
        return len(self.cols)

    @classmethod
    def identity(cls, ring, n):
        one = ring.one()
        return cls(ring, n, [{i: one} for i in range(n)])

    @classmethod
    def from_matrix(cls, M: Matrix):
        iz = M.ring.is_zero
        cols = [dict() for _ in range(M.cols)]
        for i, row in enumerate(M.data):
            for j, a in enumerate(row):
                if not iz(a):
                    cols[j][i] = a
        return cls(M.ring, M.rows, cols)

    def to_matrix(self):
        m = Matrix(self.ring, self.nrows, self.ncols)
        for j, col in enumerate(self.cols):
            for i, a in col.items():
                m.data[i][j] = a
        return m

    def __matmul__(self, other):
        """``self o other``."""
        R = self.ring
        add, mul, iz = R.add, R.mul, R.is_zero
        out = []
        for col in other.cols:
            acc = {}
            for k, b in col.items():
                for i, a in self.cols[k].items():
                    v = mul(a, b)
                    if i in acc:
                        v = add(acc[i], v)
                    if iz(v):
                        acc.pop(i, None)
                    else:
                        acc[i] = v
            out.append(acc)
        return SparseMap(R, self.nrows, out)

    def __eq__(self, other):
        return (isinstance(other, SparseMap) and self.nrows == other.nrows
                and self.cols == other.cols)


def exterior_sparse(k, f: SparseMap):
    """``Lambda^k f`` on the lexicographic subset bases."""
    R = f.ring
    src = list(combinations(range(f.ncols), k))
    index = {S: i for i, S in enumerate(combinations(range(f.nrows), k))}
    cols = []
    for S in src:
        cols.append({index[key]: c for key, c in wedge_expand(R, [f.cols[s] for s in S]).items()})
    return SparseMap(R, len(index), cols)


def tensor_sparse(f: SparseMap, g: SparseMap):
    """``f (x) g`` on first-factor-major bases."""
    R = f.ring
    mul, iz = R.mul, R.is_zero
    cols = []
    for cf in f.cols:
        for cg in g.cols:
            col = {}
            for i, a in cf.items():
                for k, b in cg.items():
                    v = mul(a, b)
                    if not iz(v):
                        col[i * g.nrows + k] = v
            cols.append(col)
    return SparseMap(R, f.nrows * g.nrows, cols)


class SimplicialModule:
    """Levelwise free simplicial module truncated at level ``L``.

    ``faces[n][i]`` (``1 <= n <= L``) maps level ``n`` to ``n - 1``;
    ``degeneracies[n][i]`` (``n < L``) maps level ``n`` to ``n + 1``.
    """

    def __init__(self, ring, levels, faces, degeneracies):
        self.ring = ring
        self.levels = list(levels)
        self.faces = faces
        self.degeneracies = degeneracies

    @property
    def L(self):
        return len(self.levels) - 1

    def ranks(self):
        return [lv.rank for lv in self.levels]


def verify_simplicial_identities(A: SimplicialModule, raise_on_failure=False):
    """Check every simplicial identity defined within the truncation.

    Returns a list of failure descriptions (empty when all identities hold).
    """
    L = A.L
    d, s = A.faces, A.degeneracies
    failures = []
    for n in range(2, L + 1):
        for j in range(n + 1):
            for i in range(j):
                if d[n - 1][i] @ d[n][j] != d[n - 1][j - 1] @ d[n][i]:
                    failures.append(f"d{i} d{j} = d{j - 1} d{i} fails at level {n}")
    for n in range(0, L - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                if s[n + 1][i] @ s[n][j] != s[n + 1][j + 1] @ s[n][i]:
                    failures.append(f"s{i} s{j} = s{j + 1} s{i} fails at level {n}")
    for n in range(0, L):
        ident = SparseMap.identity(A.ring, A.levels[n].rank)
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = d[n + 1][i] @ s[n][j]
                if i < j:
                    rhs = s[n - 1][j - 1] @ d[n][i]
                elif i in (j, j + 1):
                    rhs = ident
                else:
                    rhs = s[n - 1][j] @ d[n][i - 1]
                if lhs != rhs:
                    failures.append(f"d{i} s{j} fails at level {n}")
    if failures and raise_on_failure:
        raise SimplicialIdentityError(failures[0])
    return failures


# ---------------------------------------------------------------------------
# structured simplicial modules: K(C), levelwise exterior powers and tensors


class KStructure:
    """Combinatorial description of ``K(C)`` level by level.

    Level-``n`` basis elements are pairs ``(J, e)``: a jump set ``J`` of size
    ``j`` and a basis index ``e`` of ``C_j``; ordered by ``(j, J, e)``.
    """

    def __init__(self, C: ChainComplex):
        self.C = C
        self.ring = C.ring
        self.top = max(C.length, 0)
        self._basis = {}
        self._index = {}
        self._dcols = {j: _columns(C.diff(j)) for j in range(1, self.top + 1)}

    def basis(self, n):
        if n not in self._basis:
            out = []
            for j in range(min(n, self.top) + 1):
                rk = self.C.rank(j)
                if not rk:
                    continue
                for J in combinations(range(1, n + 1), j):
                    for e in range(rk):
                        out.append((J, e))
            self._basis[n] = out
            self._index[n] = {b: i for i, b in enumerate(out)}
        return self._basis[n]

    def index(self, n):
        self.basis(n)
        return self._index[n]

    def rank(self, n):
        return len(self.basis(n))

    def mask(self, n, idx):
        return _mask(self.basis(n)[idx][0])

    def shift(self, n, idx):
        J, e = self.basis(n)[idx]
        return self.C.terms[len(J)].shifts[e]

    def face(self, n, idx, i):
        J, e = self.basis(n)[idx]
        Jp, kind = face_rule(n, J, i)
        if kind == "zero":
            return {}
        target = self.index(n - 1)
        if kind == "id":
            return {target[(Jp, e)]: self.ring.one()}
        return {target[(Jp, r)]: a for r, a in self._dcols[len(J)][e].items()}

    def degeneracy(self, n, idx, i):
        J, e = self.basis(n)[idx]
        return {self.index(n + 1)[(degeneracy_rule(n, J, i), e)]: self.ring.one()}


def _columns(M: Matrix):
    iz = M.ring.is_zero
    cols = [dict() for _ in range(M.cols)]
    for i, row in enumerate(M.data):
        for j, a in enumerate(row):
            if not iz(a):
                cols[j][i] = a
    return cols


class ExteriorStructure:
    """``Lambda^k`` applied levelwise to a structured simplicial module."""

    def __init__(self, k, base):
        self.k = k
        self.base = base
        self.ring = base.ring
        self._basis = {}
        self._index = {}

    def basis(self, n):
        if n not in self._basis:
            out = list(combinations(range(self.base.rank(n)), self.k))
            self._basis[n] = out
            self._index[n] = {b: i for i, b in enumerate(out)}
        return self._basis[n]

    def index(self, n):
        self.basis(n)
        return self._index[n]

    def rank(self, n):
        return comb(self.base.rank(n), self.k)

    def mask(self, n, idx):
        m = 0
        for b in self.basis(n)[idx]:
            m |= self.base.mask(n, b)
        return m

    def shift(self, n, idx):
        return sum(self.base.shift(n, b) for b in self.basis(n)[idx])

    def nondegenerate(self, n):
        full = _full_mask(n)
        base_masks = [self.base.mask(n, b) for b in range(self.base.rank(n))]
        out = []
        for S in combinations(range(len(base_masks)), self.k):
            m = 0
            for b in S:
                m |= base_masks[b]
            if m == full:
                out.append(S)
        return out

    def _apply(self, n, elem, op):
        images = [op(b) for b in elem]
        if any(not v for v in images):
            return {}
        return wedge_expand(self.ring, images)

    def face_elem(self, n, elem, i):
        return self._apply(n, elem, lambda b: self.base.face(n, b, i))

    def face(self, n, idx, i):
        target = self.index(n - 1)
        return {target[key]: c for key, c in self.face_elem(n, self.basis(n)[idx], i).items()}

    def degeneracy(self, n, idx, i):
        target = self.index(n + 1)
        res = self._apply(n, self.basis(n)[idx], lambda b: self.base.degeneracy(n, b, i))
        return {target[key]: c for key, c in res.items()}


class TensorStructure:
    """Levelwise tensor product of two structured simplicial modules."""

    def __init__(self, A, B):
        if A.ring != B.ring:
            raise RingMismatch("levelwise tensor of modules over different rings")
        self.A, self.B = A, B
        self.ring = A.ring

    def rank(self, n):
        return self.A.rank(n) * self.B.rank(n)

    def _split(self, n, idx):
        return divmod(idx, self.B.rank(n))

    def mask(self, n, idx):
        a, b = self._split(n, idx)
        return self.A.mask(n, a) | self.B.mask(n, b)

    def shift(self, n, idx):
        a, b = self._split(n, idx)
        return self.A.shift(n, a) + self.B.shift(n, b)

    def nondegenerate(self, n):
        full = _full_mask(n)
        ma = [self.A.mask(n, a) for a in range(self.A.rank(n))]
        mb = [self.B.mask(n, b) for b in range(self.B.rank(n))]
        return [(a, b) for a, b in product(range(len(ma)), range(len(mb))) if ma[a] | mb[b] == full]

    def _combine(self, n_target, fa, fb):
        R = self.ring
        mul, iz = R.mul, R.is_zero
        rb = self.B.rank(n_target)
        out = {}
        for a, x in fa.items():
            for b, y in fb.items():
                v = mul(x, y)
                if not iz(v):
                    out[a * rb + b] = v
        return out

    def face_elem(self, n, elem, i):
        a, b = elem
        fa, fb = self.A.face(n, a, i), self.B.face(n, b, i)
        if not fa or not fb:
            return {}
        rb = self.B.rank(n - 1)
        return {divmod(k, rb): v for k, v in self._combine(n - 1, fa, fb).items()}

    def face(self, n, idx, i):
        a, b = self._split(n, idx)
        return self._combine(n - 1, self.A.face(n, a, i), self.B.face(n, b, i))

    def degeneracy(self, n, idx, i):
        a, b = self._split(n, idx)
        return self._combine(n + 1, self.A.degeneracy(n, a, i), self.B.degeneracy(n, b, i))


def materialize(S, L) -> SimplicialModule:
    """Explicit faces and degeneracies of a structured module through level ``L``."""
    R = S.ring
    levels = []
    for n in range(L + 1):
        rk = S.rank(n)
        if is_graded(R):
            levels.append(FreeModule(R, rk, tuple(S.shift(n, i) for i in range(rk))))
        else:
            levels.append(FreeModule(R, rk))
    faces = [None] + [[SparseMap(R, S.rank(n - 1), [S.face(n, idx, i) for idx in range(S.rank(n))])
                       for i in range(n + 1)] for n in range(1, L + 1)]
    degens = [[SparseMap(R, S.rank(n + 1), [S.degeneracy(n, idx, i) for idx in range(S.rank(n))])
               for i in range(n + 1)] for n in range(L)]
    return SimplicialModule(R, levels, faces, degens)


def normalized_complex(S, top) -> ChainComplex:
    """``A / D`` on nondegenerate basis elements, degrees ``0..top``.

    Isomorphic to the Moore complex ``N(A)``.  ``S`` must provide
    ``nondegenerate(n)`` and ``face_elem(n, elem, i)`` keyed by elements.
    """
    R = S.ring
    graded = is_graded(R)
    elems = []
    for n in range(top + 1):
        elems.append(S.nondegenerate(n) if hasattr(S, "nondegenerate") else _nondeg_generic(S, n))
    index = [{e: i for i, e in enumerate(es)} for es in elems]
    terms = []
    for n, es in enumerate(elems):
        if graded:
            terms.append(FreeModule(R, len(es), tuple(_elem_shift(S, n, e) for e in es)))
        else:
            terms.append(FreeModule(R, len(es)))
    add, neg, iz = R.add, R.neg, R.is_zero
    diffs = []
    for n in range(1, top + 1):
        m = Matrix(R, len(elems[n - 1]), len(elems[n]))
        tgt = index[n - 1]
        for col, e in enumerate(elems[n]):
            acc = {}
            for i in range(n + 1):
                for key, c in S.face_elem(n, e, i).items():
                    row = tgt.get(key)
                    if row is None:
                        continue
                    if i % 2:
                        c = neg(c)
                    v = add(acc[row], c) if row in acc else c
                    acc[row] = v
            for row, v in acc.items():
                if not iz(v):
                    m.data[row][col] = v
        diffs.append(m)
    return ChainComplex(R, terms, diffs, check=False)


def _elem_shift(S, n, e):
    if isinstance(S, ExteriorStructure):
        return sum(S.base.shift(n, b) for b in e)
    if isinstance(S, TensorStructure):
        a, b = e
        return S.A.shift(n, a) + S.B.shift(n, b)
    return S.shift(n, e)


def _nondeg_generic(S, n):
    full = _full_mask(n)
    return [i for i in range(S.rank(n)) if S.mask(n, i) == full]


class _KElems:
    """Adapter exposing ``K(C)`` itself through the element-keyed interface."""

    def __init__(self, K):
        self.K = K
        self.ring = K.ring

    def nondegenerate(self, n):
        return _nondeg_generic(self.K, n)

    def face_elem(self, n, e, i):
        return self.K.face(n, e, i)

    def shift(self, n, e):
        return self.K.shift(n, e)


# ---------------------------------------------------------------------------
# public functors


def K(C: ChainComplex, L: int) -> SimplicialModule:
    """The inverse Dold-Kan functor, truncated at level ``L``."""
    return materialize(KStructure(C), L)


def constant_simplicial(ring, module: FreeModule, L: int) -> SimplicialModule:
    """All levels equal ``module``, every face and degeneracy the identity."""
    ident = SparseMap.identity(ring, module.rank)
    faces = [None] + [[ident] * (n + 1) for n in range(1, L + 1)]
    degens = [[ident] * (n + 1) for n in range(L)]
    return SimplicialModule(ring, [module] * (L + 1), faces, degens)


def simplicial_exterior(k: int, A: SimplicialModule) -> SimplicialModule:
    """``Lambda^k`` applied levelwise."""
    R = A.ring
    if k == 0:
        shifts = (0,) if is_graded(R) else None
        return constant_simplicial(R, FreeModule(R, 1, shifts), A.L)
    levels = []
    for lv in A.levels:
        subsets = list(combinations(range(lv.rank), k))
        if lv.shifts is None:
            levels.append(FreeModule(R, len(subsets)))
        else:
            levels.append(FreeModule(R, len(subsets), tuple(sum(lv.shifts[i] for i in S) for S in subsets)))
    faces = [None] + [[exterior_sparse(k, f) for f in A.faces[n]] for n in range(1, A.L + 1)]
    degens = [[exterior_sparse(k, f) for f in A.degeneracies[n]] for n in range(A.L)]
    return SimplicialModule(R, levels, faces, degens)


def simplicial_tensor(A: SimplicialModule, B: SimplicialModule) -> SimplicialModule:
    """Levelwise tensor product ``(A (x)_s B)_n = A_n (x) B_n``."""
    if A.ring != B.ring:
        raise RingMismatch("levelwise tensor of modules over different rings")
    if A.L != B.L:
        raise ValueError("simplicial modules must share a truncation level")
    R = A.ring
    levels = []
    for a, b in zip(A.levels, B.levels):
        if a.shifts is None:
            levels.append(FreeModule(R, a.rank * b.rank))
        else:
            levels.append(FreeModule(R, a.rank * b.rank, tuple(x + y for x in a.shifts for y in b.shifts)))
    faces = [None] + [[tensor_sparse(f, g) for f, g in zip(A.faces[n], B.faces[n])] for n in range(1, A.L + 1)]
    degens = [[tensor_sparse(f, g) for f, g in zip(A.degeneracies[n], B.degeneracies[n])] for n in range(A.L)]
    return SimplicialModule(R, levels, faces, degens)


def _coords(R, basis, pivots, v):
    """Coordinates of ``v`` in an echelon ``basis`` (rows with given pivot columns)."""
    v = list(v)
    out = []
    for row, pc in zip(basis, pivots):
        piv = row[pc]
        if isinstance(R, Integers):
            c, r = divmod(v[pc], piv)
            if r:
                raise ArithmeticError("vector is not in the lattice")
        else:
            c = R.mul(v[pc], R.inv(piv))
        out.append(c)
        if c:
            v = [R.sub(x, R.mul(c, y)) for x, y in zip(v, row)]
    if any(not R.is_zero(x) for x in v):
        raise ArithmeticError("vector is not in the span")
    return out


def N(A: SimplicialModule) -> ChainComplex:
    """Moore complex ``N(A)_n = ker d_1 ∩ ... ∩ ker d_n`` with differential ``d_0``.

    Kernels are taken with canonical bases (Hermite form over Z, reduced echelon
    form over a prime field).  Other rings go through :func:`normalized_quotient`.
    """
    R = A.ring
    if not isinstance(R, (Integers, PrimeField)):
        return normalized_quotient(A)
    bases = []
    pivots = []
    for n in range(A.L + 1):
        rk = A.levels[n].rank
        if n == 0:
            basis = [[int(i == j) if isinstance(R, Integers) else R.from_int(i == j) for i in range(rk)]
                     for j in range(rk)]
        else:
            stacked = vstack(R, [A.faces[n][i].to_matrix() for i in range(1, n + 1)], rk)
            basis = kernel_basis(stacked)
        bases.append(basis)
        pivots.append([next(j for j, x in enumerate(v) if not R.is_zero(x)) for v in basis])
    terms = [FreeModule(R, len(b)) for b in bases]
    diffs = []
    for n in range(1, A.L + 1):
        d0 = A.faces[n][0]
        m = Matrix(R, len(bases[n - 1]), len(bases[n]))
        for col, v in enumerate(bases[n]):
            img = [R.zero()] * A.levels[n - 1].rank
            for k, x in enumerate(v):
                if R.is_zero(x):
                    continue
                for i, a in d0.cols[k].items():
                    img[i] = R.add(img[i], R.mul(a, x))
            for row, c in enumerate(_coords(R, bases[n - 1], pivots[n - 1], img)):
                m.data[row][col] = c
        diffs.append(m)
    return ChainComplex(R, terms, diffs, check=False)


def normalized_quotient(A: SimplicialModule) -> ChainComplex:
    """``A / D`` for explicit ``A`` whose degeneracies are signed basis injections."""
    R = A.ring
    nondeg = []
    for n in range(A.L + 1):
        hit = set()
        if n >= 1:
            for s in A.degeneracies[n - 1]:
                for col in s.cols:
                    if len(col) != 1 or not R.is_unit(next(iter(col.values()))):
                        raise WrongRingKind("degeneracies are not signed basis injections")
                    hit.update(col)
        nondeg.append([i for i in range(A.levels[n].rank) if i not in hit])
    terms = []
    for n, idx in enumerate(nondeg):
        lv = A.levels[n]
        terms.append(FreeModule(R, len(idx), None if lv.shifts is None else tuple(lv.shifts[i] for i in idx)))
    diffs = []
    for n in range(1, A.L + 1):
        pos = {old: new for new, old in enumerate(nondeg[n - 1])}
        m = Matrix(R, len(nondeg[n - 1]), len(nondeg[n]))
        for col, j in enumerate(nondeg[n]):
            for i in range(n + 1):
                for row, a in A.faces[n][i].cols[j].items():
                    if row in pos:
                        c = a if i % 2 == 0 else R.neg(a)
                        m.data[pos[row]][col] = R.add(m.data[pos[row]][col], c)
        diffs.append(m)
    return ChainComplex(R, terms, diffs, check=False)


def normalized_exterior(k: int, P: ChainComplex) -> ChainComplex:
    """``N Lambda^k K(P)`` through degree ``k * len(P)`` via nondegenerate wedges.

    Above that degree there are no nondegenerate wedges, so nothing is lost.
    """
    R = P.ring
    if k < 0:
        return ChainComplex(R, [zero_free(R)], [], check=False)
    if k == 0:
        shifts = (0,) if is_graded(R) else None
        return ChainComplex(R, [FreeModule(R, 1, shifts)], [], check=False)
    top = k * max(P.length, 0)
    return normalized_complex(ExteriorStructure(k, KStructure(P)), top)


def normalized_tensor(P: ChainComplex, Q: ChainComplex) -> ChainComplex:
    """``N(K(P) (x)_s K(Q))`` via nondegenerate pairs."""
    top = max(P.length, 0) + max(Q.length, 0)
    return normalized_complex(TensorStructure(KStructure(P), KStructure(Q)), top)


@dataclass
class ComparisonReport:
    equal: bool
    per_degree: list
    left: object
    right: object


def compare_homology(H1, H2, Lmax=None):
    n = max(len(H1.groups), len(H2.groups))
    if Lmax is not None:
        n = min(n, Lmax + 1)
    rows = []
    for k in range(n):
        a = H1[k].invariants() if H1[k] is not None and not H1[k].is_zero() else None
        b = H2[k].invariants() if H2[k] is not None and not H2[k].is_zero() else None
        rows.append((k, a == b, H1[k], H2[k]))
    return rows


def ez_homology_compare(P: ChainComplex, Q: ChainComplex, Lmax=None) -> ComparisonReport:
    """Homology of ``N(K P (x)_s K Q)`` against that of ``Tot(P (x) Q)``."""
    if P.ring != Q.ring:
        raise RingMismatch("complexes over different rings")
    Lmax = Lmax if Lmax is not None else max(P.length, 0) + max(Q.length, 0)
    simplicial = homology(normalized_tensor(P, Q))
    derived = homology(tot_tensor(P, Q))
    rows = compare_homology(simplicial, derived, Lmax)
    return ComparisonReport(all(r[1] for r in rows), rows, simplicial, derived)
