"""Exact matrix algebra over the supported rings.

Integer work uses Python ints throughout (Smith and Hermite normal forms,
Bareiss determinants).  Prime-field work goes through :mod:`dle.kernels`,
which dispatches to the compiled elimination core when it is available.
Graded polynomial maps are handled one internal degree at a time, so no
Groebner machinery is needed anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels, polys
from .errors import InhomogeneousElement, ShapeMismatch, WrongRingKind
from .rings import GradedPoly, Integers, MonogenicOrder, PrimeField, monomial_index, monomials


class Matrix:
    """A dense ``rows x cols`` matrix of ring elements, stored row-major."""

    __slots__ = ("ring", "rows", "cols", "data")

    def __init__(self, ring, rows, cols, data=None):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        if data is None:
            z = ring.zero()
            data = [[z] * cols for _ in range(rows)]
        else:
            data = [list(r) for r in data]
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ShapeMismatch(f"data does not have shape {rows}x{cols}")
        self.data = data

    @classmethod
    def from_rows(cls, ring, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(ring, len(rows), ncols, rows)

    @classmethod
    def from_ints(cls, ring, rows, ncols=None):
        return cls.from_rows(ring, [[ring.from_int(x) for x in r] for r in rows], ncols)

    @classmethod
    def identity(cls, ring, n):
        m = cls(ring, n, n)
        for i in range(n):
            m.data[i][i] = ring.one()
        return m

    @property
    def entries(self):
        return [x for row in self.data for x in row]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def copy(self):
        return Matrix(self.ring, self.rows, self.cols, self.data)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j):
        return [row[j] for row in self.data]

    def is_zero(self):
        iz = self.ring.is_zero
        return all(iz(x) for row in self.data for x in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.data == other.data

    def __repr__(self):
        body = "; ".join(" ".join(self.ring.fmt(x) for x in row) for row in self.data)
        return f"Matrix({self.ring.describe()}, {self.rows}x{self.cols}, [{body}])"

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        R = self.ring
        add, mul, iz = R.add, R.mul, R.is_zero
        z = R.zero()
        out = []
        ocols = other.cols
        odata = other.data
        for row in self.data:
            acc = [z] * ocols
            for k, a in enumerate(row):
                if iz(a):
                    continue
                orow = odata[k]
                for j in range(ocols):
                    b = orow[j]
                    if not iz(b):
                        acc[j] = add(acc[j], mul(a, b))
            out.append(acc)
        return Matrix(R, self.rows, other.cols, out)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        add = self.ring.add
        return Matrix(self.ring, self.rows, self.cols,
                      [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self):
        neg = self.ring.neg
        return Matrix(self.ring, self.rows, self.cols, [[neg(a) for a in r] for r in self.data])

    def __sub__(self, other):
        return self + (-other)

    def apply(self, vec):
        if len(vec) != self.cols:
            raise ShapeMismatch("vector length does not match column count")
        R = self.ring
        return [R.sum(R.mul(a, v) for a, v in zip(row, vec) if not R.is_zero(a)) for row in self.data]

    def transpose(self):
        return Matrix(self.ring, self.cols, self.rows, [list(c) for c in zip(*self.data)] if self.rows else
                      [[] for _ in range(self.cols)])

    def submatrix(self, rows, cols):
        return Matrix(self.ring, len(rows), len(cols), [[self.data[i][j] for j in cols] for i in rows])

    def map_entries(self, fn, ring=None):
        return Matrix(ring or self.ring, self.rows, self.cols, [[fn(x) for x in r] for r in self.data])


def hstack(ring, blocks, rows):
    out = [[] for _ in range(rows)]
    for b in blocks:
        if b.rows != rows:
            raise ShapeMismatch("hstack: row counts differ")
        for i in range(rows):
            out[i].extend(b.data[i])
    cols = sum(b.cols for b in blocks)
    return Matrix(ring, rows, cols, out)


def vstack(ring, blocks, cols):
    out = []
    for b in blocks:
        if b.cols != cols:
            raise ShapeMismatch("vstack: column counts differ")
        out.extend(list(r) for r in b.data)
    return Matrix(ring, len(out), cols, out)


def block_matrix(ring, grid, row_sizes, col_sizes):
    """Assemble a block matrix; ``None`` entries of ``grid`` are zero blocks."""
    z = ring.zero()
    data = []
    for bi, rs in enumerate(row_sizes):
        for i in range(rs):
            row = []
            for bj, cs in enumerate(col_sizes):
                blk = grid[bi][bj]
                if blk is None:
                    row.extend([z] * cs)
                else:
                    if blk.shape != (rs, cs):
                        raise ShapeMismatch(f"block ({bi},{bj}) has shape {blk.shape}, expected {(rs, cs)}")
                    row.extend(blk.data[i])
            data.append(row)
    return Matrix(ring, sum(row_sizes), sum(col_sizes), data)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; basis of the tensor product ordered first-factor-major."""
    R = a.ring
    mul, iz = R.mul, R.is_zero
    z = R.zero()
    data = []
    for i in range(a.rows):
        for k in range(b.rows):
            row = []
            brow = b.data[k]
            for x in a.data[i]:
                if iz(x):
                    row.extend([z] * b.cols)
                else:
                    row.extend(mul(x, y) for y in brow)
            data.append(row)
    return Matrix(R, a.rows * b.rows, a.cols * b.cols, data)


def determinant(m: Matrix) -> int:
    if not isinstance(m.ring, Integers):
        raise WrongRingKind("determinant is implemented over Z")
    if m.rows != m.cols:
        raise ShapeMismatch("determinant of a non-square matrix")
    return polys.bareiss_det(m.data)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    U: Matrix
    D: Matrix
    V: Matrix
    invariant_factors: tuple

    @property
    def rank(self):
        return len(self.invariant_factors)


def _snf_core(a, track):
    """Smith form of the int matrix ``a`` (list of lists, modified in place).

    Returns ``(diag, U, V)`` with ``U a_orig V = D``; ``U``/``V`` are ``None``
    unless ``track``.  Pivots are chosen by smallest absolute value.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        if track:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in V:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        rs, rd = a[src], a[dst]
        for j in range(n):
            if rs[j]:
                rd[j] += q * rs[j]
        if track:
            us, ud = U[src], U[dst]
            for j in range(m):
                if us[j]:
                    ud[j] += q * us[j]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if track:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            piv = a[t][t]
            moved = False
            for i in range(t + 1, m):
                v = a[i][t]
                if v:
                    add_row(i, t, -(v // piv))
                    if a[i][t]:
                        moved = True
            for j in range(t + 1, n):
                v = a[t][j]
                if v:
                    add_col(j, t, -(v // piv))
                    if a[t][j]:
                        moved = True
            if moved:
                best = None
                for i in range(t + 1, m):
                    v = a[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, "r")
                for j in range(t + 1, n):
                    v = a[t][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), j, "c")
                if best[0] < abs(piv):
                    if best[2] == "r":
                        swap_rows(best[1], t)
                    else:
                        swap_cols(best[1], t)
                continue
            bad = None
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                U[t] = [-x for x in U[t]]
        diag.append(a[t][t])
        t += 1
    return diag, U, V


def _require_int_matrix(M):
    if not isinstance(M.ring, Integers):
        raise WrongRingKind(f"expected an integer matrix, got {M.ring.describe()}")


def smith_normal_form(M: Matrix) -> SNFResult:
    """``U M V = D`` with unimodular ``U``, ``V`` and a divisibility-chain diagonal."""
    _require_int_matrix(M)
    a = [list(r) for r in M.data]
    diag, U, V = _snf_core(a, track=True)
    Z = M.ring
    D = Matrix(Z, M.rows, M.cols)
    for i, d in enumerate(diag):
        D.data[i][i] = d
    return SNFResult(Matrix(Z, M.rows, M.rows, U), D, Matrix(Z, M.cols, M.cols, V), tuple(diag))


def invariant_factors(M: Matrix):
    """Nonzero diagonal of the Smith form (no transforms tracked)."""
    _require_int_matrix(M)
    if M.rows == 0 or M.cols == 0:
        return ()
    diag, _, _ = _snf_core([list(r) for r in M.data], track=False)
    return tuple(diag)


def rank(M: Matrix) -> int:
    R = M.ring
    if isinstance(R, PrimeField):
        return kernels.rank_mod_p(M.data, R.p)
    if isinstance(R, Integers):
        return len(invariant_factors(M))
    if isinstance(R, MonogenicOrder):
        return len(invariant_factors(restrict_scalars(M))) // R.n
    raise WrongRingKind(f"rank is not defined over {R.describe()}")


# ---------------------------------------------------------------------------
# Hermite normal form and kernels


def hnf_rows(rows):
    """Row-style Hermite normal form of an integer row list; zero rows dropped.

    Pivots are positive and entries above each pivot lie in ``[0, pivot)``,
    which makes the result a canonical basis of the row lattice.
    """
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    out = []
    col = 0
    while a and col < ncols:
        nz = [r for r in a if r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for j in range(col, ncols):
                    r[j] -= q * piv[j]
            nz = [r for r in nz if r[col]]
        piv = nz[0]
        if piv[col] < 0:
            for j in range(ncols):
                piv[j] = -piv[j]
        a = [r for r in a if r is not piv and any(r)]
        out.append(piv)
        col += 1
    for k, piv in enumerate(out):
        pc = next(j for j, v in enumerate(piv) if v)
        for prev in out[:k]:
            q = prev[pc] // piv[pc]
            if q:
                for j in range(pc, ncols):
                    prev[j] -= q * piv[j]
    return out


def kernel_basis(M: Matrix):
    """Canonical basis of ``ker M`` as a list of column vectors.

    Over Z the kernel is a saturated lattice and the basis is its Hermite form;
    over a prime field it is the reduced echelon basis.
    """
    R = M.ring
    if isinstance(R, Integers):
        if M.cols == 0:
            return []
        if M.rows == 0:
            return [[int(i == j) for i in range(M.cols)] for j in range(M.cols)]
        diag, _, V = _snf_core([list(r) for r in M.data], track=True)
        r = len(diag)
        vecs = [[V[i][j] for i in range(M.cols)] for j in range(r, M.cols)]
        return hnf_rows(vecs)
    if isinstance(R, PrimeField):
        return kernels.nullspace_mod_p(M.data, M.rows, M.cols, R.p)
    raise WrongRingKind(f"kernel_basis is not available over {R.describe()}")


# ---------------------------------------------------------------------------
# solving


def solve(M: Matrix, b):
    """Some ``x`` with ``M x = b``, or ``None`` when no solution exists.

    Over graded rings pass a :class:`GradedMap` together with a homogeneous
    right-hand side; see :func:`solve_graded`.
    """
    if isinstance(M, GradedMap):
        return solve_graded(M, b)
    if len(b) != M.rows:
        raise ShapeMismatch(f"rhs of length {len(b)} for a matrix with {M.rows} rows")
    R = M.ring
    if isinstance(R, Integers):
        return _solve_int(M, list(b))
    if isinstance(R, PrimeField):
        return kernels.solve_mod_p(M.data, M.rows, M.cols, [R.from_int(x) for x in b], R.p)
    if isinstance(R, MonogenicOrder):
        big = restrict_scalars(M)
        flat = [c for elt in b for c in elt]
        x = _solve_int(big, flat)
        if x is None:
            return None
        n = R.n
        return [tuple(x[j * n:(j + 1) * n]) for j in range(M.cols)]
    if isinstance(R, GradedPoly):
        return solve_graded(GradedMap.infer(M), b)
    raise WrongRingKind(R.describe())


def _solve_int(M, b):
    if M.cols == 0:
        return [] if not any(b) else None
    if M.rows == 0:
        return [0] * M.cols
    diag, U, V = _snf_core([list(r) for r in M.data], track=True)
    ub = [sum(U[i][k] * b[k] for k in range(M.rows)) for i in range(M.rows)]
    y = [0] * M.cols
    for i, d in enumerate(diag):
        q, r = divmod(ub[i], d)
        if r:
            return None
        y[i] = q
    if any(ub[len(diag):]):
        return None
    return [sum(V[j][k] * y[k] for k in range(M.cols)) for j in range(M.cols)]


# ---------------------------------------------------------------------------
# restriction of scalars and cokernels


def restrict_scalars(M: Matrix) -> Matrix:
    """Integer matrix of ``M`` over ``Z[x]/(f)`` w.r.t. the power basis."""
    R = M.ring
    if not isinstance(R, MonogenicOrder):
        raise WrongRingKind("restrict_scalars needs a monogenic order")
    n = R.n
    big = [[0] * (M.cols * n) for _ in range(M.rows * n)]
    for i, row in enumerate(M.data):
        for j, a in enumerate(row):
            if R.is_zero(a):
                continue
            blk = R.mult_matrix(a)
            for r in range(n):
                dst = big[i * n + r]
                for c in range(n):
                    dst[j * n + c] = blk[r][c]
    return Matrix(Integers(), M.rows * n, M.cols * n, big)


def cokernel_invariants(M: Matrix):
    """``(torsion invariant factors > 1, free rank)`` of ``coker M`` as an abelian group."""
    R = M.ring
    if isinstance(R, MonogenicOrder):
        M = restrict_scalars(M)
    elif not isinstance(R, Integers):
        raise WrongRingKind(f"cokernel_invariants over {R.describe()}")
    facs = invariant_factors(M)
    return tuple(d for d in facs if d != 1), M.rows - len(facs)


# ---------------------------------------------------------------------------
# graded maps


class GradedMap:
    """A homogeneous map of graded free modules over ``F_p[x_1..x_v]``.

    Shifts are generator degrees: the generator of ``B(-s)`` sits in degree
    ``s``.  Entry ``(i, j)`` is homogeneous of degree ``source[j] - target[i]``.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, matrix: Matrix):
        R = matrix.ring
        if not isinstance(R, GradedPoly):
            raise WrongRingKind("GradedMap needs a graded polynomial ring")
        if matrix.shape != (len(target), len(source)):
            raise ShapeMismatch("matrix shape does not match the shift lists")
        for i, row in enumerate(matrix.data):
            for j, a in enumerate(row):
                if a and R.degree_of(a) != source[j] - target[i]:
                    raise InhomogeneousElement(
                        f"entry ({i},{j}) = {R.fmt(a)} is not homogeneous of degree {source[j] - target[i]}")
        self.source = tuple(source)
        self.target = tuple(target)
        self.matrix = matrix

    @property
    def ring(self):
        return self.matrix.ring

    @classmethod
    def infer(cls, M: Matrix, target=None):
        """Infer source shifts from entry degrees, given target shifts (default 0)."""
        R = M.ring
        target = tuple(target) if target is not None else (0,) * M.rows
        source = []
        for j in range(M.cols):
            s = None
            for i in range(M.rows):
                a = M.data[i][j]
                if a:
                    d = R.degree_of(a)
                    if d is None:
                        raise InhomogeneousElement(f"entry ({i},{j}) is not homogeneous")
                    s = d + target[i]
                    break
            source.append(0 if s is None else s)
        return cls(source, target, M)

    def compose(self, other: "GradedMap") -> "GradedMap":
        """``self o other``."""
        if other.target != self.source:
            raise ShapeMismatch("graded composition: shifts do not match")
        return GradedMap(other.source, self.target, self.matrix @ other.matrix)


def graded_basis(shifts, d, nvars):
    """Basis of the degree-``d`` piece of ``sum B(-s)``: generator-major, lex monomials."""
    out = []
    for g, s in enumerate(shifts):
        for m in monomials(nvars, d - s):
            out.append((g, m))
    return out


def graded_piece_rows(g: GradedMap, d: int):
    """Rows (lists of ints mod p) of the degree-``d`` component of ``g``."""
    R = g.ring
    nv = R.nvars
    row_off = []
    off = 0
    for t in g.target:
        row_off.append(off)
        off += len(monomials(nv, d - t))
    nrows = off
    cols = []
    data = g.matrix.data
    for j, s in enumerate(g.source):
        src_monos = monomials(nv, d - s)
        entries = [(i, data[i][j]) for i in range(len(g.target)) if data[i][j]]
        for u in src_monos:
            col = {}
            for i, poly in entries:
                idx = monomial_index(nv, d - g.target[i])
                base = row_off[i]
                for m, c in poly.items():
                    key = base + idx[tuple(a + b for a, b in zip(u, m))]
                    col[key] = (col.get(key, 0) + c) % R.p
            cols.append(col)
    rows = [[0] * len(cols) for _ in range(nrows)]
    for jj, col in enumerate(cols):
        for i, c in col.items():
            if c:
                rows[i][jj] = c
    return rows, nrows, len(cols)


def graded_piece(g: GradedMap, d: int) -> Matrix:
    """Matrix over ``F_p`` of the degree-``d`` component of ``g``."""
    rows, nr, nc = graded_piece_rows(g, d)
    return Matrix(PrimeField(g.ring.p), nr, nc, rows)


def solve_graded(g: GradedMap, b):
    """Solve ``g x = b`` for ``b`` homogeneous in the target; ``None`` if unsolvable."""
    R = g.ring
    if len(b) != len(g.target):
        raise ShapeMismatch("rhs length does not match target rank")
    degs = set()
    for i, bi in enumerate(b):
        if bi:
            di = R.degree_of(bi)
            if di is None:
                raise InhomogeneousElement(f"rhs entry {i} is not homogeneous")
            degs.add(di + g.target[i])
    if not degs:
        return [R.zero() for _ in g.source]
    if len(degs) > 1:
        raise InhomogeneousElement("rhs is not a homogeneous element of the target")
    d = degs.pop()
    rows, nr, nc = graded_piece_rows(g, d)
    nv = R.nvars
    rhs = []
    for i, t in enumerate(g.target):
        for m in monomials(nv, d - t):
            rhs.append(b[i].get(m, 0) if b[i] else 0)
    x = kernels.solve_mod_p(rows, nr, nc, rhs, R.p)
    if x is None:
        return None
    out = []
    k = 0
    for s in g.source:
        poly = {}
        for m in monomials(nv, d - s):
            if x[k]:
                poly[m] = x[k]
            k += 1
        out.append(poly)
    return out
