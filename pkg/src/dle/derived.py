"""Derived exterior powers, derived tensor products and resolution bookkeeping.

``derived_exterior(k, M)`` is ``N Lambda^k K P`` for a free resolution ``P`` of
``M``.  Over Z resolutions are computed; over other rings the presentation is
used when it is already a resolution, cyclic modules whose relations form a
regular sequence get their Koszul resolution, and anything else must be
supplied as a :class:`Resolution`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .complexes import (
    ChainComplex,
    ComplexMap,
    FPModule,
    FreeModule,
    HomologyData,
    ResolutionCertificate,
    _unimodular_inverse,
    default_cutoff,
    direct_sum,
    euler_char,
    exterior_basis,
    exterior_power_map,
    free_resolution_Z,
    homology,
    is_graded,
    koszul_complex,
    tot_tensor,
    verify_resolution,
    zero_free,
)
from .dold_kan import ComparisonReport, compare_homology, normalized_exterior
from .errors import LiftFailure, NoResolution, RingMismatch
from .linalg import (
    GradedMap,
    Matrix,
    block_matrix,
    hstack,
    invariant_factors,
    kron,
    rank,
    restrict_scalars,
    solve,
    solve_graded,
)
from .rings import GradedPoly, Integers, MonogenicOrder, PrimeField

# ---------------------------------------------------------------------------
# resolutions


@dataclass
class Resolution:
    """A free resolution ``P -> M`` with its augmentation.

    ``augmentation`` maps ``P_0`` to the generators of ``M``; composing with
    the quotient map gives ``P_0 -> M``.
    """

    module: FPModule
    complex: ChainComplex
    augmentation: Matrix
    certificate: ResolutionCertificate | None = field(default=None, repr=False)

    @property
    def ring(self):
        return self.complex.ring


def _identity_aug(M: FPModule):
    return Matrix.identity(M.ring, M.generators.rank)


def _try_presentation(M: FPModule, cutoff=None):
    P = M.presentation_complex()
    cert = verify_resolution(P, M, cutoff)
    return Resolution(M, P, _identity_aug(M), cert) if cert else None


def _try_koszul(M: FPModule, cutoff=None):
    R = M.ring
    if M.generators.rank != 1 or M.relations.cols == 0:
        return None
    if is_graded(R) and M.generators.shifts != (0,):
        return None
    P = koszul_complex(R, list(M.relations.data[0]))
    cert = verify_resolution(P, M, cutoff)
    return Resolution(M, P, _identity_aug(M), cert) if cert else None


def resolve(M: FPModule, cutoff=None) -> Resolution:
    """A verified free resolution of ``M``, or :class:`NoResolution`."""
    R = M.ring
    if isinstance(R, Integers):
        P = free_resolution_Z(M)
        return Resolution(M, P, _identity_aug(M), verify_resolution(P, M))
    res = _try_presentation(M, cutoff) or _try_koszul(M, cutoff)
    if res is None:
        raise NoResolution(f"no verified resolution found for a module over {R.describe()}; supply one")
    return res


def supplied_resolution(M: FPModule, P: ChainComplex, augmentation=None, cutoff=None) -> Resolution:
    """Wrap a user-supplied resolution after verifying it (``P_0`` = generators by default)."""
    aug = augmentation if augmentation is not None else _identity_aug(M)
    cert = verify_resolution(P, M, cutoff)
    if not cert:
        raise NoResolution(f"supplied complex is not a resolution: {cert.detail}")
    return Resolution(M, P, aug, cert)


def _as_complex(obj, cutoff=None) -> ChainComplex:
    if isinstance(obj, ChainComplex):
        return obj
    if isinstance(obj, Resolution):
        return obj.complex
    if isinstance(obj, FPModule):
        return resolve(obj, cutoff).complex
    raise TypeError(f"expected a module, resolution or complex, got {type(obj).__name__}")


def identity_complex(ring, degree: int, rank: int = 1, shifts=None) -> ChainComplex:
    """``0 -> F -> (id) -> F -> 0`` with ``F`` in degrees ``degree`` and ``degree - 1``."""
    if degree < 1:
        raise ValueError("identity complexes start in degree >= 1")
    if is_graded(ring) and shifts is None:
        shifts = (0,) * rank
    F = FreeModule(ring, rank, tuple(shifts) if shifts is not None else None)
    terms = [zero_free(ring)] * (degree - 1) + [F, F]
    diffs = [Matrix(ring, terms[n - 1].rank, terms[n].rank) for n in range(1, degree)]
    diffs.append(Matrix.identity(ring, rank))
    return ChainComplex(ring, terms, diffs)


def _random_unimodular(n, rng):
    Z = Integers()
    m = Matrix.identity(Z, n)
    for i in range(n):
        m.data[i][i] = rng.choice((1, -1))
        for j in range(i + 1, n):
            m.data[i][j] = rng.randint(-2, 2)
    if n > 1:
        perm = list(range(n))
        rng.shuffle(perm)
        m = Matrix(Z, n, n, [m.data[perm[i]] for i in range(n)])
    return m


def pad_resolution(res: Resolution, pads, seed=None) -> Resolution:
    """Add identity complexes (``pads`` = ``[(degree, rank), ...]``) and, over Z
    with a ``seed``, scramble every term by a random unimodular change of basis."""
    P = res.complex
    R = P.ring
    aug = res.augmentation
    for degree, rk in pads:
        if is_graded(R):
            pad = identity_complex(R, degree, rk, (0,) * rk)
        else:
            pad = identity_complex(R, degree, rk)
        P = direct_sum(P, pad)
        if degree == 1:
            aug = hstack(R, [aug, Matrix(R, aug.rows, rk)], aug.rows)
    if seed is not None and isinstance(R, Integers):
        rng = random.Random(seed)
        A = [_random_unimodular(t.rank, rng) for t in P.terms]
        Ainv = [_unimodular_inverse(a) if a.rows else a for a in A]
        diffs = [Ainv[n - 1] @ P.d[n] @ A[n] for n in range(1, len(P.terms))]
        P = ChainComplex(R, P.terms, diffs)
        aug = aug @ A[0]
    return Resolution(res.module, P, aug, verify_resolution(P, res.module))


# ---------------------------------------------------------------------------
# derived functors


def derived_exterior(k: int, obj, cutoff=None) -> ChainComplex:
    """``lambda~^k``: ``N Lambda^k K P`` on the amplitude ``[0, k * len(P)]``."""
    return normalized_exterior(k, _as_complex(obj, cutoff))


def derived_tensor(M, N, cutoff=None) -> ChainComplex:
    """Total complex of the tensor product of resolutions (homology = Tor)."""
    P, Q = _as_complex(M, cutoff), _as_complex(N, cutoff)
    if P.ring != Q.ring:
        raise RingMismatch("derived tensor of modules over different rings")
    return tot_tensor(P, Q)


def chi_derived_exterior(k: int, M, cutoff=None, window=None) -> Fraction:
    return euler_char(derived_exterior(k, M, cutoff), cutoff, window)


# ---------------------------------------------------------------------------
# domination of resolutions


def _solve_block(R, M: Matrix, src, tgt, b):
    if isinstance(R, GradedPoly):
        return solve_graded(GradedMap(src, tgt, M), b)
    return solve(M, b)


def _shifts(F: FreeModule):
    return F.shifts if F.shifts is not None else (0,) * F.rank


def comparison_map(P: Resolution, Q: Resolution) -> ComplexMap:
    """A chain map ``P -> Q`` over the identity of the module, built by lifting."""
    R = P.ring
    M = P.module
    rels = M.relations
    G = _shifts(M.generators)
    Pc, Qc = P.complex, Q.complex
    top = max(len(Pc.terms), len(Qc.terms))
    phi = []
    # degree 0: eps_Q phi_0 = eps_P modulo the relations
    A = hstack(R, [Q.augmentation, rels], rels.rows)
    src = tuple(_shifts(Qc.term(0))) + tuple(M.relation_shifts if is_graded(R) else (0,) * rels.cols)
    m0 = Matrix(R, Qc.rank(0), Pc.rank(0))
    for j in range(Pc.rank(0)):
        x = _solve_block(R, A, src, G, P.augmentation.column(j))
        if x is None:
            raise LiftFailure(f"cannot lift generator {j} of P_0 through the augmentation of Q")
        for i in range(Qc.rank(0)):
            m0.data[i][j] = x[i]
    phi.append(m0)
    for n in range(1, top):
        target = phi[n - 1] @ Pc.diff(n)
        dq = Qc.diff(n)
        mn = Matrix(R, Qc.rank(n), Pc.rank(n))
        for j in range(Pc.rank(n)):
            b = target.column(j)
            if all(R.is_zero(v) for v in b):
                continue
            x = _solve_block(R, dq, _shifts(Qc.term(n)), _shifts(Qc.term(n - 1)), b)
            if x is None:
                raise LiftFailure(f"cannot lift in degree {n}")
            for i in range(Qc.rank(n)):
                mn.data[i][j] = x[i]
        phi.append(mn)
    return ComplexMap(Pc, Qc, phi)


def is_surjective(M: Matrix, src=None, tgt=None) -> bool:
    """Whether ``M`` maps onto its (free) target."""
    R = M.ring
    if M.rows == 0:
        return True
    if isinstance(R, Integers):
        facs = invariant_factors(M)
        return len(facs) == M.rows and all(abs(d) == 1 for d in facs)
    if isinstance(R, MonogenicOrder):
        return is_surjective(restrict_scalars(M))
    if isinstance(R, PrimeField):
        return rank(M) == M.rows
    # graded Nakayama: surjective iff the degree-0 part spans F / mF
    src = src or (0,) * M.cols
    tgt = tgt or (0,) * M.rows
    k = PrimeField(R.p)
    const = Matrix(k, M.rows, M.cols)
    zero_exp = (0,) * R.nvars
    for i in range(M.rows):
        for j in range(M.cols):
            a = M.data[i][j]
            if a and src[j] == tgt[i]:
                const.data[i][j] = a.get(zero_exp, 0) % R.p
    return rank(const) == M.rows


@dataclass
class DominationWitness:
    R: ChainComplex
    pi_P: ComplexMap
    pi_Q: ComplexMap
    augmentation: Matrix
    surjective_P: list
    surjective_Q: list
    chain_maps: bool
    augmentation_ok: bool
    is_resolution: bool

    @property
    def valid(self):
        return (self.chain_maps and self.augmentation_ok and self.is_resolution
                and all(self.surjective_P) and all(self.surjective_Q))


def dominate(P: Resolution, Q: Resolution) -> DominationWitness:
    """A resolution ``R`` mapping degreewise onto both ``P`` and ``Q``.

    ``R = P + sum_{n >= 1} D^n(Q_n)`` where ``D^n(F)`` is the contractible
    complex ``F -> (id) -> F`` in degrees ``n, n - 1``.  ``R -> P`` projects;
    ``R -> Q`` is a comparison map on ``P`` and ``(id, d_Q)`` on each ``D^n``.
    """
    if P.module != Q.module:
        raise ValueError("resolutions of different modules")
    Rg = P.ring
    phi = comparison_map(P, Q)
    Pc, Qc = P.complex, Q.complex
    top = max(len(Pc.terms), len(Qc.terms))
    Rc = Pc
    for n in range(1, top):
        if Qc.rank(n):
            shifts = Qc.term(n).shifts
            Rc = direct_sum(Rc, identity_complex(Rg, n, Qc.rank(n), shifts))
    # columns of R_m: P_m, then the top of D^m, then the bottom of D^{m+1}
    pi_P, pi_Q = [], []
    for m in range(len(Rc.terms)):
        blocks_P = [Matrix.identity(Rg, Pc.rank(m))]
        blocks_Q = [phi.component(m)]
        if m >= 1 and Qc.rank(m):
            blocks_P.append(Matrix(Rg, Pc.rank(m), Qc.rank(m)))
            blocks_Q.append(Matrix.identity(Rg, Qc.rank(m)))
        if Qc.rank(m + 1):
            blocks_P.append(Matrix(Rg, Pc.rank(m), Qc.rank(m + 1)))
            blocks_Q.append(Qc.diff(m + 1))
        pi_P.append(hstack(Rg, blocks_P, Pc.rank(m)))
        pi_Q.append(hstack(Rg, blocks_Q, Qc.rank(m)))
    piP = ComplexMap(Rc, Pc, pi_P)
    piQ = ComplexMap(Rc, Qc, pi_Q)
    aug = P.augmentation @ pi_P[0] if Rc.rank(0) else Matrix(Rg, P.augmentation.rows, 0)
    diff = Q.augmentation @ pi_Q[0] - aug
    rels = P.module.relations
    G = _shifts(P.module.generators)
    rel_src = P.module.relation_shifts if is_graded(Rg) else (0,) * rels.cols
    aug_ok = all(_solve_block(Rg, rels, rel_src, G, diff.column(j)) is not None
                 for j in range(diff.cols)) if rels.cols else diff.is_zero()
    cert = verify_resolution(Rc, P.module)
    return DominationWitness(
        Rc, piP, piQ, aug,
        [is_surjective(pi_P[m], _shifts(Rc.term(m)), _shifts(Pc.term(m))) for m in range(len(Rc.terms))],
        [is_surjective(pi_Q[m], _shifts(Rc.term(m)), _shifts(Qc.term(m))) for m in range(len(Rc.terms))],
        piP.is_chain_map() and piQ.is_chain_map(), aug_ok, bool(cert))


# ---------------------------------------------------------------------------
# independence and acyclicity


def _common_cutoff(*complexes):
    return max(default_cutoff(C) for C in complexes)


def independence_report(k: int, P, Q, cutoff=None) -> ComparisonReport:
    """Homology of ``N Lambda^k K P`` against ``N Lambda^k K Q``, degree by degree."""
    A = derived_exterior(k, P)
    B = derived_exterior(k, Q)
    if is_graded(A.ring) and cutoff is None:
        cutoff = _common_cutoff(A, B)
    HA, HB = homology(A, cutoff), homology(B, cutoff)
    rows = compare_homology(HA, HB)
    return ComparisonReport(all(r[1] for r in rows), rows, HA, HB)


@dataclass
class AcyclicityReport:
    k: int
    input_acyclic: bool
    output_acyclic: bool
    homology: HomologyData

    @property
    def passed(self):
        return self.input_acyclic and self.output_acyclic


def acyclic_exterior_check(k: int, R: ChainComplex, cutoff=None) -> AcyclicityReport:
    """Confirm that ``N Lambda^k K R`` is acyclic for an acyclic complex of frees."""
    ok_in = homology(R, cutoff).is_acyclic()
    H = homology(normalized_exterior(k, R), cutoff)
    return AcyclicityReport(k, ok_in, H.is_acyclic(), H)


# ---------------------------------------------------------------------------
# the exterior-power filtration of a split extension


@dataclass
class FiltrationReport:
    r: int
    ranks: list              # rank G_0, ..., rank G_r
    quotient_ranks: list     # rank G_i / G_{i-1}
    expected_quotient_ranks: list
    quotient_shifts: list
    basis_matching: bool
    functorial: bool

    @property
    def passed(self):
        return (self.basis_matching and self.functorial
                and self.quotient_ranks == self.expected_quotient_ranks
                and self.ranks[-1] == sum(self.quotient_ranks))


def _random_block_triangular(R, a, c, rng):
    n = a + c
    m = Matrix.identity(R, n)
    for i in range(n):
        for j in range(n):
            if i == j:
                m.data[i][j] = R.from_int(rng.choice((1, -1)))
            elif i < j and not (i >= a and j < a):
                m.data[i][j] = R.from_int(rng.randint(-2, 2))
    return m


def ses_exterior_filtration(r: int, E1: FreeModule, E3: FreeModule, seed=0) -> FiltrationReport:
    """Filtration of ``Lambda^r(E1 + E3)`` by the number of ``E1`` factors.

    ``G_i`` is spanned by wedges with at least ``r - i`` factors from ``E1``;
    ``G_i / G_{i-1}`` is matched with ``Lambda^{r-i} E1 (x) Lambda^i E3``.
    Functoriality is checked against a random automorphism preserving ``E1``.
    """
    R = E1.ring
    a, c = E1.rank, E3.rank
    n = a + c
    basis = exterior_basis(n, r)
    n3 = [sum(1 for x in S if x >= a) for S in basis]
    ranks, qranks, expected, qshifts = [], [], [], []
    matching = True
    sh = tuple(E1.shifts or (0,) * a) + tuple(E3.shifts or (0,) * c)
    for i in range(r + 1):
        ranks.append(sum(1 for t in n3 if t <= i))
        quot = [S for S, t in zip(basis, n3) if t == i]
        qranks.append(len(quot))
        expected.append(comb(a, r - i) * comb(c, i))
        pairs = [(tuple(x for x in S if x < a), tuple(x - a for x in S if x >= a)) for S in quot]
        target = [(S1, S3) for S1 in exterior_basis(a, r - i) for S3 in exterior_basis(c, i)]
        matching &= pairs == target
        qshifts.append(tuple(sum(sh[x] for x in S) for S in quot))
    # functoriality: Lambda^r g acts on G_i / G_{i-1} as Lambda^{r-i} A (x) Lambda^i C
    rng = random.Random(seed)
    g = _random_block_triangular(R, a, c, rng)
    big = exterior_power_map(r, g)
    A = g.submatrix(range(a), range(a))
    C = g.submatrix(range(a, n), range(a, n))
    functorial = True
    index = {S: j for j, S in enumerate(basis)}
    for i in range(r + 1):
        quot = [S for S, t in zip(basis, n3) if t == i]
        if not quot:
            continue
        induced = kron(exterior_power_map(r - i, A), exterior_power_map(i, C))
        for col, S in enumerate(quot):
            j = index[S]
            for row, T in enumerate(quot):
                if big.data[index[T]][j] != induced.data[row][col]:
                    functorial = False
            # no component may land in a strictly later filtration step
            if any(big.data[index[T]][j] and n3[index[T]] > i for T in basis):
                functorial = False
    return FiltrationReport(r, ranks, qranks, expected, qshifts, matching, functorial)


# ---------------------------------------------------------------------------
# Euler characteristics of split sums


@dataclass
class SplitSumReport:
    r: int
    total: Fraction
    factors: list           # chi(lambda~^{r-i} E1 (x)^L lambda~^i E3), i = 0..r
    product: Fraction

    @property
    def passed(self):
        return self.total == self.product


def split_sum_chi(r: int, E1: FPModule, E3: FPModule) -> SplitSumReport:
    """``chi(lambda~^r(E1 + E3))`` against the product over the filtration quotients.

    Each quotient contributes ``chi(lambda~^{r-i} E1 (x)^L lambda~^i E3)``; the
    ``i = 0`` and ``i = r`` terms are ``chi(lambda~^r E1)`` and ``chi(lambda~^r E3)``.
    """
    P1, P3 = _as_complex(E1), _as_complex(E3)
    total = euler_char(normalized_exterior(r, direct_sum(P1, P3)))
    factors = []
    for i in range(r + 1):
        factors.append(euler_char(tot_tensor(normalized_exterior(r - i, P1), normalized_exterior(i, P3))))
    prod = Fraction(1)
    for f in factors:
        prod *= f
    return SplitSumReport(r, total, factors, prod)


def direct_sum_module(M: FPModule, N: FPModule) -> FPModule:
    R = M.ring
    g = M.generators.direct_sum(N.generators)
    rel = block_matrix(R, [[M.relations, None], [None, N.relations]],
                       [M.generators.rank, N.generators.rank], [M.relations.cols, N.relations.cols])
    return FPModule(R, g, rel)
