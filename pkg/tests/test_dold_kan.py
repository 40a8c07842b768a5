"""The Dold-Kan functors, levelwise exterior and tensor powers."""

import random
from functools import reduce
from math import comb, gcd

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from dle.complexes import ChainComplex, FreeModule, euler_char, homology, koszul_complex, unit_complex
from dle.derived import derived_exterior, resolve
from dle.dold_kan import (
    K,
    N,
    SurjectionIndex,
    constant_simplicial,
    degeneracy_rule,
    ez_homology_compare,
    face_rule,
    normalized_exterior,
    normalized_quotient,
    simplicial_exterior,
    simplicial_tensor,
    verify_simplicial_identities,
)
from dle.errors import RingMismatch
from dle.rings import GradedPoly, Integers, PrimeField
from dle.samples import random_scrambled_finite_abelian, random_Z_complex

Z = Integers()


def mult(n):
    return ChainComplex.from_ints(Z, [1, 1], [[[n]]])


def test_surjection_index_validation():
    assert SurjectionIndex(3, 1, (2,)).values() == (0, 0, 1, 1)
    with pytest.raises(ValueError):
        SurjectionIndex(3, 2, (1,))


def _compose_values(values, theta):
    return tuple(values[t] for t in theta)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_face_rule_against_brute_force(n):
    from itertools import combinations
    for j in range(n + 1):
        for J in combinations(range(1, n + 1), j):
            eta = SurjectionIndex(n, j, J).values()
            for i in range(n + 1):
                delta = [t if t < i else t + 1 for t in range(n)]
                g = _compose_values(eta, delta)
                Jp, kind = face_rule(n, J, i)
                assert tuple(t for t in range(1, n) if g[t] != g[t - 1]) == Jp
                missed = set(range(j + 1)) - set(g)
                assert kind == ("id" if not missed else "d0" if missed == {0} else "zero")
            for i in range(n + 1):
                sigma = [t if t <= i else t - 1 for t in range(n + 2)]
                g = _compose_values(eta, sigma)
                assert degeneracy_rule(n, J, i) == tuple(t for t in range(1, n + 2) if g[t] != g[t - 1])


def test_K_level_ranks():
    C = ChainComplex.from_ints(Z, [2, 3], [[[1, 0, 2], [0, 1, 1]]])
    A = K(C, 3)
    assert A.levels[0].rank == 2
    assert A.levels[2].rank == 2 + 2 * 3
    assert K(mult(6), 3).levels[3].rank == comb(3, 0) + comb(3, 1)


def test_N_of_constant_is_degree_zero():
    A = constant_simplicial(Z, FreeModule(Z, 2), 3)
    C = N(A)
    assert C.ranks()[0] == 2 and all(r == 0 for r in C.ranks()[1:])


def test_N_Lambda2_K_koszul():
    B = GradedPoly(2, 2)
    P = koszul_complex(B, [B.var(0), B.var(1)])
    C = normalized_exterior(2, P)
    assert C.length <= 4
    assert euler_char(C) == sympy.Rational(1, 4)


def test_simplicial_exterior_edge_cases():
    A = K(mult(6), 3)
    assert simplicial_exterior(1, A).ranks() == A.ranks()
    assert simplicial_exterior(0, A).ranks() == [1] * 4
    E = simplicial_exterior(3, A)
    assert E.ranks() == [comb(r, 3) for r in A.ranks()]
    assert E.ranks()[0] == 0


def test_simplicial_tensor_examples():
    P = ChainComplex.from_ints(Z, [1, 2], [[[2, 3]]])
    Q = mult(5)
    A, Bq = K(P, 3), K(Q, 3)
    T = simplicial_tensor(A, constant_simplicial(Z, FreeModule(Z, 1), 3))
    assert T.ranks() == A.ranks()
    assert simplicial_tensor(A, Bq).levels[1].rank == (1 + 2) * (1 + 1)
    assert simplicial_tensor(A, Bq).ranks() == simplicial_tensor(Bq, A).ranks()
    assert not verify_simplicial_identities(simplicial_tensor(A, Bq))
    with pytest.raises(RingMismatch):
        simplicial_tensor(A, K(ChainComplex(PrimeField(2), [1], []), 3))


def test_round_trip_random_complexes():
    rng = random.Random(123)
    for _ in range(100):
        C = random_Z_complex(rng)
        A = K(C, max(C.length, 0) + 1)
        assert N(A) == C
        assert normalized_quotient(A) == C
        for X in (A, simplicial_exterior(2, A), simplicial_exterior(3, A)):
            assert verify_simplicial_identities(X) == []


@pytest.mark.parametrize("p", [2, 3, 5])
def test_round_trip_koszul(p):
    B = GradedPoly(p, 2)
    P = koszul_complex(B, [B.var(0), B.var(1)])
    A = K(P, 3)
    assert verify_simplicial_identities(A) == []
    assert N(A) == P


def test_structured_and_explicit_exterior_agree():
    rng = random.Random(5)
    for _ in range(20):
        P = random_Z_complex(rng, max_terms=3, max_rank=2)
        for k in (2, 3):
            L = k * max(P.length, 0) + 1
            explicit = normalized_quotient(simplicial_exterior(k, K(P, L)))
            fast = normalized_exterior(k, P)
            assert homology(explicit).invariants() == homology(fast).invariants()


def test_tensor_identities_random():
    rng = random.Random(6)
    for _ in range(30):
        P = random_Z_complex(rng, max_terms=3, max_rank=2)
        Q = random_Z_complex(rng, max_terms=3, max_rank=2)
        L = max(P.length, 0) + max(Q.length, 0) + 1
        assert verify_simplicial_identities(simplicial_tensor(K(P, L), K(Q, L))) == []


def test_ez_compare_examples():
    r = ez_homology_compare(mult(2), mult(2))
    assert r.equal and r.left[0].torsion == (2,) and r.left[1].torsion == (2,)
    assert ez_homology_compare(unit_complex(Z), mult(7)).equal
    r = ez_homology_compare(mult(2), mult(3))
    assert r.equal and r.right.is_acyclic()


def test_ez_compare_random_pairs():
    rng = random.Random(7)
    for _ in range(50):
        P = random_Z_complex(rng, max_terms=3, max_rank=3, max_entry=6, min_terms=2, min_rank=1)
        Q = random_Z_complex(rng, max_terms=3, max_rank=2, max_entry=6, min_terms=2, min_rank=1)
        assert ez_homology_compare(P, Q).equal


def _wedge_invariants(factors, k):
    """Invariant factors of Lambda^k of sum Z/a_i: one Z/gcd(a_S) per k-subset S."""
    from itertools import combinations
    cyc = [reduce(gcd, S) for S in combinations(factors, k)]
    if not cyc:
        return []
    return [abs(int(d)) for d in sympy_invariant_factors(sympy.diag(*cyc), domain=sympy.ZZ) if abs(int(d)) != 1]


@given(st.integers(0, 10 ** 6))
def test_right_exactness_H0(seed):
    rng = random.Random(seed)
    M = random_scrambled_finite_abelian(rng)
    facs = [abs(int(d)) for d in sympy_invariant_factors(sympy.Matrix(M.relations.data), domain=sympy.ZZ)]
    for k in (2, 3):
        H = homology(derived_exterior(k, resolve(M)))
        assert list(H[0].torsion) == _wedge_invariants(facs, k)
        assert H[0].free_rank == 0


def test_amplitude_bound():
    rng = random.Random(12)
    for _ in range(20):
        M = random_scrambled_finite_abelian(rng)
        P = resolve(M).complex
        for k in (2, 3):
            H = homology(derived_exterior(k, P))
            assert all(H[n] is None or H[n].is_zero() for n in range(k * P.length + 1, len(H.groups)))
