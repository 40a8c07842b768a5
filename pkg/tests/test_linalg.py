"""Exact linear algebra: Smith form, solving, restriction of scalars, graded pieces."""

import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from dle.errors import InhomogeneousElement, WrongRingKind
from dle.linalg import (
    GradedMap,
    Matrix,
    cokernel_invariants,
    determinant,
    graded_piece,
    invariant_factors,
    kernel_basis,
    rank,
    restrict_scalars,
    smith_normal_form,
    solve,
)
from dle.rings import GradedPoly, Integers, MonogenicOrder, PrimeField, order_norm

Z = Integers()

int_matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_snf_examples():
    assert smith_normal_form(Matrix.identity(Z, 2)).invariant_factors == (1, 1)
    assert smith_normal_form(Matrix.from_ints(Z, [[2, 4], [0, 6]])).invariant_factors == (2, 6)
    assert smith_normal_form(Matrix.from_ints(Z, [[6]])).invariant_factors == (6,)
    with pytest.raises(WrongRingKind):
        smith_normal_form(Matrix(PrimeField(3), 1, 1, [[1]]))


@given(int_matrices)
def test_snf_certificate(rows):
    M = Matrix.from_ints(Z, rows)
    res = smith_normal_form(M)
    assert res.U @ M @ res.V == res.D
    assert abs(determinant(res.U)) == 1 and abs(determinant(res.V)) == 1
    facs = res.invariant_factors
    assert all(b % a == 0 for a, b in zip(facs, facs[1:]))
    for i in range(res.D.rows):
        for j in range(res.D.cols):
            if i != j:
                assert res.D.data[i][j] == 0


@given(int_matrices)
def test_invariant_factors_match_sympy(rows):
    ours = invariant_factors(Matrix.from_ints(Z, rows))
    theirs = [abs(int(d)) for d in sympy_invariant_factors(sympy.Matrix(rows), domain=sympy.ZZ) if d != 0]
    assert list(ours) == theirs


@given(int_matrices)
def test_kernel_basis_is_kernel(rows):
    M = Matrix.from_ints(Z, rows)
    basis = kernel_basis(M)
    assert len(basis) == M.cols - rank(M)
    for v in basis:
        assert M.apply(v) == [0] * M.rows


def test_solve_examples():
    assert solve(Matrix.from_ints(Z, [[2]]), [4]) == [2]
    assert solve(Matrix.from_ints(Z, [[2]]), [3]) is None
    B = GradedPoly(2, 2)
    x, y = B.var(0), B.var(1)
    M = Matrix(B, 1, 2, [[x, y]])
    rhs = B.add(B.mul(x, x), B.mul(x, y))
    sol = solve(GradedMap((1, 1), (0,), M), [rhs])
    assert B.add(B.mul(x, sol[0]), B.mul(y, sol[1])) == rhs
    with pytest.raises(InhomogeneousElement):
        solve(GradedMap((1, 1), (0,), M), [B.add(x, B.one())])


def _random_ring_matrix(R, rng, r, c):
    if isinstance(R, Integers):
        return Matrix(R, r, c, [[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)])
    if isinstance(R, PrimeField):
        return Matrix(R, r, c, [[rng.randrange(R.p) for _ in range(c)] for _ in range(r)])
    return Matrix(R, r, c, [[R.element([rng.randint(-3, 3) for _ in range(R.n)]) for _ in range(c)]
                            for _ in range(r)])


@pytest.mark.parametrize("R", [Z, PrimeField(5), MonogenicOrder([1, 0, 1])], ids=["Z", "GF5", "order"])
def test_solve_reproduces_rhs(R):
    rng = random.Random(3)
    for _ in range(500):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        M = _random_ring_matrix(R, rng, r, c)
        x = _random_ring_matrix(R, rng, c, 1)
        b = [row[0] for row in (M @ x).data]
        sol = solve(M, b)
        assert sol is not None
        assert M.apply(list(sol)) == b


def test_restrict_scalars_examples():
    O = MonogenicOrder([1, 0, 1])
    assert restrict_scalars(Matrix(O, 1, 1, [[O.gen()]])).data == [[0, -1], [1, 0]]
    assert restrict_scalars(Matrix(O, 1, 1, [[O.from_int(2)]])).data == [[2, 0], [0, 2]]
    two_x = O.element([0, 2])
    assert abs(determinant(restrict_scalars(Matrix(O, 1, 1, [[two_x]])))) == 4 == order_norm(O, two_x)


def test_restrict_scalars_is_multiplicative():
    O = MonogenicOrder([-1, -1, 0, 1])
    rng = random.Random(5)
    for _ in range(200):
        a, b, c = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 3)
        A = _random_ring_matrix(O, rng, a, b)
        B = _random_ring_matrix(O, rng, b, c)
        assert restrict_scalars(A @ B) == restrict_scalars(A) @ restrict_scalars(B)


def test_cokernel_invariants_examples():
    assert cokernel_invariants(Matrix.from_ints(Z, [[6]])) == ((6,), 0)
    assert cokernel_invariants(Matrix.from_ints(Z, [[2, 0], [0, 3]])) == ((6,), 0)
    assert cokernel_invariants(Matrix(Z, 1, 0)) == ((), 1)


def test_graded_piece_examples():
    B = GradedPoly(2, 2)
    x, y = B.var(0), B.var(1)
    g = GradedMap((1, 1), (0,), Matrix(B, 1, 2, [[x, y]]))
    p1 = graded_piece(g, 1)
    assert p1.shape == (2, 2) and rank(p1) == 2
    assert graded_piece(g, 0).shape == (1, 0)
    zero = GradedMap((1,), (0,), Matrix(B, 1, 1))
    assert graded_piece(zero, 2).is_zero()


def _random_homogeneous(B, rng, d):
    from dle.rings import monomials
    a = B.zero()
    for m in monomials(B.nvars, d):
        a = B.add(a, B.monomial(m, rng.randrange(B.p)))
    return a


def test_graded_piece_commutes_with_composition():
    B = GradedPoly(3, 2)
    rng = random.Random(11)
    for _ in range(200):
        s0 = [rng.randint(0, 1) for _ in range(rng.randint(1, 2))]
        s1 = [rng.randint(1, 2) + max(s0) for _ in range(rng.randint(1, 2))]
        s2 = [rng.randint(0, 1) + max(s1) for _ in range(rng.randint(1, 2))]

        def rand_map(src, tgt):
            M = Matrix(B, len(tgt), len(src), [[_random_homogeneous(B, rng, s - t) for s in src] for t in tgt])
            return GradedMap(src, tgt, M)

        h, g = rand_map(s1, s0), rand_map(s2, s1)
        for d in range(0, max(s2) + 2):
            assert graded_piece(h.compose(g), d) == graded_piece(h, d) @ graded_piece(g, d)
