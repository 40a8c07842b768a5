"""Monogenic orders in dimension one and the graded local surface model."""

import random
from fractions import Fraction
from functools import reduce

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from dle.arithmetic import (
    LocalSurfaceCase,
    MonogenicCase,
    chi_exponent,
    d1_chi_check,
    d1_lambda_relation,
    discriminant_sweep,
    lemma_4_2_direct,
    lemma_4_2_symbolic,
    lemma_4_3_direct,
    lemma_4_3_symbolic,
    local_multiplicity,
    thm_1_3_suite,
    thm_2_5_suite,
)
from dle.complexes import cochain_chi, euler_char
from dle.derived import derived_exterior, derived_tensor
from dle.errors import CommonComponent, InvalidParameter
from dle.rings import GradedPoly

X = sympy.Symbol("x")


def sympy_disc(f):
    return int(sympy.discriminant(sympy.Poly(list(reversed(f)), X)))


# -- dimension one ------------------------------------------------------------

@pytest.fixture(scope="module")
def sweep():
    return discriminant_sweep(4, 5)


def test_sweep_matches_omega_order(sweep):
    rows = sweep
    assert len(rows) == 11 + 11 ** 2 + 11 ** 3 + 11 ** 4
    assert all(omega == disc for _, omega, disc in rows)


def test_sweep_against_sympy_sample(sweep):
    rng = random.Random(3)
    for f, _, disc in rng.sample(sweep, 300):
        assert disc == abs(sympy_disc(f))


@pytest.mark.parametrize("f,disc", [((1, 0, 1), -4), ((-1, -1, 1), 5), ((0, 1), 1), ((-2, 0, 0, 1), -108)])
def test_monogenic_discriminant(f, disc):
    case = MonogenicCase.of(f)
    assert case.disc == disc == sympy_disc(f)


def _actuals(checks):
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]
    return [c.actual for c in checks]


def test_d1_gaussian_integers():
    assert _actuals(d1_chi_check((1, 0, 1))) == ["4", "true", "1/4", "4"]


def test_d1_golden_ratio():
    assert _actuals(d1_chi_check((-1, -1, 1)))[2] == "1/5"


def test_d1_linear_is_trivial():
    assert _actuals(d1_chi_check((0, 1))) == ["1", "true", "1", "1"]


def test_d1_duality_on_sweep_sample(sweep):
    rng = random.Random(8)
    for f, _, disc in rng.sample([row for row in sweep if row[2]], 200):
        C = MonogenicCase.of(f).c01()
        assert cochain_chi(C) * euler_char(C) == 1
        assert euler_char(C) == disc


def test_d1_square_has_infinite_omega():
    # x^2: f' = 2x is a zero divisor, so Omega is infinite and disc = 0
    case = MonogenicCase.of((0, 0, 1))
    assert case.disc == 0 and case.omega_order() == 0


@pytest.mark.parametrize("f", [(1, 0, 1), (-1, -1, 1), (0, 1), (3, 1, 0, 1)])
def test_d1_lambda_relation(f):
    checks = d1_lambda_relation(f, rmax=6)
    assert len(checks) == 5
    assert all(c.passed and c.actual == "1" for c in checks)


def test_d1_lambda_direct_values():
    P = MonogenicCase.of((1, 0, 1)).c01()
    assert [euler_char(derived_exterior(r, P)) for r in (1, 2, 3)] == [4, Fraction(1, 4), 4]


def test_d1_lambda_needs_rmax():
    with pytest.raises(InvalidParameter):
        d1_lambda_relation((1, 0, 1), rmax=1)


# -- dimension two: intersections --------------------------------------------

@pytest.mark.parametrize("p,f,g,mult", [(2, "x", "y", 1), (3, "x", "y2", 2), (2, "x2", "y3", 6)])
def test_local_multiplicity(p, f, g, mult):
    B = GradedPoly(p, 2)
    mono = {"x": B.var(0), "y": B.var(1), "y2": B.monomial((0, 2)), "x2": B.monomial((2, 0)),
            "y3": B.monomial((0, 3))}
    assert local_multiplicity(p, mono[f], mono[g]) == mult


def test_common_component_rejected():
    B = GradedPoly(2, 2)
    x, y = B.var(0), B.var(1)
    with pytest.raises(CommonComponent):
        local_multiplicity(2, x, B.mul(x, y))
    with pytest.raises(CommonComponent):
        thm_1_3_suite(2, x, B.mul(x, y))


def test_intersection_suite_default_pairs():
    checks = thm_1_3_suite(2)
    assert len(checks) == 11
    assert all(c.passed for c in checks)
    assert [c.actual for c in checks if c.name.startswith("chi(B/(f) (x)^L B/(g))")] == ["2^1", "2^2", "2^6"]


def test_intersection_suite_rejects_inhomogeneous():
    B = GradedPoly(3, 2)
    with pytest.raises(InvalidParameter):
        thm_1_3_suite(3, B.add(B.var(0), B.one()), B.var(1))


def _linear_form(B, a, b):
    return B.add(B.scale(a, B.var(0)), B.scale(b, B.var(1)))


@settings(max_examples=50)
@given(st.lists(st.sampled_from([(1, 0), (1, 1), (1, 2)]), min_size=1, max_size=2),
       st.lists(st.sampled_from([(1, 0), (1, 1), (1, 2)]), min_size=1, max_size=2),
       st.lists(st.sampled_from([(0, 1), (1, 3), (1, 4)]), min_size=1, max_size=2))
def test_multiplicity_is_additive(f1, f2, g):
    # lines through the origin over F_5; the g-lines never coincide with an f-line
    B = GradedPoly(5, 2)

    def product_of(forms):
        return reduce(B.mul, (_linear_form(B, a, b) for a, b in forms))

    F1, F2, G = product_of(f1), product_of(f2), product_of(g)
    m1, m2 = local_multiplicity(5, F1, G), local_multiplicity(5, F2, G)
    assert m1 == len(f1) * len(g) and m2 == len(f2) * len(g)
    assert local_multiplicity(5, B.mul(F1, F2), G) == m1 + m2
    case = LocalSurfaceCase.of(5)

    def chi(F):
        return euler_char(derived_tensor(case.quotient(F), case.quotient(G)))

    assert chi(B.mul(F1, F2)) == chi(F1) * chi(F2) == 5 ** (m1 + m2)


def test_chi_exponent():
    assert chi_exponent(Fraction(1, 8), 2) == -3
    assert chi_exponent(Fraction(9), 3) == 2
    with pytest.raises(ValueError):
        chi_exponent(Fraction(6), 2)


# -- dimension two: exterior powers of m and k -------------------------------

@pytest.mark.parametrize("p", [2, 3, 5])
def test_exterior_squares_of_m_and_k(p):
    checks = thm_2_5_suite(p)
    assert [c.actual for c in checks] == [str(p), f"1/{p * p}"]
    assert all(c.passed for c in checks)


@pytest.mark.parametrize("p,r,value", [(2, 2, "2"), (2, 3, "1/2"), (3, 3, "1/3")])
def test_maximal_ideal_direct(p, r, value):
    c = lemma_4_2_direct(p, r)
    assert c.passed and c.actual == value


@pytest.mark.parametrize("p,r,value", [(2, 2, "1/4"), (3, 2, "1/9")])
def test_residue_field_direct(p, r, value):
    c = lemma_4_3_direct(p, r)
    assert c.passed and c.actual == value


def test_residue_field_cube_needs_flag():
    with pytest.raises(InvalidParameter):
        lemma_4_3_direct(2, 3)


@pytest.mark.expensive
def test_residue_field_cube_expensive():
    c = lemma_4_3_direct(2, 3, expensive=True)
    assert c.passed and c.actual == "8"


def test_residue_field_profiles_symbolic():
    assert all(c.passed for c in lemma_4_2_symbolic(12))
    assert all(c.passed for c in lemma_4_3_symbolic(12))
    assert lemma_4_3_symbolic(3, 2)[-1].actual == "8"


@pytest.mark.parametrize("p", [1, 4, 9])
def test_non_prime_rejected(p):
    with pytest.raises(InvalidParameter):
        LocalSurfaceCase.of(p)
    with pytest.raises(InvalidParameter):
        thm_2_5_suite(p)


def test_direct_computation_range():
    with pytest.raises(InvalidParameter):
        lemma_4_2_direct(2, 4)
