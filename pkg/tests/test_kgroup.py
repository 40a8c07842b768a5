"""Class-level lambda calculus: series, chi evaluation and profile solving."""

import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dle.complexes import FPModule
from dle.derived import chi_derived_exterior
from dle.errors import MissingProfile, NonFiniteClass, UnderdeterminedProfile
from dle.kgroup import (
    Atom,
    ChiValue,
    KClass,
    LambdaSeries,
    chi_eval,
    closed_form,
    closed_form_check,
    finite_abelian_lambda_chi,
    lambda_power,
    lambda_series,
    resolution_relation,
    residue_field,
    solve_profile,
    solve_profiles,
)
from dle.samples import random_finite_abelian

# -- ChiValue -----------------------------------------------------------------


def test_chi_value_arithmetic():
    q = ChiValue.symbol("q")
    assert q * q == q ** 2
    assert (q ** 3) * (q ** -3) == 1
    assert ChiValue(Fraction(2, 3)) * 3 == 2
    assert (ChiValue(4) * q) / q == 4
    assert (q ** -2).exponent("q") == -2
    assert str(ChiValue(2) * q ** -1) == "2*q^-1"
    assert (q ** 5).log_ratio(q) == 5
    assert ChiValue(3).log_ratio(q) is None


def test_chi_value_rejects_nonpositive():
    with pytest.raises(ValueError):
        ChiValue(0)
    with pytest.raises(ValueError):
        ChiValue(-2)


# -- chi_eval -----------------------------------------------------------------

def test_chi_of_difference_is_one():
    k = Atom("k", 0, 5)
    x = KClass.of_atom(k) - KClass.of_atom(k)
    assert chi_eval(x) == 1


def test_chi_of_multiple():
    k = Atom("k", 0, 3)
    assert chi_eval(KClass.of_atom(k, 2)) == 9


def test_junk_has_trivial_chi():
    k = Atom("k", 0, 7)
    x = KClass.of_atom(k) * KClass.of_atom(k)
    assert x.junk and x.free_mult == 0 and not x.terms
    assert chi_eval(x) == 1


def test_chi_needs_finite_class():
    with pytest.raises(NonFiniteClass):
        chi_eval(KClass.unit(1))
    with pytest.raises(NonFiniteClass):
        chi_eval(KClass.of_atom(Atom("m", 1)))


def test_chi_needs_a_profile_entry():
    k = Atom("k", 0, 2)
    with pytest.raises(MissingProfile):
        chi_eval(KClass.of_atom(k, 1, 2))


# -- lambda_series ------------------------------------------------------------

@pytest.mark.parametrize("n", [-3, -1, 0, 1, 2, 5])
def test_series_of_trivial_bundle(n):
    s = lambda_series(KClass.unit(n), 6)
    for r in range(7):
        expected = comb(n, r) if n >= 0 else (-1) ** r * comb(-n + r - 1, r)
        assert s[r] == KClass.unit(expected)


def test_series_of_residue_field_atom():
    p = 3
    k = Atom("k", 0, p, ((2, Fraction(1, p * p)),))
    s = lambda_series(KClass.of_atom(k), 2)
    assert s[0] == KClass.unit()
    assert s[1] == KClass.of_atom(k)
    assert s[2] == KClass.of_atom(k, 1, 2)
    assert chi_eval(s[2]) == Fraction(1, 9)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_exterior_square_of_maximal_ideal_class(p):
    # [m] = [O] - [k]; the t^2 coefficient is [k]^2 - lambda^2[k] - [k]
    k = Atom("k", 0, p, ((2, Fraction(1, p * p)),))
    m = KClass.unit() - KClass.of_atom(k)
    c2 = lambda_series(m, 2)[2]
    assert c2.free_mult == 0 and c2.junk
    assert c2.term_dict() == {("k", 1): -1, ("k", 2): -1}
    assert chi_eval(c2) == p


def test_lambda_power_negative_is_zero():
    assert lambda_power(KClass.unit(3), -1).is_zero()
    assert lambda_power(KClass.unit(3), 0) == KClass.unit()


def test_series_inverse_needs_unit_constant():
    with pytest.raises(ValueError):
        LambdaSeries([KClass.unit(2), KClass.zero()]).inverse()


ATOMS = [Atom("a", 0, 2), Atom("b", 0, 3), Atom("c", 1), Atom("d", 2)]


@st.composite
def classes(draw):
    x = KClass.unit(draw(st.integers(-3, 3)))
    for atom in ATOMS:
        c = draw(st.integers(-2, 2))
        if c:
            x = x + KClass.of_atom(atom, c)
    return x


def same(a: KClass, b: KClass):
    # the junk flag only records that chi-trivial products may be present
    return a.free_mult == b.free_mult and a.terms == b.terms


RMAX = 5


@given(classes(), classes())
def test_series_is_multiplicative(x, y):
    lhs = lambda_series(x + y, RMAX)
    rhs = lambda_series(x, RMAX) * lambda_series(y, RMAX)
    assert all(same(lhs[r], rhs[r]) for r in range(RMAX + 1))


@given(classes())
def test_series_of_negative_is_inverse(x):
    prod = lambda_series(x, RMAX) * lambda_series(-x, RMAX)
    one = LambdaSeries.one(RMAX)
    assert all(same(prod[r], one[r]) for r in range(RMAX + 1))


# -- profile solving ----------------------------------------------------------

@pytest.mark.parametrize("rmax", [2, 5, 12])
def test_profile_of_maximal_ideal(rmax):
    f = residue_field("P", "q")
    sol = solve_profiles([f.k, f.m], f.relations, rmax, targets=[f.k.name])
    q = ChiValue.symbol("q")
    m = sol.atom(f.m.name)
    for r in range(2, rmax + 1):
        assert m.c(r) == q ** ((-1) ** r)


@pytest.mark.parametrize("rmax", [2, 7, 12])
def test_profile_of_residue_field(rmax):
    f = residue_field("P", 4)
    k, chain = solve_profile(f.k, f.relations, rmax, known=[f.m])
    for r in range(2, rmax + 1):
        assert k.c(r) == (Fraction(4) ** r if r % 2 else Fraction(1, 4 ** r))
    assert chain and all("=" in line for line in chain)


def test_profile_of_rank_one_resolution():
    omega = Atom("Omega", 0, 6)
    solved, chain = solve_profile(omega, [resolution_relation(omega, 1, 1)], 8)
    for r in range(2, 9):
        assert solved.c(r) * solved.c(r - 1) == 1
    assert solved.c(2) == Fraction(1, 6) and solved.c(3) == 6
    assert len(chain) == 7


def test_profile_without_relations_is_underdetermined():
    with pytest.raises(UnderdeterminedProfile):
        solve_profile(Atom("x", 0, 2), [], 2)


@pytest.mark.parametrize("sym", ["q", "s", "u"])
def test_kernel_class_closed_form_through_12(sym):
    rep = closed_form_check("prop44", 12, [("P", sym, 1)])
    base = ChiValue.symbol(sym)
    assert [row.r for row in rep.rows] == list(range(2, 13))
    for row in rep.rows:
        assert row.actual == closed_form(base, row.r)
        assert row.exponent == (row.r if row.r % 2 else -row.r)


def test_closed_form_examples():
    q = ChiValue.symbol("q")
    prop = closed_form_check("prop44", 2)
    assert prop.rows[0].actual == q ** -2
    cor = closed_form_check("cor45", 3)
    A = cor.base
    assert cor.rows[1].r == 3 and cor.rows[1].actual == A ** 3
    thm = closed_form_check("thm46", 4)
    assert thm.rows[2].r == 4 and thm.rows[2].actual == thm.base ** -1
    assert [row.exponent for row in thm.rows] == [-1, 1, -1]


def test_closed_form_rejects_bad_input():
    with pytest.raises(ValueError):
        closed_form_check("prop44", 1)
    with pytest.raises(ValueError):
        closed_form_check("nope")


def test_symbolic_agrees_with_direct():
    rng = random.Random(31)
    for _ in range(20):
        M = random_finite_abelian(rng, 2, 9)
        orders = [M.relations.data[i][i] for i in range(M.generators.rank)]
        for r in (2, 3):
            symbolic, _ = finite_abelian_lambda_chi(orders, r)
            assert symbolic == chi_derived_exterior(r, FPModule.cyclic_Z(*orders))
