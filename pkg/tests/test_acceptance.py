"""The ten acceptance criteria, each compared exactly.

Every ``test_criterion_N`` reports one ``PASS criterion N`` / ``FAIL criterion N``
line in the terminal summary (see ``conftest.py``).  Run on its own with
``pytest tests/test_acceptance.py`` or ``python tests/test_acceptance.py``.
"""

import sys
from fractions import Fraction

import pytest

from dle.arithmetic import (
    LocalSurfaceCase,
    MonogenicCase,
    d1_lambda_relation,
    discriminant_sweep,
    lemma_4_2_direct,
    lemma_4_3_direct,
    local_multiplicity,
)
from dle.complexes import cochain_chi, euler_char, homology
from dle.derived import derived_exterior
from dle.kgroup import closed_form_check
from dle.scenarios import run_scenario


def assert_all_pass(report, n_checks):
    failed = [c for c in report.checks if not c.passed]
    assert not failed, failed
    assert len(report.checks) == n_checks


@pytest.mark.parametrize("p", [2, 3, 5])
def test_criterion_1(p):
    """Exterior square of m and k over F_p[x,y]: chi = p with homology k in degree 0, and p^-2."""
    case = LocalSurfaceCase.of(p)
    Lm = derived_exterior(2, case.m_res)
    H = homology(Lm)
    assert all(g.is_zero() for g in H.groups[1:])
    k_hilb = homology(case.k_res.complex, H.cutoff)[0].hilbert
    # same Hilbert function as k, placed in internal degree 2
    assert H[0].hilbert == (0, 0) + k_hilb[:-2]
    assert H[0].length == 1 and H[0].finite
    assert euler_char(Lm) == Fraction(p)
    assert euler_char(derived_exterior(2, case.k_res)) == Fraction(1, p * p)
    rep = run_scenario("thm_2_5", {"prime": p})
    assert_all_pass(rep, 2)
    assert [c.actual for c in rep.checks] == [str(p), f"1/{p * p}"]


@pytest.mark.parametrize("p", [2, 3])
def test_criterion_2(p):
    """Exterior cube of m computed directly: chi = p^-1."""
    c = lemma_4_2_direct(p, 3)
    assert c.passed and c.actual == f"1/{p}"
    assert euler_char(derived_exterior(3, LocalSurfaceCase.of(p).m_res)) == Fraction(1, p)


def test_criterion_3():
    """Residue field: symbolic chi(k)^(+-r) for r <= 12, direct r = 2 at p = 2, 3, 5, direct r = 3 at p = 2."""
    rep = run_scenario("lemma_4_3", {"prime": 2, "rmax": 12, "expensive": True})
    assert_all_pass(rep, 11 + 2)
    symbolic = [c.actual for c in rep.checks if "symbolic" in c.name]
    assert symbolic == [f"q^{r if r % 2 else -r}" for r in range(2, 13)]
    for p in (2, 3, 5):
        c = lemma_4_3_direct(p, 2)
        assert c.passed and c.actual == f"1/{p * p}"
    c = lemma_4_3_direct(2, 3, expensive=True)
    assert c.passed and c.actual == "8"


@pytest.mark.parametrize("p", [2, 3])
def test_criterion_4(p):
    """Local intersections: chi(k (x)^L k) = 1 over Z and F_p[x,y], chi(B/(f) (x)^L k) = 1, multiplicities 1, 2, 6."""
    rep = run_scenario("thm_1_3", {"prime": p})
    assert_all_pass(rep, 11)
    assert [c.actual for c in rep.checks if c.name.startswith("chi(") and c.expected == "1"] == ["1"] * 5
    assert [c.actual for c in rep.checks if c.name.startswith("length")] == ["1", "2", "6"]
    B = LocalSurfaceCase.of(p).B
    x, y = B.var(0), B.var(1)
    pairs = [(x, y), (x, B.mul(y, y)), (B.mul(x, x), B.mul(y, B.mul(y, y)))]
    assert [local_multiplicity(p, f, g) for f, g in pairs] == [1, 2, 6]


def test_criterion_5():
    """Dimension one: |Omega| = |disc f| on the sweep, chi(C_01) = 1/|disc|, chi(C_11) = |disc|, lambda relation."""
    rows = discriminant_sweep(4, 5)
    assert len(rows) == 16104
    assert all(omega == disc for _, omega, disc in rows)
    for f, _, disc in rows:
        if disc:
            C = MonogenicCase.of(f).c01()
            assert cochain_chi(C) == Fraction(1, disc)
            assert euler_char(C) == disc
    for poly in [(1, 0, 1), (-1, -1, 1), (-1, -1, 0, 1)]:
        checks = d1_lambda_relation(poly, rmax=3)
        assert [c.actual for c in checks] == ["1", "1"]
        assert all(c.passed for c in checks)
    for poly in ("x^2+1", "x^2-x-1", "x^3-x-1"):
        assert_all_pass(run_scenario("d1", {"poly": poly}), 4)


def test_criterion_6():
    """Dold-Kan: N(K(C)) = C exactly and simplicial identities for K, Lambda^2 K, Lambda^3 K on 100 complexes."""
    assert_all_pass(run_scenario("dold_kan_roundtrip", {"count": 100, "seed": 0}), 200)


def test_criterion_7():
    """Resolution independence on 20 groups (k = 2, 3) and acyclicity of padded identity complexes (k <= 3)."""
    rep = run_scenario("independence", {"count": 20, "seed": 0, "kmax": 3})
    assert_all_pass(rep, 60)
    assert_all_pass(run_scenario("acyclicity", {"kmax": 3}), 12)


def test_criterion_8():
    """Simplicial against derived tensor products on 50 random pairs over Z."""
    assert_all_pass(run_scenario("ez_compare", {"count": 50, "seed": 0}), 50)


def test_criterion_9():
    """Symbolic lambda^r[M] against direct chi for 20 groups, r = 2, 3, with chi = 1/|M| and |M|."""
    assert_all_pass(run_scenario("thm_2_4", {"count": 20, "seed": 0}), 80)


def test_criterion_10():
    """Symbolic chain through r = 12: chi(F)^(+-r), A^(+-r), and exponent +1 / -1 for Omega."""
    for name in ("prop_4_4", "cor_4_5", "thm_4_6"):
        assert_all_pass(run_scenario(name, {"rmax": 12}), 11)
    signed = [r if r % 2 else -r for r in range(2, 13)]
    assert [row.exponent for row in closed_form_check("prop44", 12).rows] == signed
    assert [row.exponent for row in closed_form_check("cor45", 12).rows] == signed
    assert [row.exponent for row in closed_form_check("thm46", 12).rows] == [1 if r % 2 else -1 for r in range(2, 13)]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
