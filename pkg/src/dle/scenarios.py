"""Registry of named scenarios.

A scenario takes a parameter dictionary (already validated against its
schema) and returns a :class:`Report`.  Scenarios are pure functions of their
parameters, so reports are deterministic up to timings.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import arithmetic
from .complexes import FPModule, direct_sum, graded_defaults, homology
from .derived import (
    acyclic_exterior_check,
    chi_derived_exterior,
    dominate,
    identity_complex,
    independence_report,
    pad_resolution,
    resolve,
    split_sum_chi,
)
from .dold_kan import K, N, ez_homology_compare, simplicial_exterior, verify_simplicial_identities
from .errors import DLEError, InvalidParameter, UnknownScenario
from .kgroup import closed_form_check, finite_abelian_lambda_chi
from .parsing import parse_element, parse_int_poly
from .report import CheckResult, Report, run_check
from .rings import GradedPoly, Integers, is_prime
from .samples import random_finite_abelian, random_scrambled_finite_abelian, random_Z_complex


@dataclass(frozen=True)
class Param:
    name: str
    kind: type
    default: object
    help: str


@dataclass
class Scenario:
    name: str
    anchor: str
    summary: str
    params: tuple
    func: object = field(repr=False)

    def schema(self):
        return {p.name: {"type": p.kind.__name__, "default": p.default, "help": p.help} for p in self.params}


_REGISTRY: dict = {}


def scenario(name, anchor, summary, *params):
    def wrap(fn):
        _REGISTRY[name] = Scenario(name, anchor, summary, tuple(params), fn)
        return fn
    return wrap


PRIME = Param("prime", int, 2, "residue characteristic p")
CUTOFF = Param("cutoff", int, None, "internal-degree cutoff for graded homology")
WINDOW = Param("window", int, None, "vanishing window certifying finite length")
RMAX = Param("rmax", int, 12, "largest r in the symbolic recursion")
SEED = Param("seed", int, 0, "seed of the random corpus")


def count(default):
    return Param("count", int, default, "size of the random corpus")


def _prime(p):
    if not is_prime(p):
        raise InvalidParameter(f"{p} is not prime")
    return p


def _rmax(r, low=2):
    if r < low:
        raise InvalidParameter(f"rmax must be at least {low}")
    return r


def _positive(n, what):
    if n < 1:
        raise InvalidParameter(f"{what} must be positive")
    return n


# ---------------------------------------------------------------------------
# local surface suites


@scenario("thm_1_3", "Theorem 1.3 (local)",
          "chi(k (x)^L k) = 1 over Z and F_p[x,y]; chi(B/(f) (x)^L k) = 1; local multiplicities",
          PRIME, Param("f", str, None, "homogeneous f in x, y (default: standard pairs)"),
          Param("g", str, None, "homogeneous g in x, y"), CUTOFF, WINDOW)
def _thm_1_3(prime, f, g, cutoff, window):
    B = GradedPoly(_prime(prime), 2)
    fe = parse_element(B, f) if f is not None else None
    ge = parse_element(B, g) if g is not None else None
    return arithmetic.thm_1_3_suite(prime, fe, ge, cutoff), []


@scenario("thm_2_5", "Theorem 2.5", "lambda~^2 m ~ k(-2) with chi = p; chi(lambda~^2 k) = p^-2",
          PRIME, CUTOFF, WINDOW)
def _thm_2_5(prime, cutoff, window):
    return arithmetic.thm_2_5_suite(_prime(prime), cutoff), []


@scenario("lemma_4_2", "Lemma 4.2", "chi(lambda~^r m) = p^(-1)^r: direct r = 2, 3 and symbolic up to rmax",
          PRIME, RMAX, CUTOFF, WINDOW)
def _lemma_4_2(prime, rmax, cutoff, window):
    p = _prime(prime)
    checks = [arithmetic.lemma_4_2_direct(p, r, cutoff) for r in (2, 3)]
    return checks + arithmetic.lemma_4_2_symbolic(_rmax(rmax), Fraction(p)), []


@scenario("lemma_4_3", "Lemma 4.3",
          "chi(lambda~^r k) = chi(k)^(+-r): symbolic up to rmax, direct r = 2 (r = 3 with --expensive)",
          PRIME, RMAX, Param("expensive", bool, False, "also compute lambda~^3 k directly"), CUTOFF, WINDOW)
def _lemma_4_3(prime, rmax, expensive, cutoff, window):
    p = _prime(prime)
    checks = arithmetic.lemma_4_3_symbolic(_rmax(rmax), "q")
    checks.append(arithmetic.lemma_4_3_direct(p, 2, cutoff=cutoff))
    if expensive:
        checks.append(arithmetic.lemma_4_3_direct(p, 3, expensive=True, cutoff=cutoff))
    return checks, []


# ---------------------------------------------------------------------------
# symbolic closed forms


def _closed_form_scenario(kind, rmax, anchor, what):
    rep = closed_form_check(kind, _rmax(rmax))
    checks = [run_check(f"{what}, r = {row.r}", row.expected, lambda row=row: row.actual, anchor)
              for row in rep.rows]
    return checks, list(rep.chain)


@scenario("prop_4_4", "Proposition 4.4", "chi(lambda^r F) = chi(F)^(+-r) for F in Ker(X)", RMAX)
def _prop_4_4(rmax):
    return _closed_form_scenario("prop44", rmax, "Proposition 4.4", "chi(lambda^r F)")


@scenario("cor_4_5", "Corollary 4.5", "chi(lambda^r [C]) = A^(+-r)", RMAX)
def _cor_4_5(rmax):
    return _closed_form_scenario("cor45", rmax, "Corollary 4.5", "chi(lambda^r [C])")


@scenario("thm_4_6", "Theorem 4.6", "chi(lambda^r Omega) = A^(+1) for odd r, A^(-1) for even r", RMAX)
def _thm_4_6(rmax):
    return _closed_form_scenario("thm46", rmax, "Theorem 4.6", "chi(lambda^r Omega)")


# ---------------------------------------------------------------------------
# dimension one


POLY = Param("poly", str, "x^2+1", "monic integer polynomial f in x")


@scenario("d1", "Section 3 (d = 1)", "|Omega| = |disc f|; chi(C_{0,1}) = 1/|disc|; chi(C_{1,1}) = |disc|", POLY)
def _d1(poly):
    return arithmetic.d1_chi_check(parse_int_poly(poly)), []


@scenario("d1_lambda", "Section 3 (d = 1)", "chi(lambda~^r Omega) chi(lambda~^(r-1) Omega) = 1",
          POLY, Param("rmax", int, 3, "largest r (direct up to 3, symbolic beyond)"))
def _d1_lambda(poly, rmax):
    return arithmetic.d1_lambda_relation(parse_int_poly(poly), _rmax(rmax)), []


@scenario("d1_sweep", "Section 3 (d = 1)", "|Omega| = |disc f| for every monic f with small coefficients",
          Param("max_degree", int, 4, "largest degree in the sweep"),
          Param("bound", int, 5, "bound on |coefficients|"))
def _d1_sweep(max_degree, bound):
    _positive(max_degree, "max_degree")
    if bound < 0:
        raise InvalidParameter("bound must be nonnegative")
    mismatches = {}

    def run():
        rows = arithmetic.discriminant_sweep(max_degree, bound)
        mismatches["list"] = [f for f, omega, disc in rows if omega != disc]
        mismatches["total"] = len(rows)
        return len(mismatches["list"])

    check = run_check(f"|Omega| = |disc f| for monic f, deg <= {max_degree}, |coeffs| <= {bound}: mismatches",
                      0, run, "Section 3 (d = 1)")
    lines = [f"{mismatches.get('total', 0)} polynomials checked"]
    return [check], lines + [f"mismatch {f}" for f in mismatches.get("list", [])]


# ---------------------------------------------------------------------------
# resolution independence and Dold-Kan


def _group_name(orders):
    return "+".join(f"Z/{n}" for n in orders)


def _orders(M: FPModule):
    return [M.relations.data[i][i] for i in range(M.generators.rank)]


@scenario("independence", "Theorem A.1",
          "homology of lambda~^k agrees on a minimal and a padded, scrambled resolution; domination witness",
          count(20), SEED, Param("kmax", int, 3, "largest exterior power"))
def _independence(count, seed, kmax):
    _positive(count, "count")
    rng = random.Random(seed)
    checks = []
    for i in range(count):
        M = random_finite_abelian(rng)
        name = _group_name(_orders(M))
        P = resolve(M)
        Q = pad_resolution(P, [(1, 1), (2, 1)], seed=rng.randrange(1 << 30))
        checks.append(run_check(f"#{i} {name}: domination witness", True, lambda P=P, Q=Q: dominate(P, Q).valid,
                                "Theorem A.1"))
        for k in range(2, kmax + 1):
            checks.append(run_check(f"#{i} {name}: lambda~^{k} minimal vs padded", True,
                                    lambda k=k, P=P, Q=Q: independence_report(k, P, Q).equal, "Theorem A.1"))
    return checks, []


def _padded_identity_cases():
    Z = Integers()
    B = GradedPoly(2, 2)
    return [
        ("0 -> Z -> Z -> 0", identity_complex(Z, 1)),
        ("(0 -> Z -> Z -> 0) + (0 -> Z^2 -> Z^2 -> 0)[1]", direct_sum(identity_complex(Z, 1), identity_complex(Z, 2, 2))),
        ("0 -> B(-1) -> B(-1) -> 0 over F_2[x,y]", identity_complex(B, 1, 1, (1,))),
        ("(0 -> B -> B -> 0) + (0 -> B(-1) -> B(-1) -> 0)[1] over F_2[x,y]",
         direct_sum(identity_complex(B, 1, 1, (0,)), identity_complex(B, 2, 1, (1,)))),
    ]


@scenario("acyclicity", "Lemma A.2", "N Lambda^k K R is acyclic for padded identity complexes R, k <= kmax",
          Param("kmax", int, 3, "largest exterior power"), CUTOFF, WINDOW)
def _acyclicity(kmax, cutoff, window):
    _positive(kmax, "kmax")
    checks = []
    for label, R in _padded_identity_cases():
        for k in range(1, kmax + 1):
            checks.append(run_check(f"{label}, k = {k}: acyclic", True,
                                    lambda k=k, R=R: acyclic_exterior_check(k, R, cutoff).passed, "Lemma A.2"))
    return checks, []


@scenario("ez_compare", "Section 2 (simplicial vs derived tensor)",
          "homology of N(K P (x) K Q) equals that of Tot(P (x) Q)", count(50), SEED)
def _ez_compare(count, seed):
    _positive(count, "count")
    rng = random.Random(seed)
    checks = []
    for i in range(count):
        P = random_Z_complex(rng, max_terms=3, max_rank=3, max_entry=6, min_terms=2, min_rank=1)
        Q = random_Z_complex(rng, max_terms=3, max_rank=2, max_entry=6, min_terms=2, min_rank=1)
        checks.append(run_check(f"#{i} ranks {P.ranks()} (x) {Q.ranks()}", True,
                                lambda P=P, Q=Q: ez_homology_compare(P, Q).equal, "Section 2"))
    return checks, []


@scenario("dold_kan_roundtrip", "Dold-Kan correspondence",
          "N(K(C)) = C exactly; simplicial identities for K, Lambda^2 K, Lambda^3 K", count(100), SEED)
def _dold_kan_roundtrip(count, seed):
    _positive(count, "count")
    rng = random.Random(seed)
    checks = []
    for i in range(count):
        C = random_Z_complex(rng)
        L = max(C.length, 0) + 1
        A = K(C, L)
        checks.append(run_check(f"#{i} ranks {C.ranks()}: N(K(C)) = C", True, lambda A=A, C=C: N(A) == C,
                                "Dold-Kan"))

        def identities(A=A):
            return not any(verify_simplicial_identities(X)
                           for X in (A, simplicial_exterior(2, A), simplicial_exterior(3, A)))

        checks.append(run_check(f"#{i} ranks {C.ranks()}: identities for K, Lambda^2 K, Lambda^3 K", True,
                                identities, "Dold-Kan"))
    return checks, []


# ---------------------------------------------------------------------------
# lambda on finite abelian groups


@scenario("thm_2_4", "Theorem 2.4",
          "symbolic chi(lambda^r [M]) equals direct chi(lambda~^r M); chi(lambda~^2 M) = 1/|M|, chi(lambda~^3 M) = |M|",
          count(20), SEED)
def _thm_2_4(count, seed):
    _positive(count, "count")
    rng = random.Random(seed)
    checks, chain = [], []
    for i in range(count):
        M = random_scrambled_finite_abelian(rng, max_summands=3, max_order=9)
        inv = homology(resolve(M).complex)[0].torsion
        order = 1
        for d in inv:
            order *= d
        name = _group_name(inv)
        direct = {}

        def chi(r, M=M):
            if r not in direct:
                direct[r] = chi_derived_exterior(r, M)
            return direct[r]

        for r in (2, 3):
            sym, ch = finite_abelian_lambda_chi(inv, r)
            if i == 0:
                chain.extend(ch)
            closed = Fraction(1, order) if r == 2 else Fraction(order)
            checks.append(run_check(f"#{i} {name}: symbolic = direct, r = {r}", sym, lambda r=r, chi=chi: chi(r),
                                    "Theorem 2.4"))
            checks.append(run_check(f"#{i} {name}: closed form, r = {r}", closed, lambda r=r, chi=chi: chi(r),
                                    "Theorem 2.4"))
    return checks, chain


@scenario("split_sum", "Corollary 2.2", "chi(lambda~^r (E1 + E3)) = prod chi(lambda~^(r-i) E1 (x)^L lambda~^i E3)",
          count(10), SEED, Param("rmax", int, 3, "largest r"))
def _split_sum(count, seed, rmax):
    _positive(count, "count")
    rng = random.Random(seed)
    checks = []
    for i in range(count):
        E1 = random_finite_abelian(rng, max_summands=1, max_order=9)
        E3 = random_finite_abelian(rng, max_summands=1, max_order=9)
        name = f"{_group_name(_orders(E1))} + {_group_name(_orders(E3))}"
        for r in range(2, _rmax(rmax) + 1):
            checks.append(run_check(f"#{i} {name}, r = {r}", True,
                                    lambda r=r, E1=E1, E3=E3: split_sum_chi(r, E1, E3).passed, "Corollary 2.2"))
    return checks, []


# ---------------------------------------------------------------------------
# public API


def list_scenarios():
    """``(name, parameter schema, anchor)`` in alphabetical order."""
    return [(s.name, s.schema(), s.anchor) for s in sorted(_REGISTRY.values(), key=lambda s: s.name)]


def get_scenario(name) -> Scenario:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownScenario(f"unknown scenario {name!r}") from None


def resolve_params(name, given: dict) -> dict:
    """Defaults merged with ``given``; unknown keys and bad types raise InvalidParameter."""
    sc = get_scenario(name)
    known = {p.name: p for p in sc.params}
    extra = sorted(set(given) - set(known))
    if extra:
        raise InvalidParameter(f"scenario {name} does not take {', '.join(extra)}")
    out = {}
    for p in sc.params:
        v = given.get(p.name, p.default)
        if v is not None and not isinstance(v, p.kind):
            try:
                v = p.kind(v)
            except (TypeError, ValueError) as exc:
                raise InvalidParameter(f"{p.name} must be {p.kind.__name__}") from exc
        out[p.name] = v
    return out


def run_scenario(name, params=None) -> Report:
    """Run one scenario; engine errors inside checks become failed checks."""
    params = resolve_params(name, params or {})
    sc = get_scenario(name)
    with graded_defaults(params.get("cutoff"), params.get("window")):
        try:
            checks, derivation = sc.func(**params)
        except (InvalidParameter, UnknownScenario):
            raise
        except DLEError as exc:
            # an engine error while setting the scenario up fails it as a whole
            checks = [CheckResult("scenario setup", "completed", type(exc).__name__, False, sc.anchor)]
            derivation = [str(exc)]
    return Report(name, checks, params={k: v for k, v in params.items() if v is not None}, derivation=derivation)


def _run_pair(args):
    return run_scenario(*args)


def run_many(requests, parallel=1) -> list:
    """Run ``[(name, params), ...]``; the result order follows ``requests``."""
    for name, params in requests:
        resolve_params(name, params)  # fail fast on usage errors
    if parallel <= 1 or len(requests) <= 1:
        return [run_scenario(n, p) for n, p in requests]
    with ProcessPoolExecutor(max_workers=parallel) as pool:
        return list(pool.map(_run_pair, requests))
