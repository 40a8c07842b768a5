"""Grothendieck classes with lambda-operations and Euler characteristics.

A :class:`KClass` is ``free_mult * [O] + sum c * lambda^r(atom) + junk``.
Atoms are named classes with a generic rank; ``lambda^r`` of an atom is kept
as the formal term ``(name, r)`` whose Euler characteristic is the atom's
profile entry ``c_r``.  Finite classes are never identified with alternating
sums of free modules, so ``chi`` stays meaningful on them.

Products follow the rule used for classes whose finite parts multiply to
Euler characteristic one: with ``s = rho_s [O] + s'`` and ``t = rho_t [O] + t'``,

    s * t = rho_s t + rho_t s - rho_s rho_t [O] + s' t',

and ``s' t'`` is recorded only through the ``junk`` flag (``chi(junk) = 1``).

Euler characteristics are :class:`ChiValue` monomials: a rational coefficient
times integer powers of named symbols.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb

from .errors import MissingProfile, NonFiniteClass, UnderdeterminedProfile


# ---------------------------------------------------------------------------
# Euler characteristic values


class ChiValue:
    """``coeff * prod symbol ** exponent`` with exact rational ``coeff``."""

    __slots__ = ("coeff", "exps")

    def __init__(self, coeff=1, exps=()):
        self.coeff = Fraction(coeff)
        if self.coeff <= 0:
            raise ValueError("Euler characteristics are positive")
        if isinstance(exps, dict):
            exps = exps.items()
        self.exps = tuple(sorted((s, e) for s, e in exps if e))

    @classmethod
    def symbol(cls, name):
        return cls(1, ((name, 1),))

    @classmethod
    def of(cls, x):
        return x if isinstance(x, ChiValue) else cls(x)

    def __mul__(self, other):
        other = ChiValue.of(other)
        d = dict(self.exps)
        for s, e in other.exps:
            d[s] = d.get(s, 0) + e
        return ChiValue(self.coeff * other.coeff, d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n >= 0:
            return ChiValue(self.coeff ** n, {s: e * n for s, e in self.exps})
        return ChiValue(1 / self.coeff ** -n, {s: e * n for s, e in self.exps})

    def inverse(self):
        return self ** -1

    def __truediv__(self, other):
        return self * ChiValue.of(other).inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ChiValue(other) if other > 0 else None
        return isinstance(other, ChiValue) and self.coeff == other.coeff and self.exps == other.exps

    def __hash__(self):
        return hash((self.coeff, self.exps))

    def is_rational(self):
        return not self.exps

    def exponent(self, symbol):
        return dict(self.exps).get(symbol, 0)

    def log_ratio(self, base: "ChiValue"):
        """The integer ``e`` with ``self == base ** e``, or ``None``."""
        if base == ChiValue(1):
            return 0 if self == base else None
        for e in range(-64, 65):
            if base ** e == self:
                return e
        return None

    def __str__(self):
        parts = []
        if self.coeff != 1 or not self.exps:
            parts.append(str(self.coeff))
        for s, e in self.exps:
            parts.append(s if e == 1 else f"{s}^{e}")
        return "*".join(parts)

    __repr__ = __str__


def as_chi(x) -> ChiValue:
    if isinstance(x, ChiValue):
        return x
    if isinstance(x, str):
        return ChiValue.symbol(x)
    return ChiValue(x)


# ---------------------------------------------------------------------------
# atoms and classes


@dataclass(frozen=True)
class Atom:
    """A named class of generic rank ``rank``.

    ``profile[r]`` is ``chi(lambda^r atom)`` (only meaningful where
    ``C(rank, r) = 0``).  ``locally_free`` atoms have ``lambda^r = 0`` for
    ``r > rank``.  For rank-0 atoms ``chi`` is ``profile[1]``.
    """

    name: str
    rank: int = 0
    chi: ChiValue | None = None
    profile: tuple = ()
    locally_free: bool = False

    def __post_init__(self):
        prof = dict(self.profile)
        if self.chi is not None:
            c = as_chi(self.chi)
            object.__setattr__(self, "chi", c)
            if prof.get(1, c) != c:
                raise ValueError(f"profile c_1 of {self.name} differs from its chi")
            if self.rank == 0:
                prof[1] = c
        object.__setattr__(self, "profile", tuple(sorted((r, as_chi(v)) for r, v in prof.items())))

    def c(self, r):
        return dict(self.profile).get(r)

    def known(self):
        return dict(self.profile)

    def with_profile(self, updates):
        prof = dict(self.profile)
        prof.update(updates)
        return replace(self, profile=tuple(prof.items()))

    def lambda_rank(self, r):
        return comb(self.rank, r)


def _merge_atoms(a, b):
    out = dict(a)
    for name, atom in b.items():
        if name in out and out[name] != atom:
            # keep the definition with the longer profile when one extends the other
            mine = out[name].known()
            theirs = atom.known()
            if all(theirs.get(r, v) == v for r, v in mine.items()) and out[name].rank == atom.rank:
                out[name] = atom if len(theirs) >= len(mine) else out[name]
                continue
            raise ValueError(f"conflicting definitions of atom {name}")
        out.setdefault(name, atom)
    return out


@dataclass(frozen=True)
class KClass:
    free_mult: int = 0
    terms: tuple = ()          # sorted ((name, r), coeff) pairs, coeff != 0
    junk: bool = False
    atoms: dict = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def make(cls, free_mult, terms, junk, atoms):
        t = tuple(sorted((k, v) for k, v in terms.items() if v))
        return cls(free_mult, t, junk, atoms)

    @classmethod
    def unit(cls, n=1):
        return cls(n)

    @classmethod
    def zero(cls):
        return cls(0)

    @classmethod
    def of_atom(cls, atom: Atom, coeff=1, r=1):
        return cls.make(0, {(atom.name, r): coeff}, False, {atom.name: atom})

    def term_dict(self):
        return dict(self.terms)

    def is_zero(self):
        return self.free_mult == 0 and not self.terms and not self.junk

    def term_rank(self, key):
        name, r = key
        return self.atoms[name].lambda_rank(r)

    def rank(self):
        return self.free_mult + sum(c * self.term_rank(k) for k, c in self.terms)

    def with_atoms(self, atoms):
        return KClass(self.free_mult, self.terms, self.junk, _merge_atoms(self.atoms, {a.name: a for a in atoms}))

    def __add__(self, other):
        other = _coerce(other)
        d = self.term_dict()
        for k, c in other.terms:
            d[k] = d.get(k, 0) + c
        return KClass.make(self.free_mult + other.free_mult, d, self.junk or other.junk,
                           _merge_atoms(self.atoms, other.atoms))

    __radd__ = __add__

    def __neg__(self):
        return KClass(-self.free_mult, tuple((k, -c) for k, c in self.terms), self.junk, self.atoms)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def scale(self, n: int):
        if n == 0:
            return KClass(0, (), False, self.atoms)
        return KClass(self.free_mult * n, tuple((k, c * n) for k, c in self.terms), self.junk, self.atoms)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = _coerce(other)
        atoms = _merge_atoms(self.atoms, other.atoms)
        f = self.free_mult * other.free_mult
        d = {}
        for k, c in other.terms:
            d[k] = d.get(k, 0) + self.free_mult * c
        for k, c in self.terms:
            d[k] = d.get(k, 0) + other.free_mult * c
        junk = (self.junk and not other.is_zero()) or (other.junk and not self.is_zero())
        for k1, c1 in self.terms:
            r1 = comb(atoms[k1[0]].rank, k1[1])
            for k2, c2 in other.terms:
                r2 = comb(atoms[k2[0]].rank, k2[1])
                c = c1 * c2
                d[k2] = d.get(k2, 0) + c * r1
                d[k1] = d.get(k1, 0) + c * r2
                f -= c * r1 * r2
                junk = True
        return KClass.make(f, d, junk, atoms)

    __rmul__ = __mul__

    def __str__(self):
        parts = []
        if self.free_mult:
            parts.append(f"{self.free_mult}[O]")
        for (name, r), c in self.terms:
            base = f"[{name}]" if r == 1 else f"l^{r}[{name}]"
            parts.append(base if c == 1 else f"{c}{base}")
        if self.junk:
            parts.append("junk")
        return " + ".join(parts) if parts else "0"


def _coerce(x):
    if isinstance(x, KClass):
        return x
    if isinstance(x, int):
        return KClass(x)
    raise TypeError(f"cannot treat {type(x).__name__} as a class")


# ---------------------------------------------------------------------------
# lambda series


class LambdaSeries:
    """Truncated ``lambda_t(x) = sum lambda^r(x) t^r``, coefficients ``0..rmax``."""

    def __init__(self, coeffs):
        self.coeffs = list(coeffs)

    @property
    def rmax(self):
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, rmax):
        return cls([KClass.unit()] + [KClass.zero() for _ in range(rmax)])

    def __getitem__(self, r):
        return self.coeffs[r] if 0 <= r < len(self.coeffs) else KClass.zero()

    def __mul__(self, other):
        n = min(self.rmax, other.rmax)
        out = []
        for r in range(n + 1):
            acc = KClass.zero()
            for i in range(r + 1):
                a, b = self.coeffs[i], other.coeffs[r - i]
                if a.is_zero() or b.is_zero():
                    continue
                acc = acc + a * b
            out.append(acc)
        return LambdaSeries(out)

    def inverse(self):
        """Multiplicative inverse; the constant coefficient must be ``[O]``."""
        if self.coeffs[0] != KClass.unit():
            raise ValueError("constant term of a lambda series must be [O]")
        b = [KClass.unit()]
        for r in range(1, self.rmax + 1):
            acc = KClass.zero()
            for i in range(1, r + 1):
                if not self.coeffs[i].is_zero() and not b[r - i].is_zero():
                    acc = acc + self.coeffs[i] * b[r - i]
            b.append(-acc)
        return LambdaSeries(b)

    def power(self, n: int):
        base = self if n >= 0 else self.inverse()
        out = LambdaSeries.one(self.rmax)
        for _ in range(abs(n)):
            out = out * base
        return out


def _gbinom(n, r):
    """Generalized binomial coefficient for any integer ``n``."""
    if n >= 0:
        return comb(n, r)
    return (-1) ** r * comb(-n + r - 1, r)


def atom_series(atom: Atom, rmax, require_profile=False) -> LambdaSeries:
    coeffs = [KClass.unit()]
    for r in range(1, rmax + 1):
        if atom.locally_free and r > atom.rank:
            coeffs.append(KClass(0, (), False, {atom.name: atom}))
            continue
        if require_profile and atom.lambda_rank(r) == 0 and atom.c(r) is None:
            raise MissingProfile(f"no chi(lambda^{r}) recorded for atom {atom.name}")
        coeffs.append(KClass.of_atom(atom, 1, r))
    return LambdaSeries(coeffs)


def lambda_series(x: KClass, rmax: int, require_profile=False) -> LambdaSeries:
    """``lambda_t(x)`` truncated at ``t^rmax``.

    ``lambda_t`` is multiplicative, ``lambda_t(n[O]) = (1 + t)^n`` (any sign of
    ``n``) and ``lambda_t`` of an atom has ``lambda^r`` of the atom as its
    coefficients.
    """
    if x.junk:
        raise MissingProfile("lambda operations of the junk sector are not tracked")
    series = LambdaSeries([KClass.unit(_gbinom(x.free_mult, r)) for r in range(rmax + 1)])
    for (name, r0), c in x.terms:
        if r0 != 1:
            raise MissingProfile(f"lambda of lambda^{r0}[{name}] is not tracked")
        series = series * atom_series(x.atoms[name], rmax, require_profile).power(c)
    return series


def lambda_power(x: KClass, r: int) -> KClass:
    if r < 0:
        return KClass.zero()
    return lambda_series(x, r)[r]


def chi_eval(x: KClass) -> ChiValue:
    """``prod chi(term) ** coeff``; the junk sector contributes 1."""
    if x.free_mult:
        raise NonFiniteClass(f"class {x} has free multiplicity {x.free_mult}")
    out = ChiValue(1)
    for (name, r), c in x.terms:
        atom = x.atoms[name]
        if atom.lambda_rank(r):
            raise NonFiniteClass(f"lambda^{r}[{name}] has generic rank {atom.lambda_rank(r)}")
        v = atom.c(r)
        if v is None:
            raise MissingProfile(f"no chi(lambda^{r}) recorded for atom {name}")
        out = out * v ** c
    return out


# ---------------------------------------------------------------------------
# relations and profile solving


@dataclass(frozen=True)
class Relation:
    """``0 -> E1 -> E2 -> E3 -> 0`` read through the exterior-power filtration:

        lambda^r(E2) = sum_i lambda^{r-i}(E1) lambda^i(E3)   for r >= r_min.

    ``r_min`` defaults to one more than the largest generic rank involved, the
    range in which every free summand drops out.
    """

    E1: KClass
    E2: KClass
    E3: KClass
    label: str = ""
    r_min: int | None = None

    def start(self):
        if self.r_min is not None:
            return self.r_min
        return 1 + max(abs(self.E1.rank()), abs(self.E2.rank()), abs(self.E3.rank()))

    def defect(self, r, atoms):
        E1, E2, E3 = (E.with_atoms(atoms) for E in (self.E1, self.E2, self.E3))
        s1, s2, s3 = (lambda_series(E, r) for E in (E1, E2, E3))
        rhs = KClass.zero()
        for i in range(r + 1):
            a, b = s1[r - i], s3[i]
            if not a.is_zero() and not b.is_zero():
                rhs = rhs + a * b
        return (s2[r] - rhs).with_atoms(atoms)


def _unknowns(D: KClass, atoms):
    out = []
    for (name, r), c in D.terms:
        if atoms[name].c(r) is None:
            out.append(((name, r), c))
    return out


@dataclass
class ProfileSolution:
    atoms: dict
    chain: list      # derivation lines, one per determined value

    def atom(self, name):
        return self.atoms[name]


def solve_profiles(atoms, relations, rmax: int, targets=None) -> ProfileSolution:
    """Extend atom profiles through ``rmax`` using relation instances.

    Each determined ``c_r`` comes from one relation instance with exactly one
    unknown term of coefficient ``+-1``.  ``targets`` (atom names, default all
    rank-0 atoms) must end up with complete profiles through ``rmax``.
    """
    env = {a.name: a for a in atoms}
    for rel in relations:
        for E in (rel.E1, rel.E2, rel.E3):
            env = _merge_atoms(env, E.atoms)
    chain = []
    progress = True
    while progress:
        progress = False
        for rel in relations:
            for r in range(rel.start(), rmax + 1):
                D = rel.defect(r, env.values())
                if D.free_mult or any(env[n].lambda_rank(k) for (n, k), _ in D.terms):
                    continue
                unknown = _unknowns(D, env)
                if len(unknown) != 1 or abs(unknown[0][1]) != 1:
                    continue
                (name, k), c = unknown[0]
                known = ChiValue(1)
                for (n2, k2), c2 in D.terms:
                    if (n2, k2) != (name, k):
                        known = known * env[n2].c(k2) ** c2
                value = known.inverse() if c == 1 else known
                env[name] = env[name].with_profile({k: value})
                chain.append(f"c_{k}({name}) = {value}  [{rel.label or 'relation'}, r = {r}]")
                progress = True
    names = targets if targets is not None else [n for n, a in env.items() if a.rank == 0]
    for name in names:
        a = env[name]
        for r in range(1, rmax + 1):
            if a.lambda_rank(r) == 0 and not (a.locally_free and r > a.rank) and a.c(r) is None:
                raise UnderdeterminedProfile(f"c_{r}({name}) is not determined by the relations")
    return ProfileSolution(env, chain)


def solve_profile(atom: Atom, relations, rmax: int, known=()):
    """Single-atom front end of :func:`solve_profiles`; returns ``(atom, chain)``."""
    sol = solve_profiles([atom, *known], relations, rmax, targets=[atom.name])
    return sol.atoms[atom.name], sol.chain


# ---------------------------------------------------------------------------
# standard setups


def resolution_relation(atom: Atom, n1: int, n2: int, label=None) -> Relation:
    """``0 -> O^n1 -> O^n2 -> atom -> 0``."""
    return Relation(KClass.unit(n1), KClass.unit(n2), KClass.of_atom(atom), label or f"0 -> O^{n1} -> O^{n2} -> {atom.name}")


def cyclic_atoms(orders, prefix="Z/"):
    """One rank-0 atom per cyclic summand, with its resolution relation."""
    atoms, rels = [], []
    for i, n in enumerate(orders):
        a = Atom(f"{prefix}{n}#{i}", 0, ChiValue(n))
        atoms.append(a)
        rels.append(resolution_relation(a, 1, 1))
    return atoms, rels


def finite_abelian_lambda_chi(orders, r: int):
    """Symbolic ``chi(lambda^r [M])`` for ``M = sum Z/n_i`` (summands split apart)."""
    atoms, rels = cyclic_atoms(orders)
    sol = solve_profiles(atoms, rels, r)
    x = KClass.zero()
    for a in atoms:
        x = x + KClass.of_atom(sol.atoms[a.name])
    return chi_eval(lambda_power(x.with_atoms(sol.atoms.values()), r)), sol.chain


@dataclass
class ResidueField:
    """Atoms ``k`` (rank 0) and ``m`` (rank 1) at one point, with their relations."""

    k: Atom
    m: Atom
    relations: list


def residue_field(tag: str, chi_k) -> ResidueField:
    """``k = B/m`` with ``chi(k)`` given, seeded with ``chi(lambda^2 m) = chi(k)``.

    Relations: ``0 -> B -> B^2 -> m -> 0`` and ``0 -> m -> B -> k -> 0``.
    """
    q = as_chi(chi_k)
    k = Atom(f"k_{tag}", 0, q)
    m = Atom(f"m_{tag}", 1, None, ((2, q),))
    rels = [Relation(KClass.unit(1), KClass.unit(2), KClass.of_atom(m), f"0 -> B -> B^2 -> m_{tag}"),
            Relation(KClass.of_atom(m), KClass.unit(1), KClass.of_atom(k), f"0 -> m_{tag} -> B -> k_{tag}")]
    return ResidueField(k, m, rels)


def closed_form(chi, r):
    """``chi^r`` for odd ``r`` and ``chi^-r`` for even ``r``."""
    return chi ** (r if r % 2 else -r)


@dataclass
class ClosedFormRow:
    r: int
    expected: ChiValue
    actual: ChiValue
    exponent: int | None

    @property
    def passed(self):
        return self.expected == self.actual


@dataclass
class ClosedFormReport:
    kind: str
    base: ChiValue
    rows: list
    chain: list

    @property
    def passed(self):
        return all(row.passed for row in self.rows)


def _ker_class(decomposition, rmax):
    """``F = sum n_P [k_P]`` with symbolic ``chi(k_P)``; profiles solved through ``rmax``."""
    fields = [residue_field(tag, ChiValue.symbol(sym)) for tag, sym, _ in decomposition]
    atoms, rels = [], []
    for f in fields:
        atoms += [f.k, f.m]
        rels += f.relations
    sol = solve_profiles(atoms, rels, rmax, targets=[f.k.name for f in fields])
    F = KClass.zero()
    chi = ChiValue(1)
    for f, (_, _, n) in zip(fields, decomposition):
        F = F + KClass.of_atom(sol.atoms[f.k.name], n)
        chi = chi * sol.atoms[f.k.name].chi ** n
    return F.with_atoms(sol.atoms.values()), chi, sol


DEFAULT_DECOMPOSITIONS = {
    "prop44": [("P", "q", 1)],
    "cor45": [("P1", "a", 2), ("P2", "b", -1), ("P3", "c", 1)],
}


def closed_form_check(kind: str, rmax: int = 12, decomposition=None) -> ClosedFormReport:
    """Derive ``chi(lambda^r)`` symbolically and compare with the closed form.

    ``prop44``: ``F`` in the kernel of all generic-rank maps, written as a
    signed sum of residue fields; expects ``chi(F)^{+-r}``.
    ``cor45``: the same for a class ``[C]`` with ``chi([C]) = A``.
    ``thm46``: ``chi(lambda^r Omega)`` for ``Omega = [C] + omega`` with
    ``omega`` invertible, expected ``A`` (odd ``r``) or ``A^-1`` (even ``r``).
    The exponent column records the power of ``chi(F)`` (resp. ``A``).
    """
    if rmax < 2:
        raise ValueError("rmax must be at least 2")
    if kind not in ("prop44", "cor45", "thm46"):
        raise ValueError(f"unknown closed form {kind!r}")
    dec = decomposition or DEFAULT_DECOMPOSITIONS["prop44" if kind == "prop44" else "cor45"]
    F, base, sol = _ker_class(dec, rmax)
    chain = list(sol.chain)
    rows = []
    if kind in ("prop44", "cor45"):
        series = lambda_series(F, rmax)
        for r in range(2, rmax + 1):
            actual = chi_eval(series[r])
            rows.append(ClosedFormRow(r, closed_form(base, r), actual, actual.log_ratio(base)))
        return ClosedFormReport(kind, base, rows, chain)
    omega = Atom("omega", 1, None, (), locally_free=True)
    Omega = F + KClass.of_atom(omega)
    series = lambda_series(Omega, rmax)
    for r in range(2, rmax + 1):
        actual = chi_eval(series[r])
        expected = base if r % 2 else base.inverse()
        rows.append(ClosedFormRow(r, expected, actual, actual.log_ratio(base)))
    chain.append("lambda^r(Omega) = lambda^r[C] + lambda^{r-1}[C] omega + junk; lambda^i(omega) = 0 for i >= 2")
    return ClosedFormReport(kind, base, rows, chain)
