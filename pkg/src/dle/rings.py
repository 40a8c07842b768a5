"""Exact coefficient rings.

Four kinds are supported, all with canonical element representations so that
``a == b`` as Python values iff they are equal ring elements:

* :class:`Integers` -- Python ``int``.
* :class:`PrimeField` -- ``int`` in ``range(p)``.
* :class:`MonogenicOrder` -- ``Z[x]/(f)`` for monic ``f``; a tuple of ``deg f``
  integers, the coordinates in the power basis ``1, x, ..., x^(n-1)``.
* :class:`GradedPoly` -- ``F_p[x_1..x_v]`` with every variable of degree 1; a
  dict ``{exponent tuple: coefficient}`` without zero coefficients.  Dicts are
  never mutated after construction.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement

from . import polys
from .errors import NonMonicPolynomial, NonPrimeModulus, WrongRingKind


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Ring:
    kind = "abstract"

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def sum(self, items):
        acc = self.zero()
        for x in items:
            acc = self.add(acc, x)
        return acc

    def pow(self, a, e: int):
        out = self.one()
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def is_one(self, a) -> bool:
        return a == self.one()

    def __repr__(self):
        return self.describe()


class Integers(Ring):
    kind = "Z"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return int(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def scale(self, n, a):
        return n * a

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a == 1 or a == -1

    def inv(self, a):
        if a not in (1, -1):
            raise ZeroDivisionError(f"{a} is not a unit in Z")
        return a

    def exact_div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{b} does not divide {a}")
        return q

    def fmt(self, a):
        return str(a)

    def describe(self):
        return "Z"

    def __eq__(self, other):
        return isinstance(other, Integers)

    def __hash__(self):
        return hash("Z")


class PrimeField(Ring):
    kind = "GF"

    def __init__(self, p: int):
        if not is_prime(p):
            raise NonPrimeModulus(f"{p} is not prime")
        self.p = p

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

    def from_int(self, n):
        return int(n) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def scale(self, n, a):
        return (n * a) % self.p

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 is not invertible")
        return pow(a, -1, self.p)

    def exact_div(self, a, b):
        return self.mul(a, self.inv(b))

    def fmt(self, a):
        return str(a)

    def describe(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


class MonogenicOrder(Ring):
    """The order ``Z[x]/(f)`` of a monic integer polynomial ``f``.

    ``f`` is given lowest coefficient first.  Irreducibility is not required.
    """

    kind = "ORDER"

    def __init__(self, f):
        f = polys.trim([int(c) for c in f])
        if not polys.is_monic(f):
            raise NonMonicPolynomial(f"{f} is not monic of degree >= 1")
        self.f = tuple(f)
        self.n = len(f) - 1

    def _wrap(self, coeffs):
        coeffs = polys.rem_monic(coeffs, self.f)
        return tuple(coeffs) + (0,) * (self.n - len(coeffs))

    def element(self, coeffs):
        """Reduce an arbitrary integer polynomial into the order."""
        return self._wrap(polys.trim([int(c) for c in coeffs]))

    def zero(self):
        return (0,) * self.n

    def one(self):
        return (1,) + (0,) * (self.n - 1)

    def gen(self):
        return self.element([0, 1])

    def from_int(self, n):
        return (int(n),) + (0,) * (self.n - 1)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def mul(self, a, b):
        return self._wrap(polys.mul(polys.trim(a), polys.trim(b)))

    def scale(self, n, a):
        return tuple(n * x for x in a)

    def is_zero(self, a):
        return not any(a)

    def is_unit(self, a):
        return abs(self.norm(a)) == 1

    def inv(self, a):
        from .linalg import Matrix, solve

        m = Matrix(Integers(), self.n, self.n, self.mult_matrix(a))
        x = solve(m, list(self.one()))
        if x is None:
            raise ZeroDivisionError(f"{a} is not a unit")
        return tuple(x)

    def mult_matrix(self, a):
        """Integer matrix of multiplication by ``a`` on the power basis."""
        cols = []
        for i in range(self.n):
            cols.append(self.mul(a, self.element([0] * i + [1])))
        return [[cols[j][i] for j in range(self.n)] for i in range(self.n)]

    def norm(self, a) -> int:
        return polys.bareiss_det(self.mult_matrix(a))

    def fmt(self, a):
        return polys.format_poly(list(a))

    def describe(self):
        return f"Z[x]/({polys.format_poly(list(self.f))})"

    def __eq__(self, other):
        return isinstance(other, MonogenicOrder) and other.f == self.f

    def __hash__(self):
        return hash(("ORDER", self.f))


@lru_cache(maxsize=None)
def monomials(nvars: int, d: int):
    """Exponent tuples of total degree ``d`` in descending lexicographic order."""
    if d < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, d: int):
    return {m: i for i, m in enumerate(monomials(nvars, d))}


class GradedPoly(Ring):
    """``F_p[x_1..x_v]`` with the standard grading."""

    kind = "GRADED"

    def __init__(self, p: int, nvars: int):
        if not is_prime(p):
            raise NonPrimeModulus(f"{p} is not prime")
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.p = p
        self.nvars = nvars
        self._zero_exp = (0,) * nvars

    @property
    def field(self):
        return PrimeField(self.p)

    def var(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return {tuple(e): 1}

    def monomial(self, exps, c=1):
        c %= self.p
        return {tuple(exps): c} if c else {}

    def zero(self):
        return {}

    def one(self):
        return {self._zero_exp: 1}

    def from_int(self, n):
        c = int(n) % self.p
        return {self._zero_exp: c} if c else {}

    def add(self, a, b):
        if not a:
            return b
        if not b:
            return a
        p = self.p
        out = dict(a)
        for m, c in b.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return out

    def neg(self, a):
        p = self.p
        return {m: p - c for m, c in a.items()}

    def mul(self, a, b):
        if not a or not b:
            return {}
        p = self.p
        out = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                v = (out.get(m, 0) + ca * cb) % p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out

    def scale(self, n, a):
        n %= self.p
        if not n:
            return {}
        return {m: (n * c) % self.p for m, c in a.items()}

    def is_zero(self, a):
        return not a

    def is_unit(self, a):
        return len(a) == 1 and self._zero_exp in a

    def inv(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError("only nonzero constants are units")
        return {self._zero_exp: pow(a[self._zero_exp], -1, self.p)}

    def degree_of(self, a):
        """Total degree if ``a`` is nonzero and homogeneous, else ``None``."""
        degs = {sum(m) for m in a}
        return degs.pop() if len(degs) == 1 else None

    def var_names(self):
        if self.nvars == 1:
            return ["x"]
        if self.nvars == 2:
            return ["x", "y"]
        return [f"x{i + 1}" for i in range(self.nvars)]

    def fmt(self, a):
        if not a:
            return "0"
        names = self.var_names()
        terms = []
        for m in sorted(a, key=lambda e: (sum(e), e), reverse=True):
            c = a[m]
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return "+".join(terms)

    def describe(self):
        return f"GF({self.p})[{','.join(self.var_names())}]"

    def __eq__(self, other):
        return isinstance(other, GradedPoly) and (other.p, other.nvars) == (self.p, self.nvars)

    def __hash__(self):
        return hash(("GRADED", self.p, self.nvars))


def ring_make(kind: str, *args) -> Ring:
    """Build a ring from a descriptor: ``("Z",)``, ``("GF", p)``,
    ``("ORDER", coeffs)`` or ``("GRADED", p, nvars)``."""
    if kind == "Z":
        return Integers()
    if kind == "GF":
        return PrimeField(*args)
    if kind == "ORDER":
        return MonogenicOrder(*args)
    if kind == "GRADED":
        return GradedPoly(*args)
    raise WrongRingKind(kind)


def order_norm(ring: MonogenicOrder, a) -> int:
    """``Res(f, g)`` for ``a = g(x)``; its absolute value is ``|O/(a)|`` when nonzero."""
    if not isinstance(ring, MonogenicOrder):
        raise WrongRingKind("order_norm needs a monogenic order")
    return ring.norm(a)


def poly_discriminant(f) -> int:
    """``disc f = (-1)^(n(n-1)/2) Res(f, f')`` for monic ``f`` of degree ``n``."""
    order = MonogenicOrder(f)
    n = order.n
    res = order.norm(order.element(polys.derivative(list(order.f))))
    return res if (n * (n - 1) // 2) % 2 == 0 else -res
