"""Parsing of polynomial and rational literals (via sympy)."""

from __future__ import annotations

from fractions import Fraction

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from .errors import InvalidParameter
from .rings import GradedPoly, Integers, MonogenicOrder, PrimeField

_TRANSFORMS = standard_transformations + (convert_xor,)


def _symbols(names):
    return {n: sympy.Symbol(n) for n in names}


def parse_int_poly(text: str, var="x"):
    """Integer coefficients of a univariate polynomial, lowest degree first."""
    x = sympy.Symbol(var)
    try:
        expr = parse_expr(text, local_dict={var: x}, transformations=_TRANSFORMS)
        poly = sympy.Poly(expr, x)
    except (sympy.SympifyError, SyntaxError, TypeError, sympy.PolynomialError) as exc:
        raise InvalidParameter(f"cannot parse polynomial {text!r}: {exc}") from exc
    if poly.free_symbols - {x}:
        raise InvalidParameter(f"{text!r} uses variables other than {var}")
    coeffs = poly.all_coeffs()[::-1]
    if any(not c.is_integer for c in coeffs):
        raise InvalidParameter(f"{text!r} has non-integer coefficients")
    return [int(c) for c in coeffs]


def parse_element(ring, text: str):
    """A ring element from its textual form."""
    text = text.strip()
    if isinstance(ring, (Integers, PrimeField)):
        try:
            v = sympy.Integer(parse_expr(text, transformations=_TRANSFORMS))
        except (sympy.SympifyError, SyntaxError, TypeError, ValueError) as exc:
            raise InvalidParameter(f"{text!r} is not an integer") from exc
        return ring.from_int(int(v))
    if isinstance(ring, MonogenicOrder):
        return ring.element(parse_int_poly(text, "x"))
    if isinstance(ring, GradedPoly):
        names = ring.var_names()
        syms = _symbols(names)
        try:
            expr = parse_expr(text, local_dict=syms, transformations=_TRANSFORMS)
            poly = sympy.Poly(expr, *[syms[n] for n in names])
        except (sympy.SympifyError, SyntaxError, TypeError, sympy.PolynomialError) as exc:
            raise InvalidParameter(f"cannot parse polynomial {text!r}: {exc}") from exc
        if poly.free_symbols - set(syms.values()):
            raise InvalidParameter(f"{text!r} uses variables outside {', '.join(names)}")
        out = {}
        for mon, c in poly.terms():
            if not c.is_integer:
                raise InvalidParameter(f"{text!r} has non-integer coefficients")
            v = int(c) % ring.p
            if v:
                out[tuple(mon)] = v
        return out
    raise InvalidParameter(f"cannot parse elements of {ring.describe()}")


def parse_rational(text: str) -> Fraction:
    """``a``, ``a/b`` or a power such as ``3^-2``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        pass
    try:
        v = parse_expr(text, transformations=_TRANSFORMS, evaluate=True)
    except (sympy.SympifyError, SyntaxError, TypeError, ZeroDivisionError) as exc:
        raise InvalidParameter(f"{text!r} is not a rational number") from exc
    if not isinstance(v, sympy.Rational):
        raise InvalidParameter(f"{text!r} is not a rational number")
    return Fraction(int(v.p), int(v.q))
