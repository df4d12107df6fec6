"""Sign-change location for integer polynomials sampled at fractions c/q.

Sampling f at c/q is the same as sampling the integer polynomial
g(X) = q^n f((X + a)/q) at X = c - a, so the scans below never leave the
integers. All evaluation is exact.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import FrozenSet, Union

import sympy

from services.errors import BracketPreconditionError
from services.polynorm import Polynomial

logger = logging.getLogger(__name__)

VAR = "t"


class Side(str, Enum):
    ABOVE = "above"
    BELOW = "below"


def _as_poly(f: Polynomial, var: str) -> sympy.Poly:
    return sympy.Poly(f.coefficients(var), sympy.Symbol(var), domain="ZZ")


def _transformed(f: Polynomial, q: int, a: int, var: str) -> sympy.Poly:
    x = sympy.Symbol(var)
    return _as_poly(f, var).transform(sympy.Poly(x + a, x, domain="ZZ"), sympy.Poly(q, x, domain="ZZ"))


def evaluate_at(f: Polynomial, c: int, q: int, var: str = VAR) -> Fraction:
    """f(c/q), exactly."""
    value = _as_poly(f, var).eval(sympy.Rational(c, q))
    return Fraction(int(value.p), int(value.q))


def shift_transform(f: Polynomial, q: int, a: int, var: str = VAR, out_var: str = "X") -> Polynomial:
    """g(X) = q^n f((X + a)/q), an integer polynomial of the same degree n."""
    return Polynomial.univariate([int(c) for c in _transformed(f, q, a, var).all_coeffs()], out_var)


@dataclass(frozen=True)
class BracketQuery:
    f: Polynomial
    q: int
    a: int
    b: int

    def __post_init__(self):
        if self.q < 1:
            raise BracketPreconditionError(f"denominator must be positive, got q = {self.q}")
        if self.a >= self.b:
            raise BracketPreconditionError(f"empty range: a = {self.a} is not below b = {self.b}")


def bracket(query: BracketQuery, var: str = VAR) -> int:
    """Least c in [a, b) with f(c/q) <= 0 < f((c+1)/q)."""
    f, q, a, b = query.f, query.q, query.a, query.b
    if evaluate_at(f, a, q, var) > 0:
        raise BracketPreconditionError(f"f({a}/{q}) > 0")
    if evaluate_at(f, b, q, var) <= 0:
        raise BracketPreconditionError(f"f({b}/{q}) <= 0")
    g = _transformed(f, q, a, var)
    previous = int(g.eval(0))
    for i in range(b - a):
        current = int(g.eval(i + 1))
        if previous <= 0 < current:
            logger.debug("bracket for %s over [%d, %d]/%d: c = %d", f, a, b, q, a + i)
            return a + i
        previous = current
    raise AssertionError("sign preconditions guarantee a bracket")


def sign_change_set(f: Polynomial, q: int, lo: int, hi: int, var: str = VAR) -> FrozenSet[int]:
    """{m in [lo, hi] : f(m/q) * f((m+1)/q) < 0}."""
    if lo > hi:
        return frozenset()
    g = _transformed(f, q, lo, var)
    values = [int(g.eval(i)) for i in range(hi - lo + 2)]
    return frozenset(lo + i for i in range(hi - lo + 1) if values[i] * values[i + 1] < 0)


def multiplier_transform(
    f: Polynomial, q: int, c: int, side: Union[Side, str], var: str = VAR
) -> Polynomial:
    """f times a linear factor vanishing at (c + 1/2)/q, which toggles c in the sign-change set."""
    x = Polynomial.variable(var)
    factor = (2 * c + 1) - 2 * q * x
    if Side(side) is Side.BELOW:
        factor = -factor
    return f * factor
