"""Fractional-exponent polynomials with smooth exponent denominators.

A `PuiseuxPoly` is a finite sum of a X^e with rational coefficients a and
nonnegative rational exponents e whose reduced denominators factor over a fixed
prime set P. Members of the semiring additionally have an integer constant
term and a nonnegative leading coefficient; arbitrary elements form the ring
of differences. Ring arithmetic is sympy's Puiseux ring over QQ; this module
adds the prime set, the order and the membership test on top.

Roots of polynomials over this ring are represented by `TruncatedRoot`, a
descending series that may continue into negative exponents.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy.polys.domains import QQ
from sympy.polys.puiseux import PuiseuxPoly as RingElement
from sympy.polys.puiseux import puiseux_ring

from services.errors import PuiseuxError, TruncationError

Rational = Union[int, Fraction, str]

RING, X = puiseux_ring("X", QQ)


def smooth_denominator_check(q: int, primes: Iterable[int]) -> bool:
    """True iff every prime factor of q lies in `primes`."""
    if q < 1:
        raise PuiseuxError(f"denominators are positive, got {q}")
    return set(sympy.factorint(q)) <= set(primes)


def _frac(value) -> Fraction:
    if isinstance(value, (int, Fraction, str)):
        return Fraction(value)
    return Fraction(int(value.numerator), int(value.denominator))


def _qq(value: Fraction):
    return QQ(value.numerator, value.denominator)


def _to_ring(terms: Mapping[Fraction, Fraction]) -> RingElement:
    return RING.from_dict({(_qq(e),): _qq(c) for e, c in terms.items() if c != 0})


def _from_ring(element: RingElement) -> Dict[Fraction, Fraction]:
    return {_frac(monom[0]): _frac(coeff) for monom, coeff in element.iterterms() if coeff}


class PuiseuxPoly:
    __slots__ = ("_element", "_terms", "primes")

    def __init__(self, terms: Mapping[Rational, Rational], primes: Iterable[int]):
        primes = frozenset(primes)
        collected: Dict[Fraction, Fraction] = {}
        for exp, coeff in terms.items():
            e, c = _frac(exp), _frac(coeff)
            if e < 0:
                raise PuiseuxError(f"negative exponent {e}")
            if not smooth_denominator_check(e.denominator, primes):
                raise PuiseuxError(f"exponent {e} has a denominator outside {sorted(primes)}")
            collected[e] = collected.get(e, Fraction(0)) + c
        self._set(_to_ring(collected), primes)

    def _set(self, element: RingElement, primes: FrozenSet[int]) -> None:
        self._element = element
        self._terms = _from_ring(element)
        self.primes = primes

    @classmethod
    def _wrap(cls, element: RingElement, primes: FrozenSet[int]) -> "PuiseuxPoly":
        obj = object.__new__(cls)
        obj._set(element, primes)
        return obj

    @classmethod
    def constant(cls, value: Rational, primes: Iterable[int]) -> "PuiseuxPoly":
        return cls({0: value}, primes)

    @classmethod
    def monomial(cls, coeff: Rational, exp: Rational, primes: Iterable[int]) -> "PuiseuxPoly":
        return cls({exp: coeff}, primes)

    @property
    def element(self) -> RingElement:
        """The underlying element of the Puiseux ring in X over QQ."""
        return self._element

    # ---- structure ----------------------------------------------------------
    def terms(self) -> List[Tuple[Fraction, Fraction]]:
        """(exponent, coefficient) pairs, largest exponent first."""
        return sorted(self._terms.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def leading_exponent(self) -> Optional[Fraction]:
        return max(self._terms, default=None)

    def leading_coefficient(self) -> Fraction:
        e = self.leading_exponent()
        return self._terms[e] if e is not None else Fraction(0)

    def constant_term(self) -> Fraction:
        return self._terms.get(Fraction(0), Fraction(0))

    def is_member(self) -> bool:
        return self.constant_term().denominator == 1 and self.leading_coefficient() >= 0

    def is_positive(self) -> bool:
        return self.leading_coefficient() > 0

    def leq(self, other: "PuiseuxPoly") -> bool:
        diff = other - self
        return diff.is_zero() or diff.is_positive()

    # ---- arithmetic ---------------------------------------------------------
    def _compatible(self, other: Union["PuiseuxPoly", Rational]) -> "PuiseuxPoly":
        if not isinstance(other, PuiseuxPoly):
            return PuiseuxPoly.constant(other, self.primes)
        if other.primes != self.primes:
            raise PuiseuxError(f"prime sets differ: {sorted(self.primes)} vs {sorted(other.primes)}")
        return other

    def __add__(self, other) -> "PuiseuxPoly":
        return self._wrap(self._element + self._compatible(other)._element, self.primes)

    __radd__ = __add__

    def __neg__(self) -> "PuiseuxPoly":
        return self._wrap(-self._element, self.primes)

    def __sub__(self, other) -> "PuiseuxPoly":
        return self._wrap(self._element - self._compatible(other)._element, self.primes)

    def __mul__(self, other) -> "PuiseuxPoly":
        return self._wrap(self._element * self._compatible(other)._element, self.primes)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, PuiseuxPoly) and self.primes == other.primes and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.primes, frozenset(self._terms.items())))

    # ---- text ---------------------------------------------------------------
    def render(self) -> str:
        return _render_terms(self.terms())

    def __repr__(self) -> str:
        return f"PuiseuxPoly({self.render()!r}, primes={sorted(self.primes)})"

    def to_json(self) -> dict:
        return {"primes": sorted(self.primes), "terms": [[str(c), str(e)] for e, c in self.terms()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "PuiseuxPoly":
        try:
            terms: Dict[Fraction, Fraction] = {}
            for coeff, exp in data["terms"]:
                terms[Fraction(exp)] = terms.get(Fraction(exp), Fraction(0)) + Fraction(coeff)
            return cls(terms, data["primes"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise PuiseuxError(f"malformed element: {exc}") from None


def _render_power(e: Fraction) -> str:
    if e == 1:
        return "X"
    if e.denominator == 1:
        return f"X^{e.numerator}"
    return f"X^({e})"


def _render_terms(terms: Sequence[Tuple[Fraction, Fraction]]) -> str:
    pieces: List[str] = []
    for e, c in terms:
        magnitude = abs(c)
        if e == 0:
            body = str(magnitude)
        elif magnitude == 1:
            body = _render_power(e)
        else:
            body = f"{magnitude}*{_render_power(e)}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces) if pieces else "0"


# -----------------------------------------------------------------------------
# Leading exponents of roots
# -----------------------------------------------------------------------------
def exponent_candidates(coefficients: Sequence[PuiseuxPoly], max_degree: int) -> FrozenSet[Fraction]:
    """Possible leading exponents of roots of sum_i coefficients[i] * t^i.

    With C the common denominator of all exponents and k_i the leading
    exponent of the i-th coefficient scaled by C, a root's leading exponent is
    (k_i - k_j) / (C (j - i)) for some j > i with both coefficients nonzero.

    Every pair contributes, so zero and negative slopes are returned as well.
    Only the positive ones can lead a root with a positive leading exponent;
    `positive_candidates` keeps just those.
    """
    degree = len(coefficients) - 1
    if degree > max_degree:
        raise PuiseuxError(f"degree {degree} exceeds the cap {max_degree}")
    support = [(i, c) for i, c in enumerate(coefficients) if not c.is_zero()]
    if not support:
        raise PuiseuxError("the zero polynomial has no leading exponents")
    common = math.lcm(*(e.denominator for _, c in support for e, _ in c.terms()))
    scaled = {i: int(c.leading_exponent() * common) for i, c in support}
    return frozenset(
        Fraction(scaled[i] - scaled[j], common * (j - i))
        for (i, _), (j, _) in ((a, b) for a in support for b in support)
        if j > i
    )


def positive_candidates(coefficients: Sequence[PuiseuxPoly], max_degree: int) -> FrozenSet[Fraction]:
    return frozenset(e for e in exponent_candidates(coefficients, max_degree) if e > 0)


# -----------------------------------------------------------------------------
# Integer parts of truncated roots
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class TruncatedRoot:
    """r = sum of a X^e over `terms` (exponents strictly decreasing), plus unknown terms below `order`.

    `order=None` means the expansion is exact.
    """

    terms: Tuple[Tuple[Fraction, Fraction], ...]
    order: Optional[Fraction] = None

    def __post_init__(self):
        exps = [e for e, _ in self.terms]
        if any(a <= b for a, b in zip(exps, exps[1:])):
            raise PuiseuxError("exponents of a truncated root must strictly decrease")
        if self.order is not None and exps and exps[-1] < self.order:
            raise PuiseuxError(f"known term X^({exps[-1]}) lies below the truncation order {self.order}")

    @classmethod
    def of(cls, pairs: Iterable[Tuple[Rational, Rational]], order: Optional[Rational] = None) -> "TruncatedRoot":
        """Build from (coefficient, exponent) pairs in any order."""
        terms: Dict[Fraction, Fraction] = {}
        for coeff, exp in pairs:
            terms[Fraction(exp)] = terms.get(Fraction(exp), Fraction(0)) + Fraction(coeff)
        ordered = tuple(sorted(((e, c) for e, c in terms.items() if c != 0), reverse=True))
        return cls(ordered, Fraction(order) if order is not None else None)

    def primes(self) -> FrozenSet[int]:
        return frozenset(p for e, _ in self.terms for p in sympy.factorint(e.denominator))

    @property
    def element(self) -> RingElement:
        """The known terms as an element of the Puiseux ring; negative exponents allowed."""
        return _to_ring(dict(self.terms))

    def render(self) -> str:
        text = _render_terms(self.terms)
        return text if self.order is None else f"{text} + O(X^({self.order}))"


def _floor_constant(r: TruncatedRoot) -> int:
    constant = next((c for e, c in r.terms if e == 0), Fraction(0))
    if constant.denominator != 1:
        return math.floor(constant)
    tail = [c for e, c in r.terms if e < 0]
    if tail:
        return int(constant) if tail[0] > 0 else int(constant) - 1
    if r.order is None or r.order > 0:
        return int(constant)
    raise TruncationError(
        f"constant {constant} is an integer and the sign of the tail below X^({r.order}) is unknown"
    )


def puiseux_integer_part(r: TruncatedRoot, primes: Optional[Iterable[int]] = None) -> PuiseuxPoly:
    """The element s with s <= r < s + 1: r's positive-exponent part plus the floor of what remains."""
    primes = frozenset(primes) if primes is not None else r.primes()
    if r.order is not None and r.order > 0:
        raise TruncationError(f"terms above X^0 are unknown below X^({r.order})")
    if r.terms and r.terms[0][0] > 0:
        (e, c), rest = r.terms[0], r.terms[1:]
        return puiseux_integer_part(TruncatedRoot(rest, r.order), primes) + PuiseuxPoly.monomial(c, e, primes)
    return PuiseuxPoly.constant(_floor_constant(r), primes)


def _sign(terms: Mapping[Fraction, Fraction], order: Optional[Fraction]) -> int:
    for e in sorted(terms, reverse=True):
        if terms[e] != 0:
            return 1 if terms[e] > 0 else -1
    if order is None:
        return 0
    raise TruncationError("the known terms cancel and the remainder is truncated")


def integer_part_holds(s: PuiseuxPoly, r: TruncatedRoot) -> bool:
    """s <= r < s + 1, comparing by the sign of the leading coefficient of the difference."""
    diff = r.element - s.element
    return _sign(_from_ring(diff), r.order) >= 0 and _sign(_from_ring(diff - 1), r.order) < 0
