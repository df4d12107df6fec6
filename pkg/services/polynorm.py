"""Canonical multivariate polynomials over the integers.

A `Polynomial` is an immutable finite map monomial -> nonzero integer. A
monomial is a tuple of (variable, exponent) pairs sorted by variable with
positive exponents; the empty tuple is the constant monomial. The natural
number polynomials produced by `normalize` are the ones whose coefficients
are all positive.
"""
from __future__ import annotations

import itertools
from numbers import Number
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Tuple, Union

from services.errors import TermError, UnboundVariableError
from services.terms import Add, Mul, Term, Var, Zero, peel_successors, variables

Monomial = Tuple[Tuple[str, int], ...]
Scalar = Union[int, "Polynomial"]

ONE_MONOMIAL: Monomial = ()


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    powers: Dict[str, int] = dict(a)
    for name, exp in b:
        powers[name] = powers.get(name, 0) + exp
    return tuple(sorted(powers.items()))


def monomial_degree(m: Monomial) -> int:
    return sum(exp for _, exp in m)


class Polynomial:
    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[Monomial, int], Iterable[Tuple[Monomial, int]]] = ()):
        collected: Dict[Monomial, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coeff in items:
            mono = tuple(sorted((name, exp) for name, exp in mono if exp != 0))
            collected[mono] = collected.get(mono, 0) + coeff
        self._terms = {m: c for m, c in collected.items() if c != 0}

    # ---- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, value: int) -> "Polynomial":
        return cls({ONE_MONOMIAL: value})

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        return cls({((name, 1),): 1})

    @classmethod
    def univariate(cls, coefficients: Iterable[int], var: str = "t") -> "Polynomial":
        """Build from coefficients listed highest degree first."""
        coeffs = list(coefficients)
        n = len(coeffs) - 1
        return cls({((var, n - i),) if n - i else ONE_MONOMIAL: c for i, c in enumerate(coeffs)})

    # ---- structure ----------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, int]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == ONE_MONOMIAL for m in self._terms)

    def constant_term(self) -> int:
        return self._terms.get(ONE_MONOMIAL, 0)

    def degree(self) -> int:
        return max((monomial_degree(m) for m in self._terms), default=0)

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self._terms), default=0)

    def variables(self) -> List[str]:
        return sorted({name for m in self._terms for name, _ in m})

    def coefficients(self, var: str) -> List[int]:
        """Univariate coefficient list, highest degree first."""
        if any(name != var for m in self._terms for name, _ in m):
            raise TermError(f"polynomial is not univariate in {var}: {self}")
        n = self.degree_in(var)
        return [self._terms.get(((var, k),) if k else ONE_MONOMIAL, 0) for k in range(n, -1, -1)]

    def leading_coefficient(self, var: str) -> int:
        coeffs = self.coefficients(var)
        return coeffs[0] if coeffs else 0

    def group_by(self, var: str) -> Dict[int, "Polynomial"]:
        """Coefficient polynomials of the powers of `var`."""
        groups: Dict[int, Dict[Monomial, int]] = {}
        for mono, coeff in self._terms.items():
            powers = dict(mono)
            k = powers.pop(var, 0)
            groups.setdefault(k, {})[tuple(sorted(powers.items()))] = coeff
        return {k: Polynomial(v) for k, v in groups.items()}

    # ---- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other: Scalar) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, int):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other: Scalar) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        merged = dict(self._terms)
        for mono, coeff in other._terms.items():
            merged[mono] = merged.get(mono, 0) + coeff
        return Polynomial(merged)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other: Scalar) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        product: Dict[Monomial, int] = {}
        for (ma, ca), (mb, cb) in itertools.product(self._terms.items(), other._terms.items()):
            mono = monomial_mul(ma, mb)
            product[mono] = product.get(mono, 0) + ca * cb
        return Polynomial(product)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # ---- evaluation ---------------------------------------------------------
    def evaluate(self, env: Mapping[str, Number]):
        total = 0
        for mono, coeff in self._terms.items():
            value = coeff
            for name, exp in mono:
                if name not in env:
                    raise UnboundVariableError(name)
                value = value * env[name] ** exp
            total = total + value
        return total

    def substitute(self, var: str, replacement: "Polynomial") -> "Polynomial":
        powers: Dict[int, Polynomial] = {0: Polynomial.constant(1)}
        result = Polynomial()
        for mono, coeff in self._terms.items():
            rest = dict(mono)
            k = rest.pop(var, 0)
            if k not in powers:
                powers[k] = replacement ** k
            result = result + Polynomial({tuple(sorted(rest.items())): coeff}) * powers[k]
        return result

    # ---- text ---------------------------------------------------------------
    def sorted_terms(self) -> List[Tuple[Monomial, int]]:
        """Total degree descending, then lexicographic in variable order."""
        names = self.variables()

        def key(item):
            powers = dict(item[0])
            return (-monomial_degree(item[0]), tuple(-powers.get(n, 0) for n in names))

        return sorted(self._terms.items(), key=key)

    def render(self) -> str:
        pieces: List[str] = []
        for mono, coeff in self.sorted_terms():
            factors = [name if exp == 1 else f"{name}^{exp}" for name, exp in mono]
            magnitude = abs(coeff)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(magnitude)] + factors)
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces) if pieces else "0"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Polynomial({self.render()!r})"


# Type names used throughout the services.
NatPoly = Polynomial
IntPoly = Polynomial


def normalize(t: Term) -> Polynomial:
    """Canonical polynomial of t under the commutative semiring laws."""
    count, core = peel_successors(t)
    if isinstance(core, Zero):
        poly = Polynomial()
    elif isinstance(core, Var):
        poly = Polynomial.variable(core.name)
    elif isinstance(core, Add):
        poly = normalize(core.left) + normalize(core.right)
    elif isinstance(core, Mul):
        poly = normalize(core.left) * normalize(core.right)
    else:
        raise TermError(f"not a term: {core!r}")
    return poly + count if count else poly


def degree(p: Polynomial) -> int:
    return p.degree()


def eval_nat(t: Term, env: Mapping[str, int]) -> int:
    """Evaluate t in the standard naturals directly on the tree."""
    count, core = peel_successors(t)
    if isinstance(core, Zero):
        value = 0
    elif isinstance(core, Var):
        if core.name not in env:
            raise UnboundVariableError(core.name)
        value = env[core.name]
    elif isinstance(core, Add):
        value = eval_nat(core.left, env) + eval_nat(core.right, env)
    else:
        value = eval_nat(core.left, env) * eval_nat(core.right, env)
    return value + count


def decide_identity(s: Term, t: Term) -> bool:
    """True iff s = t holds for every assignment in the naturals."""
    return normalize(s) == normalize(t)


def vandermonde_oracle(s: Term, t: Term) -> bool:
    """Identity check by evaluation on a grid, independent of polynomial comparison.

    A nonzero polynomial whose degree in each variable v is at most d_v cannot
    vanish on the whole box prod {0..d_v}; d_v never exceeds the total degree.
    """
    ps, pt = normalize(s), normalize(t)
    names = sorted(variables(s) | variables(t))
    bounds = [max(ps.degree_in(n), pt.degree_in(n)) for n in names]
    for point in itertools.product(*(range(b + 1) for b in bounds)):
        env = dict(zip(names, point))
        if eval_nat(s, env) != eval_nat(t, env):
            return False
    return True


def finite_difference(f: Polynomial, var: str = "t") -> Polynomial:
    """f(var + 1) - f(var)."""
    if any(name != var for name in f.variables()):
        raise TermError(f"finite differences are taken of polynomials univariate in {var}")
    return f.substitute(var, Polynomial.variable(var) + 1) - f


def difference_tower(f: Polynomial, var: str = "t") -> List[Polynomial]:
    """f, its difference, its second difference, ... ending at the first constant."""
    tower = [f]
    while not tower[-1].is_constant():
        tower.append(finite_difference(tower[-1], var))
    return tower
