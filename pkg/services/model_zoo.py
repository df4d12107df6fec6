"""Computable structures for the language (0, S, +, *, <=).

Each model is an immutable method table over its own element type. `standard`
is plain N; the others are the nonstandard countermodels: the one-point
extension N + {w}, the two-point extensions with max-merging or left-absorbing
infinities, the eventually-positive integer polynomials Z[X]+, and the
nonnegative order-significant formal sums.
"""
from __future__ import annotations

import ast
import itertools
import json
import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from services import formal_sums as fs
from services.errors import CrossModelError, ElementSyntaxError, UnboundVariableError
from services.formal_sums import FormalSum
from services.polynorm import Polynomial, normalize
from services.terms import Add, Mul, Term, Var, Zero, peel_successors, variables

logger = logging.getLogger(__name__)

POLY_VAR = "X"


@dataclass(frozen=True)
class Nat:
    value: int


@dataclass(frozen=True)
class Omega:
    index: int = 0


@dataclass(frozen=True)
class Poly:
    poly: Polynomial


@dataclass(frozen=True)
class Sum:
    sum: FormalSum


ModelElem = Union[Nat, Omega, Poly, Sum]


class ModelId(str, Enum):
    STANDARD = "standard"
    ONE_POINT = "one-point"
    MAX_MERGE = "max-merge"
    LEFT_ABSORB = "left-absorb"
    ZX_PLUS = "zx-plus"
    FORMAL_SUMS = "formal-sums"


class Model(ABC):
    """Method table of a structure; public operations reject foreign elements."""

    model_id: ModelId
    description: str = ""

    # ---- membership ---------------------------------------------------------
    @abstractmethod
    def contains(self, e: ModelElem) -> bool:
        ...

    def check(self, e: ModelElem) -> ModelElem:
        if not self.contains(e):
            raise CrossModelError(f"{format_element(e)} is not an element of {self.model_id.value}")
        return e

    def coerce(self, e: ModelElem) -> ModelElem:
        """Map a natural-number literal into this model's representation."""
        if isinstance(e, Nat):
            return self.numeral(e.value)
        return self.check(e)

    # ---- signature ----------------------------------------------------------
    def zero(self) -> ModelElem:
        return self.numeral(0)

    def one(self) -> ModelElem:
        return self.numeral(1)

    def numeral(self, n: int) -> ModelElem:
        return Nat(n)

    def succ(self, e: ModelElem) -> ModelElem:
        return self._succ(self.check(e))

    def add(self, a: ModelElem, b: ModelElem) -> ModelElem:
        return self._add(self.check(a), self.check(b))

    def mul(self, a: ModelElem, b: ModelElem) -> ModelElem:
        return self._mul(self.check(a), self.check(b))

    def leq(self, a: ModelElem, b: ModelElem) -> bool:
        return self._leq(self.check(a), self.check(b))

    def eq(self, a: ModelElem, b: ModelElem) -> bool:
        return self.check(a) == self.check(b)

    def _succ(self, e: ModelElem) -> ModelElem:
        return self._add(e, self.one())

    @abstractmethod
    def _add(self, a: ModelElem, b: ModelElem) -> ModelElem:
        ...

    @abstractmethod
    def _mul(self, a: ModelElem, b: ModelElem) -> ModelElem:
        ...

    @abstractmethod
    def _leq(self, a: ModelElem, b: ModelElem) -> bool:
        ...

    # ---- structural witnesses -----------------------------------------------
    def predecessor(self, e: ModelElem) -> Optional[ModelElem]:
        """Some y with S y = e, or None for zero."""
        return None

    def residues(self, x: ModelElem, y: ModelElem) -> List[ModelElem]:
        """Candidate r with r + x = y."""
        return []

    # ---- probes -------------------------------------------------------------
    def probes(self, bound: int = 12, seed: int = 0) -> List[ModelElem]:
        return [self.numeral(n) for n in range(bound + 1)]

    def nonstandard(self) -> List[ModelElem]:
        return []


# -----------------------------------------------------------------------------
# N and its point extensions
# -----------------------------------------------------------------------------
class StandardModel(Model):
    model_id = ModelId.STANDARD
    description = "the standard naturals"
    omega_indices: Tuple[int, ...] = ()

    def contains(self, e: ModelElem) -> bool:
        if isinstance(e, Nat):
            return e.value >= 0
        return isinstance(e, Omega) and e.index in self.omega_indices

    def _succ(self, e):
        return Nat(e.value + 1) if isinstance(e, Nat) else e

    def _add(self, a, b):
        return Nat(a.value + b.value)

    def _mul(self, a, b):
        return Nat(a.value * b.value)

    def _leq(self, a, b):
        return a.value <= b.value

    def predecessor(self, e):
        if isinstance(e, Omega):
            return e
        return Nat(e.value - 1) if e.value else None

    def residues(self, x, y):
        if isinstance(y, Omega):
            return [y]
        if isinstance(x, Nat) and y.value >= x.value:
            return [Nat(y.value - x.value)]
        return []

    def nonstandard(self):
        return [Omega(i) for i in self.omega_indices]

    def probes(self, bound=12, seed=0):
        return [Nat(n) for n in range(bound + 1)] + self.nonstandard()


class OnePointModel(StandardModel):
    model_id = ModelId.ONE_POINT
    description = "N with one absorbing point w: Sw = w, x + w = w, 0*w = 0"
    omega_indices = (0,)

    def _add(self, a, b):
        if isinstance(a, Omega) or isinstance(b, Omega):
            return Omega(0)
        return Nat(a.value + b.value)

    def _mul(self, a, b):
        if a == Nat(0) or b == Nat(0):
            return Nat(0)
        if isinstance(a, Omega) or isinstance(b, Omega):
            return Omega(0)
        return Nat(a.value * b.value)

    def _leq(self, a, b):
        # r + a = b has a solution iff b = w (take r = w) or both are finite with a <= b.
        if isinstance(b, Omega):
            return True
        return isinstance(a, Nat) and a.value <= b.value


class MaxMergeModel(StandardModel):
    model_id = ModelId.MAX_MERGE
    description = "N with w0, w1: w_i + w_j = w_i * w_j = w_max(i,j)"
    omega_indices = (0, 1)

    def _add(self, a, b):
        if isinstance(a, Omega) and isinstance(b, Omega):
            return Omega(max(a.index, b.index))
        if isinstance(a, Omega):
            return a
        if isinstance(b, Omega):
            return b
        return Nat(a.value + b.value)

    def _mul(self, a, b):
        if a == Nat(0) or b == Nat(0):
            return Nat(0)
        return self._add(a, b) if isinstance(a, Omega) or isinstance(b, Omega) else Nat(a.value * b.value)

    def _leq(self, a, b):
        if isinstance(b, Omega):
            return isinstance(a, Nat) or a.index <= b.index
        return isinstance(a, Nat) and a.value <= b.value


class LeftAbsorbModel(StandardModel):
    model_id = ModelId.LEFT_ABSORB
    description = "N with w0, w1 absorbing from the left: w_i + x = w_i, w_i * x = w_i for x != 0"
    omega_indices = (0, 1)

    def _add(self, a, b):
        if isinstance(a, Omega):
            return a
        if isinstance(b, Omega):
            return b
        return Nat(a.value + b.value)

    def _mul(self, a, b):
        if a == Nat(0) or b == Nat(0):
            return Nat(0)
        if isinstance(a, Omega):
            return a
        if isinstance(b, Omega):
            return b
        return Nat(a.value * b.value)

    def _leq(self, a, b):
        if isinstance(b, Omega):
            return True
        return isinstance(a, Nat) and a.value <= b.value


# -----------------------------------------------------------------------------
# Z[X]+
# -----------------------------------------------------------------------------
def _leading(p: Polynomial) -> int:
    return p.leading_coefficient(POLY_VAR)


class ZXPlusModel(Model):
    model_id = ModelId.ZX_PLUS
    description = "integer polynomials in X with positive leading coefficient, or zero"

    def contains(self, e):
        if not isinstance(e, Poly):
            return False
        if any(name != POLY_VAR for name in e.poly.variables()):
            return False
        return e.poly.is_zero() or _leading(e.poly) > 0

    def numeral(self, n):
        return Poly(Polynomial.constant(n))

    def _succ(self, e):
        return Poly(e.poly + 1)

    def _add(self, a, b):
        return Poly(a.poly + b.poly)

    def _mul(self, a, b):
        return Poly(a.poly * b.poly)

    def _leq(self, a, b):
        # Eventual dominance: b - a is zero or has a positive leading coefficient.
        diff = b.poly - a.poly
        return diff.is_zero() or _leading(diff) > 0

    def predecessor(self, e):
        return None if e.poly.is_zero() else Poly(e.poly - 1)

    def residues(self, x, y):
        r = Poly(y.poly - x.poly)
        return [r] if self.contains(r) else []

    def nonstandard(self):
        x = Polynomial.variable(POLY_VAR)
        return [Poly(x), Poly(x + 1), Poly(x * x)]

    def probes(self, bound=12, seed=0):
        found = [self.numeral(n) for n in range(bound + 1)] + self.nonstandard()
        seen = set(found)
        for coeffs in itertools.chain(
            ([a, b] for a in range(1, 4) for b in range(-3, 4)),
            ([a, b, c] for a in range(1, 4) for b in range(-3, 4) for c in range(-3, 4)),
        ):
            e = Poly(Polynomial.univariate(coeffs, POLY_VAR))
            if e not in seen:
                seen.add(e)
                found.append(e)
        return found


# -----------------------------------------------------------------------------
# Nonnegative formal sums
# -----------------------------------------------------------------------------
class FormalSumsModel(Model):
    model_id = ModelId.FORMAL_SUMS
    description = "nonnegative order-significant formal sums under concatenation"

    def contains(self, e):
        return isinstance(e, Sum) and fs.is_normal(e.sum) and fs.is_nonnegative(e.sum)

    def numeral(self, n):
        return Sum(fs.natural(n))

    def _succ(self, e):
        return Sum(fs.sum_succ(e.sum))

    def _add(self, a, b):
        return Sum(fs.sum_add(a.sum, b.sum))

    def _mul(self, a, b):
        return Sum(fs.sum_mul(a.sum, b.sum))

    def _leq(self, a, b):
        # Concatenation is a group operation, so r + a = b forces r = b - a.
        return fs.is_nonnegative(fs.sum_sub(b.sum, a.sum))

    def predecessor(self, e):
        return Sum(fs.sum_sub(e.sum, fs.ONE)) if e.sum.terms else None

    def residues(self, x, y):
        r = Sum(fs.sum_sub(y.sum, x.sum))
        return [r] if fs.is_nonnegative(r.sum) else []

    def nonstandard(self):
        return [
            Sum(FormalSum.of(pairs))
            for pairs in (
                [(1, 1)],
                [(1, 0), (1, 1)],
                [(1, 1), (1, 0)],
                [(-1, 1), (1, 2)],
                [(2, 1), (-1, 0)],
                [(1, 2)],
            )
        ]

    def probes(self, bound=12, seed=0):
        rng = random.Random(seed)
        found = [self.numeral(n) for n in range(bound + 1)] + self.nonstandard()
        seen = set(found)
        while len(found) < 2 * bound + 7:
            e = Sum(fs.random_nonnegative_sum(rng))
            if e not in seen:
                seen.add(e)
                found.append(e)
        return found


_MODELS: Dict[ModelId, Model] = {
    model.model_id: model
    for model in (
        StandardModel(),
        OnePointModel(),
        MaxMergeModel(),
        LeftAbsorbModel(),
        ZXPlusModel(),
        FormalSumsModel(),
    )
}


def model_ops(m: Union[ModelId, str, Model]) -> Model:
    if isinstance(m, Model):
        return m
    return _MODELS[ModelId(m)]


# -----------------------------------------------------------------------------
# Evaluation
# -----------------------------------------------------------------------------
Env = Mapping[str, ModelElem]


def eval_term(m: Union[ModelId, str, Model], t: Term, env: Env) -> ModelElem:
    model = model_ops(m)
    count, core = peel_successors(t)
    if isinstance(core, Zero):
        value = model.zero()
    elif isinstance(core, Var):
        if core.name not in env:
            raise UnboundVariableError(core.name)
        value = model.check(env[core.name])
    elif isinstance(core, Add):
        value = model.add(eval_term(model, core.left, env), eval_term(model, core.right, env))
    elif isinstance(core, Mul):
        value = model.mul(eval_term(model, core.left, env), eval_term(model, core.right, env))
    else:
        raise TypeError(f"not a term: {core!r}")
    for _ in range(count):
        value = model.succ(value)
    return value


def eval_polynomial(m: Union[ModelId, str, Model], p: Polynomial, env: Env) -> ModelElem:
    """Evaluate a polynomial with nonnegative coefficients in a commutative model."""
    model = model_ops(m)
    total = model.zero()
    for mono, coeff in p.sorted_terms():
        value = model.numeral(coeff)
        for name, exp in mono:
            if name not in env:
                raise UnboundVariableError(name)
            for _ in range(exp):
                value = model.mul(value, env[name])
        total = model.add(total, value)
    return total


# -----------------------------------------------------------------------------
# Constant-or-unbounded classification in the one-point model
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class Constant:
    value: ModelElem


@dataclass(frozen=True)
class Unbounded:
    pass


def classify_term_onepoint(
    t: Term, env: Env, var: str = "x", bound: int = 16
) -> Union[Constant, Unbounded]:
    """Decide whether t is constant in `var` over N + {w}, given values for the other variables.

    Structurally t is a polynomial sum_k c_k x^k whose coefficients are
    evaluated in the model; it is constant iff every c_k with k > 0 vanishes or
    c_0 = w absorbs the rest. The verdict is confirmed on the probes {0..bound, w}.
    """
    model = model_ops(ModelId.ONE_POINT)
    missing = sorted(variables(t) - {var} - set(env))
    if missing:
        raise UnboundVariableError(missing[0])
    groups = normalize(t).group_by(var)
    coefficients = {k: eval_polynomial(model, c, env) for k, c in groups.items()}
    c0 = coefficients.get(0, Nat(0))
    structural = c0 == Omega(0) or all(c == Nat(0) for k, c in coefficients.items() if k > 0)

    probes = [Nat(n) for n in range(bound + 1)] + [Omega(0)]
    values = {eval_term(model, t, {**env, var: p}) for p in probes}
    if structural and len(values) == 1:
        return Constant(values.pop())
    return Unbounded()


# -----------------------------------------------------------------------------
# Ring of differences
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class CancellationFailure:
    law: str
    witness: Tuple[ModelElem, ...]


@dataclass(frozen=True)
class Difference:
    plus: ModelElem
    minus: ModelElem


class DiffRing:
    """Pairs (m, n) read as m - n, with (m, n) ~ (m', n') iff m + n' = m' + n."""

    def __init__(self, model: Model):
        self.model = model

    def pair(self, m: ModelElem, n: ModelElem) -> Difference:
        return Difference(self.model.check(m), self.model.check(n))

    def embed(self, m: ModelElem) -> Difference:
        return self.pair(m, self.model.zero())

    def add(self, a: Difference, b: Difference) -> Difference:
        ops = self.model
        return Difference(ops.add(a.plus, b.plus), ops.add(a.minus, b.minus))

    def neg(self, a: Difference) -> Difference:
        return Difference(a.minus, a.plus)

    def sub(self, a: Difference, b: Difference) -> Difference:
        return self.add(a, self.neg(b))

    def mul(self, a: Difference, b: Difference) -> Difference:
        ops = self.model
        plus = ops.add(ops.mul(a.plus, b.plus), ops.mul(a.minus, b.minus))
        minus = ops.add(ops.mul(a.plus, b.minus), ops.mul(a.minus, b.plus))
        return Difference(plus, minus)

    def eq(self, a: Difference, b: Difference) -> bool:
        return self.model.eq(self.model.add(a.plus, b.minus), self.model.add(b.plus, a.minus))


def diff_ring(m: Union[ModelId, str, Model], probes: Sequence[ModelElem]) -> Union[DiffRing, CancellationFailure]:
    """The ring of differences, if addition is commutative and cancellative on the probes."""
    model = model_ops(m)
    probes = [model.check(p) for p in probes]
    for a, b in itertools.product(probes, repeat=2):
        if model.add(a, b) != model.add(b, a):
            return CancellationFailure("commutativity", (a, b))
    for a in probes:
        seen: Dict[ModelElem, ModelElem] = {}
        for b in probes:
            total = model.add(a, b)
            if total in seen and seen[total] != b:
                return CancellationFailure("cancellation", (a, seen[total], b))
            seen.setdefault(total, b)
    return DiffRing(model)


# -----------------------------------------------------------------------------
# Element literals: nat:5, omega:0, poly:[1,0,-2], sum:[(2,3),(-1,0)]
# -----------------------------------------------------------------------------
def parse_element(text: str, model: Optional[Union[ModelId, str, Model]] = None) -> ModelElem:
    kind, sep, body = text.strip().partition(":")
    if not sep:
        raise ElementSyntaxError(f"element literal needs a kind prefix: {text!r}")
    try:
        if kind == "nat":
            value = int(body)
            if value < 0:
                raise ValueError(body)
            elem: ModelElem = Nat(value)
        elif kind == "omega":
            elem = Omega(int(body))
        elif kind == "poly":
            coeffs = json.loads(body)
            elem = Poly(Polynomial.univariate([int(c) for c in coeffs], POLY_VAR))
        elif kind == "sum":
            pairs = ast.literal_eval(body)
            elem = Sum(fs.normal_form(FormalSum.of(pairs)))
        else:
            raise ElementSyntaxError(f"unknown element kind {kind!r}")
    except (ValueError, SyntaxError, TypeError) as exc:
        raise ElementSyntaxError(f"malformed element literal {text!r}: {exc}") from None
    return model_ops(model).coerce(elem) if model is not None else elem


def format_element(e: ModelElem) -> str:
    if isinstance(e, Nat):
        return f"nat:{e.value}"
    if isinstance(e, Omega):
        return f"omega:{e.index}"
    if isinstance(e, Poly):
        return "poly:" + json.dumps(e.poly.coefficients(POLY_VAR), separators=(",", ":"))
    return "sum:[" + ",".join(f"({c},{x})" for c, x in e.sum.terms) + "]"


def parse_env(text: str, model: Union[ModelId, str, Model]) -> Dict[str, ModelElem]:
    """Parse `x=omega:0,y=nat:3` (sum literals may contain commas inside brackets)."""
    env: Dict[str, ModelElem] = {}
    for item in _split_top_level(text):
        name, sep, literal = item.partition("=")
        if not sep:
            raise ElementSyntaxError(f"environment entries look like name=literal, got {item!r}")
        env[name.strip()] = parse_element(literal, model)
    return env


def _split_top_level(text: str) -> Iterable[str]:
    depth, start = 0, 0
    for i, ch in enumerate(text):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        elif ch == "," and depth == 0:
            if text[start:i].strip():
                yield text[start:i].strip()
            start = i + 1
    if text[start:].strip():
        yield text[start:].strip()
