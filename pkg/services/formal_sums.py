"""Order-significant formal sums a1 X^i1 + ... + an X^in.

Two reductions act on a sum: a pair with coefficient 0 is dropped, and two
adjacent pairs with the same exponent merge into one. Every sum reduces to a
unique normal form; under concatenation the normal forms form a group whose
inverse reverses the sum and negates each coefficient.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import lark
from lark.exceptions import UnexpectedInput

from services.errors import TermSyntaxError

Pair = Tuple[int, int]


@dataclass(frozen=True)
class FormalSum:
    terms: Tuple[Pair, ...] = ()

    def __post_init__(self):
        for coeff, exp in self.terms:
            if not isinstance(coeff, int) or not isinstance(exp, int) or exp < 0:
                raise ValueError(f"invalid formal-sum pair ({coeff!r}, {exp!r})")

    @classmethod
    def of(cls, pairs: Iterable[Sequence[int]]) -> "FormalSum":
        return cls(tuple((int(c), int(e)) for c, e in pairs))

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "FormalSum") -> "FormalSum":
        """Raw concatenation, no reduction."""
        return FormalSum(self.terms + other.terms)

    def render(self) -> str:
        return render_sum(self)

    def to_json(self) -> List[List[int]]:
        return [[c, e] for c, e in self.terms]


EMPTY = FormalSum()
ONE = FormalSum(((1, 0),))


class Reduction(str, Enum):
    DROP_ZERO = "drop-zero"
    MERGE = "merge"


class _AlreadyNF(Enum):
    ALREADY_NF = "already-nf"


ALREADY_NF = _AlreadyNF.ALREADY_NF


def redexes(s: FormalSum) -> List[Tuple[Reduction, int]]:
    """All applicable reductions, leftmost first; a merge is located at its left pair."""
    found = []
    for i, (coeff, exp) in enumerate(s.terms):
        if coeff == 0:
            found.append((Reduction.DROP_ZERO, i))
        if i + 1 < len(s.terms) and s.terms[i + 1][1] == exp:
            found.append((Reduction.MERGE, i))
    return found


def reduce_at(s: FormalSum, redex: Tuple[Reduction, int]) -> FormalSum:
    kind, i = redex
    terms = list(s.terms)
    if kind is Reduction.DROP_ZERO:
        del terms[i]
    else:
        terms[i : i + 2] = [(terms[i][0] + terms[i + 1][0], terms[i][1])]
    return FormalSum(tuple(terms))


def reduce_once(s: FormalSum) -> Union[FormalSum, _AlreadyNF]:
    found = redexes(s)
    return reduce_at(s, found[0]) if found else ALREADY_NF


def _normalize_pairs(pairs: Iterable[Pair]) -> FormalSum:
    stack: List[List[int]] = []
    for coeff, exp in pairs:
        if coeff == 0:
            continue
        if stack and stack[-1][1] == exp:
            stack[-1][0] += coeff
            if stack[-1][0] == 0:
                stack.pop()
        else:
            stack.append([coeff, exp])
    return FormalSum(tuple((c, e) for c, e in stack))


def normal_form(s: FormalSum) -> FormalSum:
    return _normalize_pairs(s.terms)


def is_normal(s: FormalSum) -> bool:
    return not redexes(s)


def inverse(a: FormalSum) -> FormalSum:
    return FormalSum(tuple((-c, e) for c, e in reversed(a.terms)))


def sum_add(a: FormalSum, b: FormalSum) -> FormalSum:
    return _normalize_pairs(a.terms + b.terms)


def sum_sub(a: FormalSum, b: FormalSum) -> FormalSum:
    """The unique r with r + b = a."""
    return sum_add(a, inverse(b))


def sum_succ(a: FormalSum) -> FormalSum:
    return sum_add(a, ONE)


def prefix_residues(x: FormalSum, y: FormalSum, max_adjust: int = 4) -> List[FormalSum]:
    """Nonnegative r with r + x ~ y, searched among NF(y[:k] ++ (d, e) ++ inverse(x[:j])).

    A bounded search over residues built from prefixes of NF(y); the boundary
    pair (d, e) ranges over the exponents of x and y with |d| <= max_adjust.
    """
    ny, nx = normal_form(y), normal_form(x)
    exponents = sorted({e for _, e in ny.terms + nx.terms})
    found: List[FormalSum] = []
    for k in range(len(ny.terms) + 1):
        for j in range(len(nx.terms) + 1):
            head, tail = ny.terms[:k], inverse(FormalSum(nx.terms[:j])).terms
            for e in exponents or [0]:
                for d in range(-max_adjust, max_adjust + 1):
                    r = _normalize_pairs(head + ((d, e),) + tail)
                    if r not in found and is_nonnegative(r) and sum_add(r, nx) == ny:
                        found.append(r)
    return found


def _monomial_product(a: FormalSum, coeff: int, exp: int) -> Iterable[Pair]:
    shifted = tuple((c, e + exp) for c, e in a.terms)
    if coeff < 0:
        shifted = tuple((-c, e) for c, e in reversed(shifted))
    for _ in range(abs(coeff)):
        yield from shifted


def sum_mul(a: FormalSum, b: FormalSum) -> FormalSum:
    """Right-linear product: A * (b1 X^j1 + ...) = A * b1 X^j1 + ..."""

    def pairs():
        for coeff, exp in b.terms:
            yield from _monomial_product(a, coeff, exp)

    return _normalize_pairs(pairs())


def greatest_degree(s: FormalSum) -> Optional[int]:
    nf = normal_form(s)
    return max((e for _, e in nf.terms), default=None)


def leading_weight(s: FormalSum) -> int:
    """Sum of the normal-form coefficients at the greatest exponent (0 for the empty sum)."""
    nf = normal_form(s)
    top = greatest_degree(nf)
    if top is None:
        return 0
    return sum(c for c, e in nf.terms if e == top)


def is_positive(s: FormalSum) -> bool:
    return leading_weight(s) > 0


def is_nonnegative(s: FormalSum) -> bool:
    return not normal_form(s).terms or is_positive(s)


def natural(n: int) -> FormalSum:
    return FormalSum(((n, 0),)) if n else EMPTY


# -----------------------------------------------------------------------------
# Text form
# -----------------------------------------------------------------------------
SUM_GRAMMAR = r"""
    start: (first (SIGN term)*)?
    first: SIGN? term
    term: INT? "X" "^" INT
    SIGN: "+" | "-"

    %import common.INT
    %import common.WS
    %ignore WS
"""

_sum_parser = lark.Lark(SUM_GRAMMAR, parser="lalr")


def parse_sum(text: str) -> FormalSum:
    """Parse `2X^3 - X^1 + 4X^0`, keeping the order of the pairs; `0` is the empty sum."""
    if text.strip() in ("", "0"):
        return EMPTY
    try:
        tree = _sum_parser.parse(text)
    except UnexpectedInput as exc:
        column = getattr(exc, "column", None)
        raise TermSyntaxError("malformed formal sum", column if column and column > 0 else None) from None
    pairs: List[Pair] = []
    sign = 1
    for child in tree.children:
        if isinstance(child, lark.Token):
            sign = -1 if child == "-" else 1
            continue
        if child.data == "first":
            parts = child.children
            if isinstance(parts[0], lark.Token):
                sign = -1 if parts[0] == "-" else 1
            child = parts[-1]
        numbers = [int(tok) for tok in child.children]
        coeff, exp = (numbers[0], numbers[1]) if len(numbers) == 2 else (1, numbers[0])
        pairs.append((sign * coeff, exp))
        sign = 1
    return FormalSum(tuple(pairs))


def render_sum(s: FormalSum) -> str:
    pieces: List[str] = []
    for coeff, exp in s.terms:
        magnitude = abs(coeff)
        body = f"X^{exp}" if magnitude == 1 else f"{magnitude}X^{exp}"
        if not pieces:
            pieces.append(body if coeff >= 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff >= 0 else f"- {body}")
    return " ".join(pieces) if pieces else "0"


# -----------------------------------------------------------------------------
# Generators
# -----------------------------------------------------------------------------
def random_sum(rng: random.Random, max_length: int = 12, max_coeff: int = 5, max_exponent: int = 4) -> FormalSum:
    length = rng.randint(0, max_length)
    return FormalSum(
        tuple((rng.randint(-max_coeff, max_coeff), rng.randint(0, max_exponent)) for _ in range(length))
    )


def random_nonnegative_sum(
    rng: random.Random, max_length: int = 5, max_coeff: int = 3, max_exponent: int = 4
) -> FormalSum:
    """A random nonnegative sum in normal form with at most `max_length` pairs."""
    for _ in range(32):
        candidate = normal_form(random_sum(rng, max_length, max_coeff, max_exponent))
        if is_nonnegative(candidate):
            return candidate
    return FormalSum(((rng.randint(1, max_coeff), rng.randint(0, max_exponent)),))


def equivalent_variant(rng: random.Random, s: FormalSum, max_exponent: int = 4) -> FormalSum:
    """A representative of the same class: random zero pairs inserted, coefficients split."""
    pairs: List[Pair] = []
    for coeff, exp in s.terms:
        if rng.random() < 0.3:
            pairs.append((0, rng.randint(0, max_exponent)))
        if rng.random() < 0.4:
            part = rng.randint(-3, 3)
            pairs.extend([(part, exp), (coeff - part, exp)])
        else:
            pairs.append((coeff, exp))
    if rng.random() < 0.3:
        pairs.append((0, rng.randint(0, max_exponent)))
    return FormalSum(tuple(pairs))
