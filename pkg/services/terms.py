"""Arithmetic terms over (0, S, +, *), literals, and the small formula layer.

Terms are immutable frozen dataclasses compared structurally. Numerals are
iterated successors of zero; `numeral` builds them without recursion so that
large constants stay cheap.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from services.errors import SchemeError, TermError

VARIABLE_NAME = re.compile(r"[a-z][a-z0-9_]*\Z")


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not VARIABLE_NAME.match(self.name):
            raise TermError(f"invalid variable name: {self.name!r}")


@dataclass(frozen=True)
class Succ:
    arg: "Term"


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


Term = Union[Zero, Var, Succ, Add, Mul]

ZERO = Zero()


class Relation(str, Enum):
    EQ = "="
    NEQ = "!="
    LEQ = "<="
    NLEQ = "!<="


@dataclass(frozen=True)
class Literal:
    relation: Relation
    left: Term
    right: Term


# Formula layer: only what the scheme generator and induction instances need.


@dataclass(frozen=True)
class And:
    conjuncts: Tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    disjuncts: Tuple["Formula", ...]


@dataclass(frozen=True)
class Implies:
    antecedent: "Formula"
    consequent: "Formula"


@dataclass(frozen=True)
class ForAll:
    var: str
    body: "Formula"


Formula = Union[Literal, And, Or, Implies, ForAll]


def numeral(n: int) -> Term:
    """S applied n times to 0."""
    if n < 0:
        raise TermError(f"numerals are nonnegative, got {n}")
    term: Term = ZERO
    for _ in range(n):
        term = Succ(term)
    return term


def peel_successors(t: Term) -> Tuple[int, Term]:
    """Split t into (k, u) with t = S^k(u) and u not a successor."""
    count = 0
    while isinstance(t, Succ):
        count += 1
        t = t.arg
    return count, t


def as_numeral(t: Term) -> Optional[int]:
    count, core = peel_successors(t)
    return count if isinstance(core, Zero) else None


def variables(t: Union[Term, Literal]) -> FrozenSet[str]:
    if isinstance(t, Literal):
        return variables(t.left) | variables(t.right)
    found = set()
    stack: List[Term] = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            found.add(node.name)
        elif isinstance(node, Succ):
            stack.append(node.arg)
        elif isinstance(node, (Add, Mul)):
            stack.append(node.left)
            stack.append(node.right)
    return frozenset(found)


def substitute(t: Term, name: str, replacement: Term) -> Term:
    count, core = peel_successors(t)
    if isinstance(core, Var):
        result = replacement if core.name == name else core
    elif isinstance(core, Add):
        result = Add(substitute(core.left, name, replacement), substitute(core.right, name, replacement))
    elif isinstance(core, Mul):
        result = Mul(substitute(core.left, name, replacement), substitute(core.right, name, replacement))
    else:
        result = core
    for _ in range(count):
        result = Succ(result)
    return result


def substitute_literal(lit: Literal, name: str, replacement: Term) -> Literal:
    return Literal(lit.relation, substitute(lit.left, name, replacement), substitute(lit.right, name, replacement))


# -----------------------------------------------------------------------------
# Rendering
# -----------------------------------------------------------------------------
_SUM, _PROD, _ATOM = 0, 1, 2


def render(t: Term) -> str:
    return _render(t, _SUM)


def _render(t: Term, level: int) -> str:
    count, core = peel_successors(t)
    if count:
        return "S(" * count + _render(core, _SUM) + ")" * count
    if isinstance(core, Zero):
        return "0"
    if isinstance(core, Var):
        return core.name
    if isinstance(core, Add):
        text = f"{_render(core.left, _SUM)} + {_render(core.right, _PROD)}"
        return f"({text})" if level > _SUM else text
    text = f"{_render(core.left, _PROD)}*{_render(core.right, _ATOM)}"
    return f"({text})" if level > _PROD else text


def render_literal(lit: Literal) -> str:
    return f"{render(lit.left)} {lit.relation.value} {render(lit.right)}"


def render_formula(f: Formula) -> str:
    if isinstance(f, Literal):
        return render_literal(f)
    if isinstance(f, And):
        return " & ".join(_render_operand(c) for c in f.conjuncts)
    if isinstance(f, Or):
        return " | ".join(_render_operand(d) for d in f.disjuncts)
    if isinstance(f, Implies):
        return f"{_render_operand(f.antecedent)} -> {_render_operand(f.consequent)}"
    return f"forall {f.var}. ({render_formula(f.body)})"


def _render_operand(f: Formula) -> str:
    if isinstance(f, (Literal, ForAll)):
        return render_formula(f)
    return f"({render_formula(f)})"


# -----------------------------------------------------------------------------
# Schematic formulas
# -----------------------------------------------------------------------------
class GadgetKind(str, Enum):
    ADD_ASSOC = "add_assoc"
    RIGHT_DISTR = "right_distr"
    LEFT_DISTR = "left_distr"
    MUL_COMM = "mul_comm"
    MUL_ASSOC = "mul_assoc"


def _sum(*terms: Term) -> Term:
    result = terms[0]
    for term in terms[1:]:
        result = Add(result, term)
    return result


def gadget_formula(kind: Union[GadgetKind, str]) -> Literal:
    """The disequation whose induction on t derives the named ring law from commutativity."""
    kind = GadgetKind(kind)
    x, y, z, t = Var("x"), Var("y"), Var("z"), Var("t")
    if kind is GadgetKind.ADD_ASSOC:
        left = Add(Add(x, Add(y, z)), Add(Add(x, y), t))
        right = Add(Add(Add(x, y), z), Add(x, Add(y, t)))
    elif kind is GadgetKind.RIGHT_DISTR:
        left = _sum(Mul(x, Add(y, z)), Mul(x, y), Mul(x, t))
        right = _sum(Mul(x, y), Mul(x, z), Mul(x, Add(y, t)))
    elif kind is GadgetKind.LEFT_DISTR:
        left = _sum(Mul(Add(x, y), z), Mul(x, z), Mul(y, t))
        right = _sum(Mul(x, y), Mul(y, z), Mul(Add(x, y), t))
    elif kind is GadgetKind.MUL_COMM:
        left = Add(Mul(x, y), Mul(y, t))
        right = Add(Mul(y, x), Mul(t, y))
    else:
        left = Add(Mul(x, Mul(y, z)), Mul(Mul(x, y), t))
        right = Add(Mul(Mul(x, y), z), Mul(x, Mul(y, t)))
    return Literal(Relation.NEQ, left, right)


def shepherdson_scheme(d: int) -> Implies:
    """d*x = d*xp -> forall y. OR_{i<d} (y + i)*x = (y + i)*xp; xp stands for x-prime."""
    if d < 2:
        raise SchemeError(f"the scheme is stated for d >= 2, got {d}")
    x, xp, y = Var("x"), Var("xp"), Var("y")
    dd = numeral(d)
    disjuncts = []
    for i in range(d):
        shifted = y if i == 0 else Add(y, numeral(i))
        disjuncts.append(Literal(Relation.EQ, Mul(shifted, x), Mul(shifted, xp)))
    return Implies(Literal(Relation.EQ, Mul(dd, x), Mul(dd, xp)), ForAll("y", Or(tuple(disjuncts))))


@dataclass(frozen=True)
class InductionInstance:
    formula: Literal
    induction_var: str
    parameters: Tuple[str, ...]

    @classmethod
    def of(cls, formula: Literal, induction_var: str = "x") -> "InductionInstance":
        params = tuple(sorted(variables(formula) - {induction_var}))
        return cls(formula, induction_var, params)

    @property
    def degenerate(self) -> bool:
        return self.induction_var not in variables(self.formula)

    def at(self, term: Term) -> Literal:
        return substitute_literal(self.formula, self.induction_var, term)

    def as_formula(self) -> Formula:
        x = Var(self.induction_var)
        step = ForAll(self.induction_var, Implies(self.formula, self.at(Succ(x))))
        return Implies(And((self.at(ZERO), step)), ForAll(self.induction_var, self.formula))


# -----------------------------------------------------------------------------
# Random generation
# -----------------------------------------------------------------------------
def random_term(
    rng: random.Random,
    names: Sequence[str],
    depth: int = 5,
    leaf_bias: float = 0.3,
    max_numeral: int = 2,
    max_products: Optional[int] = None,
) -> Term:
    """Random term with at most `depth` constructor levels; numeral leaves count as one level."""
    products = [0]

    def build(remaining: int) -> Term:
        if remaining <= 1 or rng.random() < leaf_bias:
            if names and rng.random() < 0.7:
                return Var(rng.choice(list(names)))
            return numeral(rng.randint(0, max_numeral))
        kind = rng.choice(("succ", "add", "mul"))
        if kind == "mul" and max_products is not None and products[0] >= max_products:
            kind = "add"
        if kind == "succ":
            return Succ(build(remaining - 1))
        if kind == "mul":
            products[0] += 1
            return Mul(build(remaining - 1), build(remaining - 1))
        return Add(build(remaining - 1), build(remaining - 1))

    return build(depth)


def rename(t: Term, mapping: Dict[str, str]) -> Term:
    count, core = peel_successors(t)
    if isinstance(core, Var):
        result: Term = Var(mapping.get(core.name, core.name))
    elif isinstance(core, Add):
        result = Add(rename(core.left, mapping), rename(core.right, mapping))
    elif isinstance(core, Mul):
        result = Mul(rename(core.left, mapping), rename(core.right, mapping))
    else:
        result = core
    for _ in range(count):
        result = Succ(result)
    return result


def all_variables(items: Iterable[Union[Term, Literal]]) -> List[str]:
    names = set()
    for item in items:
        names |= variables(item)
    return sorted(names)
