from __future__ import annotations

from typing import Tuple, Union

import lark
from lark.exceptions import UnexpectedCharacters, UnexpectedInput

from services.errors import TermSyntaxError
from services.terms import Add, Literal, Mul, Relation, Succ, Term, Var, numeral

# `*` binds tighter than `+`; both associate to the left.
GRAMMAR = r"""
    ?term: sum

    literal: sum RELATION sum

    ?sum: prod
        | sum "+" prod          -> add

    ?prod: atom
         | prod "*" atom        -> mul

    ?atom: NUMBER               -> number
         | NAME                 -> var
         | "S" "(" sum ")"      -> succ
         | "(" sum ")"

    RELATION: "!<=" | "<=" | "!=" | "="
    NAME: /[a-z][a-z0-9_]*/
    NUMBER: /[0-9]+/

    %import common.WS
    %ignore WS
"""


class TermBuilder(lark.Transformer):
    def number(self, items):
        return numeral(int(items[0]))

    def var(self, items):
        return Var(str(items[0]))

    def succ(self, items):
        return Succ(items[0])

    def add(self, items):
        return Add(items[0], items[1])

    def mul(self, items):
        return Mul(items[0], items[1])

    def literal(self, items):
        left, relation, right = items
        return Literal(Relation(str(relation)), left, right)


_parser = lark.Lark(GRAMMAR, start=["term", "literal"], parser="lalr", transformer=TermBuilder())


def _parse(text: str, start: str):
    try:
        return _parser.parse(text, start=start)
    except UnexpectedCharacters as exc:
        raise TermSyntaxError(f"unknown character {text[exc.pos_in_stream]!r}", exc.column) from None
    except UnexpectedInput as exc:
        column = getattr(exc, "column", None)
        if column is None or column < 0:
            raise TermSyntaxError("unexpected end of input") from None
        raise TermSyntaxError("syntax error", column) from None


def parse_term(text: str) -> Term:
    """Parse a term; decimal numerals desugar to iterated S applied to 0."""
    return _parse(text, "term")


def parse_literal(text: str) -> Literal:
    return _parse(text, "literal")


def parse_equation(text: str) -> Tuple[Term, Term]:
    lit = parse_literal(text)
    if lit.relation is not Relation.EQ:
        raise TermSyntaxError(f"expected an equation, got relation {lit.relation.value!r}")
    return lit.left, lit.right


def parse_any(text: str) -> Union[Term, Literal]:
    """A literal when the text carries a relation symbol, otherwise a term."""
    if any(symbol in text for symbol in ("=", "<")):
        return parse_literal(text)
    return parse_term(text)
