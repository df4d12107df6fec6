import pytest
from hypothesis import given, settings, strategies as st

from services.errors import SchemeError, TermError, TermSyntaxError
from services.parser import parse_any, parse_equation, parse_literal, parse_term
from services.terms import (
    ZERO,
    Add,
    GadgetKind,
    InductionInstance,
    Literal,
    Mul,
    Relation,
    Succ,
    Var,
    as_numeral,
    gadget_formula,
    numeral,
    random_term,
    render,
    render_formula,
    render_literal,
    shepherdson_scheme,
    substitute,
    variables,
)

x, y, z = Var("x"), Var("y"), Var("z")


def test_numerals_desugar_to_successors():
    assert parse_term("2") == Succ(Succ(ZERO))
    assert parse_term("0") == ZERO
    assert as_numeral(numeral(7)) == 7
    assert as_numeral(Add(x, ZERO)) is None


def test_precedence_and_associativity():
    assert parse_term("x + y * z") == Add(x, Mul(y, z))
    assert parse_term("x * y * z") == Mul(Mul(x, y), z)
    assert parse_term("x + y + z") == Add(Add(x, y), z)
    assert parse_term("(x + y) * z") == Mul(Add(x, y), z)
    assert parse_term("S(x) * 2") == Mul(Succ(x), numeral(2))


def test_render_is_minimal_and_reparses():
    t = Mul(Add(x, y), Add(y, z))
    assert render(t) == "(x + y)*(y + z)"
    assert render(Add(x, Add(y, z))) == "x + (y + z)"
    assert render(numeral(2)) == "S(S(0))"
    assert parse_term(render(t)) == t


def test_literals():
    lit = parse_literal("x + 1 !<= y")
    assert lit.relation is Relation.NLEQ
    assert lit.right == y
    assert render_literal(parse_literal("x*x = 4")) == "x*x = S(S(S(S(0))))"
    assert parse_equation("x = y") == (x, y)
    assert isinstance(parse_any("x <= y"), Literal)
    assert parse_any("x + y") == Add(x, y)


@pytest.mark.parametrize("text", ["x +", "(x", "x # y", "X", ""])
def test_syntax_errors(text):
    with pytest.raises(TermSyntaxError):
        parse_term(text)


def test_unknown_character_reports_column():
    with pytest.raises(TermSyntaxError) as info:
        parse_term("x + $")
    assert "unknown character" in str(info.value)
    assert info.value.position == 5


def test_parse_equation_rejects_other_relations():
    with pytest.raises(TermSyntaxError):
        parse_equation("x != y")


def test_invalid_names_and_numerals():
    with pytest.raises(TermError):
        Var("Xy")
    with pytest.raises(TermError):
        numeral(-1)


def test_substitute_and_variables():
    t = parse_term("S(x + y*x)")
    assert substitute(t, "x", z) == parse_term("S(z + y*z)")
    assert variables(t) == {"x", "y"}
    assert variables(parse_literal("x = 0")) == {"x"}


def test_gadgets_mention_only_ring_variables():
    for kind in GadgetKind:
        lit = gadget_formula(kind)
        assert lit.relation is Relation.NEQ
        assert variables(lit) <= {"x", "y", "z", "t"}
        assert "t" in variables(lit)


def test_shepherdson_scheme():
    text = render_formula(shepherdson_scheme(2))
    assert text.startswith("S(S(0))*x = S(S(0))*xp -> forall y.")
    assert "y*x = y*xp" in text
    with pytest.raises(SchemeError):
        shepherdson_scheme(1)


def test_induction_instance():
    inst = InductionInstance.of(parse_literal("x + p = p"), "x")
    assert inst.parameters == ("p",)
    assert not inst.degenerate
    assert inst.at(ZERO) == parse_literal("0 + p = p")
    assert InductionInstance.of(parse_literal("p = p"), "x").degenerate


def test_induction_instance_as_formula():
    inst = InductionInstance.of(parse_literal("x + p = p"), "x")
    assert render_formula(inst.as_formula()) == (
        "(0 + p = p & forall x. (x + p = p -> S(x) + p = p)) -> forall x. (x + p = p)"
    )


@given(st.randoms(use_true_random=False), st.integers(min_value=1, max_value=6))
@settings(max_examples=200)
def test_render_parse_roundtrip(rng, depth):
    t = random_term(rng, ["x", "y", "z"], depth=depth)
    assert parse_term(render(t)) == t
