import math
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from services.errors import TermError, UnboundVariableError
from services.parser import parse_term
from services.polynorm import (
    Polynomial,
    decide_identity,
    degree,
    difference_tower,
    eval_nat,
    finite_difference,
    normalize,
    vandermonde_oracle,
)
from services.terms import Add, Mul, Succ, random_term, render


def test_normalize_examples():
    assert normalize(parse_term("(x+y)*(x+y)")).render() == "x^2 + 2*x*y + y^2"
    assert normalize(parse_term("S(S(x))*3")).render() == "3*x + 6"
    assert normalize(parse_term("0*x")).render() == "0"
    assert degree(normalize(parse_term("x*y*y + x"))) == 3


def test_normalize_is_canonical():
    assert normalize(parse_term("x*(y+z)")) == normalize(parse_term("z*x + y*x"))
    assert hash(normalize(parse_term("x + 1"))) == hash(normalize(parse_term("S(x)")))


def test_identities():
    assert decide_identity(parse_term("x*(y+z)"), parse_term("x*y + x*z"))
    assert not decide_identity(parse_term("x*x"), parse_term("x"))
    assert vandermonde_oracle(parse_term("(x+1)*(x+1)"), parse_term("x*x + 2*x + 1"))
    assert not vandermonde_oracle(parse_term("x*x*x"), parse_term("x"))


def test_eval_nat():
    assert eval_nat(parse_term("x*x + S(y)"), {"x": 3, "y": 4}) == 14
    with pytest.raises(UnboundVariableError):
        eval_nat(parse_term("x + y"), {"x": 1})


def test_univariate_and_coefficients():
    f = Polynomial.univariate([1, 0, -2], "t")
    assert f.coefficients("t") == [1, 0, -2]
    assert f.leading_coefficient("t") == 1
    assert f.evaluate({"t": 3}) == 7
    with pytest.raises(TermError):
        normalize(parse_term("x*y")).coefficients("x")


def test_group_by():
    groups = normalize(parse_term("x*x*p + x + p + 1")).group_by("x")
    assert groups[2] == Polynomial.variable("p")
    assert groups[1] == Polynomial.constant(1)
    assert groups[0] == Polynomial.variable("p") + 1


def test_finite_differences_end_in_factorial_times_leading_coefficient():
    f = Polynomial.univariate([3, -1, 4, 2], "t")
    tower = difference_tower(f)
    assert len(tower) == 4
    assert tower[-1] == Polynomial.constant(math.factorial(3) * 3)
    assert finite_difference(Polynomial.variable("t") ** 2) == Polynomial.univariate([2, 1], "t")


@given(st.randoms(use_true_random=False))
@settings(max_examples=150)
def test_normalize_agrees_with_sympy(rng):
    t = random_term(rng, ["x", "y"], depth=5)
    ours = normalize(t)
    theirs = sympy.Poly(sympy.expand(sympy.sympify(render(t).replace("S(", "1 + ("))), *sympy.symbols("x y"))
    for (ex, ey), coeff in zip(theirs.monoms(), theirs.coeffs()):
        mono = tuple((n, e) for n, e in (("x", ex), ("y", ey)) if e)
        assert ours.terms.get(mono, 0) == coeff
    assert len(ours.terms) == len(theirs.monoms()) - (1 if theirs.is_zero else 0)


RING_LAWS = [
    ("x + y", "y + x"),
    ("x + (y + z)", "(x + y) + z"),
    ("x*y", "y*x"),
    ("x*(y + z)", "x*y + x*z"),
    ("x*(y*z)", "(x*y)*z"),
    ("(x + y)*z", "x*z + y*z"),
    ("x + 0", "x"),
    ("x*1", "x"),
    ("x*0", "0"),
    ("x + S(y)", "S(x + y)"),
    ("x*S(y)", "x*y + x"),
]


@pytest.mark.parametrize("left, right", RING_LAWS)
def test_ring_laws_are_identities(left, right):
    s, t = parse_term(left), parse_term(right)
    assert decide_identity(s, t)
    assert vandermonde_oracle(s, t)


def test_identity_agrees_with_grid_oracle():
    rng = random.Random(7)
    names = ["x", "y", "z"]
    for _ in range(1000):
        s = random_term(rng, ["x", "y"], depth=4)
        t = random_term(rng, ["x", "y"], depth=4)
        assert decide_identity(s, t) == vandermonde_oracle(s, t)

        a, b, c = (random_term(rng, names, depth=3, max_products=1) for _ in range(3))
        for left, right in [
            (Add(a, b), Add(b, a)),
            (Mul(a, b), Mul(b, a)),
            (Mul(a, Add(b, c)), Add(Mul(a, b), Mul(a, c))),
        ]:
            assert decide_identity(left, right)
            assert vandermonde_oracle(left, right)
        broken = Add(Mul(a, b), Succ(c))
        assert not decide_identity(broken, Mul(a, b))
        assert not vandermonde_oracle(broken, Mul(a, b))


@given(st.randoms(use_true_random=False), st.integers(0, 5), st.integers(0, 5))
def test_eval_matches_normal_form(rng, a, b):
    t = random_term(rng, ["x", "y"], depth=5)
    assert eval_nat(t, {"x": a, "y": b}) == normalize(t).evaluate({"x": a, "y": b})


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=7).filter(lambda cs: cs[0] != 0))
def test_difference_tower_of_random_polynomials(coeffs):
    f = Polynomial.univariate(coeffs, "t")
    n = len(coeffs) - 1
    tower = difference_tower(f)
    assert len(tower) == n + 1
    for higher, lower in zip(tower, tower[1:]):
        assert higher.is_constant() or lower.degree() < higher.degree()
    assert tower[-1] == Polynomial.constant(math.factorial(n) * coeffs[0])
