from fractions import Fraction

import pytest

from services.errors import PuiseuxError, TruncationError
from services.puiseux import (
    X,
    PuiseuxPoly,
    TruncatedRoot,
    exponent_candidates,
    integer_part_holds,
    positive_candidates,
    puiseux_integer_part,
    smooth_denominator_check,
)

P2 = [2]
HALF = Fraction(1, 2)


def px(terms, primes=P2):
    return PuiseuxPoly(terms, primes)


def test_smooth_denominators():
    assert smooth_denominator_check(12, [2, 3])
    assert not smooth_denominator_check(10, [2, 3])
    assert smooth_denominator_check(1, [])
    with pytest.raises(PuiseuxError):
        smooth_denominator_check(0, [2])


def test_exponents_are_validated():
    assert px({HALF: 1}).leading_exponent() == HALF
    with pytest.raises(PuiseuxError):
        px({Fraction(1, 5): 1})
    with pytest.raises(PuiseuxError):
        px({-1: 1})


def test_arithmetic_and_render():
    root = px({HALF: 1, 0: 1})
    assert root.render() == "X^(1/2) + 1"
    assert root * root == px({1: 1, HALF: 2, 0: 1})
    assert (root - root).is_zero()
    assert (root + 2).constant_term() == 3
    assert px({"3/2": "-1/3"}).render() == "-1/3*X^(3/2)"
    with pytest.raises(PuiseuxError):
        root + px({0: 1}, [3])


def test_arithmetic_runs_in_the_puiseux_ring():
    half = px({HALF: 1})
    assert (half * half).element == X
    assert (half * half - px({1: 1})).is_zero()
    assert TruncatedRoot.of([(1, -1)]).element * X == TruncatedRoot.of([(1, 0)]).element


def test_order_and_membership():
    assert px({HALF: 1}).leq(px({1: 1}))
    assert not px({1: 1}).leq(px({HALF: 5}))
    assert px({1: 1, 0: -7}).is_member()
    assert not px({0: HALF}).is_member()
    assert not px({1: -1}).is_member()


def test_json():
    element = px({HALF: 1, 0: -1})
    assert element.to_json() == {"primes": [2], "terms": [["1", "1/2"], ["-1", "0"]]}
    assert PuiseuxPoly.from_json(element.to_json()) == element
    with pytest.raises(PuiseuxError):
        PuiseuxPoly.from_json({"terms": [["1", "1/0"]], "primes": [2]})


def test_exponent_candidates():
    # t^2 - X: the root X^(1/2) has leading exponent 1/2.
    coefficients = [px({1: -1}), px({}), px({0: 1})]
    assert exponent_candidates(coefficients, 4) == {HALF}
    # t^3 + X t - X^2 over P = {2, 3}
    p23 = [2, 3]
    cubic = [px({2: -1}, p23), px({1: 1}, p23), px({}, p23), px({0: 1}, p23)]
    assert exponent_candidates(cubic, 4) == {Fraction(1), Fraction(2, 3), HALF}
    with pytest.raises(PuiseuxError):
        exponent_candidates(cubic, 2)
    with pytest.raises(PuiseuxError):
        exponent_candidates([px({}), px({})], 4)


def test_nonpositive_slopes_are_filtered():
    # t^2 - 1 and X t^2 - 1 have no root growing with X.
    unit = [px({0: -1}), px({}), px({0: 1})]
    assert exponent_candidates(unit, 4) == {Fraction(0)}
    assert positive_candidates(unit, 4) == frozenset()
    shrinking = [px({0: -1}), px({}), px({1: 1})]
    assert exponent_candidates(shrinking, 4) == {-HALF}
    assert positive_candidates(shrinking, 4) == frozenset()
    p23 = [2, 3]
    cubic = [px({2: -1}, p23), px({1: 1}, p23), px({}, p23), px({0: 1}, p23)]
    assert positive_candidates(cubic, 4) == exponent_candidates(cubic, 4)


def test_truncated_root_construction():
    r = TruncatedRoot.of([(1, "1/2"), (1, "1/2"), (-3, 0)])
    assert r.terms == ((HALF, Fraction(2)), (Fraction(0), Fraction(-3)))
    assert TruncatedRoot.of([(1, "1/6")]).primes() == {2, 3}
    assert TruncatedRoot.of([(1, 1)], order=-2).render() == "X + O(X^(-2))"
    with pytest.raises(PuiseuxError):
        TruncatedRoot(((Fraction(0), Fraction(1)), (HALF, Fraction(1))))
    with pytest.raises(PuiseuxError):
        TruncatedRoot.of([(1, -3)], order=-1)


THIRD, SIXTH = Fraction(1, 3), Fraction(1, 6)


@pytest.mark.parametrize(
    "pairs, order, expected",
    [
        ([(1, "1/2"), ("-1/2", 0)], None, {HALF: 1, 0: -1}),
        ([(1, "1/2"), (3, 0), (1, "-1/2")], None, {HALF: 1, 0: 3}),
        ([(1, "1/2"), (3, 0), (-1, "-1/2")], None, {HALF: 1, 0: 2}),
        ([(1, "1/2"), ("-1/2", 0)], -1, {HALF: 1, 0: -1}),
        ([(2, 1), ("7/3", 0)], None, {1: 2, 0: 2}),
        ([(5, 0)], None, {0: 5}),
        ([(1, "1/2"), (-2, "-1/2")], None, {HALF: 1, 0: -1}),
        ([(1, "1/2"), ("5/2", 0), (-1, -1)], None, {HALF: 1, 0: 2}),
        ([(1, "1/2"), ("-5/2", 0)], None, {HALF: 1, 0: -3}),
        ([("-7/2", 0)], None, {0: -4}),
        ([(-3, 0)], None, {0: -3}),
        ([(-3, 0), (1, -2)], None, {0: -3}),
        ([(-3, 0), (-1, -2)], None, {0: -4}),
        ([(1, "2/3"), (1, "1/3"), (1, 0), (-1, "-1/3")], None, {2 * THIRD: 1, THIRD: 1}),
        ([(3, "1/6"), ("1/3", 0)], None, {SIXTH: 3}),
        ([(1, 1), (-1, "1/2"), (2, 0), (1, "-1/2")], -1, {1: 1, HALF: -1, 0: 2}),
        ([("1/2", 1), ("1/3", 0)], None, {1: HALF}),
        ([(1, "1/4"), (4, 0), (-1, "-1/4")], "-1/2", {Fraction(1, 4): 1, 0: 3}),
        ([(2, 0), ("1/5", -1)], None, {0: 2}),
        ([(-1, "1/2"), (1, 0)], None, {HALF: -1, 0: 1}),
    ],
)
def test_integer_part(pairs, order, expected):
    r = TruncatedRoot.of(pairs, order)
    primes = sorted(r.primes() | {2})
    s = puiseux_integer_part(r, primes)
    assert s == px(expected, primes)
    assert s.constant_term().denominator == 1
    assert integer_part_holds(s, r)


@pytest.mark.parametrize(
    "pairs, order",
    [
        ([(1, 1), (3, 0)], -1),
        ([(1, 1)], HALF),
        ([(5, 0)], -1),
        ([(1, "1/2"), (2, 0)], 0),
        ([], -1),
        ([(-4, 0)], "-1/3"),
    ],
)
def test_integer_part_needs_enough_terms(pairs, order):
    with pytest.raises(TruncationError):
        puiseux_integer_part(TruncatedRoot.of(pairs, order), [2, 3])


def test_integer_part_check_needs_a_known_remainder():
    with pytest.raises(TruncationError):
        integer_part_holds(px({0: 5}), TruncatedRoot.of([(5, 0)], order=-1))


def test_integer_part_check_rejects_wrong_candidates():
    r = TruncatedRoot.of([(1, "1/2"), ("-1/2", 0)])
    assert not integer_part_holds(px({HALF: 1}), r)
    assert not integer_part_holds(px({HALF: 1, 0: -2}), r)


@pytest.mark.parametrize("k", range(1, 6))
@pytest.mark.parametrize("a", range(1, 6))
def test_pure_power_roots(k, a):
    primes = [2, 3, 5]
    coefficients = [px({a: -1}, primes)] + [px({}, primes)] * (k - 1) + [px({0: 1}, primes)]
    assert Fraction(a, k) in exponent_candidates(coefficients, 5)
