import random

import pytest
from hypothesis import given, settings, strategies as st

from services import formal_sums as fs
from services.errors import TermSyntaxError
from services.formal_sums import ALREADY_NF, EMPTY, FormalSum, Reduction
from services.model_zoo import Sum, model_ops


def S(*pairs):
    return FormalSum.of(pairs)


def test_parse_and_render():
    s = fs.parse_sum("2X^3 - X^1 + 4X^0")
    assert s == S((2, 3), (-1, 1), (4, 0))
    assert fs.render_sum(s) == "2X^3 - X^1 + 4X^0"
    assert fs.parse_sum("-X^2 + X^1 + 2X^2") == S((-1, 2), (1, 1), (2, 2))
    assert fs.parse_sum("0") == EMPTY
    assert fs.render_sum(EMPTY) == "0"
    with pytest.raises(TermSyntaxError):
        fs.parse_sum("2Y^3")


def test_reductions():
    s = S((1, 2), (0, 5), (3, 2))
    assert fs.redexes(s) == [(Reduction.DROP_ZERO, 1)]
    assert fs.reduce_once(s) == S((1, 2), (3, 2))
    assert fs.reduce_once(S((1, 2), (3, 2))) == S((4, 2))
    assert fs.reduce_once(S((4, 2))) is ALREADY_NF


def test_normal_form_examples():
    assert fs.normal_form(S((1, 0), (-1, 0), (1, 0))) == S((1, 0))
    assert fs.normal_form(S((1, 1), (1, 0), (-1, 0), (1, 1))) == S((2, 1))
    assert fs.normal_form(S((2, 1), (-2, 1))) == EMPTY
    assert fs.is_normal(S((1, 0), (1, 1), (1, 0)))


def test_positivity():
    assert fs.is_positive(fs.parse_sum("-X^1 + X^2"))
    assert fs.is_positive(fs.parse_sum("-X^2 + X^1 + 2X^2"))
    assert not fs.is_positive(fs.parse_sum("X^1 - X^2"))
    assert fs.is_nonnegative(EMPTY) and not fs.is_positive(EMPTY)
    assert fs.greatest_degree(S((1, 3), (-1, 3))) is None
    assert fs.leading_weight(S((2, 1), (1, 0), (-1, 1))) == 1


def test_addition_is_noncommutative_but_a_group():
    a, b = S((1, 0)), S((1, 1))
    assert fs.sum_add(a, b) != fs.sum_add(b, a)
    assert fs.sum_add(a, fs.inverse(a)) == EMPTY
    assert fs.sum_add(fs.sum_sub(b, a), a) == b


def test_multiplication():
    x = S((1, 1))
    assert fs.sum_mul(fs.natural(2), x) == S((2, 1))
    assert fs.sum_mul(S((1, 0), (1, 1)), S((1, 1))) == S((1, 1), (1, 2))
    assert fs.sum_mul(x, S((-1, 0))) == S((-1, 1))
    assert fs.sum_mul(x, EMPTY) == EMPTY


def test_multiplication_repeats_and_reverses_shifted_copies():
    assert fs.sum_mul(S((1, 0), (1, 1)), S((2, 1))) == S((1, 1), (1, 2), (1, 1), (1, 2))
    assert fs.sum_mul(S((1, 0), (1, 1)), S((-1, 0))) == S((-1, 1), (-1, 0))


def reduce_randomly(rng, s):
    while True:
        found = fs.redexes(s)
        if not found:
            return s
        s = fs.reduce_at(s, rng.choice(found))


def test_confluence():
    rng = random.Random(11)
    for _ in range(1000):
        s = fs.random_sum(rng)
        assert reduce_randomly(rng, s) == fs.normal_form(s)
        assert fs.is_normal(fs.normal_form(s))


def test_congruence():
    rng = random.Random(12)
    for _ in range(1000):
        a, b = fs.random_sum(rng), fs.random_sum(rng)
        a2, b2 = fs.equivalent_variant(rng, a), fs.equivalent_variant(rng, b)
        assert fs.normal_form(a2) == fs.normal_form(a)
        assert fs.sum_add(a2, b2) == fs.sum_add(a, b)
        assert fs.sum_mul(a2, b2) == fs.sum_mul(a, b)
        assert fs.normal_form(fs.inverse(a2)) == fs.normal_form(fs.inverse(a))


def test_nonnegative_sums_are_closed():
    rng = random.Random(13)
    for _ in range(1000):
        a, b = fs.random_nonnegative_sum(rng), fs.random_nonnegative_sum(rng)
        assert fs.is_nonnegative(a) and fs.is_normal(a)
        assert fs.is_nonnegative(fs.sum_add(a, b))
        assert fs.is_nonnegative(fs.sum_mul(a, b))
        assert fs.is_nonnegative(fs.sum_succ(a))


@given(st.randoms(use_true_random=False))
@settings(max_examples=100)
def test_left_multiplication_distributes(rng):
    a, b, c = fs.random_sum(rng, 5), fs.random_sum(rng, 5), fs.random_sum(rng, 5)
    assert fs.sum_mul(a, fs.sum_add(b, c)) == fs.sum_add(fs.sum_mul(a, b), fs.sum_mul(a, c))


def test_prefix_residues_examples():
    x, y = S((1, 0)), S((1, 0), (1, 1))
    assert fs.prefix_residues(x, y) == [S((1, 0), (1, 1), (-1, 0))]
    assert fs.prefix_residues(EMPTY, y) == [y]
    assert fs.prefix_residues(S((1, 2)), S((1, 1))) == []


def test_order_agrees_with_prefix_residue_search():
    model = model_ops("formal-sums")
    rng = random.Random(14)
    for _ in range(300):
        x, y = fs.random_nonnegative_sum(rng, 4), fs.random_nonnegative_sum(rng, 4)
        if rng.random() < 0.3:
            y = fs.sum_add(fs.random_nonnegative_sum(rng, 3), x)
        found = fs.prefix_residues(x, y)
        assert len(found) <= 1
        assert model.leq(Sum(x), Sum(y)) == bool(found)
        assert model.residues(Sum(x), Sum(y)) == [Sum(r) for r in found]
