import math
import random

import pytest

from errors import BaseMismatchError, PreconditionError
from numeral import (
    add, carry_trace, convolve, digit_square_sum, digit_sum, digit_sum_table, digit_sum_value, from_value, max_digit,
    multiply, parse, pointwise_sum, reverse,
)
from predicates import (
    carry_free, check_infinity_bound, digit_square_bound, first_carry, is_additive_pair, is_palindromic_pair,
    is_polynomial_pair, pair_verdict, reversal_product_is_palindrome, reversal_square_profile_max,
    reversal_sum_is_palindrome, reversed_square, short_product_check, square_is_palindrome,
    square_reversal_identity, sufficient_additive, sufficient_polynomial,
)

BASES = [2, 3, 5, 7, 8, 10, 11, 16]


def _pair(a, b, base=10):
    return parse(a, base), parse(b, base)


def _padded(n, width):
    return n.digits + (0,) * (width - len(n))


def test_122_213():
    a, b = _pair("122", "213")
    assert is_polynomial_pair(a, b)
    assert is_palindromic_pair(a, b)
    verdict = pair_verdict(a, b)
    assert verdict.polynomial and verdict.palindromic
    assert verdict.first_carry_position is None
    assert verdict.witness_coefficient is None


def test_7_88_is_palindromic_but_not_polynomial():
    a, b = _pair("7", "88")
    assert is_palindromic_pair(a, b)
    assert not is_polynomial_pair(a, b)
    assert first_carry(a, b) == (0, 56)
    verdict = pair_verdict(a, b)
    assert (verdict.first_carry_position, verdict.witness_coefficient) == (0, 56)


def test_12_13_is_neither_way_round_a_palindrome_but_polynomial():
    a, b = _pair("12", "13")
    assert is_polynomial_pair(a, b)
    assert multiply(a, b) == parse("156", 10)


def test_predicates_need_one_base():
    with pytest.raises(BaseMismatchError):
        check_infinity_bound(parse("1", 10), parse("1", 2))
    with pytest.raises(BaseMismatchError):
        sufficient_polynomial(parse("1", 10), parse("1", 2))
    with pytest.raises(BaseMismatchError):
        sufficient_additive(parse("1", 10), parse("1", 2))


@pytest.mark.parametrize("base", [2, 3, 10])
def test_polynomial_equivalences_exhaustive(base):
    for x in range(1, 70):
        for y in range(x, 70):
            a, b = from_value(x, base), from_value(y, base)
            polynomial = is_polynomial_pair(a, b)
            profile = convolve(a, b)
            assert polynomial == carry_free(a, b)
            assert polynomial == (_padded(multiply(a, b), len(profile.coeffs)) == profile.coeffs)
            assert polynomial == (digit_sum_value(x * y, base) == digit_sum_value(x, base) * digit_sum_value(y, base))


@pytest.mark.parametrize("cases", [2000, pytest.param(10 ** 4, marks=pytest.mark.slow)])
@pytest.mark.parametrize("base", BASES)
def test_polynomial_pairs_are_palindromic(base, cases):
    rng = random.Random(base)
    for _ in range(cases):
        a = from_value(rng.randrange(1, base ** 4), base)
        b = from_value(rng.randrange(1, base ** 4), base)
        if is_polynomial_pair(a, b):
            assert is_palindromic_pair(a, b)
            assert check_infinity_bound(a, b)
        if sufficient_polynomial(a, b):
            assert is_polynomial_pair(a, b)


def test_palindromic_does_not_imply_polynomial():
    a, b = _pair("55", "99")
    assert is_palindromic_pair(a, b) and not is_polynomial_pair(a, b)


def _pairs_below(base, bound):
    """Every (a, b) with 1 <= a <= b and a * b < bound"""
    numerals = [from_value(v, base) for v in range(bound)]
    for x in range(1, math.isqrt(bound - 1) + 1):
        for y in range(x, (bound - 1) // x + 1):
            yield numerals[x], numerals[y]


def test_coefficients_are_bounded_by_max_digit_times_digit_sum():
    for a, b in _pairs_below(10, 10 ** 4):
        top = convolve(a, b).max()
        assert top <= max_digit(a) * digit_sum(b)
        assert top <= max_digit(b) * digit_sum(a)


def test_a_digit_of_five_or_more_leaves_only_ones_in_the_partner():
    checked = 0
    for a, b in _pairs_below(10, 10 ** 4):
        if not is_polynomial_pair(a, b):
            continue
        assert check_infinity_bound(a, b)
        for big, other in ((a, b), (b, a)):
            if max_digit(big) >= 5:
                assert max_digit(other) == 1, (a, b)
                checked += 1
    assert checked > 0


@pytest.mark.slow
def test_polynomial_pairs_are_palindromic_below_a_million():
    bound = 10 ** 6
    sums = digit_sum_table(10, bound)
    polynomial = 0
    for x in range(1, math.isqrt(bound - 1) + 1):
        for y in range(x, (bound - 1) // x + 1):
            if sums[x * y] != sums[x] * sums[y]:
                continue
            a, b = from_value(x, 10), from_value(y, 10)
            assert is_polynomial_pair(a, b), (x, y)
            assert is_palindromic_pair(a, b), (x, y)
            polynomial += 1
    assert polynomial > 0


def _sufficient_condition_is_sound(base, bound):
    for a, b in _pairs_below(base, bound):
        if sufficient_polynomial(a, b) or sufficient_polynomial(b, a):
            assert is_polynomial_pair(a, b), (a, b)


@pytest.mark.parametrize("base", range(2, 17))
def test_sufficient_condition_is_sound_small(base):
    _sufficient_condition_is_sound(base, 600)


@pytest.mark.slow
@pytest.mark.parametrize("base", range(2, 17))
def test_sufficient_condition_is_sound(base):
    _sufficient_condition_is_sound(base, 10 ** 4)



@pytest.mark.parametrize("base", [3, 7, 10])
def test_reversal_polynomial_iff_digit_squares_fit(base):
    for x in range(1, 3000):
        a = from_value(x, base)
        mirrored = reverse(a)
        polynomial = is_polynomial_pair(a, mirrored)
        assert polynomial == digit_square_bound(a)
        if polynomial:
            assert reversal_square_profile_max(a) == digit_square_sum(a)
            # with a trailing zero, a * reverse(a) ends in 0
            if x % base:
                assert reversal_product_is_palindrome(a)


def test_trailing_zero_pair_is_polynomial_without_palindromic_product():
    a = parse("10", 10)
    assert is_polynomial_pair(a, reverse(a))
    assert digit_square_bound(a)
    assert not reversal_product_is_palindrome(a)


def _reversal_pair_properties(bound):
    """Base 10: (a, reverse(a)) polynomial exactly when the digit squares sum to at most 9"""
    for x in range(1, bound):
        a = from_value(x, 10)
        polynomial = is_polynomial_pair(a, reverse(a))
        assert polynomial == digit_square_bound(a), x
        if not polynomial:
            continue
        assert reversal_square_profile_max(a) == digit_square_sum(a), x
        if x % 10:
            assert reversal_product_is_palindrome(a), x
            if x >= 10:
                assert max_digit(a) <= 2, x


def test_multi_digit_reversal_pairs_use_small_digits():
    _reversal_pair_properties(10 ** 4)


@pytest.mark.slow
def test_reversal_pair_properties_to_a_million():
    _reversal_pair_properties(10 ** 6)


@pytest.mark.parametrize("bound", [20000, pytest.param(10 ** 6, marks=pytest.mark.slow)])
def test_short_product_check_holds_in_base_ten(bound):
    applicable = 0
    for x in range(1, bound):
        verdict = short_product_check(from_value(x, 10))
        assert verdict.holds
        applicable += verdict.applicable
    assert applicable > 0


def test_short_product_check_not_applicable():
    # 7 x 7 = 49 has two digits, not one
    assert not short_product_check(parse("7", 10)).applicable
    verdict = short_product_check(parse("12", 10))
    assert verdict.applicable and verdict.polynomial


def test_square_helpers():
    a = parse("11", 10)
    assert square_is_palindrome(a)
    assert reversed_square(parse("12", 10)) == parse("441", 10)
    assert not square_is_palindrome(parse("12", 10))


def test_square_reversal_identity():
    for x in range(1, 2000):
        a = from_value(x, 10)
        if is_polynomial_pair(a, a):
            assert square_reversal_identity(a)


def test_square_reversal_identity_needs_polynomial_square():
    with pytest.raises(PreconditionError):
        square_reversal_identity(parse("4", 10))


@pytest.mark.parametrize("text", ["56", "506"])
def test_palindromic_sum_without_additive_pair(text):
    a = parse(text, 10)
    assert reversal_sum_is_palindrome(a)
    assert not is_additive_pair(a, reverse(a))


@pytest.mark.parametrize("cases", [2000, pytest.param(10 ** 4, marks=pytest.mark.slow)])
@pytest.mark.parametrize("base", BASES)
def test_additive_equivalences(base, cases):
    rng = random.Random(500 + base)
    for _ in range(cases):
        a = from_value(rng.randrange(0, base ** 5), base)
        b = from_value(rng.randrange(0, base ** 5), base)
        additive = is_additive_pair(a, b)
        coeffs = pointwise_sum(a, b).coeffs
        assert additive == (_padded(add(a, b), len(coeffs)) == coeffs)
        if sufficient_additive(a, b):
            assert additive


@pytest.mark.parametrize("base, bound", [(2, 3000), (10, 3000), pytest.param(10, 10 ** 6, marks=pytest.mark.slow)])
def test_additive_reversal_sums_are_palindromes(base, bound):
    for x in range(1, bound):
        a = from_value(x, base)
        if x % base and is_additive_pair(a, reverse(a)):
            assert reversal_sum_is_palindrome(a)


def test_carry_trace_agrees_with_first_carry():
    a, b = _pair("7", "88")
    trace = carry_trace(a, b)
    position, _ = first_carry(a, b)
    assert trace.gamma[position + 1] > 0
