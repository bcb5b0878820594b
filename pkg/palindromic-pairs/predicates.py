"""
Pair properties of two numerals in the same base:

    polynomial   the product can be formed without carry (every convolution coefficient <= base - 1)
    palindromic  reverse(a) * reverse(b) == reverse(a * b)
    additive     the sum can be formed without carry

plus the norm bounds and the reversal-product checks built on them. All bounds use base - 1, so
the same code answers for base 10 and for any other base.
"""
from dataclasses import dataclass
from typing import Optional

from errors import PreconditionError
from numeral import (
    Numeral, add, carry_trace, convolve, digit_square_sum, digit_sum, is_palindrome, max_digit, multiply,
    pointwise_sum, reverse, same_base,
)


@dataclass(frozen=True)
class PairVerdict(object):
    polynomial: bool
    palindromic: bool
    additive: bool
    first_carry_position: Optional[int] = None
    witness_coefficient: Optional[int] = None


@dataclass(frozen=True)
class ShortProductVerdict(object):
    """
    Outcome of short_product_check(). applicable is False when a * reverse(a) is not a palindrome
    of exactly 2n - 1 digits. When applicable, polynomial must be True; False is a finding.
    """
    applicable: bool
    polynomial: Optional[bool] = None

    @property
    def holds(self) -> bool:
        return not self.applicable or bool(self.polynomial)


def first_carry(a: Numeral, b: Numeral) -> Optional[tuple[int, int]]:
    """(position, coefficient) of the first convolution coefficient above base - 1, or None"""
    profile = convolve(a, b)
    for j, c in enumerate(profile.coeffs):
        if c > profile.base - 1:
            return j, c
    return None


def is_polynomial_pair(a: Numeral, b: Numeral) -> bool:
    return first_carry(a, b) is None


def is_palindromic_pair(a: Numeral, b: Numeral) -> bool:
    return multiply(reverse(a), reverse(b)) == reverse(multiply(a, b))


def is_additive_pair(a: Numeral, b: Numeral) -> bool:
    profile = pointwise_sum(a, b)
    return profile.max() <= profile.base - 1


def pair_verdict(a: Numeral, b: Numeral) -> PairVerdict:
    carry = first_carry(a, b)
    position, witness = carry if carry else (None, None)
    return PairVerdict(
        polynomial=carry is None,
        palindromic=is_palindromic_pair(a, b),
        additive=is_additive_pair(a, b),
        first_carry_position=position,
        witness_coefficient=witness,
    )


def check_infinity_bound(a: Numeral, b: Numeral) -> bool:
    """Necessary for a polynomial pair: the largest digits multiply to at most base - 1"""
    same_base(a, b)
    return max_digit(a) * max_digit(b) <= a.base - 1


def sufficient_polynomial(a: Numeral, b: Numeral) -> bool:
    """Sufficient for a polynomial pair: max_digit(a) * digit_sum(b) <= base - 1"""
    same_base(a, b)
    return max_digit(a) * digit_sum(b) <= a.base - 1


def sufficient_additive(a: Numeral, b: Numeral) -> bool:
    same_base(a, b)
    return max_digit(a) + max_digit(b) <= a.base - 1


def reversal_product_is_palindrome(a: Numeral) -> bool:
    return is_palindrome(multiply(a, reverse(a)))


def reversal_sum_is_palindrome(a: Numeral) -> bool:
    return is_palindrome(add(a, reverse(a)))


def square_is_palindrome(a: Numeral) -> bool:
    return is_palindrome(multiply(a, a))


def reversed_square(a: Numeral) -> Numeral:
    return reverse(multiply(a, a))


def square_reversal_identity(a: Numeral) -> bool:
    """
    For (a, a) polynomial: (reverse(a), reverse(a)) is polynomial too and reverse(a * a) equals
    reverse(a) * reverse(a).
    """
    if not is_polynomial_pair(a, a):
        raise PreconditionError("({a}, {a}) is not a polynomial pair in base {base}".format(a=a, base=a.base))
    mirrored = reverse(a)
    return is_polynomial_pair(mirrored, mirrored) and reversed_square(a) == multiply(mirrored, mirrored)


def short_product_check(a: Numeral) -> ShortProductVerdict:
    """
    If a has n digits and a * reverse(a) is a palindrome of 2n - 1 digits, (a, reverse(a)) has to
    be a polynomial pair.
    """
    mirrored = reverse(a)
    product = multiply(a, mirrored)
    if len(product) != 2 * len(a) - 1 or not is_palindrome(product):
        return ShortProductVerdict(applicable=False)
    return ShortProductVerdict(applicable=True, polynomial=is_polynomial_pair(a, mirrored))


def reversal_square_profile_max(a: Numeral) -> int:
    """Largest convolution coefficient of a * reverse(a); equals digit_square_sum(a) for polynomial pairs"""
    return convolve(a, reverse(a)).max()


def digit_square_bound(a: Numeral) -> bool:
    return digit_square_sum(a) <= a.base - 1


def carry_free(a: Numeral, b: Numeral) -> bool:
    return carry_trace(a, b).carry_free()
