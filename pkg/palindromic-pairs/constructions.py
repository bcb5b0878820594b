"""
Repunits and their polynomial-pair splits.

R(2**n) factors into the n numerals base**(2**i) + 1. Every factor is a 0/1 numeral and any
grouping of the factors into two sets multiplies back to R(2**n) without a single carry, so each
grouping is a polynomial pair.
"""
from dataclasses import dataclass
import functools
import logging
import math

from errors import ParameterRangeError, PreconditionError
from numeral import MAX_BASE, MIN_BASE, Numeral, from_value, multiply
from predicates import is_polynomial_pair
from records import PairRecord, make_record

log = logging.getLogger("constructions")

REPUNIT_FAMILY = 'repunit'


@dataclass(frozen=True)
class RepunitSplit(object):
    n: int
    subset_mask: int
    a: Numeral
    b: Numeral

    @property
    def params(self) -> str:
        return "n={n};mask={mask}".format(n=self.n, mask=self.subset_mask)


def _check_base(base: int) -> None:
    if not MIN_BASE <= base <= MAX_BASE:
        raise PreconditionError("Base {base} outside [{low}, {high}]".format(base=base, low=MIN_BASE, high=MAX_BASE))


def repunit(n: int, base: int = 10) -> Numeral:
    if n < 1:
        raise ParameterRangeError("A repunit needs at least one digit, got n={n}".format(n=n))
    _check_base(base)
    return Numeral(base, (1,) * n)


def repunit_factorization(n: int, base: int = 10) -> list[Numeral]:
    """The factors base**(2**i) + 1, i = 0..n-1, of repunit(2**n)"""
    if n < 1:
        raise ParameterRangeError("Need at least one factor, got n={n}".format(n=n))
    _check_base(base)
    return [from_value(base ** (2 ** i) + 1, base) for i in range(n)]


def _product(base: int, factors: list[Numeral]) -> Numeral:
    return functools.reduce(multiply, factors, from_value(1, base))


def enumerate_repunit_splits(n: int, base: int = 10) -> list[RepunitSplit]:
    """
    Every way to put the n factors of repunit(2**n) into two non-empty groups. A mask and its
    complement describe the same split; only the one giving value(a) <= value(b) is kept.
    """
    if n < 2:
        raise ParameterRangeError("Splitting needs at least two factors, got n={n}".format(n=n))
    factors = repunit_factorization(n, base)
    full = (1 << n) - 1
    splits = []
    for mask in range(1, full):
        a = _product(base, [f for i, f in enumerate(factors) if mask >> i & 1])
        b = _product(base, [f for i, f in enumerate(factors) if not mask >> i & 1])
        if (a.value, mask) > (b.value, full ^ mask):
            continue
        if not is_polynomial_pair(a, b):
            log.warning("Repunit split n=%d mask=%d is not a polynomial pair", n, mask)
        splits.append(RepunitSplit(n=n, subset_mask=mask, a=a, b=b))
    return splits


def split_count_formula(n: int) -> int:
    """
    Lower bound on the number of distinct splits: the binomial sum over group sizes 1..k for
    n = 2k + 1, and over 1..k-1 plus half of C(n, k) for n = 2k.
    """
    if n < 2:
        raise ParameterRangeError("Split count needs n >= 2, got {n}".format(n=n))
    k = n // 2
    if n % 2:
        return sum(math.comb(n, j) for j in range(1, k + 1))
    return sum(math.comb(n, j) for j in range(1, k)) + math.comb(n, k) // 2


def split_records(splits: list[RepunitSplit]) -> list[PairRecord]:
    return [make_record(split.a, split.b, family=REPUNIT_FAMILY, params=split.params) for split in splits]


def _square_free(v: int) -> bool:
    p = 2
    while p * p <= v:
        if v % (p * p) == 0:
            return False
        if v % p == 0:
            v //= p
        p += 1
    return True


def base_condition_check(base: int) -> bool:
    """
    Necessary for "a * reverse(a) palindrome implies polynomial" to hold in a base: the base is
    even and base + 1 is square free. Base 2 passes and still has counterexamples, so the
    condition is not sufficient.
    """
    _check_base(base)
    return base % 2 == 0 and _square_free(base + 1)


def fold_product(factors: list[Numeral]) -> Numeral:
    if not factors:
        raise PreconditionError("Nothing to multiply")
    return functools.reduce(multiply, factors)
