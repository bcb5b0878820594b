"""
Exact digit-sequence arithmetic in an arbitrary base.

A Numeral keeps its digits little-endian: digits[i] is the coefficient of base**i, which makes the
digit list the coefficient list of the numeral's polynomial. Products are formed in two steps,
convolve() (coefficients before any carry) and reduce() (carry propagation), so callers can look
at what happens in between.
"""
from array import array
from dataclasses import dataclass
import functools

from errors import BaseMismatchError, BaseRangeError, EmptyInputError, InvalidDigitError, PreconditionError

MIN_BASE = 2
MAX_BASE = 65536
SYMBOLS = '0123456789abcdefghijklmnopqrstuvwxyz'


def _check_base(base: int) -> None:
    if not MIN_BASE <= base <= MAX_BASE:
        raise BaseRangeError("Base {base} outside [{low}, {high}]".format(base=base, low=MIN_BASE, high=MAX_BASE))


def same_base(a, b) -> int:
    if a.base != b.base:
        raise BaseMismatchError(a.base, b.base)
    return a.base


@dataclass(frozen=True)
class Numeral(object):
    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_base(self.base)
        if not self.digits:
            raise EmptyInputError("A numeral needs at least one digit")
        for digit in self.digits:
            if not 0 <= digit < self.base:
                raise InvalidDigitError("Digit {digit} invalid in base {base}".format(digit=digit, base=self.base))
        if len(self.digits) > 1 and self.digits[-1] == 0:
            raise PreconditionError("Numeral digits must not carry leading zeros: {digits}".format(digits=self.digits))

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return render(self)

    @property
    def value(self) -> int:
        result = 0
        for digit in reversed(self.digits):
            result = result * self.base + digit
        return result


@dataclass(frozen=True)
class CoefficientProfile(object):
    """Coefficients c_j of a product (or sum) before carrying; they may exceed base - 1"""
    base: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_base(self.base)
        if not self.coeffs:
            raise EmptyInputError("A coefficient profile needs at least one coefficient")
        if any(c < 0 for c in self.coeffs):
            raise PreconditionError("Coefficients must be non-negative: {coeffs}".format(coeffs=self.coeffs))

    def max(self) -> int:
        return max(self.coeffs)


@dataclass(frozen=True)
class CarryTrace(object):
    """
    Position-by-position schoolbook carrying. For every i:
        sigma[i] = gamma[i] + coefficient at i
        reduced[i] = sigma[i] mod base
        gamma[i + 1] = (sigma[i] - reduced[i]) / base
    gamma[0] is 0 and gamma is one entry longer than sigma.
    """
    base: int
    sigma: tuple[int, ...]
    reduced: tuple[int, ...]
    gamma: tuple[int, ...]

    def carry_free(self) -> bool:
        return not any(self.gamma)


def canonical(base: int, digits) -> Numeral:
    """Strip leading zeros (the high end of the little-endian list) and build the numeral"""
    trimmed = list(digits)
    while len(trimmed) > 1 and trimmed[-1] == 0:
        trimmed.pop()
    if not trimmed:
        trimmed = [0]
    return Numeral(base, tuple(trimmed))


def zero(base: int) -> Numeral:
    return Numeral(base, (0,))


def value(n: Numeral) -> int:
    return n.value


def parse(text: str, base: int) -> Numeral:
    """
    Read digit text most-significant first. Bases up to 36 use 0-9 then a-z, larger bases use
    dot-separated decimal digit values, e.g. "1.40000.7" in base 65536.
    """
    _check_base(base)
    text = text.strip()
    if not text:
        raise EmptyInputError("Empty numeral text for base {base}".format(base=base))

    if base <= len(SYMBOLS):
        symbols = list(text.lower())
    else:
        symbols = text.split('.')

    digits = []
    for symbol in symbols:
        if base <= len(SYMBOLS):
            digit = SYMBOLS.find(symbol)
        else:
            digit = int(symbol) if symbol.isdecimal() else -1
        if not 0 <= digit < base:
            raise InvalidDigitError("Invalid digit {symbol!r} in {text!r} for base {base}".format(
                symbol=symbol, text=text, base=base)
            )
        digits.append(digit)

    return canonical(base, reversed(digits))


def render(n: Numeral) -> str:
    if n.base <= len(SYMBOLS):
        return ''.join(SYMBOLS[d] for d in reversed(n.digits))
    return '.'.join(str(d) for d in reversed(n.digits))


def from_value(v: int, base: int) -> Numeral:
    _check_base(base)
    if v < 0:
        raise PreconditionError("Only non-negative values have numerals, got {v}".format(v=v))
    digits = []
    while v:
        v, d = divmod(v, base)
        digits.append(d)
    return canonical(base, digits)


def reverse(n: Numeral) -> Numeral:
    """Trailing zeros become leading zeros and vanish: 120 -> 21"""
    return canonical(n.base, reversed(n.digits))


def is_palindrome(n: Numeral) -> bool:
    return n.digits == n.digits[::-1]


def convolve(a: Numeral, b: Numeral) -> CoefficientProfile:
    base = same_base(a, b)
    coeffs = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a.digits):
        if not x:
            continue
        for k, y in enumerate(b.digits):
            coeffs[i + k] += x * y
    return CoefficientProfile(base, tuple(coeffs))


def pointwise_sum(a: Numeral, b: Numeral) -> CoefficientProfile:
    """Digit-by-digit sums before carrying, the additive counterpart of convolve()"""
    base = same_base(a, b)
    width = max(len(a), len(b))
    left = a.digits + (0,) * (width - len(a))
    right = b.digits + (0,) * (width - len(b))
    return CoefficientProfile(base, tuple(x + y for x, y in zip(left, right)))


def reduce(p: CoefficientProfile) -> Numeral:
    digits = []
    carry = 0
    for c in p.coeffs:
        carry, digit = divmod(c + carry, p.base)
        digits.append(digit)
    while carry:
        carry, digit = divmod(carry, p.base)
        digits.append(digit)
    return canonical(p.base, digits)


def multiply(a: Numeral, b: Numeral) -> Numeral:
    return reduce(convolve(a, b))


def add(a: Numeral, b: Numeral) -> Numeral:
    return reduce(pointwise_sum(a, b))


def max_digit(n: Numeral) -> int:
    return max(n.digits)


def digit_sum(n: Numeral) -> int:
    return sum(n.digits)


def digit_square_sum(n: Numeral) -> int:
    return sum(d * d for d in n.digits)


def carry_trace(a: Numeral, b: Numeral) -> CarryTrace:
    """
    Replays multiply(a, b) one position at a time. Positions past the last convolution
    coefficient are added while a carry is still pending, so reduced spells the whole product.
    """
    profile = convolve(a, b)
    base = profile.base
    sigma, reduced, gamma = [], [], [0]
    coeffs = list(profile.coeffs)
    i = 0
    while i < len(coeffs) or gamma[-1]:
        s = gamma[-1] + (coeffs[i] if i < len(coeffs) else 0)
        digit = s % base
        sigma.append(s)
        reduced.append(digit)
        gamma.append((s - digit) // base)
        i += 1
    return CarryTrace(base, tuple(sigma), tuple(reduced), tuple(gamma))


# Value-level helpers. Scans use these to prefilter millions of candidates on plain integers and
# only build Numerals for the candidates that survive.

def reverse_value(v: int, base: int) -> int:
    result = 0
    while v:
        v, d = divmod(v, base)
        result = result * base + d
    return result


def is_palindrome_value(v: int, base: int) -> bool:
    return reverse_value(v, base) == v


@functools.lru_cache(maxsize=4)
def reversal_table(base: int, size: int) -> array:
    """reversal_table(b, n)[v] == reverse_value(v, b) for every 0 <= v <= n"""
    _check_base(base)
    table = array('Q', [0]) * (size + 1)
    power, next_power = 1, base
    for v in range(1, size + 1):
        if v == next_power:
            power, next_power = next_power, next_power * base
        high, low = divmod(v, base)
        table[v] = low * power + table[high]
    return table


@functools.lru_cache(maxsize=4)
def max_digit_table(base: int, size: int) -> array:
    """max_digit_table(b, n)[v] is the largest base-b digit of v for every 0 <= v <= n"""
    _check_base(base)
    table = array('I', [0]) * (size + 1)
    for v in range(1, size + 1):
        high, low = divmod(v, base)
        top = table[high]
        table[v] = low if low > top else top
    return table


@functools.lru_cache(maxsize=4)
def digit_sum_table(base: int, size: int) -> array:
    """
    digit_sum_table(b, n)[v] is the base-b digit sum of v for every 0 <= v <= n.

    Every unit of carry lowers a digit sum by base - 1, so a * b is carry free exactly when
    digit_sum(a * b) == digit_sum(a) * digit_sum(b). Scans use that to split polynomial from
    non-polynomial pairs on plain integers.
    """
    _check_base(base)
    table = array('I', [0]) * (size + 1)
    for v in range(1, size + 1):
        high, low = divmod(v, base)
        table[v] = table[high] + low
    return table


def digit_sum_value(v: int, base: int) -> int:
    total = 0
    while v:
        v, d = divmod(v, base)
        total += d
    return total
