import abc
from dataclasses import dataclass, field
import logging
import re
from typing import Optional

from errors import ConstructionError, ParameterRangeError, UnknownFamilyError
from numeral import Numeral, canonical, is_palindrome, multiply, reverse
from predicates import is_polynomial_pair
from records import PairRecord, make_record

"""
Counterexample families: values a in some base where a * reverse(a) is a palindrome although
(a, reverse(a)) is not a polynomial pair. Each family lays out its member's digits as runs and
every generated member is checked again by the predicates before it is handed out.

"""

log = logging.getLogger("families")

VARIANTS = ['minus', 'plus']


@dataclass(frozen=True)
class FamilyParams(object):
    family: str
    params: dict = field(default_factory=dict)
    variant: Optional[str] = None

    def describe(self) -> str:
        text = ';'.join('{key}={value}'.format(key=key, value=value) for key, value in self.params.items())
        if self.variant:
            text += ';variant={variant}'.format(variant=self.variant)
        return text


def _layout(base: int, *runs) -> Numeral:
    """Concatenate digit runs given most significant first"""
    digits = []
    for run in runs:
        digits.extend(run)
    return canonical(base, reversed(digits))


class AbstractFamily(abc.ABC):

    """
    Base class for all families
    """
    tag = None
    parameters = ()
    minimums = {}

    def check(self, p: FamilyParams) -> None:
        for name in self.parameters:
            if name not in p.params:
                raise ParameterRangeError("Family {tag} needs parameter {name}".format(tag=self.tag, name=name))
            if p.params[name] < self.minimums[name]:
                raise ParameterRangeError("Family {tag} needs {name} >= {low}, got {value}".format(
                    tag=self.tag, name=name, low=self.minimums[name], value=p.params[name])
                )
        unknown = set(p.params) - set(self.parameters)
        if unknown:
            raise ParameterRangeError("Family {tag} has no parameter(s) {names}".format(
                tag=self.tag, names=', '.join(sorted(unknown)))
            )

    def applies(self, p: FamilyParams) -> bool:
        """False for parameter sets a grid expansion should leave out"""
        return True

    @abc.abstractmethod
    def build(self, p: FamilyParams) -> Numeral:
        pass


class Base2Family(AbstractFamily):
    """
    11 0^(2l) 10101 0^(2l-1) 11 in base 2 for l >= 2; the plus variant closes with a zero run of
    2l + 1 instead and needs l >= 3 (at l = 2 its product is not a palindrome).
    """
    tag = 'base2'
    parameters = ('l',)
    minimums = {'l': 2}
    plus_minimum = 3

    def check(self, p: FamilyParams) -> None:
        super().check(p)
        if (p.variant or 'minus') not in VARIANTS:
            raise ParameterRangeError("Unknown base2 variant: {variant}".format(variant=p.variant))
        if p.variant == 'plus' and p.params['l'] < self.plus_minimum:
            raise ParameterRangeError("Family base2 plus variant needs l >= {low}, got {value}".format(
                low=self.plus_minimum, value=p.params['l'])
            )

    def applies(self, p: FamilyParams) -> bool:
        return p.variant != 'plus' or p.params['l'] >= self.plus_minimum

    def build(self, p: FamilyParams) -> Numeral:
        l = p.params['l']
        tail = 2 * l + 1 if p.variant == 'plus' else 2 * l - 1
        return _layout(2, [1, 1], [0] * (2 * l), [1, 0, 1, 0, 1], [0] * tail, [1, 1])


class RSquaredMinusOneFamily(AbstractFamily):
    """r 0^(j+1) r in base r*r - 1; its square is 11 0^j 22 0^j 11"""
    tag = 'r-squared-minus-1'
    parameters = ('r', 'j')
    minimums = {'r': 2, 'j': 0}

    def build(self, p: FamilyParams) -> Numeral:
        r, j = p.params['r'], p.params['j']
        return _layout(r * r - 1, [r], [0] * (j + 1), [r])


class FourKMinusOneFamily(AbstractFamily):
    """(2k) 0^(j+1) (2k) in base 4k - 1; its square is kk 0^j (2k)(2k) 0^j kk"""
    tag = 'four-k-minus-1'
    parameters = ('k', 'j')
    minimums = {'k': 1, 'j': 0}

    def build(self, p: FamilyParams) -> Numeral:
        k, j = p.params['k'], p.params['j']
        return _layout(4 * k - 1, [2 * k], [0] * (j + 1), [2 * k])


class FourKPlusOneFamily(AbstractFamily):
    """(2k)(2k) 0^(j+2) (2k+1)(2k+1) in base 4k + 1"""
    tag = 'four-k-plus-1'
    parameters = ('k', 'j')
    minimums = {'k': 1, 'j': 0}

    def build(self, p: FamilyParams) -> Numeral:
        k, j = p.params['k'], p.params['j']
        return _layout(4 * k + 1, [2 * k, 2 * k], [0] * (j + 2), [2 * k + 1, 2 * k + 1])


FAMILIES = {cls.tag: cls for cls in (Base2Family, RSquaredMinusOneFamily, FourKMinusOneFamily, FourKPlusOneFamily)}

# older tags still accepted on input
FAMILY_ALIASES = {'base2-eq3': Base2Family.tag}


def canonical_tag(tag: str) -> str:
    return FAMILY_ALIASES.get(tag, tag)


def get_family(tag: str) -> AbstractFamily:
    tag = canonical_tag(tag)
    if tag not in FAMILIES:
        raise UnknownFamilyError("Unknown family {tag}, expected one of {known}".format(
            tag=tag, known=', '.join(FAMILIES))
        )
    return FAMILIES[tag]()


def family_generate(p: FamilyParams) -> tuple[int, Numeral]:
    family = get_family(p.family)
    family.check(p)
    a = family.build(p)
    mirrored = reverse(a)
    if not is_palindrome(multiply(a, mirrored)) or is_polynomial_pair(a, mirrored):
        raise ConstructionError("Family {tag} member {a} ({params}) fails re-verification".format(
            tag=p.family, a=a, params=p.describe())
        )
    log.debug("%s %s -> %s in base %d", p.family, p.describe(), a, a.base)
    return a.base, a


def family_record(p: FamilyParams) -> PairRecord:
    _, a = family_generate(p)
    return make_record(a, reverse(a), family=canonical_tag(p.family), params=p.describe())


_RANGE = re.compile(r'^([a-z]+)=(\d+)(?:\.\.(\d+))?$')


def parse_grid(text: str) -> dict[str, range]:
    """Turn "k=1..5 j=0..3" (or "l=2") into {'k': range(1, 6), 'j': range(0, 4)}"""
    grid = {}
    for item in text.split():
        match = _RANGE.match(item)
        if not match:
            raise ParameterRangeError("Cannot read parameter range {item!r}".format(item=item))
        name, low, high = match.group(1), int(match.group(2)), match.group(3)
        high = int(high) if high is not None else low
        if high < low:
            raise ParameterRangeError("Empty range for {name}: {item}".format(name=name, item=item))
        grid[name] = range(low, high + 1)
    return grid


def expand_grid(tag: str, grid: dict[str, range], variants: Optional[list[str]] = None) -> list[FamilyParams]:
    """All parameter combinations in order of the family's parameter tuple, then variant"""
    family = get_family(tag)
    missing = [name for name in family.parameters if name not in grid]
    if missing:
        raise ParameterRangeError("Family {tag} needs a range for {names}".format(tag=tag, names=', '.join(missing)))
    combinations = [{}]
    for name in family.parameters:
        combinations = [dict(c, **{name: v}) for c in combinations for v in grid[name]]
    if family.tag != Base2Family.tag:
        return [FamilyParams(family.tag, c) for c in combinations]
    expanded = [FamilyParams(family.tag, c, variant) for c in combinations for variant in (variants or ['minus'])]
    skipped = [p for p in expanded if not family.applies(p)]
    if skipped:
        log.info("Leaving out %s: %s", family.tag, ', '.join(p.describe() for p in skipped))
    return [p for p in expanded if family.applies(p)]
