"""
OEIS b-file ingestion and local regeneration of the reversal and palindromic-square sequences.

Supported sequences:

    a062936  values a not ending in 0 with a * reverse(a) a palindrome
    a002778  values a with a * a a palindrome
    a002779  palindromic squares
    a156317  squares whose reversal is an equal or larger square
"""
from dataclasses import dataclass
import json
import logging
import math
import re
from typing import Optional

from enumeration import scan_reversal_mult
from errors import BFileParseError, PreconditionError, UnknownSequenceError
from numeral import digit_square_sum, digit_sum_value, from_value, is_palindrome_value, reverse_value

log = logging.getLogger("oeis")

SEQUENCES = {
    'a062936': 'A062936',
    'a002778': 'A002778',
    'a002779': 'A002779',
    'a156317': 'A156317',
}

_LINE = re.compile(r'^(-?\d+)\s+(-?\d+)$')


@dataclass(frozen=True)
class SequenceTable(object):
    sequence_id: str
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for (i, _), (k, _) in zip(self.entries, self.entries[1:]):
            if k <= i:
                raise PreconditionError("Sequence {id} indices must increase: {i} then {k}".format(
                    id=self.sequence_id, i=i, k=k)
                )

    @property
    def values(self) -> list[int]:
        return [v for _, v in self.entries]

    @property
    def offset(self) -> int:
        return self.entries[0][0] if self.entries else 1


@dataclass(frozen=True)
class DiffEntry(object):
    index: int
    expected: Optional[int]
    actual: Optional[int]
    status: str

    def to_json(self) -> str:
        return json.dumps({'index': self.index, 'expected': self.expected, 'actual': self.actual,
                           'status': self.status})


@dataclass(frozen=True)
class SubsetReport(object):
    members: tuple[int, ...]
    violations: tuple[int, ...]
    strict: bool


def parse_bfile(content: str, sequence_id: str = '') -> SequenceTable:
    entries = []
    for number, raw in enumerate(content.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        match = _LINE.match(line)
        if not match:
            raise BFileParseError(number, raw)
        index, value = int(match.group(1)), int(match.group(2))
        if entries and index <= entries[-1][0]:
            raise BFileParseError(number, raw)
        entries.append((index, value))
    return SequenceTable(sequence_id, tuple(entries))


def _sequence_id(kind: str) -> str:
    if kind not in SEQUENCES:
        raise UnknownSequenceError("Unknown sequence {kind}, expected one of {known}".format(
            kind=kind, known=', '.join(SEQUENCES))
        )
    return SEQUENCES[kind]


def _regenerate_values(kind: str, bound: int, base: int, workers: int) -> list[int]:
    if kind == 'a062936':
        if bound < 1:
            return []
        return [subject.value for subject, _ in scan_reversal_mult(base, bound, workers)]
    if kind == 'a002778':
        return [a for a in range(bound + 1) if is_palindrome_value(a * a, base)]
    if kind == 'a002779':
        return [a * a for a in range(math.isqrt(bound) + 1) if is_palindrome_value(a * a, base)]
    # a156317
    found = []
    for a in range(1, math.isqrt(bound) + 1):
        mirrored = reverse_value(a * a, base)
        if mirrored >= a * a and math.isqrt(mirrored) ** 2 == mirrored:
            found.append(a * a)
    return found


def regenerate(kind: str, bound: int, base: int = 10, workers: int = 1, offset: int = 1) -> SequenceTable:
    """The sequence's members <= bound, indexed from offset"""
    sequence_id = _sequence_id(kind)
    values = _regenerate_values(kind, bound, base, workers)
    return SequenceTable(sequence_id, tuple(enumerate(values, start=offset)))


def crosscheck(seq: SequenceTable, kind: str, bound: int, base: int = 10, workers: int = 1) -> list[DiffEntry]:
    """
    Regenerate `kind` locally and report b-file values we do not produce (missing) and values we
    produce that the b-file does not list (extra). Only values up to the smaller of bound and
    the b-file's last value are compared.
    """
    _sequence_id(kind)
    limit = bound
    if seq.entries and seq.entries[-1][1] < bound:
        limit = seq.entries[-1][1]
        log.warning("b-file %s ends at %d, comparing only up to there instead of %d", seq.sequence_id, limit, bound)

    local = regenerate(kind, limit, base, workers, offset=seq.offset)
    expected = {v: i for i, v in seq.entries if v <= limit}
    actual = {v: i for i, v in local.entries}

    diffs = [DiffEntry(i, v, None, 'missing') for v, i in expected.items() if v not in actual]
    diffs += [DiffEntry(i, None, v, 'extra') for v, i in actual.items() if v not in expected]
    return sorted(diffs, key=lambda d: (d.expected if d.expected is not None else d.actual, d.status))


def palindromic_square_subset(bound: int, base: int = 10) -> SubsetReport:
    """
    Palindromes a whose square needs no carry all have palindromic squares, so they must be
    members of the regenerated a002778 prefix. strict tells whether that prefix holds others too.
    """
    squares_palindromic = set(regenerate('a002778', bound, base).values)
    members = tuple(a for a in range(bound + 1)
                    if is_palindrome_value(a, base) and digit_sum_value(a * a, base) == digit_sum_value(a, base) ** 2)
    violations = tuple(a for a in members if a not in squares_palindromic)
    return SubsetReport(members, violations, strict=len(squares_palindromic) > len(set(members)))


def digit_square_violations(seq: SequenceTable, base: int = 10) -> list[int]:
    """Members above 3, not ending in 0, whose digit squares sum to more than base - 1"""
    return [v for v in seq.values
            if v > 3 and v % base and digit_square_sum(from_value(v, base)) > base - 1]
