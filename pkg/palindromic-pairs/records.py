"""
PairRecord, the row type shared by scans and constructions, and its CSV / JSON-lines emitters.
Numerals are written in their own base's digit text; flags as true/false.
"""
import csv
from dataclasses import dataclass
import json
from typing import Iterable, Optional, TextIO

from numeral import Numeral, is_palindrome, multiply, parse, render, reverse
from predicates import is_palindromic_pair, is_polynomial_pair

FIELDS = ['base', 'a', 'b', 'c', 'a_rev', 'b_rev', 'c_rev', 'polynomial', 'palindromic', 'c_is_palindrome']
SUBJECT_FIELDS = ['subject']
CONSTRUCTION_FIELDS = ['family', 'params']
FORMATS = ['csv', 'jsonl']


@dataclass(frozen=True)
class PairRecord(object):
    base: int
    a: Numeral
    b: Numeral
    c: Numeral
    a_rev: Numeral
    b_rev: Numeral
    c_rev: Numeral
    polynomial: bool
    palindromic: bool
    c_is_palindrome: bool
    subject: Optional[Numeral] = None
    family: Optional[str] = None
    params: Optional[str] = None

    @property
    def a_is_palindrome(self) -> bool:
        return self.a == self.a_rev

    @property
    def b_is_palindrome(self) -> bool:
        return self.b == self.b_rev

    def sort_key(self) -> tuple[int, int, int]:
        return self.c.value, self.a.value, self.b.value

    def to_row(self, extra_fields: Iterable[str] = ()) -> dict:
        row = {
            'base': self.base,
            'a': render(self.a),
            'b': render(self.b),
            'c': render(self.c),
            'a_rev': render(self.a_rev),
            'b_rev': render(self.b_rev),
            'c_rev': render(self.c_rev),
            'polynomial': self.polynomial,
            'palindromic': self.palindromic,
            'c_is_palindrome': self.c_is_palindrome,
        }
        for field in extra_fields:
            extra = getattr(self, field)
            row[field] = render(extra) if isinstance(extra, Numeral) else extra
        return row


def make_record(a: Numeral, b: Numeral, subject: Optional[Numeral] = None, family: Optional[str] = None,
                params: Optional[str] = None) -> PairRecord:
    """Decide everything about (a, b) from scratch; the pair is stored with a <= b"""
    if a.value > b.value:
        a, b = b, a
    c = multiply(a, b)
    c_rev = reverse(c)
    return PairRecord(
        base=a.base,
        a=a,
        b=b,
        c=c,
        a_rev=reverse(a),
        b_rev=reverse(b),
        c_rev=c_rev,
        polynomial=is_polynomial_pair(a, b),
        palindromic=is_palindromic_pair(a, b),
        c_is_palindrome=is_palindrome(c),
        subject=subject,
        family=family,
        params=params,
    )


def record_to_json(record: PairRecord, extra_fields: Iterable[str] = ()) -> str:
    return json.dumps(record.to_row(extra_fields))


def record_from_json(line: str) -> PairRecord:
    """Inverse of record_to_json(); flags are recomputed, not trusted"""
    row = json.loads(line)
    base = int(row['base'])
    subject = parse(row['subject'], base) if row.get('subject') else None
    return make_record(parse(row['a'], base), parse(row['b'], base), subject=subject,
                       family=row.get('family'), params=row.get('params'))


def _csv_value(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return '' if value is None else value


class RecordWriter(object):
    """
    Serialises records to a text stream. One writer owns the stream, so the output of a run is
    exactly the order records are handed in.
    """

    def __init__(self, stream: TextIO, output_format: str = 'csv', extra_fields: Iterable[str] = ()) -> None:
        if output_format not in FORMATS:
            raise ValueError("Unknown output format: {fmt}".format(fmt=output_format))
        self.stream = stream
        self.output_format = output_format
        self.extra_fields = list(extra_fields)
        self.count = 0
        self._csv = None

    def write(self, record: PairRecord) -> None:
        row = record.to_row(self.extra_fields)
        if self.output_format == 'jsonl':
            self.stream.write(json.dumps(row) + '\n')
        else:
            if self._csv is None:
                self._csv = csv.DictWriter(self.stream, fieldnames=FIELDS + self.extra_fields, lineterminator='\n')
                self._csv.writeheader()
            self._csv.writerow({key: _csv_value(value) for key, value in row.items()})
        self.count += 1

    def write_all(self, records: Iterable[PairRecord]) -> int:
        for record in records:
            self.write(record)
        self.close()
        return self.count

    def close(self) -> None:
        """A CSV stream with no records still gets its header"""
        if self.output_format == 'csv' and self._csv is None:
            self._csv = csv.DictWriter(self.stream, fieldnames=FIELDS + self.extra_fields, lineterminator='\n')
            self._csv.writeheader()
        self.stream.flush()
