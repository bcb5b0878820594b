import json
import logging

import pytest

from errors import BFileParseError, UnknownSequenceError
from known_pairs import reversal_product_members
from oeis import (
    SequenceTable, crosscheck, digit_square_violations, palindromic_square_subset, parse_bfile, regenerate,
)

PALINDROMIC_SQUARES = [0, 1, 4, 9, 121, 484, 676, 10201, 12321, 14641, 40804, 44944, 69696, 94249, 698896]
PALINDROMIC_SQUARE_ROOTS = [0, 1, 2, 3, 11, 22, 26, 101, 111, 121, 202, 212, 264, 307, 836]


def _bfile(values, offset=1):
    return ''.join('{i} {v}\n'.format(i=i, v=v) for i, v in enumerate(values, start=offset))


def test_parse_bfile():
    table = parse_bfile("1 3\n2 11", 'A062936')
    assert table.entries == ((1, 3), (2, 11))
    assert table.values == [3, 11]
    assert table.sequence_id == 'A062936'


def test_parse_bfile_comments_and_blank_lines():
    assert parse_bfile("# comment\n").entries == ()
    assert parse_bfile("# A002779\n\n1 0\n  2   1  \n\n").entries == ((1, 0), (2, 1))


@pytest.mark.parametrize("content, line_number", [
    ("1 x", 1),
    ("1 3\n2 11\n3", 3),
    ("# c\n1 3\n1 4", 3),
    ("1 2 3", 1),
])
def test_parse_bfile_errors(content, line_number):
    with pytest.raises(BFileParseError) as e:
        parse_bfile(content)
    assert e.value.line_number == line_number


def test_regenerate_palindromic_squares():
    table = regenerate('a002779', 700000)
    assert table.sequence_id == 'A002779'
    assert table.values == PALINDROMIC_SQUARES
    assert table.entries[0] == (1, 0)


def test_regenerate_square_roots():
    assert regenerate('a002778', 836).values == PALINDROMIC_SQUARE_ROOTS


def test_regenerate_squares_with_larger_reversal():
    assert regenerate('a156317', 1000).values == [1, 4, 9, 121, 144, 169, 484, 676]


def test_regenerate_reversal_products():
    assert regenerate('a062936', 20000).values == reversal_product_members(20000)


def test_unknown_sequence():
    with pytest.raises(UnknownSequenceError):
        regenerate('a004023', 100)
    with pytest.raises(UnknownSequenceError):
        crosscheck(SequenceTable('A004023', ()), 'a004023', 100)


def test_crosscheck_matching_bfile(tmp_path):
    path = tmp_path / 'b062936.txt'
    path.write_text('# A062936\n' + _bfile(reversal_product_members(10 ** 5)))
    table = parse_bfile(path.read_text(), 'A062936')
    assert table.values[:10] == [1, 2, 3, 11, 12, 21, 22, 101, 102, 111]
    assert crosscheck(table, 'a062936', 10 ** 5) == []
    assert digit_square_violations(table) == []


def test_crosscheck_finds_a_dropped_member():
    members = reversal_product_members(10 ** 4)
    table = parse_bfile(_bfile([v for v in members if v != 1011]), 'A062936')
    diffs = crosscheck(table, 'a062936', 10 ** 4)
    assert [(d.actual, d.status) for d in diffs] == [(1011, 'extra')]


def test_crosscheck_reports_missing_and_extra(caplog):
    table = parse_bfile(_bfile([0, 1, 4, 9, 121, 485, 676]), 'A002779')
    with caplog.at_level(logging.WARNING, logger='oeis'):
        diffs = crosscheck(table, 'a002779', 700)
    assert 'ends at 676' in caplog.text
    assert [(d.index, d.expected, d.actual, d.status) for d in diffs] == [
        (6, None, 484, 'extra'),
        (6, 485, None, 'missing'),
    ]
    assert json.loads(diffs[1].to_json()) == {'index': 6, 'expected': 485, 'actual': None, 'status': 'missing'}


def test_crosscheck_of_empty_range():
    assert crosscheck(SequenceTable('A062936', ()), 'a062936', 0) == []


def test_sequence_indices_must_increase():
    with pytest.raises(ValueError):
        SequenceTable('A000001', ((2, 1), (1, 2)))


def test_palindromic_square_subset():
    report = palindromic_square_subset(10000)
    assert report.violations == ()
    assert report.strict
    assert 26 not in report.members
    assert 11 in report.members and 22 in report.members


def test_digit_square_violations():
    assert digit_square_violations(regenerate('a062936', 10000)) == []
    table = SequenceTable('A062936', ((1, 3), (2, 13), (3, 30)))
    assert digit_square_violations(table) == [13]
