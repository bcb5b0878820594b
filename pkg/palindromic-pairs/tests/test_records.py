import io
import json

from numeral import parse
from records import CONSTRUCTION_FIELDS, FIELDS, RecordWriter, make_record, record_from_json, record_to_json


def _record(a="7", b="88", base=10, **extra):
    return make_record(parse(a, base), parse(b, base), **extra)


def test_make_record_orders_the_pair():
    record = _record("88", "7")
    assert (record.a.value, record.b.value, record.c.value) == (7, 88, 616)
    assert record.palindromic and not record.polynomial
    assert record.c_is_palindrome
    assert record.a_is_palindrome and record.b_is_palindrome
    assert record.sort_key() == (616, 7, 88)


def test_csv_rows():
    stream = io.StringIO()
    writer = RecordWriter(stream, 'csv')
    assert writer.write_all([_record(), _record("12", "21")]) == 2
    lines = stream.getvalue().splitlines()
    assert lines[0] == ','.join(FIELDS)
    assert lines[1] == "10,7,88,616,7,88,616,false,true,true"
    assert lines[2] == "10,12,21,252,21,12,252,true,true,true"


def test_csv_header_without_records():
    stream = io.StringIO()
    RecordWriter(stream, 'csv').write_all([])
    assert stream.getvalue() == ','.join(FIELDS) + '\n'


def test_jsonl_rows_and_extra_fields():
    stream = io.StringIO()
    record = _record("303", "303", base=8, family='r-squared-minus-1', params='r=3;j=0')
    RecordWriter(stream, 'jsonl', CONSTRUCTION_FIELDS).write_all([record])
    row = json.loads(stream.getvalue())
    assert row['c'] == "112211"
    assert row['polynomial'] is False
    assert row['family'] == 'r-squared-minus-1'
    assert row['params'] == 'r=3;j=0'


def test_subject_column():
    subject = parse("12", 10)
    record = make_record(subject, parse("21", 10), subject=subject)
    stream = io.StringIO()
    RecordWriter(stream, 'csv', ['subject']).write_all([record])
    header, row = stream.getvalue().splitlines()
    assert header.endswith(',subject')
    assert row.endswith(',12')


def test_json_lines_read_back():
    record = _record("2232213", "3122322", base=4)
    line = record_to_json(record)
    assert record_from_json(line) == record
    assert record_to_json(record_from_json(line)) == line


def test_large_base_text():
    record = _record("1.2", "3", base=1000)
    assert record.to_row()['c'] == "3.6"
