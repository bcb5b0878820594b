import json
import logging

import pytest

from checkpoint import Checkpointer, RecordDigest, ScanCheckpoint, content_digest, verify
from errors import DigestMismatchError


def _checkpoint(lines, cursor=10):
    return ScanCheckpoint('palindromic_nonpolynomial', 10, 100000, cursor, len(lines), content_digest(lines))


def test_checkpoint_json_has_six_fields():
    checkpoint = _checkpoint(['{"a": 1}'])
    assert ScanCheckpoint.from_json(checkpoint.to_json()) == checkpoint
    assert set(json.loads(checkpoint.to_json())) == {
        'scan_kind', 'base', 'bound', 'cursor', 'records_emitted', 'content_digest'}


def test_running_digest_equals_one_shot_digest():
    lines = ['one', 'two', 'three']
    digest = RecordDigest()
    for line in lines:
        digest.update(line)
    assert digest.hexdigest() == content_digest(lines)
    assert content_digest(lines) != content_digest(lines[:2])


def test_verify():
    lines = ['x', 'y']
    verify(_checkpoint(lines), lines)
    with pytest.raises(DigestMismatchError):
        verify(_checkpoint(lines), ['x', 'z'])
    with pytest.raises(DigestMismatchError):
        verify(_checkpoint(lines), ['x'])


def test_start_append_load(tmp_path):
    checkpointer = Checkpointer(str(tmp_path / 'scan.json'))
    assert not checkpointer.exists()
    checkpointer.start(_checkpoint([], cursor=0), [])
    checkpointer.append(_checkpoint(['a', 'b'], cursor=5), ['a', 'b'])
    checkpointer.append(_checkpoint(['a', 'b', 'c'], cursor=9), ['c'])
    checkpoint, lines = checkpointer.load()
    assert checkpoint.cursor == 9
    assert lines == ['a', 'b', 'c']
    assert (tmp_path / 'scan.json.journal.jsonl').read_text() == 'a\nb\nc\n'


def test_load_drops_unacknowledged_lines(tmp_path, caplog):
    checkpointer = Checkpointer(str(tmp_path / 'scan.json'))
    checkpointer.start(_checkpoint(['a']), ['a'])
    with open(checkpointer.journal_path, 'a') as f:
        f.write('b\n')
    with caplog.at_level(logging.WARNING, logger='checkpoint'):
        _, lines = checkpointer.load()
    assert lines == ['a']
    assert 'Dropping 1 journal line' in caplog.text


def test_load_detects_tampering(tmp_path):
    checkpointer = Checkpointer(str(tmp_path / 'scan.json'))
    checkpointer.start(_checkpoint(['a', 'b']), ['a', 'b'])
    with open(checkpointer.journal_path, 'w') as f:
        f.write('a\nB\n')
    with pytest.raises(DigestMismatchError):
        checkpointer.load()
