"""
Resumable scan state.

The checkpoint itself is one small JSON document. The records found so far live next to it in a
journal (<checkpoint>.journal.jsonl, one JSON record per line, discovery order). content_digest is
the SHA-256 of the first records_emitted journal lines, so a resumed run can prove it continues
exactly the output it claims to continue.
"""
from dataclasses import asdict, dataclass
import hashlib
import json
import logging
import os
from typing import Iterable

from errors import DigestMismatchError

log = logging.getLogger("checkpoint")


@dataclass(frozen=True)
class ScanCheckpoint(object):
    scan_kind: str
    base: int
    bound: int
    cursor: int
    records_emitted: int
    content_digest: str

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2) + '\n'

    @classmethod
    def from_json(cls, text: str) -> 'ScanCheckpoint':
        data = json.loads(text)
        return cls(
            scan_kind=str(data['scan_kind']),
            base=int(data['base']),
            bound=int(data['bound']),
            cursor=int(data['cursor']),
            records_emitted=int(data['records_emitted']),
            content_digest=str(data['content_digest']),
        )


class RecordDigest(object):
    """Running SHA-256 over journal lines"""

    def __init__(self, lines: Iterable[str] = ()) -> None:
        self._hash = hashlib.sha256()
        for line in lines:
            self.update(line)

    def update(self, line: str) -> None:
        self._hash.update(line.encode('utf-8'))
        self._hash.update(b'\n')

    def hexdigest(self) -> str:
        return self._hash.hexdigest()


def content_digest(lines: Iterable[str]) -> str:
    return RecordDigest(lines).hexdigest()


def verify(checkpoint: ScanCheckpoint, lines: list[str]) -> None:
    if len(lines) != checkpoint.records_emitted:
        raise DigestMismatchError("Checkpoint expects {expected} records, journal holds {actual}".format(
            expected=checkpoint.records_emitted, actual=len(lines))
        )
    if content_digest(lines) != checkpoint.content_digest:
        raise DigestMismatchError("Journal digest does not match checkpoint {kind} at cursor {cursor}".format(
            kind=checkpoint.scan_kind, cursor=checkpoint.cursor)
        )


def _write_atomically(path: str, content: str) -> None:
    temporary = path + '.tmp'
    with open(temporary, 'w') as f:
        f.write(content)
        f.flush()
        os.fsync(f.fileno())
    os.replace(temporary, path)


class Checkpointer(object):
    """
    Owns one checkpoint file and its journal. Journal lines are appended before the checkpoint is
    rewritten; lines past records_emitted (a crash between the two writes) are dropped on load.
    """

    def __init__(self, path: str) -> None:
        self.path = path
        self.journal_path = path + '.journal.jsonl'

    def exists(self) -> bool:
        return os.path.exists(self.path)

    def load(self) -> tuple[ScanCheckpoint, list[str]]:
        with open(self.path) as f:
            checkpoint = ScanCheckpoint.from_json(f.read())

        lines = []
        if os.path.exists(self.journal_path):
            with open(self.journal_path) as f:
                lines = [line.rstrip('\n') for line in f if line.strip()]

        if len(lines) > checkpoint.records_emitted:
            log.warning("Dropping %d journal line(s) written after the last checkpoint",
                        len(lines) - checkpoint.records_emitted)
            lines = lines[:checkpoint.records_emitted]

        verify(checkpoint, lines)
        return checkpoint, lines

    def start(self, checkpoint: ScanCheckpoint, lines: list[str]) -> None:
        """(Re)write the journal from scratch, then the checkpoint"""
        _write_atomically(self.journal_path, ''.join(line + '\n' for line in lines))
        _write_atomically(self.path, checkpoint.to_json())

    def append(self, checkpoint: ScanCheckpoint, new_lines: list[str]) -> None:
        if new_lines:
            with open(self.journal_path, 'a') as f:
                for line in new_lines:
                    f.write(line + '\n')
                f.flush()
                os.fsync(f.fileno())
        _write_atomically(self.path, checkpoint.to_json())
        log.info("Checkpoint %s: cursor %d, %d record(s)", self.path, checkpoint.cursor, checkpoint.records_emitted)
