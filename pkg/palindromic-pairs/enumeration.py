"""
Exhaustive, checkpointable range scans.

Every scan walks an outer index range in blocks. A block is processed independently (possibly in a
worker process) and returns its records in discovery order; the runner concatenates blocks in order,
journals them, and sorts the complete result at the end. Output therefore does not depend on the
worker count or on how often the run was interrupted.

Candidates are prefiltered on plain integers through lookup tables; each survivor is rebuilt as a
pair of Numerals and decided by the pair predicates, which is what ends up in the record.
"""
import abc
import logging
import math
import multiprocessing
import sys
import time
from typing import Iterable, Optional

from tqdm import tqdm

from checkpoint import Checkpointer, RecordDigest, ScanCheckpoint, verify
from errors import CheckpointMismatchError, PreconditionError, UnknownScanKindError
from numeral import (
    MAX_BASE, MIN_BASE, Numeral, digit_sum_table, digit_sum_value, from_value, max_digit_table, reversal_table,
    reverse, reverse_value,
)
from predicates import is_additive_pair, reversal_sum_is_palindrome
from records import SUBJECT_FIELDS, PairRecord, make_record, record_from_json, record_to_json

log = logging.getLogger("enumeration")

DEFAULT_TABLE_LIMIT = 1 << 24
MULTIPLES_SUFFIX = '+multiples'


class _Computed(object):
    """Stands in for a lookup table when the bound is too large to tabulate"""

    def __init__(self, function, base: int) -> None:
        self.function = function
        self.base = base

    def __getitem__(self, v: int) -> int:
        return self.function(v, self.base)


def _max_digit_value(v: int, base: int) -> int:
    top = 0
    while v:
        v, d = divmod(v, base)
        top = d if d > top else top
    return top


class AbstractScan(abc.ABC):
    """
    Base class for all scans. Subclasses name their kind, their outer range and how one block of
    that range is processed.
    """
    kind = None
    block_size = 8
    extra_fields = ()

    def __init__(self, base: int, bound: int, include_base_multiples: bool = False,
                 table_limit: int = DEFAULT_TABLE_LIMIT) -> None:
        if not MIN_BASE <= base <= MAX_BASE:
            raise PreconditionError("Base {base} outside [{low}, {high}]".format(base=base, low=MIN_BASE, high=MAX_BASE))
        self.base = base
        self.bound = bound
        self.include_base_multiples = include_base_multiples
        self.table_limit = table_limit

    @property
    def scan_kind(self) -> str:
        return self.kind + (MULTIPLES_SUFFIX if self.include_base_multiples else '')

    @abc.abstractmethod
    def outer_range(self) -> range:
        pass

    @abc.abstractmethod
    def scan_block(self, start: int, stop: int) -> list[PairRecord]:
        pass

    def _table(self, builder, fallback):
        if self.bound > self.table_limit:
            return _Computed(fallback, self.base)
        return builder(self.base, self.bound)

    def reversals(self):
        return self._table(reversal_table, reverse_value)

    def digit_sums(self):
        return self._table(digit_sum_table, digit_sum_value)

    def max_digits(self):
        return self._table(max_digit_table, _max_digit_value)

    def prepare(self) -> None:
        """Build lookup tables in the parent so forked workers inherit them"""
        self.reversals()

    def blocks(self, start: int, stop: int) -> list[tuple[int, int]]:
        return [(low, min(low + self.block_size, stop)) for low in range(start, stop, self.block_size)]

    def sort_key(self, record: PairRecord):
        return record.sort_key()

    def is_counterexample(self, record: PairRecord) -> bool:
        return False

    def skip_operand(self, v: int) -> bool:
        return not self.include_base_multiples and v % self.base == 0


class PairScan(AbstractScan):
    """
    Walks pairs a <= b with a * b <= bound: a is the outer index, b runs from a to bound // a.

    A pair reaches consider() only when, on plain integers, reverse(a) * reverse(b) == reverse(a * b)
    and the product is (want_polynomial=True) or is not (False) carry free. With
    prune_by_max_digit, b is skipped outright when max_digit(a) * max_digit(b) > base - 1, which
    no polynomial pair violates.
    """
    want_polynomial = False
    prune_by_max_digit = False

    def __init__(self, base: int, bound: int, include_base_multiples: bool = False,
                 table_limit: int = DEFAULT_TABLE_LIMIT) -> None:
        super().__init__(base, bound, include_base_multiples, table_limit)
        if bound < base:
            raise PreconditionError("Product bound {bound} below base {base}".format(bound=bound, base=base))

    def outer_range(self) -> range:
        return range(1, math.isqrt(self.bound) + 1)

    def prepare(self) -> None:
        self.reversals()
        self.digit_sums()
        if self.prune_by_max_digit:
            self.max_digits()

    def scan_block(self, start: int, stop: int) -> list[PairRecord]:
        rev = self.reversals()
        sums = self.digit_sums()
        top_digit = self.max_digits() if self.prune_by_max_digit else None
        limit = self.base - 1
        want = self.want_polynomial
        found = []
        for a in range(start, stop):
            if self.skip_operand(a) or not self.outer_filter(a, rev):
                continue
            ra = rev[a]
            sa = sums[a]
            ma = top_digit[a] if top_digit else 0
            c = a * (a - 1)
            for b in range(a, self.bound // a + 1):
                c += a
                if top_digit is not None and ma * top_digit[b] > limit:
                    continue
                if ra * rev[b] == rev[c] and (sums[c] == sa * sums[b]) == want:
                    record = self.consider(a, b, rev)
                    if record is not None:
                        found.append(record)
        return found

    def outer_filter(self, a: int, rev) -> bool:
        return True

    def consider(self, a: int, b: int, rev) -> Optional[PairRecord]:
        if self.skip_operand(b) or not self.prefilter(a, b, rev):
            return None
        record = make_record(from_value(a, self.base), from_value(b, self.base))
        return record if self.accept(record) else None

    def prefilter(self, a: int, b: int, rev) -> bool:
        return True

    @abc.abstractmethod
    def accept(self, record: PairRecord) -> bool:
        pass


class PalindromicNonpolynomialScan(PairScan):
    """
    Palindromic pairs that are not polynomial, with c <= reverse(c). The pair behind reverse(c),
    (reverse(a), reverse(b)), is palindromic too, so every non-palindromic product is listed once.
    """
    kind = 'palindromic_nonpolynomial'

    def prefilter(self, a: int, b: int, rev) -> bool:
        c = a * b
        return c <= rev[c]

    def accept(self, record: PairRecord) -> bool:
        return record.palindromic and not record.polynomial and record.c.value <= record.c_rev.value


class ConjectureMainScan(PairScan):
    """
    Palindromic, non-polynomial pairs where neither member is a palindrome. Every record is a
    counterexample to the claim that such pairs do not exist.
    """
    kind = 'conjecture_main'

    def outer_filter(self, a: int, rev) -> bool:
        return rev[a] != a

    def prefilter(self, a: int, b: int, rev) -> bool:
        return rev[b] != b

    def accept(self, record: PairRecord) -> bool:
        return (record.palindromic and not record.polynomial
                and not record.a_is_palindrome and not record.b_is_palindrome)

    def is_counterexample(self, record: PairRecord) -> bool:
        return True


class PolynomialNonpalindromeScan(PairScan):
    """Polynomial pairs with neither member a palindrome and c <= reverse(c) <= bound"""
    kind = 'polynomial_nonpalindrome'
    want_polynomial = True
    prune_by_max_digit = True

    def outer_filter(self, a: int, rev) -> bool:
        return rev[a] != a

    def prefilter(self, a: int, b: int, rev) -> bool:
        c = a * b
        return rev[b] != b and c <= rev[c] <= self.bound

    def accept(self, record: PairRecord) -> bool:
        return (record.polynomial and not record.a_is_palindrome and not record.b_is_palindrome
                and record.c.value <= record.c_rev.value <= self.bound)


class ReversalMultScan(AbstractScan):
    """
    Values a <= bound, not divisible by the base, with a * reverse(a) a palindrome. Records carry a
    as their subject; the ones whose pair (a, reverse(a)) is not polynomial are counterexamples.
    """
    kind = 'reversal_mult'
    block_size = 4096
    extra_fields = tuple(SUBJECT_FIELDS)

    def __init__(self, base: int, bound: int, include_base_multiples: bool = False,
                 table_limit: int = DEFAULT_TABLE_LIMIT) -> None:
        # a multiple of the base never has a palindromic a * reverse(a)
        super().__init__(base, bound, False, table_limit)
        if bound < 1:
            raise PreconditionError("Operand bound must be positive, got {bound}".format(bound=bound))

    def outer_range(self) -> range:
        return range(1, self.bound + 1)

    def scan_block(self, start: int, stop: int) -> list[PairRecord]:
        rev = self.reversals()
        base = self.base
        found = []
        for a in range(start, stop):
            if a % base == 0:
                continue
            ra = rev[a]
            product = a * ra
            if reverse_value(product, base) == product:
                subject = from_value(a, base)
                found.append(make_record(subject, from_value(ra, base), subject=subject))
        return found

    def sort_key(self, record: PairRecord):
        return record.subject.value

    def is_counterexample(self, record: PairRecord) -> bool:
        return not record.polynomial


SCANS = {cls.kind: cls for cls in (PalindromicNonpolynomialScan, PolynomialNonpalindromeScan,
                                   ConjectureMainScan, ReversalMultScan)}


def make_scan(scan_kind: str, base: int, bound: int, table_limit: int = DEFAULT_TABLE_LIMIT) -> AbstractScan:
    kind = scan_kind
    include = kind.endswith(MULTIPLES_SUFFIX)
    if include:
        kind = kind[:-len(MULTIPLES_SUFFIX)]
    if kind not in SCANS:
        raise UnknownScanKindError("Unknown scan kind: {kind}".format(kind=scan_kind))
    return SCANS[kind](base, bound, include_base_multiples=include, table_limit=table_limit)


def _scan_block(job: tuple[AbstractScan, int, int]) -> list[PairRecord]:
    scan, start, stop = job
    return scan.scan_block(start, stop)


class ScanRunner(object):
    """
    Drives a scan over its outer range, fanning blocks out to workers and owning the single
    output list and the checkpoint.
    """

    def __init__(self, scan: AbstractScan, workers: int = 1, checkpointer: Optional[Checkpointer] = None,
                 checkpoint_every: float = 30.0, progress: bool = False,
                 progress_interval: Optional[float] = None) -> None:
        if workers < 1:
            raise PreconditionError("Need at least one worker, got {workers}".format(workers=workers))
        self.scan = scan
        self.workers = workers
        self.checkpointer = checkpointer
        self.checkpoint_every = checkpoint_every
        self.progress = progress
        self.progress_interval = progress_interval

    def _lines(self, records: Iterable[PairRecord]) -> list[str]:
        return [record_to_json(record, self.scan.extra_fields) for record in records]

    def _checkpoint(self, cursor: int, records_emitted: int, digest: RecordDigest) -> ScanCheckpoint:
        return ScanCheckpoint(
            scan_kind=self.scan.scan_kind,
            base=self.scan.base,
            bound=self.scan.bound,
            cursor=cursor,
            records_emitted=records_emitted,
            content_digest=digest.hexdigest(),
        )

    def _restore(self) -> tuple[list[PairRecord], int]:
        outer = self.scan.outer_range()
        if self.checkpointer is None:
            return [], outer.start - 1

        if not self.checkpointer.exists():
            self.checkpointer.start(self._checkpoint(outer.start - 1, 0, RecordDigest()), [])
            return [], outer.start - 1

        checkpoint, lines = self.checkpointer.load()
        expected = (self.scan.scan_kind, self.scan.base, self.scan.bound)
        if (checkpoint.scan_kind, checkpoint.base, checkpoint.bound) != expected:
            raise CheckpointMismatchError("Checkpoint {path} belongs to {found}, not {expected}".format(
                path=self.checkpointer.path,
                found=(checkpoint.scan_kind, checkpoint.base, checkpoint.bound),
                expected=expected)
            )
        log.info("Resuming %s from cursor %d with %d record(s)", checkpoint.scan_kind, checkpoint.cursor,
                 checkpoint.records_emitted)
        # the journal may hold lines past records_emitted; rewrite it to match the checkpoint
        self.checkpointer.start(checkpoint, lines)
        return [record_from_json(line) for line in lines], checkpoint.cursor

    def run(self, until: Optional[int] = None, state: Optional[tuple[list[PairRecord], int]] = None) -> list[PairRecord]:
        """
        Scan every outer index after the restored cursor up to `until` (default: the end of the
        range) and return all records, sorted.
        """
        records, cursor = state if state is not None else self._restore()
        records = list(records)
        digest = RecordDigest(self._lines(records))

        outer = self.scan.outer_range()
        last = outer.stop - 1 if until is None else min(until, outer.stop - 1)
        blocks = self.scan.blocks(cursor + 1, last + 1)

        if blocks:
            self.scan.prepare()
            jobs = [(self.scan, start, stop) for start, stop in blocks]
            pending = []
            last_write = time.monotonic()
            last_report = last_write
            with self._results(jobs) as results:
                bar = tqdm(total=len(blocks), unit='block', file=sys.stderr, disable=not self.progress,
                           desc=self.scan.scan_kind)
                for (start, stop), found in zip(blocks, results):
                    for record in found:
                        if self.scan.is_counterexample(record):
                            log.warning("Counterexample in base %d: %s x %s = %s", record.base, record.a,
                                        record.b, record.c)
                    new_lines = self._lines(found)
                    for line in new_lines:
                        digest.update(line)
                    records.extend(found)
                    pending.extend(new_lines)
                    cursor = stop - 1
                    bar.update(1)

                    if self.progress_interval and time.monotonic() - last_report >= self.progress_interval:
                        log.info("%s: cursor %d of %d, %d record(s)", self.scan.scan_kind, cursor, last, len(records))
                        last_report = time.monotonic()

                    if self.checkpointer and time.monotonic() - last_write >= self.checkpoint_every:
                        self.checkpointer.append(self._checkpoint(cursor, len(records), digest), pending)
                        pending = []
                        last_write = time.monotonic()
                bar.close()

            if self.checkpointer:
                self.checkpointer.append(self._checkpoint(cursor, len(records), digest), pending)

        return sorted(records, key=self.scan.sort_key)

    def _results(self, jobs):
        if self.workers == 1 or len(jobs) == 1:
            return _SerialResults(jobs)
        return _PoolResults(jobs, self.workers)


class _SerialResults(object):
    def __init__(self, jobs) -> None:
        self.jobs = jobs

    def __enter__(self):
        return map(_scan_block, self.jobs)

    def __exit__(self, *exc) -> None:
        pass


class _PoolResults(object):
    def __init__(self, jobs, workers: int) -> None:
        self.jobs = jobs
        self.pool = multiprocessing.Pool(processes=workers)

    def __enter__(self):
        # imap keeps block order, whatever order the workers finish in
        return self.pool.imap(_scan_block, self.jobs)

    def __exit__(self, *exc) -> None:
        self.pool.terminate()
        self.pool.join()


def scan_palindromic_nonpolynomial(base: int, product_bound: int, workers: int = 1,
                                   include_base_multiples: bool = False) -> list[PairRecord]:
    scan = PalindromicNonpolynomialScan(base, product_bound, include_base_multiples)
    return ScanRunner(scan, workers).run()


def scan_polynomial_nonpalindrome(base: int, product_bound: int, workers: int = 1,
                                  include_base_multiples: bool = False) -> list[PairRecord]:
    scan = PolynomialNonpalindromeScan(base, product_bound, include_base_multiples)
    return ScanRunner(scan, workers).run()


def scan_conjecture_main(base: int, product_bound: int, workers: int = 1,
                         include_base_multiples: bool = False) -> list[PairRecord]:
    scan = ConjectureMainScan(base, product_bound, include_base_multiples)
    return ScanRunner(scan, workers).run()


def scan_reversal_mult(base: int, operand_bound: int, workers: int = 1) -> list[tuple[Numeral, PairRecord]]:
    records = ScanRunner(ReversalMultScan(base, operand_bound), workers).run()
    return [(record.subject, record) for record in records]


def resume(checkpoint: ScanCheckpoint, emitted: list[PairRecord], workers: int = 1) -> list[PairRecord]:
    """
    Continue the scan described by `checkpoint`, given the records it had emitted. Raises
    DigestMismatchError when `emitted` is not what the checkpoint recorded.
    """
    scan = make_scan(checkpoint.scan_kind, checkpoint.base, checkpoint.bound)
    verify(checkpoint, [record_to_json(record, scan.extra_fields) for record in emitted])
    return ScanRunner(scan, workers).run(state=(emitted, checkpoint.cursor))


def additive_reversal_exceptions(base: int, bound: int) -> list[Numeral]:
    """Values a <= bound whose a + reverse(a) is a palindrome although (a, reverse(a)) is not additive"""
    found = []
    for v in range(1, bound + 1):
        a = from_value(v, base)
        if reversal_sum_is_palindrome(a) and not is_additive_pair(a, reverse(a)):
            found.append(a)
    return found
