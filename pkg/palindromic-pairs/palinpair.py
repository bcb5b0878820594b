#!/usr/bin/env python3
"""
Command line front end: exhaustive pair scans, constructions, single-pair checks and OEIS
cross-checks. Records go to standard output (or --output), summaries and logs to standard error.

Exit status: 0 success, 1 usage or input error, 2 a counterexample (or an OEIS diff) was found.
"""
from dataclasses import dataclass
import argparse
import logging
import os
import sys
from typing import Optional, TextIO

import colorama
import yaml

from checkpoint import Checkpointer
from constructions import (
    base_condition_check, enumerate_repunit_splits, fold_product, repunit, repunit_factorization, split_count_formula,
    split_records,
)
from enumeration import DEFAULT_TABLE_LIMIT, ScanRunner, make_scan
from errors import PalinpairError, PreconditionError
from families import FAMILIES, FAMILY_ALIASES, VARIANTS, canonical_tag, expand_grid, family_record, parse_grid
from numeral import MAX_BASE, MIN_BASE, carry_trace, is_palindrome, multiply, parse, reverse
from oeis import crosscheck, digit_square_violations, palindromic_square_subset, parse_bfile, SEQUENCES
from predicates import pair_verdict, short_product_check
from records import CONSTRUCTION_FIELDS, FORMATS, RecordWriter

log = logging.getLogger("palinpair")

DEFAULT_CONFIG = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'config.yaml')
CHECKPOINT_DIR_VARIABLE = 'PALINPAIR_CHECKPOINT_DIR'

SCAN_COMMANDS = {
    'palindromic-scan': 'palindromic_nonpolynomial',
    'polynomial-scan': 'polynomial_nonpalindrome',
    'conjecture-main': 'conjecture_main',
    'reversal-mult': 'reversal_mult',
}
PAIR_SCAN_COMMANDS = ['palindromic-scan', 'polynomial-scan', 'conjecture-main']
COMMAND_ALIASES = {
    'palindromic-scan': ['table1'],
    'polynomial-scan': ['table2'],
}

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FOUND = 2


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with 1; 2 is reserved for findings"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '{prog}: error: {message}\n'.format(prog=self.prog, message=message))


@dataclass(frozen=True)
class RunConfig(object):
    subcommand: str
    base: int
    bound: int
    output_path: Optional[str]
    format: str
    checkpoint_path: Optional[str]
    workers: int

    def validate(self) -> None:
        if not MIN_BASE <= self.base <= MAX_BASE:
            raise PreconditionError("--base must lie in [{low}, {high}], got {base}".format(
                low=MIN_BASE, high=MAX_BASE, base=self.base)
            )
        if self.bound < self.base:
            raise PreconditionError("--bound {bound} is below --base {base}".format(bound=self.bound, base=self.base))
        if self.workers < 1:
            raise PreconditionError("--workers must be at least 1, got {workers}".format(workers=self.workers))
        if self.format not in FORMATS:
            raise PreconditionError("--format must be one of {formats}".format(formats=', '.join(FORMATS)))


def load_config(config_file: str) -> dict:
    with open(config_file) as stream:
        config_yaml = yaml.safe_load(stream) or {}

    for section in ('defaults', 'bounds', 'long_bounds', 'families', 'logging'):
        config_yaml.setdefault(section, {})
    return config_yaml


def checkpoint_location(flag: Optional[str], scan_kind: str, base: int, bound: int) -> Optional[str]:
    """
    --checkpoint wins when it names a directory; a bare file name, or no flag at all, is placed
    in $PALINPAIR_CHECKPOINT_DIR when that is set.
    """
    directory = os.environ.get(CHECKPOINT_DIR_VARIABLE)
    if flag and (os.path.dirname(flag) or not directory):
        return flag
    if not directory:
        return None
    name = flag or '{kind}-b{base}-{bound}.json'.format(kind=scan_kind.replace('+', '-'), base=base, bound=bound)
    return os.path.join(directory, name)


def _open_output(path: Optional[str]) -> TextIO:
    return open(path, 'w', newline='') if path else sys.stdout


def _color(holds: bool) -> str:
    return colorama.Fore.GREEN if holds else colorama.Fore.RED


def _flag(value: bool) -> str:
    return 'true' if value else 'false'


def _summary(text: str, holds: bool = True) -> None:
    print('{color}{text}{reset}'.format(color=_color(holds), text=text, reset=colorama.Style.RESET_ALL),
          file=sys.stderr)


def _write(records, args, extra_fields=()) -> int:
    stream = _open_output(args.output)
    try:
        return RecordWriter(stream, args.format, extra_fields).write_all(records)
    finally:
        if stream is not sys.stdout:
            stream.close()


def scan_main(args) -> int:
    scan_kind = SCAN_COMMANDS[args.scan_command]
    if args.include_base_multiples:
        scan_kind += '+multiples'
    run_config = RunConfig(args.scan_command, args.base, args.bound, args.output, args.format,
                           checkpoint_location(args.checkpoint, scan_kind, args.base, args.bound), args.workers)
    run_config.validate()

    defaults = args.config_data['defaults']
    scan = make_scan(scan_kind, run_config.base, run_config.bound,
                     table_limit=int(defaults.get('reversal_table_limit', DEFAULT_TABLE_LIMIT)))
    checkpointer = Checkpointer(run_config.checkpoint_path) if run_config.checkpoint_path else None
    log.info("Scanning %s in base %d up to %d with %d worker(s)", scan.scan_kind, scan.base, scan.bound, run_config.workers)
    runner = ScanRunner(scan, run_config.workers, checkpointer,
                        checkpoint_every=float(defaults.get('checkpoint_every', 30)),
                        progress=args.progress,
                        progress_interval=float(defaults.get('progress_interval', 60)))
    records = runner.run()
    _write(records, args, scan.extra_fields)

    counterexamples = [record for record in records if scan.is_counterexample(record)]
    _summary("{kind} base {base} bound {bound}: {count} record(s), {found} counterexample(s)".format(
        kind=scan.scan_kind, base=scan.base, bound=scan.bound, count=len(records), found=len(counterexamples)),
        holds=not counterexamples)
    if args.scan_command == 'reversal-mult':
        _summary("base condition (even, base + 1 square free): {verdict}".format(
            verdict=_flag(base_condition_check(scan.base))), holds=base_condition_check(scan.base))
    return EXIT_FOUND if counterexamples else EXIT_OK


def families_main(args) -> int:
    if args.params and not args.family:
        raise PreconditionError("--params needs --family")
    tags = [canonical_tag(args.family)] if args.family else list(FAMILIES)
    variants = VARIANTS if args.variant == 'both' else [args.variant]
    records = []
    for tag in tags:
        grid_text = args.params or args.config_data['families'].get(tag)
        if not grid_text:
            raise PreconditionError("No --params given and no default grid for family {tag}".format(tag=tag))
        for params in expand_grid(tag, parse_grid(grid_text), variants):
            records.append(family_record(params))
    _write(records, args, CONSTRUCTION_FIELDS)
    _summary("{count} family member(s) generated and verified".format(count=len(records)))
    return EXIT_OK


def repunit_main(args) -> int:
    factors = repunit_factorization(args.n, args.base)
    product_ok = fold_product(factors) == repunit(2 ** args.n, args.base)
    splits = enumerate_repunit_splits(args.n, args.base) if args.n >= 2 else []
    records = split_records(splits)
    _write(records, args, CONSTRUCTION_FIELDS)

    _summary("factors: {factors}".format(factors=', '.join(str(f) for f in factors)), holds=product_ok)
    if args.n >= 2:
        bound = split_count_formula(args.n)
        all_polynomial = all(record.polynomial for record in records)
        _summary("M = {bound}".format(bound=bound))
        _summary("{count} split(s), all polynomial: {verdict}".format(
            count=len(splits), verdict=_flag(all_polynomial)), holds=all_polynomial and len(splits) >= bound)
    return EXIT_OK


def check_main(args) -> int:
    a, b = parse(args.a, args.base), parse(args.b, args.base)
    verdict = pair_verdict(a, b)
    product = multiply(a, b)
    a_palindrome, b_palindrome = is_palindrome(a), is_palindrome(b)

    main_counterexample = verdict.palindromic and not verdict.polynomial and not a_palindrome and not b_palindrome
    reversal_counterexample = b == reverse(a) and is_palindrome(product) and not verdict.polynomial
    short = short_product_check(a) if b == reverse(a) else None

    out = _open_output(args.output)
    try:
        print("{a} x {b} = {c} (base {base})".format(a=a, b=b, c=product, base=args.base), file=out)
        rows = [
            ('polynomial', verdict.polynomial),
            ('palindromic', verdict.palindromic),
            ('additive', verdict.additive),
            ('product palindrome', is_palindrome(product)),
            ('a palindrome', a_palindrome),
            ('b palindrome', b_palindrome),
        ]
        for name, value in rows:
            print('{name:<20}{color}{value}{reset}'.format(
                name=name, color=_color(value), value=_flag(value), reset=colorama.Style.RESET_ALL), file=out)
        if verdict.first_carry_position is not None:
            print('{name:<20}position {position}, coefficient {coefficient}'.format(
                name='first carry', position=verdict.first_carry_position,
                coefficient=verdict.witness_coefficient), file=out)
        if short is not None and short.applicable:
            print('{name:<20}{color}{value}{reset}'.format(
                name='short product', color=_color(short.holds), value='holds' if short.holds else 'violated',
                reset=colorama.Style.RESET_ALL), file=out)

        trace = carry_trace(a, b)
        print('{:<6}{:>12}{:>8}{:>12}'.format('i', 'sigma', 'digit', 'carry in'), file=out)
        for i, (sigma, digit) in enumerate(zip(trace.sigma, trace.reduced)):
            print('{:<6}{:>12}{:>8}{:>12}'.format(i, sigma, digit, trace.gamma[i]), file=out)
    finally:
        if out is not sys.stdout:
            out.close()

    if main_counterexample or reversal_counterexample:
        _summary("counterexample: {which}".format(which=', '.join(
            name for name, found in (('palindromic non-polynomial pair of non-palindromes', main_counterexample),
                                     ('palindromic a x reverse(a) without polynomial pair', reversal_counterexample))
            if found)), holds=False)
        return EXIT_FOUND
    return EXIT_OK


def oeis_main(args) -> int:
    with open(args.bfile) as f:
        table = parse_bfile(f.read(), SEQUENCES[args.seq])
    diffs = crosscheck(table, args.seq, args.bound, args.base, args.workers)

    out = _open_output(args.output)
    try:
        for diff in diffs:
            print(diff.to_json(), file=out)
    finally:
        if out is not sys.stdout:
            out.close()

    _summary("{id}: {count} b-file entries, {diffs} diff(s)".format(
        id=table.sequence_id, count=len(table.entries), diffs=len(diffs)), holds=not diffs)
    if args.seq == 'a062936':
        violations = digit_square_violations(table, args.base)
        _summary("digit square sum above {limit}: {count} value(s)".format(limit=args.base - 1, count=len(violations)),
                 holds=not violations)
    elif args.seq == 'a002778':
        report = palindromic_square_subset(min(args.bound, table.values[-1] if table.entries else args.bound),
                                           args.base)
        _summary("carry-free palindromic squares missing: {count}, inclusion strict: {strict}".format(
            count=len(report.violations), strict=_flag(report.strict)), holds=not report.violations)
    return EXIT_FOUND if diffs else EXIT_OK


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=DEFAULT_CONFIG, help="Specify your own configuration file")
    common.add_argument("--output", help="Write records to this file instead of standard output")
    common.add_argument("--format", choices=FORMATS, help="Record format (default from config: csv)")
    common.add_argument("--workers", type=int, help="Worker processes for scans")
    common.add_argument("--progress", action="store_true", default=False, help="Show a progress bar on stderr")
    common.add_argument("--verbose", action="store_true", default=False, help="Log at INFO")
    common.add_argument("--debug", action="store_true", default=False, help="Log at DEBUG")
    return common


def _scan_parser(subparsers, name: str, common, help_text: str):
    parser = subparsers.add_parser(name, parents=[common], help=help_text, aliases=COMMAND_ALIASES.get(name, []))
    parser.add_argument("--base", type=int, help="Numeral base (default 10)")
    parser.add_argument("--bound", type=int, help="Search bound (default from config)")
    parser.add_argument("--long", action="store_true", default=False, help="Use the long bound from config")
    parser.add_argument("--checkpoint", help="Checkpoint file; an existing one is resumed")
    if name in PAIR_SCAN_COMMANDS:
        parser.add_argument("--include-base-multiples", action="store_true", default=False,
                            help="Also scan operands divisible by the base")
    parser.set_defaults(func=scan_main, scan_command=name, include_base_multiples=False)
    return parser


def build_parser() -> ArgumentParser:
    common = _common_parser()
    parser = ArgumentParser(prog='palinpair', description="Palindromic and polynomial pairs of integers")
    subparsers = parser.add_subparsers(dest='command', parser_class=ArgumentParser)
    subparsers.required = True

    _scan_parser(subparsers, 'palindromic-scan', common, 'Palindromic pairs that are not polynomial')
    _scan_parser(subparsers, 'polynomial-scan', common, 'Polynomial pairs of non-palindromes')
    _scan_parser(subparsers, 'conjecture-main', common, 'Palindromic non-polynomial pairs of non-palindromes')
    _scan_parser(subparsers, 'reversal-mult', common, 'Values a with a x reverse(a) a palindrome')

    families_parser = subparsers.add_parser('families', parents=[common], help='Generate counterexample families')
    families_parser.add_argument("--family", choices=list(FAMILIES) + list(FAMILY_ALIASES),
                                 help="Family tag (default: all)")
    families_parser.add_argument("--params", help='Parameter ranges, e.g. "k=1..5 j=0..3"')
    families_parser.add_argument("--variant", choices=VARIANTS + ['both'], default='both',
                                 help="Zero run of the base2 family: 2l-1 (minus) or 2l+1 (plus)")
    families_parser.set_defaults(func=families_main)

    repunit_parser = subparsers.add_parser('repunit', parents=[common], help='Repunit factorization and splits')
    repunit_parser.add_argument("--n", type=int, required=True, help="Split repunit(2**n)")
    repunit_parser.add_argument("--base", type=int, help="Numeral base (default 10)")
    repunit_parser.set_defaults(func=repunit_main)

    check_parser = subparsers.add_parser('check', parents=[common], help='All predicates for one pair')
    check_parser.add_argument("--a", required=True, help="First numeral, in the given base")
    check_parser.add_argument("--b", required=True, help="Second numeral, in the given base")
    check_parser.add_argument("--base", type=int, help="Numeral base (default 10)")
    check_parser.set_defaults(func=check_main)

    oeis_parser = subparsers.add_parser('oeis', parents=[common], help='Cross-check an OEIS b-file')
    oeis_parser.add_argument("--seq", choices=list(SEQUENCES), required=True, help="Sequence to regenerate")
    oeis_parser.add_argument("--bfile", required=True, help="Local b-file path")
    oeis_parser.add_argument("--base", type=int, help="Numeral base (default 10)")
    oeis_parser.add_argument("--bound", type=int, help="Compare values up to this bound")
    oeis_parser.set_defaults(func=oeis_main)

    return parser


def _apply_config(args, parser: ArgumentParser) -> None:
    try:
        args.config_data = load_config(args.config)
    except (OSError, yaml.YAMLError) as e:
        parser.error("cannot read config {config}: {error}".format(config=args.config, error=e))

    defaults = args.config_data['defaults']
    if args.format is None:
        args.format = defaults.get('format', 'csv')
    if args.workers is None:
        args.workers = int(defaults.get('workers', 1))
    if getattr(args, 'base', 0) is None:
        args.base = int(defaults.get('base', 10))
    if args.func in (scan_main, oeis_main):
        if args.bound is None:
            key = 'oeis' if args.func is oeis_main else args.scan_command
            bounds = args.config_data['bounds']
            if getattr(args, 'long', False):
                bounds = args.config_data['long_bounds']
            if key not in bounds:
                parser.error("no --bound given and no default bound for {command}".format(command=key))
            args.bound = int(bounds[key])


def _configure_logging(args) -> None:
    logging_config = args.config_data['logging']
    level = logging_config.get('level', 'WARNING')
    if args.verbose:
        level = 'INFO'
    if args.debug:
        level = 'DEBUG'
    logging.basicConfig(format=logging_config.get('format', '%(asctime)s %(levelname)s %(message)s'),
                        level=level, stream=sys.stderr)
    logging.getLogger().setLevel(level)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _apply_config(args, parser)
    _configure_logging(args)

    try:
        return args.func(args)
    except PalinpairError as e:
        print("palinpair: error: {error}".format(error=e), file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print("palinpair: error: {error}".format(error=e), file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    colorama.init()
    sys.exit(main())
