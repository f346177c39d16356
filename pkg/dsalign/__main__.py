#!/usr/bin/env python
# encoding: utf-8

"""dsalign: align strings to degenerate strings.

Usage:
  dsalign align [-v...] [-a ALPHABET] [-p PENALTIES] [-c CAP] [-o] [--timing]
                [--json | --cigar] DSTRING PATTERN
  dsalign generate [-v...] [-a ALPHABET] [-s SEED] [-S VARIANTS] [-l LENGTH]
                   WIDTH DEGENERACY OUTPUT
  dsalign mutate [-v...] [-a ALPHABET] [-s SEED] [--snps=RATE]
                 [--indels=RATE] [--spacing=SPACING] DSTRING PATTERN TRUTH
  dsalign info [-v...] [-a ALPHABET] DSTRING
  dsalign bench [-v...] [-p PENALTIES] [-s SEED] [-t THREADS] [--scale=WIDTH]
                [--grid=GRID] [--divergences=DIVERGENCES] [--timing] [--json]
  dsalign -L | -V | -h

Commands:
  align                         Align a pattern to a D-string and print the
                                distance along with its event counts.
  bench                         Generate, diverge, and align back a grid of
                                random D-strings, checking each alignment
                                against the divergence applied.
  generate                      Write a random D-string and print its length,
                                size, and width.
  info                          Print a D-string's length, size, width, and
                                number of members.
  mutate                        Extract a random member of a D-string, apply
                                substitutions then indels to it, and write the
                                resulting pattern along with a JSON truth log.

Arguments:
  DEGENERACY                    Fraction of widths turned into degenerate
                                letters.
  DSTRING                       Path to D-string file, in bracket notation.
  OUTPUT                        Path where the D-string will be written.
  PATTERN                       Path to pattern file (raw or FASTA).
  TRUTH                         Path where the truth log will be written.
  WIDTH                         Width of the generated D-string.

Options:
  -L --log                      Show path to current log file and exit.
  -S VARIANTS --max-variants=VARIANTS
                                Maximum number of variants per degenerate
                                letter. [default: 2]
  -V --version                  Show version and exit.
  -a ALPHABET --alphabet=ALPHABET
                                Alphabet of D-strings and generated
                                characters. Defaults to ACGT.
  -c CAP --member-cap=CAP       Maximum number of members enumerated by the
                                oracle. Defaults to 100000.
  -h --help                     Show this message and exit.
  -l LENGTH --max-length=LENGTH
                                Maximum variant length. [default: 1]
  -o --oracle                   Also compute the distance by enumerating all
                                members, and fail if it differs.
  -p PENALTIES --penalties=PENALTIES
                                Comma-separated match, mismatch, gap open, and
                                gap extension scores. Defaults to 0,1,2,1.
  -s SEED --seed=SEED           Random seed. [default: 1]
  -t THREADS --threads=THREADS  Number of bench cells run concurrently.
  -v --verbose                  Enable log output. Can be specified up to three
                                times (increasing verbosity each time).
  --cigar                       Print the run-length event string.
  --divergences=DIVERGENCES     Comma-separated pattern divergences, each
                                `none`, `snp:RATE`, or `indel:RATE`. Defaults
                                to none,snp:0.001,snp:0.01,indel:0.001.
  --grid=GRID                   Comma-separated `g:S:L` settings. Defaults to
                                0.01:2:1,0.01:5:4,0.1:2:1,0.1:5:4,0.2:2:1.
  --indels=RATE                 Fraction of positions starting an insertion or
                                deletion. [default: 0]
  --json                        Print JSON reports.
  --scale=WIDTH                 Width of bench D-strings. [default: 10000]
  --snps=RATE                   Fraction of positions substituted.
                                [default: 0]
  --spacing=SPACING             Minimum number of untouched characters between
                                two indels. [default: 1]
  --timing                      Record wall time and peak memory in reports.

Examples:
  dsalign generate -s 7 100000 0.01 text.dst
  dsalign mutate --snps 0.001 text.dst pattern.txt truth.json
  dsalign align -o text.dst pattern.txt
  dsalign bench --grid 0.01:2:1 --divergences none,indel:0.001

dsalign exits with return status 0 on success, 1 if an alignment fails a
verification, and 2 on invalid usage or input.

"""

from . import __version__
from .alignment import Penalties
from .config import Config, NullHandler, catch
from .dstring import load_dstring, load_pattern, save_dstring, save_pattern
from .oracle import oracle_affine
from .report import (
  DEFAULT_DIVERGENCES, DEFAULT_GRID, RunReport, format_table, parse_divergences,
  parse_grid, peak_memory, run_bench,
)
from .simgen import (
  DivergenceSpec, SimSpec, extract_member, generate_dstring, truth_log,
)
from .util import DsaError, VerificationError
from .wavefront import dwf_align
from docopt import docopt
import io
import json
import logging as lg
import os.path as osp
import sys
import time


def parse_arg(args, name, parser, separator=None):
  """Parse command line argument, raising an appropriate error on failure.

  :param args: Arguments dictionary.
  :param name: Name of option to look up.
  :param parser: Function to parse option.
  :param separator: For parsing lists.

  """
  value = args[name]
  if not value:
    return
  try:
    if separator and separator in value:
      return [parser(part) for part in value.split(separator) if part]
    else:
      return parser(value)
  except ValueError:
    raise DsaError('Invalid %r option: %r.', name, args[name])


def configure(command, args, config=None):
  """Instantiate configuration from arguments dictionary.

  :param command: Command name, used to set up the appropriate log handler.
  :param args: Arguments returned by `docopt`.
  :param config: CLI configuration, used for testing.

  If the `--log` argument is set, this method will print active file handler
  paths and exit the process.

  """
  logger = lg.getLogger()
  logger.setLevel(lg.DEBUG)
  if not config:
    levels = {0: lg.ERROR, 1: lg.WARNING, 2: lg.INFO}
    config = Config(stream_log_level=levels.get(args['--verbose'], lg.DEBUG))
  handler = config.get_log_handler(command)
  if args['--log']:
    if isinstance(handler, NullHandler):
      sys.stdout.write('No log file active.\n')
      sys.exit(1)
    else:
      sys.stdout.write('{}\n'.format(handler.baseFilename))
      sys.exit(0)
  logger.addHandler(handler)
  return config


def _write_json(obj, path):
  with io.open(path, 'w', encoding='utf-8') as writer:
    writer.write(json.dumps(obj, sort_keys=True, indent=2))
    writer.write(u'\n')


def cmd_align(dstring_path, pattern_path, pen, alphabet, oracle=False,
  member_cap=None, timing=False):
  """Align a pattern file to a D-string file.

  Returns a :class:`~dsalign.report.RunReport`. With `oracle` set, the
  distance is also computed by member enumeration and a
  :class:`~dsalign.util.VerificationError` is raised if they differ.

  """
  ds = load_dstring(dstring_path, alphabet)
  pattern = load_pattern(pattern_path, alphabet)
  start = time.time()
  result = dwf_align(ds, pattern, pen)
  elapsed = time.time() - start
  result.check(ds, pattern, pen)
  oracle_distance = None
  if oracle:
    kwargs = {'cap': member_cap} if member_cap else {}
    oracle_distance, witness = oracle_affine(ds, pattern, pen, **kwargs)
    if oracle_distance != result.distance:
      raise VerificationError(
        'Oracle distance %s differs from %s (witness: %r).',
        oracle_distance, result.distance, witness
      )
  return RunReport.from_result(
    osp.basename(pattern_path), result, ds, pattern,
    wall_time=elapsed if timing else None,
    peak_memory=peak_memory() if timing else None,
    oracle_distance=oracle_distance,
  )


def cmd_generate(width, g, S, L, seed, path, alphabet):
  """Generate a random D-string file and return its stats line."""
  ds = generate_dstring(SimSpec(width, g, S, L, seed), alphabet)
  save_dstring(ds, path)
  return 'n={} N={} W={}'.format(len(ds), ds.size, ds.width)


def cmd_mutate(dstring_path, snp_rate, indel_rate, seed, pattern_path,
  truth_path, alphabet, spacing=1):
  """Write a diverged member of a D-string file and its truth log.

  The member is drawn with `seed`, substitutions use `seed + 1` and indels
  `seed + 2`. Returns the truth log.

  """
  ds = load_dstring(dstring_path, alphabet)
  member = extract_member(ds, seed)
  divergence = DivergenceSpec(snp_rate, indel_rate, seed + 1)
  snps, indels = divergence.apply(member, alphabet, spacing)
  save_pattern(indels.pattern, pattern_path)
  truth = truth_log(ds, indels.pattern, seed, divergence, snps, indels)
  _write_json(truth, truth_path)
  return truth


def cmd_info(dstring_path, alphabet):
  """Stats line of a D-string file."""
  ds = load_dstring(dstring_path, alphabet)
  count = ds.count_members()
  return 'n={} N={} W={} members={}'.format(
    len(ds), ds.size, ds.width, 'uncountable' if count is None else count
  )


def cmd_bench(grid, divergences, width, seed, pen, threads, timing=False):
  """Run the bench grid, returning its reports."""
  return run_bench(
    grid=grid,
    divergences=divergences,
    width=width,
    seed=seed,
    pen=pen,
    threads=threads,
    timing=timing,
  )


@catch(DsaError)
def main(argv=None, config=None, stdout=None):
  """Entry point.

  :param argv: Arguments list.
  :param config: For testing.
  :param stdout: For testing.

  """
  args = docopt(__doc__, argv=argv, version=__version__)
  config = configure('dsalign', args, config)
  stdout = stdout or sys.stdout
  alphabet = args['--alphabet'] or config.get_alphabet()
  seed = parse_arg(args, '--seed', int)
  if args['--penalties']:
    pen = Penalties.from_string(args['--penalties'])
  else:
    pen = config.get_penalties()
  if args['align']:
    member_cap = parse_arg(args, '--member-cap', int)
    report = cmd_align(
      args['DSTRING'],
      args['PATTERN'],
      pen,
      alphabet,
      oracle=args['--oracle'],
      member_cap=member_cap or config.get_member_cap(),
      timing=args['--timing'],
    )
    if args['--json']:
      stdout.write('{}\n'.format(report.to_json()))
    elif args['--cigar']:
      stdout.write('{}\n'.format(report.cigar))
    else:
      stdout.write('{}\n'.format(report.summary()))
      if report.oracle_distance is not None:
        stdout.write('oracle d={}\n'.format(report.oracle_distance))
  elif args['generate']:
    stats = cmd_generate(
      parse_arg(args, 'WIDTH', int),
      parse_arg(args, 'DEGENERACY', float) or 0,
      parse_arg(args, '--max-variants', int),
      parse_arg(args, '--max-length', int),
      seed,
      args['OUTPUT'],
      alphabet,
    )
    stdout.write('{}\n'.format(stats))
  elif args['mutate']:
    truth = cmd_mutate(
      args['DSTRING'],
      parse_arg(args, '--snps', float) or 0,
      parse_arg(args, '--indels', float) or 0,
      seed,
      args['PATTERN'],
      args['TRUTH'],
      alphabet,
      spacing=parse_arg(args, '--spacing', int),
    )
    expected = truth['expected']
    stdout.write('{}X {}I {}D {}G\n'.format(
      expected['X'], expected['I'], expected['D'], expected['G']
    ))
  elif args['info']:
    stdout.write('{}\n'.format(cmd_info(args['DSTRING'], alphabet)))
  elif args['bench']:
    grid = args['--grid']
    divergences = args['--divergences']
    reports = cmd_bench(
      parse_grid(grid) if grid else DEFAULT_GRID,
      parse_divergences(divergences) if divergences else DEFAULT_DIVERGENCES,
      parse_arg(args, '--scale', int),
      seed,
      pen,
      parse_arg(args, '--threads', int) or config.get_threads(),
      timing=args['--timing'],
    )
    if args['--json']:
      stdout.write('{}\n'.format(json.dumps(
        [report.to_dict() for report in reports], sort_keys=True, indent=2
      )))
    else:
      stdout.write('{}\n'.format(format_table(reports)))
    failed = [report.name for report in reports if not report.passed]
    if failed:
      raise VerificationError('Failed bench cells: %s.', ', '.join(failed))

if __name__ == '__main__':
  main()
