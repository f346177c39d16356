#!/usr/bin/env python
# encoding: utf-8

"""Run reports and the benchmark grid.

A bench run generates one D-string per `(g, S, L)` setting, extracts a member,
diverges it, aligns it back, and checks the alignment's events against what
the divergence should produce.

"""

from .alignment import DELETION, INSERTION, MATCH, MISMATCH, Penalties
from .simgen import (
  SimSpec, extract_member, generate_dstring, mutate_indels, mutate_snps,
)
from .util import DsaError, VerificationError, digest, map_async
from .wavefront import dwf_align
from collections import namedtuple
import json
import logging as lg
import sys
import time

try:
  import resource
except ImportError:
  resource = None # Not available on Windows.

import psutil

_logger = lg.getLogger(__name__)

NONE = 'none'
SNP = 'snp'
INDEL = 'indel'

#: `(g, S, L)` settings of the published experiments.
DEFAULT_GRID = (
  (0.01, 2, 1),
  (0.01, 5, 4),
  (0.1, 2, 1),
  (0.1, 5, 4),
  (0.2, 2, 1),
)

#: Divergences applied to each D-string's member.
DEFAULT_DIVERGENCES = ((NONE, 0), (SNP, 0.001), (SNP, 0.01), (INDEL, 0.001))

#: Minimum distance between two indels, keeping each one a separate gap.
INDEL_SPACING = 32


def peak_memory():
  """Peak resident set size of this process in kilobytes, `None` if unknown."""
  if resource is not None:
    usage = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    return usage // 1024 if sys.platform == 'darwin' else usage
  info = psutil.Process().memory_info()
  peak = getattr(info, 'peak_wset', None)
  return None if peak is None else peak // 1024


class RunReport(object):

  """Summary of one alignment run.

  :param name: Run identifier.
  :param distance: Alignment distance.
  :param counts: Event summary, mapping `M`, `X`, `I`, `D` and `G` to counts.
  :param cigar: Run-length event string.
  :param work: Offset updates performed.
  :param digests: SHA-1 digests of the inputs, keyed by `dstring` and
    `pattern`.
  :param seeds: Seeds used to produce the inputs, if any.
  :param wall_time: Alignment time in seconds, if measured.
  :param peak_memory: Peak resident memory in kilobytes, if measured.
  :param oracle_distance: Distance found by the oracle, if run.
  :param total_error: Absolute difference between observed and expected
    events, when the divergence determines them.
  :param passed: Whether expectations held, `None` if there were none.
  :param failures: Descriptions of failed expectations.

  """

  fields = (
    'name', 'distance', 'counts', 'cigar', 'work', 'digests', 'seeds',
    'wall_time', 'peak_memory', 'oracle_distance', 'total_error', 'passed',
    'failures',
  )

  def __init__(self, name, distance, counts, cigar, work, digests, seeds=None,
    wall_time=None, peak_memory=None, oracle_distance=None, total_error=None,
    passed=None, failures=None):
    self.name = name
    self.distance = distance
    self.counts = dict(counts)
    self.cigar = cigar
    self.work = work
    self.digests = dict(digests)
    self.seeds = dict(seeds or {})
    self.wall_time = wall_time
    self.peak_memory = peak_memory
    self.oracle_distance = oracle_distance
    self.total_error = total_error
    self.passed = passed
    self.failures = list(failures or [])

  def __repr__(self):
    return '<RunReport(name={!r}, distance={})>'.format(
      self.name, self.distance
    )

  def __eq__(self, other):
    return isinstance(other, RunReport) and self.to_dict() == other.to_dict()

  def __ne__(self, other):
    return not self == other

  @classmethod
  def from_result(cls, name, result, ds, pattern, **kwargs):
    """Build a report from an :class:`~dsalign.alignment.AlignmentResult`."""
    return cls(
      name=name,
      distance=result.distance,
      counts=result.counts,
      cigar=result.cigar,
      work=result.work,
      digests={'dstring': digest(str(ds)), 'pattern': digest(pattern)},
      **kwargs
    )

  @classmethod
  def from_dict(cls, obj):
    """Inverse of :meth:`to_dict`."""
    return cls(**dict((field, obj.get(field)) for field in cls.fields))

  def to_dict(self):
    """JSON-serializable dictionary."""
    return dict((field, getattr(self, field)) for field in self.fields)

  def to_json(self):
    """Deterministic JSON encoding."""
    return json.dumps(self.to_dict(), sort_keys=True, indent=2)

  def summary(self):
    """Event line, for example `d=1  4M 1X 0I 0D 0G`."""
    counts = self.counts
    return 'd={}  {}M {}X {}I {}D {}G'.format(
      self.distance, counts[MATCH], counts[MISMATCH], counts[INSERTION],
      counts[DELETION], counts['G'],
    )


class BenchCell(namedtuple('BenchCell', ['g', 'S', 'L', 'divergence', 'rate'])):

  """One cell of the bench grid."""

  __slots__ = ()

  @property
  def key(self):
    """Readable identifier, stable across runs."""
    label = self.divergence
    if self.divergence != NONE:
      label = '{}={:g}%'.format(self.divergence, 100 * self.rate)
    return 'g={:g}%,S={},L={},{}'.format(100 * self.g, self.S, self.L, label)


def parse_grid(text):
  """Parse `(g, S, L)` settings, for example `0.01:2:1,0.1:5:4`."""
  grid = []
  for part in text.split(','):
    try:
      g, S, L = part.split(':')
      grid.append((float(g), int(S), int(L)))
    except ValueError:
      raise DsaError('Invalid grid cell: %r.', part)
  return grid


def parse_divergences(text):
  """Parse divergences, for example `none,snp:0.001,indel:0.001`."""
  divergences = []
  for part in text.split(','):
    kind, _, rate = part.partition(':')
    if kind == NONE and not rate:
      divergences.append((NONE, 0))
      continue
    if kind not in (SNP, INDEL):
      raise DsaError('Invalid divergence: %r.', part)
    try:
      divergences.append((kind, float(rate)))
    except ValueError:
      raise DsaError('Invalid divergence rate: %r.', part)
  return divergences


def check_expectations(counts, distance, width, pen, snps=None, indels=None):
  """Compare alignment events with the divergence applied to the pattern.

  :param counts: Event summary.
  :param distance: Alignment distance.
  :param width: Width of the aligned D-string.
  :param pen: :class:`~dsalign.alignment.Penalties`.
  :param snps: Substitution :class:`~dsalign.simgen.Mutation`, if any.
  :param indels: Indel :class:`~dsalign.simgen.Mutation`, if any.

  Returns the total error (`None` when indels are present) and a list of
  failure messages.

  """
  failures = []
  changed = snps.changed if snps else 0
  events = indels.event_count if indels else 0
  if events:
    if changed == 0 and counts[MISMATCH]:
      failures.append('{} mismatches without substitutions'.format(
        counts[MISMATCH]
      ))
    if changed == 0 and counts['G'] != events:
      failures.append('{} gaps for {} indels'.format(counts['G'], events))
    return None, failures
  if counts[INSERTION] or counts[DELETION]:
    failures.append('gaps without indels')
  if counts[MISMATCH] > changed:
    failures.append('{} mismatches for {} substitutions'.format(
      counts[MISMATCH], changed
    ))
  if counts[MATCH] != width - counts[MISMATCH]:
    failures.append('{} matches for width {}'.format(counts[MATCH], width))
  if distance != pen.x * counts[MISMATCH]:
    failures.append('distance {} is not {} mismatches'.format(
      distance, counts[MISMATCH]
    ))
  error = abs(counts[MISMATCH] - changed) + counts[INSERTION] + counts[DELETION]
  return error, failures


def run_cell(cell, ds, width, seed, pen, timing=False, index=0):
  """Run one bench cell.

  :param cell: :class:`BenchCell`.
  :param ds: D-string generated for the cell's `(g, S, L)` setting.
  :param width: Width of the D-string.
  :param seed: Seed used to generate the D-string.
  :param pen: :class:`~dsalign.alignment.Penalties`.
  :param timing: Measure wall time and peak memory.
  :param index: Position of the cell in the grid. With `base = seed + 3 *
    index`, the member uses `base + 1`, substitutions `base + 2` and indels
    `base + 3`, so that no two cells share a pattern.

  """
  base = seed + 3 * index
  seeds = {'dstring': seed, 'member': base + 1}
  pattern = extract_member(ds, base + 1)
  snps = indels = None
  if cell.divergence == SNP:
    seeds['snps'] = base + 2
    snps = mutate_snps(pattern, cell.rate, base + 2)
    pattern = snps.pattern
  elif cell.divergence == INDEL:
    seeds['indels'] = base + 3
    indels = mutate_indels(pattern, cell.rate, base + 3, spacing=INDEL_SPACING)
    pattern = indels.pattern
  start = time.time()
  result = dwf_align(ds, pattern, pen)
  elapsed = time.time() - start
  failures = []
  try:
    result.check(ds, pattern, pen)
  except VerificationError as err:
    failures.append(err.message)
  error, mismatches = check_expectations(
    result.counts, result.distance, width, pen, snps=snps, indels=indels
  )
  failures.extend(mismatches)
  report = RunReport.from_result(
    cell.key, result, ds, pattern,
    seeds=seeds,
    wall_time=elapsed if timing else None,
    peak_memory=peak_memory() if timing else None,
    total_error=error,
    passed=not failures,
    failures=failures,
  )
  _logger.info('Ran cell %s: %s.', cell.key, report.summary())
  return report


def run_bench(grid=DEFAULT_GRID, divergences=DEFAULT_DIVERGENCES, width=10000,
  seed=1, pen=None, threads=1, timing=False):
  """Run the bench grid.

  :param grid: Sequence of `(g, S, L)` settings.
  :param divergences: Sequence of `(kind, rate)` divergences.
  :param width: Width of every generated D-string.
  :param seed: Base seed.
  :param pen: :class:`~dsalign.alignment.Penalties`.
  :param threads: Number of cells run concurrently.
  :param timing: Measure wall time and peak memory.

  Returns reports in grid order.

  """
  if pen is None:
    pen = Penalties()
  dstrings = {}
  for g, S, L in grid:
    if (g, S, L) not in dstrings:
      dstrings[(g, S, L)] = generate_dstring(SimSpec(width, g, S, L, seed))
  cells = [
    BenchCell(g, S, L, kind, rate)
    for g, S, L in grid
    for kind, rate in divergences
  ]

  def _run(indexed):
    index, cell = indexed
    ds = dstrings[(cell.g, cell.S, cell.L)]
    return run_cell(cell, ds, width, seed, pen, timing=timing, index=index)

  reports = map_async(threads, _run, list(enumerate(cells)))
  failed = sum(1 for report in reports if not report.passed)
  _logger.info('Ran %s cells, %s failed.', len(reports), failed)
  return reports


def format_table(reports):
  """Render reports as a plain text table, one line per cell."""
  header = ('cell', 'd', 'error', 'events', 'status')
  rows = [header]
  for report in reports:
    error = '-' if report.total_error is None else str(report.total_error)
    events = report.summary().split('  ', 1)[1]
    rows.append((
      report.name, str(report.distance), error, events,
      'pass' if report.passed else 'FAIL',
    ))
  widths = [max(len(row[index]) for row in rows) for index in range(5)]
  return '\n'.join(
    '  '.join(value.ljust(size) for value, size in zip(row, widths)).rstrip()
    for row in rows
  )
