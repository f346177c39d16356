#!/usr/bin/env python
# encoding: utf-8

"""Alignment scores and events.

Events are kept as run-length lists of `(op, length)` pairs over four
operations:

+ `M`, a match: consumes one text and one pattern character.
+ `X`, a mismatch: same, with differing characters.
+ `D`, a deletion: consumes one text character.
+ `I`, an insertion: consumes one pattern character.

"""

from .util import DsaError, VerificationError
from collections import namedtuple
from itertools import groupby
import logging as lg

_logger = lg.getLogger(__name__)

MATCH = 'M'
MISMATCH = 'X'
INSERTION = 'I'
DELETION = 'D'

OPS = (MATCH, MISMATCH, INSERTION, DELETION)


class Penalties(namedtuple('Penalties', ['a', 'x', 'o', 'e'])):

  """Alignment penalties.

  :param a: Match score. Must be 0.
  :param x: Mismatch score, at least 1.
  :param o: Gap opening score.
  :param e: Gap extension score, at least 1.

  A gap of length `k` costs `o + k * e`.

  """

  __slots__ = ()

  def __new__(cls, a=0, x=1, o=2, e=1):
    values = (a, x, o, e)
    if any(not isinstance(value, int) or value < 0 for value in values):
      raise DsaError('Penalties must be non-negative integers: %r.', values)
    if a:
      raise DsaError('Unsupported non-zero match score: %s.', a)
    if x < 1 or e < 1:
      raise DsaError('Mismatch and extension scores must be positive.')
    return super(Penalties, cls).__new__(cls, a, x, o, e)

  @classmethod
  def from_string(cls, text):
    """Parse comma-separated scores, for example `0,1,2,1`."""
    try:
      values = [int(part) for part in text.split(',')]
    except ValueError:
      raise DsaError('Invalid penalties: %r.', text)
    if len(values) != 4:
      raise DsaError('Expected four penalties, got %r.', text)
    return cls(*values)

  def gap(self, length):
    """Cost of a gap of a given length."""
    return self.o + length * self.e

  def to_string(self):
    """Inverse of :meth:`from_string`."""
    return ','.join(str(value) for value in self)


def compress(ops):
  """Run-length encode a sequence of single operations."""
  return [(op, len(list(group))) for op, group in groupby(ops)]


def expand(events):
  """Inverse of :func:`compress`."""
  return ''.join(op * length for op, length in events)


def merge(events):
  """Merge adjacent runs of the same operation and drop empty runs."""
  merged = []
  for op, length in events:
    if not length:
      continue
    if merged and merged[-1][0] == op:
      merged[-1] = (op, merged[-1][1] + length)
    else:
      merged.append((op, length))
  return merged


def to_cigar(events):
  """CIGAR-like string, for example `4M1X2D`."""
  return ''.join('{}{}'.format(length, op) for op, length in events)


def count_events(events):
  """Event summary.

  Returns a dictionary with the total length of each operation's runs, along
  with `G`, the number of maximal gap runs.

  """
  counts = dict((op, 0) for op in OPS)
  counts['G'] = 0
  for op, length in merge(events):
    counts[op] += length
    if op in (INSERTION, DELETION):
      counts['G'] += 1
  return counts


def score_events(events, pen):
  """Distance implied by a list of events.

  :param events: Run-length events.
  :param pen: :class:`Penalties`.

  """
  score = 0
  for op, length in merge(events):
    if op == MATCH:
      score += pen.a * length
    elif op == MISMATCH:
      score += pen.x * length
    else:
      score += pen.gap(length)
  return score


def replay(events, text, pattern):
  """Check that events align a text with a pattern.

  :param events: Run-length events.
  :param text: Linear text, consumed by matches, mismatches and deletions.
  :param pattern: Pattern, consumed by matches, mismatches and insertions.

  Returns `None` if the events are consistent with both strings, otherwise a
  message describing the first discrepancy.

  """
  u = v = 0
  for op, length in events:
    if op in (MATCH, MISMATCH):
      if u + length > len(text) or v + length > len(pattern):
        return 'Run {}{} overflows at ({}, {}).'.format(length, op, u, v)
      for offset in range(length):
        equal = text[u + offset] == pattern[v + offset]
        if equal != (op == MATCH):
          return 'Invalid {} at ({}, {}).'.format(op, u + offset, v + offset)
      u += length
      v += length
    elif op == DELETION:
      u += length
    elif op == INSERTION:
      v += length
    else:
      return 'Unknown operation {!r}.'.format(op)
  if (u, v) != (len(text), len(pattern)):
    return 'Events end at ({}, {}) instead of ({}, {}).'.format(
      u, v, len(text), len(pattern)
    )
  return None


class AlignmentResult(object):

  """Optimal alignment of a pattern against a D-string.

  :param distance: Alignment score.
  :param events: Run-length list of `(op, length)` pairs, in forward order.
  :param variant_path: Chosen variant index for each letter of the D-string.
  :param work: Number of offset updates performed while aligning.

  """

  def __init__(self, distance, events, variant_path, work=0):
    self.distance = distance
    self.events = merge(events)
    self.variant_path = tuple(variant_path)
    self.work = work

  def __repr__(self):
    return '<AlignmentResult(distance={}, cigar={!r})>'.format(
      self.distance, self.cigar
    )

  @property
  def counts(self):
    """Event summary, see :func:`count_events`."""
    return count_events(self.events)

  @property
  def gap_opens(self):
    """Number of maximal insertion or deletion runs."""
    return self.counts['G']

  @property
  def cigar(self):
    """Run-length event string."""
    return to_cigar(self.events)

  def member(self, ds):
    """Member of the D-string selected by the variant path.

    :param ds: The aligned :class:`~dsalign.dstring.DString`.

    """
    return ''.join(
      letter.variants[index]
      for letter, index in zip(ds.letters, self.variant_path)
    )

  def check(self, ds, pattern, pen):
    """Verify this result against its inputs.

    :param ds: Aligned D-string.
    :param pattern: Aligned pattern.
    :param pen: :class:`Penalties` used.

    Raises :class:`~dsalign.util.VerificationError` unless lengths add up,
    events score to the distance, and replaying them against the member
    selected by the variant path reproduces both strings.

    """
    counts = self.counts
    if counts[MATCH] + counts[MISMATCH] + counts[DELETION] != ds.width:
      raise VerificationError('Events do not cover the text: %s.', self.cigar)
    if counts[MATCH] + counts[MISMATCH] + counts[INSERTION] != len(pattern):
      raise VerificationError(
        'Events do not cover the pattern: %s.', self.cigar
      )
    score = score_events(self.events, pen)
    if score != self.distance:
      raise VerificationError(
        'Events score %s instead of %s.', score, self.distance
      )
    if len(self.variant_path) != len(ds.letters):
      raise VerificationError('Incomplete variant path.')
    member = self.member(ds)
    if not ds.contains(member):
      raise VerificationError('Variant path does not select a member.')
    message = replay(self.events, member, pattern)
    if message:
      raise VerificationError(message)
