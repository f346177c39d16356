#!/usr/bin/env python
# encoding: utf-8

"""Random D-strings and pattern divergence.

Every function here is a pure function of its seed. Randomness comes from
`numpy`'s PCG64 bit generator so that identical seeds reproduce identical
outputs across platforms.

"""

from .dstring import (
  DEFAULT_ALPHABET, DString, DegenerateLetter, check_alphabet,
)
from .util import DsaError, digest
from collections import namedtuple
import logging as lg
import numpy as np

_logger = lg.getLogger(__name__)

SNP = 'snp'
INSERTION = 'insertion'
DELETION = 'deletion'

#: Longest insertion or deletion drawn by :func:`mutate_indels`.
MAX_INDEL_LENGTH = 3


def make_rng(seed):
  """Seeded random generator.

  :param seed: Non-negative integer.

  """
  if not isinstance(seed, (int, np.integer)) or seed < 0:
    raise DsaError('Invalid seed: %r.', seed)
  return np.random.Generator(np.random.PCG64(seed))


def _symbols(alphabet):
  """Alphabet characters, deduplicated in their original order."""
  check_alphabet(alphabet)
  symbols = []
  for char in alphabet:
    if char not in symbols:
      symbols.append(char)
  return np.array(symbols)


def _random_string(rng, symbols, length):
  return ''.join(symbols[rng.integers(len(symbols), size=length)])


def _check_rate(rate):
  if not 0 <= rate <= 1:
    raise DsaError('Rate out of range [0, 1]: %s.', rate)


class SimSpec(namedtuple('SimSpec', ['width', 'g', 'S', 'L', 'seed'])):

  """D-string generator parameters.

  :param width: Width W of the generated D-string.
  :param g: Number of degenerate letters, as a fraction of the width.
  :param S: Maximum number of variants per degenerate letter, at least 2.
  :param L: Maximum variant length.
  :param seed: Random seed.

  """

  __slots__ = ()

  def __new__(cls, width, g, S=2, L=1, seed=0):
    if width < 1:
      raise DsaError('Invalid width: %s.', width)
    _check_rate(g)
    if S < 2 or L < 1:
      raise DsaError('Invalid variant bounds: S=%s, L=%s.', S, L)
    if g * L > 1:
      raise DsaError('Degenerate letters do not fit: g=%s, L=%s.', g, L)
    return super(SimSpec, cls).__new__(cls, width, g, S, L, seed)

  @property
  def letter_count(self):
    """Number of degenerate letters to insert."""
    return int(round(self.g * self.width))


_DivergenceSpec = namedtuple(
  'DivergenceSpec', ['snp_rate', 'indel_rate', 'seed']
)


class DivergenceSpec(_DivergenceSpec):

  """Pattern divergence parameters.

  :param snp_rate: Substitutions, as a fraction of the pattern's length.
  :param indel_rate: Insertion and deletion events, as a fraction of the
    pattern's length.
  :param seed: Random seed. Substitutions use it directly, indels use the
    following integer.

  """

  __slots__ = ()

  def __new__(cls, snp_rate=0, indel_rate=0, seed=0):
    _check_rate(snp_rate)
    _check_rate(indel_rate)
    return super(DivergenceSpec, cls).__new__(cls, snp_rate, indel_rate, seed)

  def apply(self, pattern, alphabet=DEFAULT_ALPHABET, spacing=1):
    """Apply substitutions, then indels, to a pattern.

    Returns the two :class:`Mutation` records. Offsets of the indel record
    refer to the substituted pattern.

    """
    snps = mutate_snps(pattern, self.snp_rate, self.seed, alphabet)
    indels = mutate_indels(
      snps.pattern, self.indel_rate, self.seed + 1, alphabet, spacing
    )
    return snps, indels


def _place(rng, total, footprints, spacing):
  """Draw start offsets for non-overlapping windows.

  :param rng: Random generator.
  :param total: Length of the sequence holding the windows.
  :param footprints: Length of each window, in order.
  :param spacing: Minimum number of free positions between two windows.

  Placements are uniform among all valid ones.

  """
  count = len(footprints)
  if not count:
    return np.zeros(0, dtype=np.int64)
  padding = spacing * (count - 1)
  slots = total - int(np.sum(footprints)) - padding + 1
  if slots < count:
    raise DsaError('Cannot place %s windows in %s positions.', count, total)
  cuts = np.sort(rng.choice(slots, size=count, replace=False))
  before = np.concatenate(([0], np.cumsum(footprints)[:-1]))
  return cuts + before + spacing * np.arange(count)


def generate_dstring(sim, alphabet=DEFAULT_ALPHABET):
  """Generate a random D-string.

  :param sim: :class:`SimSpec`.
  :param alphabet: Characters to draw from.

  A uniform random string of width `sim.width` is drawn first. Windows of
  random length in `[1, L]` are then turned into degenerate letters, never
  adjacent to one another. Each has between 2 and `S` variants, the first one
  being the window's original content. When the alphabet is too small to
  provide that many distinct variants of a window's length, the variant count
  is lowered accordingly.

  """
  symbols = _symbols(alphabet)
  rng = make_rng(sim.seed)
  base = _random_string(rng, symbols, sim.width)
  count = sim.letter_count
  lengths = rng.integers(1, sim.L + 1, size=count)
  starts = _place(rng, sim.width, lengths, 1)
  solids = dict((char, DegenerateLetter([char])) for char in symbols)
  letters = []
  pos = 0
  for start, ell in zip(starts, lengths):
    letters.extend(solids[char] for char in base[pos:start])
    original = base[start:start + ell]
    s = min(int(rng.integers(2, sim.S + 1)), len(symbols) ** int(ell))
    if s < 2:
      raise DsaError('Alphabet %r too small for degenerate letters.', alphabet)
    variants = [original]
    while len(variants) < s:
      variant = _random_string(rng, symbols, ell)
      if variant not in variants:
        variants.append(variant)
    letters.append(DegenerateLetter(variants))
    pos = start + ell
  letters.extend(solids[char] for char in base[pos:])
  ds = DString(letters)
  _logger.info('Generated %r from %r.', ds, sim)
  return ds


def extract_member(ds, seed):
  """Pick a member of a D-string, uniformly per degenerate letter.

  :param ds: :class:`~dsalign.dstring.DString`.
  :param seed: Random seed.

  """
  rng = make_rng(seed)
  return ''.join(
    letter.variants[rng.integers(letter.s)] if letter.s > 1
    else letter.variants[0]
    for letter in ds.letters
  )


class Mutation(namedtuple('Mutation', ['pattern', 'events'])):

  """Mutated pattern along with the changes applied to it.

  :param pattern: Mutated pattern.
  :param events: List of dictionaries, ordered by `offset`, the 0-based
    position of the change in the input pattern. Each also holds the event's
    `kind` and the `original` and `replacement` strings.

  """

  __slots__ = ()

  @property
  def changed(self):
    """Number of substitutions which changed a character."""
    return sum(
      1 for event in self.events
      if event['kind'] == SNP and event['original'] != event['replacement']
    )

  @property
  def event_count(self):
    """Number of insertions and deletions."""
    return sum(1 for event in self.events if event['kind'] != SNP)

  @property
  def inserted(self):
    """Total number of inserted characters."""
    return sum(
      len(event['replacement']) for event in self.events
      if event['kind'] == INSERTION
    )

  @property
  def deleted(self):
    """Total number of deleted characters."""
    return sum(
      len(event['original']) for event in self.events
      if event['kind'] == DELETION
    )

  def snp_summary(self):
    """Pattern and number of effective substitutions."""
    return self.pattern, self.changed

  def indel_summary(self):
    """Pattern, number of events, inserted and deleted characters."""
    return self.pattern, self.event_count, self.inserted, self.deleted


def mutate_snps(pattern, rate, seed, alphabet=DEFAULT_ALPHABET):
  """Substitute random characters of a pattern.

  :param pattern: Original pattern.
  :param rate: Fraction of positions to draw.
  :param seed: Random seed.
  :param alphabet: Characters to draw replacements from. A replacement may
    equal the original character.

  """
  _check_rate(rate)
  symbols = _symbols(alphabet)
  rng = make_rng(seed)
  count = int(round(rate * len(pattern)))
  offsets = np.sort(rng.choice(len(pattern), size=count, replace=False))
  codes = rng.integers(len(symbols), size=count)
  chars = list(pattern)
  events = []
  for offset, code in zip(offsets, codes):
    offset = int(offset)
    events.append({
      'kind': SNP,
      'offset': offset,
      'original': chars[offset],
      'replacement': str(symbols[code]),
    })
    chars[offset] = str(symbols[code])
  mutation = Mutation(''.join(chars), events)
  _logger.info(
    'Drew %s substitutions, %s effective.', count, mutation.changed
  )
  return mutation


def mutate_indels(pattern, rate, seed, alphabet=DEFAULT_ALPHABET, spacing=1):
  """Insert and delete short random stretches of a pattern.

  :param pattern: Original pattern.
  :param rate: Number of events, as a fraction of the pattern's length.
  :param seed: Random seed.
  :param alphabet: Characters to draw inserted bases from.
  :param spacing: Minimum number of untouched characters between two events.

  Each event is an insertion or a deletion with equal probability, of length
  uniform in `[1, 3]`. An insertion at `offset` goes right before the
  pattern's character at that offset.

  """
  _check_rate(rate)
  if spacing < 1:
    raise DsaError('Invalid spacing: %s.', spacing)
  symbols = _symbols(alphabet)
  rng = make_rng(seed)
  count = int(round(rate * len(pattern)))
  deletions = rng.integers(2, size=count).astype(bool)
  lengths = rng.integers(1, MAX_INDEL_LENGTH + 1, size=count)
  footprints = np.where(deletions, lengths, 1)
  offsets = _place(rng, len(pattern), footprints, spacing)
  parts = []
  events = []
  pos = 0
  for offset, is_deletion, length in zip(offsets, deletions, lengths):
    offset = int(offset)
    parts.append(pattern[pos:offset])
    if is_deletion:
      original = pattern[offset:offset + length]
      events.append({
        'kind': DELETION, 'offset': offset, 'original': original,
        'replacement': '',
      })
      pos = offset + length
    else:
      inserted = _random_string(rng, symbols, length)
      parts.append(inserted)
      events.append({
        'kind': INSERTION, 'offset': offset, 'original': '',
        'replacement': inserted,
      })
      pos = offset
  parts.append(pattern[pos:])
  mutation = Mutation(''.join(parts), events)
  _logger.info(
    'Applied %s indels (%s inserted, %s deleted).',
    count, mutation.inserted, mutation.deleted
  )
  return mutation


def _surviving_changes(snps, indels):
  """Effective substitutions whose position was not removed by a deletion."""
  deleted = [
    (event['offset'], event['offset'] + len(event['original']))
    for event in indels.events
    if event['kind'] == DELETION
  ]
  return sum(
    1 for event in snps.events
    if event['original'] != event['replacement'] and not any(
      start <= event['offset'] < end for start, end in deleted
    )
  )


def truth_log(ds, pattern, member_seed, divergence, snps, indels):
  """Ground truth of a divergence run.

  :param ds: D-string the member was drawn from.
  :param pattern: Final pattern.
  :param member_seed: Seed used by :func:`extract_member`.
  :param divergence: :class:`DivergenceSpec` applied to the member.
  :param snps: Substitution :class:`Mutation`.
  :param indels: Indel :class:`Mutation`.

  Returns a JSON-serializable dictionary. Event positions are 1-based, indel
  positions referring to the substituted pattern. The `expected` entry holds
  the event counts an optimal alignment should report. Substitutions falling
  inside a deleted stretch are not counted as mismatches, and mismatches may be
  fewer still when a substitution is absorbed by another variant.

  """
  def _entries(mutation):
    return [
      {
        'kind': event['kind'],
        'position': event['offset'] + 1,
        'original': event['original'],
        'replacement': event['replacement'],
      }
      for event in mutation.events
    ]

  pristine = not snps.changed and not indels.event_count
  return {
    'dstring': {
      'digest': digest(str(ds)),
      'n': len(ds),
      'size': ds.size,
      'width': ds.width,
    },
    'pattern': {'digest': digest(pattern), 'length': len(pattern)},
    'seeds': {
      'member': member_seed,
      'snps': divergence.seed,
      'indels': divergence.seed + 1,
    },
    'snps': {
      'rate': divergence.snp_rate,
      'drawn': len(snps.events),
      'changed': snps.changed,
      'events': _entries(snps),
    },
    'indels': {
      'rate': divergence.indel_rate,
      'inserted': indels.inserted,
      'deleted': indels.deleted,
      'events': _entries(indels),
    },
    'expected': {
      'X': _surviving_changes(snps, indels),
      'I': indels.inserted,
      'D': indels.deleted,
      'G': indels.event_count,
      'distance': 0 if pristine else None,
    },
  }
