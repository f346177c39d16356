#!/usr/bin/env python
# encoding: utf-8

"""Reference aligners.

These are exhaustive dynamic programs, meant to validate the wavefront aligner
on small inputs:

+ :func:`poa_align_linear` runs a partial order alignment over variant tuples,
  with a flat gap score.
+ :func:`gotoh_align` is the classic three matrix affine gap aligner for plain
  strings.
+ :func:`oracle_affine` and :func:`oracle_linear` minimize over all members of
  a D-string.

Rows of every table are filled with vectorized `numpy` operations; insertions,
which depend on the cell to their left, are resolved with a running minimum.

"""

from .alignment import DELETION, INSERTION, MATCH, MISMATCH, compress
from .util import DsaError
import logging as lg
import numpy as np

_logger = lg.getLogger(__name__)

#: Default maximum number of members enumerated by the oracles.
DEFAULT_MEMBER_CAP = 100000

_INF = np.iinfo(np.int64).max // 4


def _codes(text):
  """Integer codes of a string's characters."""
  return np.array([ord(char) for char in text], dtype=np.int64)


def _check_pattern(pattern):
  if not pattern:
    raise DsaError('Empty pattern.')


def _running_gap_min(values, step):
  """Minimum over each cell and the cells to its left, plus `step` per hop.

  Computes `out[..., j] = min over i <= j of values[..., i] + (j - i) * step`.

  """
  ramp = step * np.arange(values.shape[-1], dtype=np.int64)
  return np.minimum.accumulate(values - ramp, axis=-1) + ramp


def _linear_row(base, chars, codes, a, x, g):
  """Next row of a linear gap table.

  :param base: Predecessor row, of shape `(1, m + 1)` or `(s, m + 1)`.
  :param chars: Integer codes of the text characters of this row, one per
    variant.
  :param codes: Pattern codes.

  """
  sub = np.where(chars[:, np.newaxis] == codes[np.newaxis, :], a, x)
  row = np.broadcast_to(base + g, (len(chars), base.shape[1])).copy()
  row[:, 1:] = np.minimum(row[:, 1:], base[:, :-1] + sub)
  return _running_gap_min(row, g)


class TupleDpTable(object):

  """Partial order alignment table.

  :param rows: Number of rows, one more than the D-string's width.
  :param cols: Number of columns, one more than the pattern's length.

  Row `i > 0` holds one score per variant of the letter covering width
  `i - 1`. Row 0 is the boundary row and holds a single score per column.

  """

  def __init__(self, rows, cols):
    self.rows = rows
    self.cols = cols
    self._rows = [None] * rows

  def __repr__(self):
    return '<TupleDpTable(rows={}, cols={})>'.format(self.rows, self.cols)

  def row(self, i):
    """All scores of a row, as an array of shape `(s, cols)`."""
    return self._rows[i]

  def cell(self, i, j):
    """Tuple of scores at a given cell."""
    return tuple(int(value) for value in self._rows[i][:, j])


def poa_align_linear(ds, pattern, a, x, g):
  """Align a pattern to a D-string with a linear gap score.

  :param ds: :class:`~dsalign.dstring.DString`.
  :param pattern: Pattern string.
  :param a: Match score.
  :param x: Mismatch score.
  :param g: Score of each gap character.

  Within a letter every variant is aligned on its own; at the first column of
  a letter, each variant continues from the best of the previous row's tuple.
  Returns the distance and the filled :class:`TupleDpTable`.

  """
  _check_pattern(pattern)
  codes = _codes(pattern)
  table = TupleDpTable(ds.width + 1, len(pattern) + 1)
  row = g * np.arange(table.cols, dtype=np.int64)[np.newaxis, :]
  table._rows[0] = row
  for u in range(ds.width):
    column = ds.column(u)
    base = row.min(axis=0, keepdims=True) if column.col == 0 else row
    row = _linear_row(base, _codes(column.chars), codes, a, x, g)
    table._rows[u + 1] = row
  distance = int(row[:, -1].min())
  _logger.debug('POA distance of %r: %s.', ds, distance)
  return distance, table


def nw_align_linear(text, pattern, a, x, g):
  """Needleman-Wunsch distance between two strings, with a linear gap score.

  :param text: Text string.
  :param pattern: Pattern string.
  :param a: Match score.
  :param x: Mismatch score.
  :param g: Gap score.

  """
  _check_pattern(pattern)
  codes = _codes(pattern)
  row = g * np.arange(len(pattern) + 1, dtype=np.int64)[np.newaxis, :]
  for code in _codes(text):
    row = _linear_row(row, np.array([code]), codes, a, x, g)
  return int(row[0, -1])


def _affine_first_row(m, pen):
  """Boundary row of Gotoh's three matrices."""
  best = pen.o + pen.e * np.arange(m + 1, dtype=np.int64)
  best[0] = 0
  insertion = best.copy()
  insertion[0] = _INF
  deletion = np.full(m + 1, _INF, dtype=np.int64)
  return best, deletion, insertion


def _affine_row(best, deletion, code, codes, pen):
  """Advance Gotoh's recurrences by one text character.

  :param best: Previous row of overall best scores.
  :param deletion: Previous row of scores ending with a deletion.
  :param code: Text character code.
  :param codes: Pattern codes.
  :param pen: :class:`~dsalign.alignment.Penalties`.

  Returns the new best, deletion and insertion rows.

  """
  gap_open = pen.o + pen.e
  new_deletion = np.minimum(best + gap_open, deletion + pen.e)
  new_best = new_deletion.copy()
  sub = np.where(codes == code, pen.a, pen.x)
  new_best[1:] = np.minimum(new_best[1:], best[:-1] + sub)
  ramp = pen.e * np.arange(len(best), dtype=np.int64)
  insertion = np.full_like(new_best, _INF)
  insertion[1:] = (
    np.minimum.accumulate(new_best - ramp)[:-1] + ramp[1:] + pen.o
  )
  return np.minimum(new_best, insertion), new_deletion, insertion


def gotoh_align(text, pattern, pen):
  """Affine gap global alignment of two plain strings.

  :param text: Text string.
  :param pattern: Pattern string.
  :param pen: :class:`~dsalign.alignment.Penalties`.

  Returns the distance and run-length events. Traceback prefers matches and
  mismatches, then deletions, then insertions.

  """
  if not text:
    raise DsaError('Empty text.')
  _check_pattern(pattern)
  codes = _codes(pattern)
  rows = [_affine_first_row(len(pattern), pen)]
  for code in _codes(text):
    best, deletion, _ = rows[-1]
    rows.append(_affine_row(best, deletion, code, codes, pen))
  best = np.array([row[0] for row in rows])
  deletion = np.array([row[1] for row in rows])
  insertion = np.array([row[2] for row in rows])
  gap_open = pen.o + pen.e
  ops = []
  i, j = len(text), len(pattern)
  state = MATCH
  while i > 0 or j > 0:
    if state == MATCH:
      if i > 0 and j > 0:
        equal = text[i - 1] == pattern[j - 1]
        sub = pen.a if equal else pen.x
        if best[i, j] == best[i - 1, j - 1] + sub:
          ops.append(MATCH if equal else MISMATCH)
          i -= 1
          j -= 1
          continue
      state = DELETION if best[i, j] == deletion[i, j] else INSERTION
    elif state == DELETION:
      ops.append(DELETION)
      if deletion[i, j] == best[i - 1, j] + gap_open:
        state = MATCH
      i -= 1
    else:
      ops.append(INSERTION)
      if insertion[i, j] == best[i, j - 1] + gap_open:
        state = MATCH
      j -= 1
  ops.reverse()
  return int(best[-1, -1]), compress(ops)


def _best_member(ds, cap, start, advance, finish):
  """Minimize a score over all members of a D-string.

  :param ds: D-string.
  :param cap: Maximum number of members.
  :param start: Initial state.
  :param advance: Function mapping a state and a variant to a new state.
  :param finish: Function mapping a final state to a score.

  Members are walked depth-first so that common prefixes are only processed
  once. Returns the lowest score and the first member, in enumeration order,
  attaining it.

  """
  count = ds.count_members()
  if count is None or count > cap:
    raise DsaError(
      'Too many members (%s) for cap %s.',
      'uncountable' if count is None else count, cap
    )
  _logger.debug('Enumerating %s members of %r.', count, ds)
  letters = ds.letters
  best = witness = None
  stack = [(0, start, None)]
  while stack:
    letter_id, state, choices = stack.pop()
    if letter_id == len(letters):
      score = finish(state)
      if best is None or score < best:
        best = score
        witness = choices
      continue
    letter = letters[letter_id]
    for index in reversed(range(letter.s)):
      stack.append((
        letter_id + 1,
        advance(state, letter.variants[index]),
        (index, choices),
      ))
  indices = []
  while witness is not None:
    index, witness = witness
    indices.append(index)
  indices.reverse()
  member = ''.join(
    letter.variants[index] for letter, index in zip(letters, indices)
  )
  return best, member


def oracle_affine(ds, pattern, pen, cap=DEFAULT_MEMBER_CAP):
  """Affine gap distance between a pattern and a D-string.

  :param ds: :class:`~dsalign.dstring.DString`.
  :param pattern: Pattern string.
  :param pen: :class:`~dsalign.alignment.Penalties`.
  :param cap: Maximum number of members to enumerate.

  Returns the minimum over all members of their :func:`gotoh_align` distance,
  along with a member attaining it.

  """
  _check_pattern(pattern)
  codes = _codes(pattern)

  def advance(state, variant):
    best, deletion = state
    for code in _codes(variant):
      best, deletion, _ = _affine_row(best, deletion, code, codes, pen)
    return best, deletion

  start = _affine_first_row(len(pattern), pen)[:2]
  return _best_member(ds, cap, start, advance, lambda state: int(state[0][-1]))


def oracle_linear(ds, pattern, a, x, g, cap=DEFAULT_MEMBER_CAP):
  """Linear gap distance between a pattern and a D-string.

  Same as :func:`oracle_affine`, using :func:`nw_align_linear` scores.

  """
  _check_pattern(pattern)
  codes = _codes(pattern)

  def advance(row, variant):
    for code in _codes(variant):
      row = _linear_row(row, np.array([code]), codes, a, x, g)
    return row

  start = g * np.arange(len(pattern) + 1, dtype=np.int64)[np.newaxis, :]
  return _best_member(ds, cap, start, advance, lambda row: int(row[0, -1]))
