#!/usr/bin/env python
# encoding: utf-8

"""Wavefront alignment of a pattern against a D-string.

For each distance `d` and diagonal `k = u - v` (text width minus pattern
index), three components track how far along the text an alignment of score
`d` can reach: `M` for alignments ending anywhere, `I` for alignments ending
with an insertion (pattern character against nothing) and `D` for alignments
ending with a deletion (text character against nothing).

Inside a degenerate letter a diagonal holds one offset per variant, called a
lane. Lanes advance independently while matching and keep their identity
through mismatches and gaps, so a single alignment never mixes two variants of
the same letter. A lane that mismatches is abandoned for the rest of the
extension. As soon as one lane reaches the end of its letter, the record moves
on to the next letter with all of its lanes starting at that boundary.

Every lane also remembers where its current match run started and how it got
there, which is enough to rebuild the optimal alignment once the final diagonal
reaches the end of the text.

"""

from .alignment import (
  AlignmentResult, DELETION, INSERTION, MATCH, MISMATCH, Penalties,
)
from .util import DsaError, VerificationError
from collections import namedtuple
import logging as lg

_logger = lg.getLogger(__name__)

#: Wavefront components, named after the operation ending their alignments.
COMPONENTS = (MATCH, INSERTION, DELETION)

# Lane reached from a source record lane. `op` is the event emitted by the
# transition, `None` when switching from a gap component to `M`.
_Step = namedtuple('_Step', ['op', 'd', 'component', 'k', 'lane'])

# Lane of the previous letter which ran into the letter boundary.
_Crossing = namedtuple('_Crossing', ['letter_id', 'lane', 'seed', 'origin'])


class DiagonalRecord(object):

  """Furthest reaching offsets on one diagonal, for a given score and component.

  :param k: Diagonal index.
  :param letter_id: Letter holding the offsets. The id one past the last letter
    stands for the end of the text, where a single lane sits at offset `W`.
  :param offsets: Offset of each lane, one per variant of the letter. `None`
    marks an unreached lane.
  :param seeds: Offset at which each lane's current match run started.
  :param origins: Transition which led to each lane's seed.

  Offsets always lie inside the letter; a lane reaching the letter's end moves
  the whole record to the next letter.

  """

  __slots__ = ('k', 'letter_id', 'offsets', 'abandoned', 'seeds', 'origins')

  def __init__(self, k, letter_id, offsets, seeds, origins):
    self.k = k
    self.letter_id = letter_id
    self.offsets = offsets
    self.abandoned = [False] * len(offsets)
    self.seeds = seeds
    self.origins = origins

  def __repr__(self):
    return '<DiagonalRecord(k={}, letter_id={}, offsets={!r})>'.format(
      self.k, self.letter_id, self.offsets
    )

  @property
  def offset(self):
    """Furthest offset across lanes."""
    return max(offset for offset in self.offsets if offset is not None)


class WavefrontSet(object):

  """All wavefronts computed while aligning a pattern to a D-string.

  :param ds: :class:`~dsalign.dstring.DString`.
  :param pattern: Pattern string.

  Wavefronts are retained for every distance so that the alignment can be
  traced back. The `work` attribute counts offset updates.

  The furthest `M` offset of a diagonal never decreases with the distance, as
  long as it has not saturated. Once a record reaches the end of the text
  (offset `W`) or of the pattern (`offset - k == m`), it cannot extend further
  and later distances may hold a lower offset on that diagonal, reached along
  another path. :meth:`history` exposes the sequence.

  """

  def __init__(self, ds, pattern):
    self.ds = ds
    self.pattern = pattern
    self.work = 0
    self._end_id = len(ds.letters)
    self._fronts = []

  def __repr__(self):
    return '<WavefrontSet(ds={!r}, m={}, distances={})>'.format(
      self.ds, len(self.pattern), len(self._fronts)
    )

  def __len__(self):
    return len(self._fronts)

  def arity(self, letter_id):
    """Number of lanes of a letter."""
    if letter_id == self._end_id:
      return 1
    return self.ds.letters[letter_id].s

  def component(self, d, component):
    """Records of one component at a given distance, keyed by diagonal.

    Distances not computed yet, or negative, have no records.

    """
    if 0 <= d < len(self._fronts):
      return self._fronts[d][component]
    return {}

  def record(self, d, component, k):
    """Record of a diagonal, or `None`."""
    return self.component(d, component).get(k)

  def bounds(self, d):
    """Lowest and highest diagonal with a record, `None` if empty."""
    keys = [k for component in COMPONENTS for k in self.component(d, component)]
    if not keys:
      return None
    return min(keys), max(keys)

  def history(self, component, k):
    """Furthest offset of a diagonal for each distance holding a record."""
    return [
      (d, fronts[component][k].offset)
      for d, fronts in enumerate(self._fronts)
      if k in fronts[component]
    ]

  def start(self):
    """Record the wavefront at distance 0, a single record at the origin.

    Returns the set itself.

    """
    if self._fronts:
      raise DsaError('Wavefronts already started.')
    arity = self.arity(0)
    fronts = dict((component, {}) for component in COMPONENTS)
    fronts[MATCH][0] = DiagonalRecord(
      0, 0, [0] * arity, [0] * arity, [None] * arity
    )
    self.work += arity
    self._push(fronts)
    return self

  def _push(self, fronts):
    self._fronts.append(fronts)

  def _cross(self, record, lane):
    """Move a record into the next letter, after `lane` reached its end."""
    end = record.offsets[lane]
    origin = _Crossing(
      record.letter_id, lane, record.seeds[lane], record.origins[lane]
    )
    record.letter_id += 1
    arity = self.arity(record.letter_id)
    record.offsets = [end] * arity
    record.seeds = [end] * arity
    record.origins = [origin] * arity
    record.abandoned = [False] * arity
    self.work += arity


class _RecordBuilder(object):

  """Collects candidate lane offsets for a new record.

  Candidates in a later letter override all others. Within the same letter,
  each lane keeps its furthest candidate, the first one proposed on ties.

  """

  def __init__(self, wf, k):
    self._wf = wf
    self.k = k
    self.letter_id = None
    self.offsets = None
    self.seeds = None
    self.origins = None

  def propose(self, letter_id, lane, offset, origin):
    wf = self._wf
    if letter_id < wf._end_id and offset == wf.ds.starts[letter_id + 1]:
      origin = _Crossing(letter_id, lane, offset, origin)
      letter_id += 1
      for next_lane in range(wf.arity(letter_id)):
        self._set(letter_id, next_lane, offset, origin)
    else:
      self._set(letter_id, lane, offset, origin)

  def _set(self, letter_id, lane, offset, origin):
    if self.letter_id is not None and letter_id < self.letter_id:
      return
    if self.letter_id is None or letter_id > self.letter_id:
      arity = self._wf.arity(letter_id)
      self.letter_id = letter_id
      self.offsets = [None] * arity
      self.seeds = [None] * arity
      self.origins = [None] * arity
    current = self.offsets[lane]
    if current is None or offset > current:
      self.offsets[lane] = offset
      self.seeds[lane] = offset
      self.origins[lane] = origin
      self._wf.work += 1

  def build(self):
    if self.letter_id is None:
      return None
    return DiagonalRecord(
      self.k, self.letter_id, self.offsets, self.seeds, self.origins
    )


def _propose_from(builder, record, op, d, component):
  """Propose the successors of each lane of a source record.

  :param builder: Target :class:`_RecordBuilder`.
  :param record: Source record, possibly `None`.
  :param op: Transition, one of mismatch, insertion, deletion, or `None` to
    copy offsets unchanged.
  :param d: Source distance.
  :param component: Source component.

  """
  if record is None:
    return
  wf = builder._wf
  width = wf.ds.width
  length = len(wf.pattern)
  for lane, offset in enumerate(record.offsets):
    if offset is None:
      continue
    if op == MISMATCH:
      if offset >= width or offset - record.k >= length:
        continue
      target = offset + 1
    elif op == DELETION:
      if offset >= width:
        continue
      target = offset + 1
    elif op == INSERTION:
      if offset - record.k >= length:
        continue
      target = offset
    else:
      target = offset
    builder.propose(
      record.letter_id, lane, target, _Step(op, d, component, record.k, lane)
    )


def lambda_extend(wf, k, record):
  """Extend each live lane of a record by one matching character.

  :param wf: :class:`WavefrontSet` owning the record.
  :param k: Diagonal of the record.
  :param record: :class:`DiagonalRecord` to update in place.

  Lanes whose character differs from the pattern's are abandoned. If a lane
  reaches the end of its letter, the record moves into the next letter with
  fresh lanes. Returns whether any lane advanced.

  """
  letter_id = record.letter_id
  if letter_id >= wf._end_id:
    return False
  letter = wf.ds.letters[letter_id]
  start = wf.ds.starts[letter_id]
  end = start + letter.ell
  pattern = wf.pattern
  extended = False
  crossing = None
  for lane, offset in enumerate(record.offsets):
    if offset is None or record.abandoned[lane]:
      continue
    v = offset - k
    if v >= len(pattern):
      continue
    if letter.variants[lane][offset - start] == pattern[v]:
      offset += 1
      record.offsets[lane] = offset
      wf.work += 1
      extended = True
      if crossing is None and offset == end:
        crossing = lane
    else:
      record.abandoned[lane] = True
  if crossing is not None:
    wf._cross(record, crossing)
  return extended


def dwf_extend(wf, d):
  """Extend all `M` records at distance `d` along their diagonals."""
  for k, record in wf.component(d, MATCH).items():
    while lambda_extend(wf, k, record):
      pass
  return wf


def dwf_next(wf, d, pen):
  """Compute the wavefront at distance `d` from earlier ones.

  :param wf: :class:`WavefrontSet` holding all wavefronts below `d`.
  :param d: New distance.
  :param pen: :class:`~dsalign.alignment.Penalties`.

  Deletions extend diagonal `k - 1` into `k`, insertions diagonal `k + 1`, and
  mismatches stay on `k`. Missing sources contribute nothing; if none exist,
  the wavefront is recorded empty.

  """
  gap_open = pen.o + pen.e
  mismatches = wf.component(d - pen.x, MATCH)
  opens = wf.component(d - gap_open, MATCH)
  insertions = wf.component(d - pen.e, INSERTION)
  deletions = wf.component(d - pen.e, DELETION)
  fronts = dict((component, {}) for component in COMPONENTS)
  keys = [
    k
    for source in (mismatches, opens, insertions, deletions)
    for k in source
  ]
  if not keys:
    _logger.debug('Empty wavefront at distance %s.', d)
    wf._push(fronts)
    return wf
  lo = max(min(keys) - 1, -len(wf.pattern))
  hi = min(max(keys) + 1, wf.ds.width)
  for k in range(lo, hi + 1):
    builder = _RecordBuilder(wf, k)
    _propose_from(builder, opens.get(k - 1), DELETION, d - gap_open, MATCH)
    _propose_from(builder, deletions.get(k - 1), DELETION, d - pen.e, DELETION)
    deletion = builder.build()
    builder = _RecordBuilder(wf, k)
    _propose_from(builder, opens.get(k + 1), INSERTION, d - gap_open, MATCH)
    _propose_from(
      builder, insertions.get(k + 1), INSERTION, d - pen.e, INSERTION
    )
    insertion = builder.build()
    builder = _RecordBuilder(wf, k)
    _propose_from(builder, mismatches.get(k), MISMATCH, d - pen.x, MATCH)
    _propose_from(builder, deletion, None, d, DELETION)
    _propose_from(builder, insertion, None, d, INSERTION)
    match = builder.build()
    for component, record in (
      (MATCH, match), (INSERTION, insertion), (DELETION, deletion)
    ):
      if record is not None:
        fronts[component][k] = record
  _logger.debug(
    'Computed wavefront at distance %s on diagonals [%s, %s] (work: %s).',
    d, lo, hi, wf.work
  )
  wf._push(fronts)
  return wf


def _choose(path, letter_id, lane):
  """Record the variant used by the alignment in a letter."""
  if path[letter_id] is None:
    path[letter_id] = lane
  elif path[letter_id] != lane:
    raise VerificationError(
      'Variants %s and %s both used in letter %s.',
      path[letter_id], lane, letter_id
    )


def traceback(wf, d, ds, pattern, pen):
  """Rebuild the optimal alignment ending at distance `d`.

  :param wf: :class:`WavefrontSet` of a completed run.
  :param d: Final distance.
  :param ds: Aligned D-string.
  :param pattern: Aligned pattern.
  :param pen: :class:`~dsalign.alignment.Penalties`.

  Walks lane origins backwards from the end of the final diagonal, emitting
  each match run followed by the transition that started it. Returns an
  :class:`~dsalign.alignment.AlignmentResult`.

  """
  end_id = len(ds.letters)
  record = wf.record(d, MATCH, ds.width - len(pattern))
  if record is None or record.letter_id != end_id:
    raise VerificationError('No alignment ends at distance %s.', d)
  path = [None] * end_id
  events = []
  letter_id = record.letter_id
  lane = 0
  offset = record.offsets[lane]
  seed = record.seeds[lane]
  origin = record.origins[lane]
  while True:
    if offset > seed:
      events.append((MATCH, offset - seed))
      _choose(path, letter_id, lane)
    if origin is None:
      break
    if isinstance(origin, _Crossing):
      offset = seed
      letter_id, lane, seed, origin = origin
      continue
    source = wf.record(origin.d, origin.component, origin.k)
    if source is None:
      raise VerificationError('Dangling origin %r.', origin)
    letter_id = source.letter_id
    lane = origin.lane
    offset = source.offsets[lane]
    if origin.op in (MISMATCH, DELETION):
      events.append((origin.op, 1))
      _choose(path, letter_id, lane)
    elif origin.op == INSERTION:
      events.append((INSERTION, 1))
    seed = source.seeds[lane]
    origin = source.origins[lane]
  if seed != 0 or letter_id != 0:
    raise VerificationError('Traceback ended at width %s.', seed)
  for letter_id, letter in enumerate(ds.letters):
    if path[letter_id] is None:
      if letter.s > 1:
        raise VerificationError('No variant chosen for letter %s.', letter_id)
      path[letter_id] = 0
  events.reverse()
  return AlignmentResult(d, events, path, work=wf.work)


def dwf_align(ds, pattern, pen=None):
  """Align a pattern to a D-string.

  :param ds: :class:`~dsalign.dstring.DString`.
  :param pattern: Non-empty pattern string.
  :param pen: :class:`~dsalign.alignment.Penalties`, defaults to `0,1,2,1`.

  Scores increase one at a time until the `M` component of the diagonal
  ending at the last text and pattern characters reaches the end of the text.
  Returns an :class:`~dsalign.alignment.AlignmentResult` whose distance is the
  lowest over all members of the D-string.

  """
  if pen is None:
    pen = Penalties()
  if pen.a:
    raise DsaError('Unsupported non-zero match score: %s.', pen.a)
  if not pattern:
    raise DsaError('Empty pattern.')
  wf = WavefrontSet(ds, pattern).start()
  target = ds.width - len(pattern)
  d = 0
  while True:
    dwf_extend(wf, d)
    record = wf.record(d, MATCH, target)
    if record is not None and record.letter_id == len(ds.letters):
      break
    d += 1
    dwf_next(wf, d, pen)
  result = traceback(wf, d, ds, pattern, pen)
  _logger.info(
    'Aligned pattern of length %s to %r at distance %s (work: %s).',
    len(pattern), ds, d, wf.work
  )
  return result


def work_counter(result):
  """Number of offset updates performed to obtain an alignment result."""
  return result.work
