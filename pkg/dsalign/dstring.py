#!/usr/bin/env python
# encoding: utf-8

"""D-string model and bracket notation.

A D-string is a sequence of degenerate letters. Each letter holds one or more
distinct variants of a common length; its members are the linear strings
obtained by picking one variant per letter. In text form, solid characters are
written bare and other letters as bracketed lists of variants, for example
`GCA[AT/CG]C[G/T]GG[TA/AA/AT]TT`.

All indices are 0-based. Positions along the members are called widths.

"""

from .util import DsaError
from collections import namedtuple
from itertools import islice, product
from string import ascii_letters
import io
import logging as lg

_logger = lg.getLogger(__name__)

#: Alphabet used when none is specified.
DEFAULT_ALPHABET = 'ACGT'

#: Member counts above this value are reported as uncountable.
MAX_COUNT = 2 ** 63 - 1


class ParseError(DsaError):

  """Malformed D-string or pattern text.

  :param message: Error message, without location.
  :param offset: Byte offset in the input text.
  :param args: Message formatting arguments.

  """

  def __init__(self, message, offset, *args):
    super(ParseError, self).__init__(
      '%s at offset %s.', message % args if args else message, offset
    )
    self.offset = offset


WidthColumn = namedtuple('WidthColumn', ['letter_id', 'col', 'chars'])


class DegenerateLetter(object):

  """One letter of a D-string.

  :param variants: Sequence of distinct, non-empty strings of equal length.
    Their order is significant: alignments identify the chosen variant by its
    index.

  """

  __slots__ = ('variants', 'ell')

  def __init__(self, variants):
    variants = tuple(variants)
    if not variants:
      raise DsaError('Degenerate letter without variants.')
    ell = len(variants[0])
    if not ell:
      raise DsaError('Empty variant in %r.', variants)
    if any(len(variant) != ell for variant in variants):
      raise DsaError('Unequal variant lengths in %r.', variants)
    if len(set(variants)) != len(variants):
      raise DsaError('Duplicate variants in %r.', variants)
    self.variants = variants
    self.ell = ell

  def __repr__(self):
    return '<DegenerateLetter(variants={!r})>'.format(self.variants)

  def __eq__(self, other):
    return (
      isinstance(other, DegenerateLetter) and
      self.variants == other.variants
    )

  def __ne__(self, other):
    return not self == other

  def __hash__(self):
    return hash(self.variants)

  @property
  def s(self):
    """Number of variants."""
    return len(self.variants)

  @property
  def is_solid(self):
    """Whether this letter is a plain character."""
    return self.ell == 1 and len(self.variants) == 1

  def format(self):
    """Bracket notation for this letter."""
    if self.is_solid:
      return self.variants[0]
    return '[{}]'.format('/'.join(self.variants))


class DString(object):

  """Degenerate string.

  :param letters: Non-empty sequence of :class:`DegenerateLetter`.

  The following attributes are available:

  + `width`, the common length W of all members.
  + `size`, the total number N of stored characters.
  + `starts`, the width at which each letter begins. It holds one more entry
    than there are letters, the last one being equal to the width.

  Instances are immutable and can be shared freely across threads.

  """

  def __init__(self, letters):
    self.letters = tuple(letters)
    if not self.letters:
      raise DsaError('Empty D-string.')
    starts = [0]
    letter_ids = []
    size = 0
    for letter_id, letter in enumerate(self.letters):
      starts.append(starts[-1] + letter.ell)
      letter_ids.extend([letter_id] * letter.ell)
      size += letter.s * letter.ell
    self.starts = tuple(starts)
    self.width = starts[-1]
    self.size = size
    self._letter_ids = tuple(letter_ids)
    assert self.size >= self.width >= len(self.letters)

  def __repr__(self):
    return '<DString(n={}, N={}, W={})>'.format(
      len(self.letters), self.size, self.width
    )

  def __str__(self):
    return format_dstring(self)

  def __len__(self):
    return len(self.letters)

  def __eq__(self, other):
    return isinstance(other, DString) and self.letters == other.letters

  def __ne__(self, other):
    return not self == other

  def __hash__(self):
    return hash(self.letters)

  def letter_id(self, u):
    """Index of the letter covering a given width.

    :param u: Width, in `[0, W)`.

    """
    if not 0 <= u < self.width:
      raise DsaError('Width %s out of range [0, %s).', u, self.width)
    return self._letter_ids[u]

  def column(self, u):
    """Characters readable at a given width.

    :param u: Width, in `[0, W)`.

    Returns a :class:`WidthColumn`. Its characters are listed in variant order,
    which is the same for every column of a letter.

    """
    letter_id = self.letter_id(u)
    col = u - self.starts[letter_id]
    chars = tuple(v[col] for v in self.letters[letter_id].variants)
    return WidthColumn(letter_id, col, chars)

  def dsubstring(self, u1, u2):
    """D-substring spanning widths `u1` to `u2`, both inclusive.

    :param u1: First width.
    :param u2: Last width.

    Both ends must fall on letter boundaries.

    """
    if not 0 <= u1 <= u2 < self.width:
      raise DsaError(
        'Invalid width range [%s, %s] for width %s.', u1, u2, self.width
      )
    first = self._letter_ids[u1]
    last = self._letter_ids[u2]
    if self.starts[first] != u1:
      raise DsaError('Width %s splits letter %s.', u1, first)
    if self.starts[last + 1] != u2 + 1:
      raise DsaError('Width %s splits letter %s.', u2, last)
    return DString(self.letters[first:last + 1])

  def count_members(self):
    """Number of members, or `None` if it exceeds :data:`MAX_COUNT`."""
    count = 1
    for letter in self.letters:
      count *= letter.s
      if count > MAX_COUNT:
        return None
    return count

  def members(self, cap=None):
    """Enumerate members.

    :param cap: Maximum number of members to yield. Defaults to all.

    Returns a tuple `(members, count)` where `members` is an iterator over
    distinct member strings, ordered lexicographically by variant index, and
    `count` is the total number of members (`None` if uncountable).

    """
    if cap is not None and cap < 1:
      raise DsaError('Invalid member cap: %s.', cap)
    count = self.count_members()
    if count is None:
      _logger.warning('Uncountable members for %r.', self)
    choices = product(*(letter.variants for letter in self.letters))
    members = (''.join(choice) for choice in choices)
    if cap is not None:
      members = islice(members, cap)
    return members, count

  def contains(self, text):
    """Check whether a string is a member.

    :param text: Candidate string.

    """
    if len(text) != self.width:
      return False
    for start, letter in zip(self.starts, self.letters):
      if text[start:start + letter.ell] not in letter.variants:
        return False
    return True


def check_alphabet(alphabet):
  """Validate an alphabet and return its set of characters.

  :param alphabet: String of ASCII letters.

  """
  chars = frozenset(alphabet or '')
  if not chars or not chars <= frozenset(ascii_letters):
    raise DsaError('Invalid alphabet: %r.', alphabet)
  return chars


def parse_dstring(text, alphabet=DEFAULT_ALPHABET):
  """Parse bracket notation.

  :param text: D-string text. A single trailing newline is ignored.
  :param alphabet: Allowed characters.

  Consecutive solid characters become distinct letters. Errors are reported as
  :class:`ParseError` carrying the offset of the offending character.

  """
  chars = check_alphabet(alphabet)
  if text.endswith('\n'):
    text = text[:-1]
  if not text:
    raise ParseError('Empty D-string', 0)
  solids = {}
  letters = []
  pos = 0
  while pos < len(text):
    char = text[pos]
    if char == '[':
      variants, pos = _parse_bracket(text, pos, chars)
      letters.append(DegenerateLetter(variants))
    elif char in chars:
      if char not in solids:
        solids[char] = DegenerateLetter([char])
      letters.append(solids[char])
      pos += 1
    elif char in '/]':
      raise ParseError('Unbalanced %r', pos, char)
    else:
      raise ParseError('Invalid character %r', pos, char)
  return DString(letters)


def _parse_bracket(text, pos, chars):
  """Parse the bracketed letter opening at `pos`.

  Returns the list of variants and the offset following the closing bracket.

  """
  variants = []
  start = pos + 1
  for index in range(start, len(text)):
    char = text[index]
    if char == '[':
      raise ParseError('Nested bracket', index)
    if char in '/]':
      if index == start:
        if char == ']' and not variants:
          raise ParseError('Empty bracket', pos)
        raise ParseError('Empty variant', index)
      variants.append(text[start:index])
      start = index + 1
      if char == ']':
        break
    elif char not in chars:
      raise ParseError('Invalid character %r', index, char)
  else:
    raise ParseError('Unbalanced %r', pos, '[')
  if any(len(variant) != len(variants[0]) for variant in variants):
    raise ParseError('Unequal variant lengths', pos)
  if len(set(variants)) != len(variants):
    raise ParseError('Duplicate variant', pos)
  return variants, index + 1


def format_dstring(ds):
  """Bracket notation of a D-string.

  :param ds: :class:`DString`.

  """
  return ''.join(letter.format() for letter in ds.letters)


def load_dstring(path, alphabet=DEFAULT_ALPHABET):
  """Load a D-string from a `.dst` file.

  :param path: Local path.
  :param alphabet: Allowed characters.

  """
  with io.open(path, encoding='utf-8') as reader:
    ds = parse_dstring(reader.read(), alphabet=alphabet)
  _logger.info('Loaded %r from %r.', ds, path)
  return ds


def save_dstring(ds, path):
  """Write a D-string to a `.dst` file, newline terminated."""
  with io.open(path, 'w', encoding='utf-8') as writer:
    writer.write(format_dstring(ds))
    writer.write(u'\n')
  _logger.info('Saved %r to %r.', ds, path)


def load_pattern(path, alphabet=None):
  """Load a pattern from a raw text or FASTA file.

  :param path: Local path. If the file's first non-blank line starts with `>`,
    the sequence of its first record is returned. Otherwise all lines are
    concatenated.
  :param alphabet: Allowed characters. When set, the first character outside
    it raises a :class:`ParseError` at its offset in the pattern. Lowercase
    (soft-masked) characters are not accepted unless listed.

  """
  with io.open(path, encoding='utf-8') as reader:
    lines = [line.strip() for line in reader]
  lines = [line for line in lines if line]
  if lines and lines[0].startswith('>'):
    record = []
    for line in lines[1:]:
      if line.startswith('>'):
        break
      record.append(line)
    lines = record
  pattern = ''.join(lines)
  if not pattern:
    raise DsaError('Empty pattern in %r.', path)
  if alphabet is not None:
    chars = check_alphabet(alphabet)
    for offset, char in enumerate(pattern):
      if char not in chars:
        raise ParseError('Invalid pattern character %r', offset, char)
  _logger.info('Loaded pattern of length %s from %r.', len(pattern), path)
  return pattern


def save_pattern(pattern, path):
  """Write a pattern as a raw, newline terminated, text file."""
  with io.open(path, 'w', encoding='utf-8') as writer:
    writer.write(pattern)
    writer.write(u'\n')
