#!/usr/bin/env python
# encoding: utf-8

"""Test D-string model and bracket notation."""

from dsalign.dstring import *
from dsalign.util import DsaError, temppath
from dsalign.simgen import SimSpec, generate_dstring, make_rng
from test.util import EXAMPLE, example_dstring, random_instances
import io
import pytest


class TestDegenerateLetter(object):

  def test_solid(self):
    letter = DegenerateLetter(['A'])
    assert letter.is_solid
    assert letter.s == 1
    assert letter.ell == 1
    assert letter.format() == 'A'

  def test_single_long_variant(self):
    letter = DegenerateLetter(['ACG'])
    assert not letter.is_solid
    assert letter.format() == '[ACG]'

  def test_degenerate(self):
    letter = DegenerateLetter(['TA', 'AA', 'AT'])
    assert letter.s == 3
    assert letter.ell == 2
    assert letter.format() == '[TA/AA/AT]'

  def test_equality(self):
    assert DegenerateLetter(['A', 'C']) == DegenerateLetter(('A', 'C'))
    assert DegenerateLetter(['A', 'C']) != DegenerateLetter(['C', 'A'])

  def test_invalid(self):
    with pytest.raises(DsaError):
      DegenerateLetter([])
    with pytest.raises(DsaError):
      DegenerateLetter([''])
    with pytest.raises(DsaError):
      DegenerateLetter(['A', 'CG'])
    with pytest.raises(DsaError):
      DegenerateLetter(['A', 'A'])


class TestParse(object):

  def test_example(self):
    ds = parse_dstring(EXAMPLE)
    assert len(ds) == 11
    assert ds.size == 20
    assert ds.width == 13
    assert ds.starts == (0, 1, 2, 3, 5, 6, 7, 8, 9, 11, 12, 13)

  def test_shorter_example(self):
    ds = parse_dstring('CA[AT/CG]C[G/T]GG[TA/AA]T')
    assert len(ds) == 9
    assert ds.width == 11
    assert ds.size == 16

  def test_single_solid(self):
    ds = parse_dstring('A')
    assert (len(ds), ds.size, ds.width) == (1, 1, 1)
    assert ds.letters[0].is_solid

  def test_trailing_newline(self):
    assert parse_dstring('AC[G/T]\n') == parse_dstring('AC[G/T]')

  def test_custom_alphabet(self):
    ds = parse_dstring('AN[N/A]', alphabet='ACGTN')
    assert ds.width == 3
    with pytest.raises(ParseError):
      parse_dstring('AN[N/A]')

  def test_invalid_alphabet(self):
    with pytest.raises(DsaError):
      parse_dstring('A', alphabet='')
    with pytest.raises(DsaError):
      parse_dstring('A', alphabet='A1')

  @pytest.mark.parametrize('text,offset', [
    ('', 0),
    ('AN', 1),
    ('A]', 1),
    ('A/C', 1),
    ('A[AT', 1),
    ('A[]', 1),
    ('[/A]', 1),
    ('[A/]', 3),
    ('[A[C]]', 2),
    ('A[AT/C]', 1),
    ('[A/A]', 0),
    ('[A/x]', 3),
  ])
  def test_errors(self, text, offset):
    with pytest.raises(ParseError) as excinfo:
      parse_dstring(text)
    assert excinfo.value.offset == offset
    assert 'at offset {}.'.format(offset) in str(excinfo.value)

  def test_parse_error_is_dsa_error(self):
    with pytest.raises(DsaError):
      parse_dstring('[')


class TestFormat(object):

  def test_example(self):
    assert format_dstring(example_dstring()) == EXAMPLE

  def test_single_solid(self):
    assert format_dstring(DString([DegenerateLetter(['A'])])) == 'A'

  def test_str(self):
    assert str(example_dstring()) == EXAMPLE

  def test_save_and_load(self):
    ds = example_dstring()
    with temppath() as tpath:
      save_dstring(ds, tpath)
      with io.open(tpath, encoding='utf-8') as reader:
        assert reader.read() == EXAMPLE + '\n'
      assert load_dstring(tpath) == ds

  def test_round_trip_generated(self):
    for ds, _ in random_instances(300, seed=400):
      text = format_dstring(ds)
      assert parse_dstring(text) == ds
      assert format_dstring(parse_dstring(text)) == text
    for seed in range(20):
      ds = generate_dstring(SimSpec(500, 0.1, 5, 4, seed))
      assert parse_dstring(format_dstring(ds)) == ds

  def test_round_trip_small_alphabet(self):
    for seed in range(20):
      ds = generate_dstring(SimSpec(200, 0.1, 3, 3, seed), alphabet='AC')
      text = format_dstring(ds)
      assert parse_dstring(text, alphabet='AC') == ds
      assert format_dstring(parse_dstring(text, alphabet='AC')) == text


class TestColumn(object):

  def test_solid(self):
    column = example_dstring().column(2)
    assert column.letter_id == 2
    assert column.col == 0
    assert column.chars == ('A',)

  def test_degenerate(self):
    ds = example_dstring()
    assert ds.column(3) == WidthColumn(3, 0, ('A', 'C'))
    assert ds.column(4) == WidthColumn(3, 1, ('T', 'G'))

  def test_first(self):
    assert example_dstring().column(0).chars == ('G',)

  def test_out_of_range(self):
    ds = example_dstring()
    with pytest.raises(DsaError):
      ds.column(13)
    with pytest.raises(DsaError):
      ds.letter_id(-1)


class TestDsubstring(object):

  def test_example(self):
    ds = example_dstring()
    assert format_dstring(ds.dsubstring(2, 6)) == 'A[AT/CG]C[G/T]'

  def test_full_range(self):
    ds = example_dstring()
    assert ds.dsubstring(0, ds.width - 1) == ds

  def test_single_solid(self):
    sub = example_dstring().dsubstring(1, 1)
    assert format_dstring(sub) == 'C'

  def test_split_letter(self):
    ds = example_dstring()
    with pytest.raises(DsaError):
      ds.dsubstring(4, 6)
    with pytest.raises(DsaError):
      ds.dsubstring(2, 3)

  def test_invalid_range(self):
    ds = example_dstring()
    with pytest.raises(DsaError):
      ds.dsubstring(5, 2)
    with pytest.raises(DsaError):
      ds.dsubstring(0, 13)


class TestMembers(object):

  def test_example_count(self):
    ds = example_dstring()
    assert ds.count_members() == 12
    members, count = ds.members()
    members = list(members)
    assert count == 12
    assert len(set(members)) == 12
    assert 'GCACGCTGGAATT' in members
    assert 'GCAATCTGGTATT' in members

  def test_solid(self):
    members, count = parse_dstring('ACGT').members()
    assert list(members) == ['ACGT']
    assert count == 1

  def test_order(self):
    members, count = parse_dstring('[A/C][G/T]').members()
    assert list(members) == ['AG', 'AT', 'CG', 'CT']
    assert count == 4

  def test_cap(self):
    members, count = example_dstring().members(cap=5)
    assert len(list(members)) == 5
    assert count == 12

  def test_invalid_cap(self):
    with pytest.raises(DsaError):
      example_dstring().members(cap=0)

  def test_uncountable(self):
    ds = parse_dstring('[A/C/G/T]' * 40)
    assert ds.count_members() is None
    members, count = ds.members(cap=2)
    assert count is None
    assert len(list(members)) == 2

  def test_generated(self):
    for ds, _ in random_instances(200, seed=500):
      members, count = ds.members()
      members = list(members)
      assert count == ds.count_members()
      assert len(members) == count
      assert len(set(members)) == count
      assert all(ds.contains(member) for member in members)


class TestContains(object):

  def test_members(self):
    ds = example_dstring()
    assert ds.contains('GCACGCTGGAATT')
    assert ds.contains('GCAATCTGGTATT')

  def test_wrong_length(self):
    assert not example_dstring().contains('GCAATCGGGTAT')

  def test_mixed_variants(self):
    assert not example_dstring().contains('GCAAGCTGGTATT')

  def test_all_members(self):
    ds = example_dstring()
    members, _ = ds.members()
    assert all(ds.contains(member) for member in members)

  def test_matches_enumeration(self):
    rng = make_rng(6)
    for alphabet in ['AC', 'ACGT']:
      instances = random_instances(150, seed=600, alphabet=alphabet)
      for ds, pattern in instances:
        members = set(ds.members()[0])
        codes = rng.integers(len(alphabet), size=(3, ds.width))
        candidates = [pattern, pattern[:-1]] + [
          ''.join(alphabet[int(code)] for code in row) for row in codes
        ]
        for text in candidates:
          assert ds.contains(text) == (text in members), (str(ds), text)


class TestLoadPattern(object):

  def _load(self, contents, alphabet=None):
    with temppath() as tpath:
      with io.open(tpath, 'w', encoding='utf-8') as writer:
        writer.write(contents)
      return load_pattern(tpath, alphabet=alphabet)

  def test_raw(self):
    assert self._load(u'ACGT\nAC\n') == 'ACGTAC'

  def test_fasta(self):
    assert self._load(u'>one\nACG\nT\n>two\nCCCC\n') == 'ACGT'

  def test_empty(self):
    with pytest.raises(DsaError):
      self._load(u'\n\n')

  def test_save(self):
    with temppath() as tpath:
      save_pattern('ACGT', tpath)
      assert load_pattern(tpath) == 'ACGT'

  def test_alphabet(self):
    assert self._load(u'>read\nACG\nT\n', alphabet='ACGT') == 'ACGT'

  def test_unchecked_without_alphabet(self):
    assert self._load(u'acgu\n') == 'acgu'

  @pytest.mark.parametrize('contents,offset', [
    (u'acgu\n', 0),
    (u'ACGU\n', 3),
    (u'>read\nAC\nGN\n', 3),
  ])
  def test_invalid_character(self, contents, offset):
    with pytest.raises(ParseError) as excinfo:
      self._load(contents, alphabet='ACGT')
    assert excinfo.value.offset == offset
