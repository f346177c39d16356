#!/usr/bin/env python
# encoding: utf-8

"""Test CLI."""

from dsalign.__main__ import configure, main, parse_arg
from dsalign.config import Config
from dsalign.dstring import load_dstring
from dsalign.simgen import extract_member
from dsalign.util import DsaError, temppath
from shutil import rmtree
from tempfile import mkdtemp
from test.util import EXAMPLE
import filecmp
import io
import json
import logging as lg
import os.path as osp
import pytest


def _write(path, contents):
  with io.open(path, 'w', encoding='utf-8') as writer:
    writer.write(contents)


def _read(path):
  with io.open(path, encoding='utf-8') as reader:
    return reader.read()


class TestParseArg(object):

  def test_parse_invalid(self):
    with pytest.raises(DsaError):
      parse_arg({'foo': 'a'}, 'foo', int)

  def test_parse_int(self):
    assert parse_arg({'foo': '1'}, 'foo', int) == 1
    assert parse_arg({'foo': '1'}, 'foo', int, ',') == 1

  def test_parse_float(self):
    assert parse_arg({'foo': '0.001'}, 'foo', float) == 0.001

  def test_parse_missing(self):
    assert parse_arg({'foo': None}, 'foo', int) is None

  def test_parse_int_list(self):
    assert parse_arg({'foo': '1,'}, 'foo', int, ',') == [1]
    assert parse_arg({'foo': '1,2'}, 'foo', int, ',') == [1,2]


class TestConfigure(object):

  def setup_method(self):
    self._handlers = list(lg.getLogger().handlers)

  def teardown_method(self):
    lg.getLogger().handlers = self._handlers

  def test_log_disabled(self):
    with temppath() as tpath:
      config = Config(tpath)
      config.add_section('dsalign.command')
      config.set('dsalign.command', 'log.disable', 'true')
      with pytest.raises(SystemExit) as excinfo:
        configure('dsalign', {'--log': True, '--verbose': 0}, config)
      assert excinfo.value.code == 1

  def test_returns_config(self):
    with temppath() as tpath:
      config = Config(tpath)
      config.add_section('dsalign.command')
      config.set('dsalign.command', 'log.disable', 'true')
      assert configure('dsalign', {'--log': False}, config) is config



class TestMain(object):

  def setup_method(self):
    self._handlers = list(lg.getLogger().handlers)
    self.dpath = mkdtemp()

  def teardown_method(self):
    lg.getLogger().handlers = self._handlers
    rmtree(self.dpath)

  def _path(self, name):
    return osp.join(self.dpath, name)

  def _main(self, argv):
    config = Config(self._path('dsalign.cfg'))
    config.add_section('dsalign.command')
    config.set('dsalign.command', 'log.disable', 'true')
    stdout = io.StringIO()
    main(argv, config=config, stdout=stdout)
    return stdout.getvalue()

  def _exit_code(self, argv):
    with pytest.raises(SystemExit) as excinfo:
      self._main(argv)
    return excinfo.value.code

  def _inputs(self, dstring, pattern):
    _write(self._path('text.dst'), dstring)
    _write(self._path('pattern.txt'), pattern)
    return [self._path('text.dst'), self._path('pattern.txt')]

  def _align(self, dstring, pattern, *options):
    argv = ['align'] + list(options) + self._inputs(dstring, pattern)
    return self._main(argv)

  def test_align_member(self):
    output = self._align(EXAMPLE, 'GCACGCTGGAATT')
    assert output == 'd=0  13M 0X 0I 0D 0G\n'

  def test_align_mismatch(self):
    output = self._align('AC[GC/AT]A\n', 'ACGTA\n')
    assert output == 'd=1  4M 1X 0I 0D 0G\n'

  def test_align_oracle(self):
    output = self._align('AC[GC/AT]A', 'ACGTA', '--oracle')
    assert output == 'd=1  4M 1X 0I 0D 0G\noracle d=1\n'

  def test_align_fasta(self):
    output = self._align('ACGT', '>read\nAC\nT\n', '--cigar')
    assert output == '2M1D1M\n'

  def test_align_penalties(self):
    output = self._align('ACGT', 'ACT', '-p', '0,2,3,1')
    assert output.startswith('d=4  ')

  def test_align_config_penalties(self):
    config = Config(self._path('dsalign.cfg'))
    config.add_section(config.global_section)
    config.set(config.global_section, 'penalties', '0,2,3,1')
    config.add_section('dsalign.command')
    config.set('dsalign.command', 'log.disable', 'true')
    stdout = io.StringIO()
    main(['align'] + self._inputs('ACGT', 'ACT'), config=config, stdout=stdout)
    assert stdout.getvalue().startswith('d=4  ')

  def test_align_json(self):
    report = json.loads(self._align('AC[GC/AT]A', 'ACGTA', '--json'))
    assert report['distance'] == 1
    assert report['counts']['X'] == 1
    assert report['oracle_distance'] is None
    assert report['wall_time'] is None
    assert report['peak_memory'] is None

  def test_align_timing(self):
    output = self._align('ACGT', 'ACGT', '--json', '--timing')
    assert json.loads(output)['wall_time'] is not None

  def test_align_invalid_penalties(self):
    argv = ['align', '-p', '1,1,2,1'] + self._inputs('ACGT', 'ACGT')
    assert self._exit_code(argv) == 2

  def test_align_parse_error(self):
    argv = ['align'] + self._inputs('AC[GT', 'ACGT')
    assert self._exit_code(argv) == 2

  def test_align_invalid_pattern(self):
    argv = ['align'] + self._inputs('AC[GC/AT]A', 'acgu')
    assert self._exit_code(argv) == 2
    argv = ['align', '-a', 'ACGTacgt'] + self._inputs('ACGT', 'ACgt')
    assert self._main(argv) == 'd=2  2M 2X 0I 0D 0G\n'

  def test_align_oracle_cap(self):
    argv = ['align', '-o', '-c', '2'] + self._inputs(EXAMPLE, 'GCA')
    assert self._exit_code(argv) == 2

  def test_usage_error(self):
    assert self._exit_code(['foo']) == 2

  def test_generate(self):
    path = self._path('text.dst')
    assert self._main(['generate', '100', '0', path]) == 'n=100 N=100 W=100\n'
    assert len(_read(path)) == 101

  def test_generate_degenerate(self):
    argv = ['generate', '-s', '3', '-S', '2', '1000', '0.01', self._path('a')]
    assert self._main(argv) == 'n=1000 N=1010 W=1000\n'

  def test_generate_deterministic(self):
    first = self._path('first.dst')
    second = self._path('second.dst')
    self._main(['generate', '-s', '7', '500', '0.1', first])
    self._main(['generate', '-s', '7', '500', '0.1', second])
    assert filecmp.cmp(first, second, shallow=False)

  def test_info(self):
    path = self._path('text.dst')
    _write(path, EXAMPLE)
    assert self._main(['info', path]) == 'n=11 N=20 W=13 members=12\n'

  def test_mutate_pristine(self):
    dstring = self._path('text.dst')
    pattern = self._path('pattern.txt')
    truth = self._path('truth.json')
    self._main(['generate', '1000', '0.01', dstring])
    argv = ['mutate', '--snps', '0', '--indels', '0', dstring, pattern, truth]
    assert self._main(argv) == '0X 0I 0D 0G\n'
    member = extract_member(load_dstring(dstring), 1)
    assert _read(pattern) == member + '\n'
    log = json.loads(_read(truth))
    assert log['expected']['distance'] == 0
    assert log['seeds'] == {'member': 1, 'snps': 2, 'indels': 3}
    output = self._main(['align', dstring, pattern])
    assert output == 'd=0  1000M 0X 0I 0D 0G\n'

  def test_mutate_indels(self):
    dstring = self._path('text.dst')
    pattern = self._path('pattern.txt')
    truth = self._path('truth.json')
    self._main(['generate', '1000', '0.01', dstring])
    argv = [
      'mutate', '--indels', '0.01', '--spacing', '32', dstring, pattern, truth,
    ]
    output = self._main(argv)
    assert output.startswith('0X ')
    assert output.endswith(' 10G\n')
    log = json.loads(_read(truth))
    assert len(log['indels']['events']) == 10
    output = self._main(['align', dstring, pattern])
    assert output.endswith(' 0X {I}I {D}D 10G\n'.format(**log['expected']))

  def test_bench(self):
    argv = [
      'bench', '--scale', '500', '--grid', '0.01:2:1',
      '--divergences', 'none,snp:0.01',
    ]
    lines = self._main(argv).rstrip('\n').split('\n')
    assert len(lines) == 3
    assert lines[1].startswith('g=1%,S=2,L=1,none')
    assert all(line.endswith('pass') for line in lines[1:])

  def test_bench_json(self):
    argv = ['bench', '--scale', '500', '--grid', '0.1:2:1', '--json']
    reports = json.loads(self._main(argv))
    assert len(reports) == 4
    assert all(report['passed'] for report in reports)
