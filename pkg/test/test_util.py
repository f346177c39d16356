#!/usr/bin/env python
# encoding: utf-8

"""Test common utilities."""

from dsalign.util import *
import os
import os.path as osp
import pytest
import threading


class TestDsaError(object):

  def test_format(self):
    err = DsaError('Invalid %r option: %s.', 'foo', 3)
    assert err.message == "Invalid 'foo' option: 3."
    assert str(err) == err.message

  def test_no_args(self):
    assert DsaError('100%').message == '100%'

  def test_status(self):
    assert DsaError('a').status == 2
    assert VerificationError('b').status == 1
    assert isinstance(VerificationError('b'), DsaError)


class TestMapAsync(object):

  def test_sequential(self):
    assert map_async(1, lambda n: n * 2, [1, 2, 3]) == [2, 4, 6]

  def test_order(self):
    assert map_async(4, lambda n: n * 2, list(range(20))) == [
      2 * n for n in range(20)
    ]

  def test_threads(self):
    names = map_async(
      3, lambda _: threading.current_thread().name, list(range(6))
    )
    assert threading.current_thread().name not in names

  def test_error(self):
    def fail(n):
      if n == 2:
        raise DsaError('Yo')
      return n
    with pytest.raises(DsaError):
      map_async(2, fail, [1, 2, 3])


class TestDigest(object):

  def test_stable(self):
    assert digest('ACGT') == digest(u'ACGT')
    assert digest('ACGT') != digest('ACGA')
    assert len(digest('')) == 40


class TestTemppath(object):

  def test_new(self):
    with temppath() as tpath:
      assert not osp.exists(tpath)

  def test_cleanup(self):
    with temppath() as tpath:
      with open(tpath, 'w') as writer:
        writer.write('hi')
    assert not osp.exists(tpath)

  def test_dpath(self):
    with temppath() as dpath:
      os.mkdir(dpath)
      with temppath(dpath) as tpath:
        assert osp.dirname(tpath) == dpath
