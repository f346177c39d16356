#!/usr/bin/env python
# encoding: utf-8

"""Common utilities."""

from contextlib import closing, contextmanager
from multiprocessing.pool import ThreadPool
from shutil import rmtree
from tempfile import mkstemp
import hashlib
import logging as lg
import os
import os.path as osp


_logger = lg.getLogger(__name__)


class DsaError(Exception):

  """Base error class.

  :param message: Error message.
  :param args: optional Message formatting arguments.

  The `status` attribute is the exit code used by the command line interface
  when this error reaches it. Errors caused by bad input or usage exit with 2.

  """

  status = 2

  def __init__(self, message, *args):
    self.message = message % args if args else message
    super(DsaError, self).__init__(self.message)


class VerificationError(DsaError):

  """Raised when an alignment fails a consistency or oracle check."""

  status = 1


def map_async(pool_size, func, args):
  """Run function concurrently in a thread pool.

  :param pool_size: Number of workers. With a single worker, calls are made
    sequentially in the current thread.
  :param func: Function to apply, taking a single argument.
  :param args: List of arguments, one per call.

  Results are returned in argument order.

  """
  if pool_size <= 1 or len(args) <= 1:
    return [func(arg) for arg in args]
  pool = ThreadPool(pool_size)
  with closing(pool):
    # `map` would block keyboard interrupts.
    results = pool.map_async(func, args).get(1 << 22) # 6+ weeks.
  pool.join()
  return results


def digest(text):
  """SHA-1 hex digest of a text input, used to identify runs.

  :param text: Unicode string.

  """
  return hashlib.sha1(text.encode('utf-8')).hexdigest()


@contextmanager
def temppath(dpath=None):
  """Context manager yielding an unused path, removed on exit.

  :param dpath: Parent directory, defaults to the system's temporary directory.

  Whatever the block creates at the path, file or directory, is deleted
  afterwards. Tests use it for D-string, pattern, and configuration files.

  """
  desc, path = mkstemp(dir=dpath)
  os.close(desc)
  os.remove(path)
  try:
    yield path
  finally:
    if osp.isdir(path):
      rmtree(path)
    elif osp.exists(path):
      os.remove(path)
    _logger.debug('Released temporary path %s.', path)
