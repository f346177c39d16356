#!/usr/bin/env python
# encoding: utf-8

"""Command line interface configuration module.

This module provides programmatic access to dsalign's configuration settings:
default penalties, alphabet, oracle member cap, bench parallelism, and
per-command logging.

"""

from .alignment import Penalties
from .dstring import DEFAULT_ALPHABET, check_alphabet
from .oracle import DEFAULT_MEMBER_CAP
from .util import DsaError
from docopt import DocoptExit
from functools import wraps
from logging.handlers import TimedRotatingFileHandler
from six.moves.configparser import ParsingError, RawConfigParser
from tempfile import gettempdir
import logging as lg
import os
import os.path as osp
import sys

_logger = lg.getLogger(__name__)

#: Record formats of the stream (stderr) and file handlers.
STREAM_FORMAT = '%(levelname)s\t%(message)s'
FILE_FORMAT = '%(asctime)s\t%(name)-16s\t%(levelname)-5s\t%(message)s'


class NullHandler(lg.Handler):

  """Handler dropping all records, used when file logging is disabled."""

  def emit(self, record):
    pass


class Config(RawConfigParser):

  """dsalign configuration.

  :param path: Configuration file. Defaults to the `DSALIGN_CONFIG`
    environment variable if set, `~/.dsalign.cfg` otherwise. A missing file
    yields an empty configuration.
  :param stream_log_level: When set, records at this level or above are also
    written to stderr (via the root logger). :func:`catch` relies on this to
    surface errors to the user.

  Defaults are read from the `global` section, for example:

  .. code-block:: cfg

    [global]
    penalties = 0,1,2,1
    alphabet = ACGT
    member.cap = 100000
    threads = 4

  Logging is configured per command, in a `COMMAND.command` section:

  .. code-block:: cfg

    [dsalign.command]
    log.level = INFO
    log.path = /var/log/dsalign.log

  """

  default_path = osp.expanduser('~/.dsalign.cfg')
  global_section = 'global'

  def __init__(self, path=None, stream_log_level=None):
    RawConfigParser.__init__(self)
    self.path = path or os.getenv('DSALIGN_CONFIG', self.default_path)
    if stream_log_level:
      handler = lg.StreamHandler()
      handler.setLevel(stream_log_level)
      handler.setFormatter(lg.Formatter(STREAM_FORMAT))
      lg.getLogger().addHandler(handler)
    if not osp.exists(self.path):
      _logger.info('No configuration file at %r.', self.path)
      return
    try:
      self.read(self.path)
    except ParsingError:
      raise DsaError('Invalid configuration file %r.', self.path)
    _logger.info('Loaded configuration from %r.', self.path)

  def __repr__(self):
    return '<Config(path={!r})>'.format(self.path)

  def _get_global(self, option):
    """Raw value of a global option, `None` if absent."""
    if (
      self.has_section(self.global_section) and
      self.has_option(self.global_section, option)
    ):
      return self.get(self.global_section, option)
    return None

  def get_penalties(self):
    """Default :class:`~dsalign.alignment.Penalties`."""
    value = self._get_global('penalties')
    return Penalties.from_string(value) if value else Penalties()

  def get_alphabet(self):
    """Default alphabet."""
    value = self._get_global('alphabet') or DEFAULT_ALPHABET
    check_alphabet(value)
    return value

  def get_member_cap(self):
    """Maximum number of members enumerated by the oracle."""
    return self._get_int('member.cap', DEFAULT_MEMBER_CAP)

  def get_threads(self):
    """Number of bench cells run concurrently."""
    return self._get_int('threads', 1)

  def _get_int(self, option, default):
    value = self._get_global(option)
    if value is None:
      return default
    try:
      number = int(value)
    except ValueError:
      number = 0
    if number < 1:
      raise DsaError('Invalid %r option in %r: %r.', option, self.path, value)
    return number

  def _get_command(self, command, option):
    """Raw value of a command option, `None` if absent."""
    section = '{}.command'.format(command)
    if self.has_section(section) and self.has_option(section, option):
      return self.get(section, option)
    return None

  def get_log_handler(self, command):
    """File handler for a command's logs.

    :param command: Command name, options are read from its `COMMAND.command`
      section.

    Returns a :class:`NullHandler` if `log.disable` is true. Otherwise logs go
    to a file rotated daily, `COMMAND.log` in the temporary directory unless
    `log.path` says otherwise, at `log.level` (default `DEBUG`).

    """
    disable = self._get_command(command, 'log.disable')
    if disable and self.BOOLEAN_STATES.get(disable.lower()):
      return NullHandler()
    path = (
      self._get_command(command, 'log.path') or
      osp.join(gettempdir(), '{}.log'.format(command))
    )
    level_name = self._get_command(command, 'log.level') or 'DEBUG'
    level = getattr(lg, level_name.upper(), None)
    if not isinstance(level, int):
      raise DsaError('Invalid log level for %r: %r.', command, level_name)
    handler = TimedRotatingFileHandler(
      path, when='midnight', backupCount=1, encoding='utf-8'
    )
    handler.setFormatter(lg.Formatter(FILE_FORMAT))
    handler.setLevel(level)
    return handler


def catch(*error_classes):
  r"""Decorate a command line entry point to turn errors into exit codes.

  :param \*error_classes: Expected error classes. Their message is logged and
    the process exits with the error's `status` attribute (1 if absent).

  A docopt usage error prints the usage and exits with 2. Anything else is
  logged with its traceback and exits with 1.

  """
  def decorator(func):
    @wraps(func)
    def wrapper(*args, **kwargs):
      try:
        return func(*args, **kwargs)
      except DocoptExit as err:
        sys.stderr.write('{}\n'.format(err))
        sys.exit(2)
      except error_classes as err:
        _logger.error(err)
        sys.exit(getattr(err, 'status', 1))
      except Exception: # pylint: disable=broad-except
        _logger.exception('Unexpected error.')
        sys.exit(1)
    return wrapper
  return decorator
