#!/usr/bin/env python
# encoding: utf-8

"""dsalign: exact alignment of strings to degenerate strings."""

from .alignment import AlignmentResult, Penalties
from .config import Config, NullHandler
from .dstring import (
  DString, DegenerateLetter, format_dstring, load_dstring, load_pattern,
  parse_dstring,
)
from .oracle import gotoh_align, oracle_affine, poa_align_linear
from .util import DsaError
from .wavefront import dwf_align
import logging as lg


__version__ = '0.1.0'
__license__ = 'MIT'


lg.getLogger(__name__).addHandler(NullHandler())
