#!/usr/bin/env python
# encoding: utf-8

"""Test helpers."""

from dsalign.dstring import parse_dstring
from dsalign.simgen import SimSpec, extract_member, generate_dstring, make_rng

#: D-string used throughout the examples of the documentation.
EXAMPLE = 'GCA[AT/CG]C[G/T]GG[TA/AA/AT]TT'


def save_config(config, path=None):
  """Save configuration to file.

  :param config: :class:`~dsalign.config.Config` instance.

  """
  with open(path or config.path, 'w') as writer:
    config.write(writer)


def example_dstring():
  """Parsed :data:`EXAMPLE`."""
  return parse_dstring(EXAMPLE)


def random_instance(seed, max_width=40, max_members=1000, alphabet='ACGT'):
  """Small random D-string and diverged member.

  :param seed: Random seed.
  :param max_width: Largest width drawn.
  :param max_members: D-strings with more members are redrawn.
  :param alphabet: Characters used.

  The pattern is a member with up to 3 substitutions then up to 2 indels, each
  of length at most 3. Returns the D-string and the pattern.

  """
  rng = make_rng(seed)
  while True:
    width = int(rng.integers(1, max_width + 1))
    S = int(rng.integers(2, 4))
    L = int(rng.integers(1, 4))
    g = float(rng.uniform(0, 0.3)) / L
    ds = generate_dstring(
      SimSpec(width, g, S, L, int(rng.integers(1 << 30))), alphabet
    )
    count = ds.count_members()
    if count is not None and count <= max_members:
      break
  chars = list(extract_member(ds, int(rng.integers(1 << 30))))
  for _ in range(int(rng.integers(0, 4))):
    chars[int(rng.integers(len(chars)))] = alphabet[
      int(rng.integers(len(alphabet)))
    ]
  for _ in range(int(rng.integers(0, 3))):
    length = int(rng.integers(1, 4))
    if rng.integers(2) and len(chars) > length:
      pos = int(rng.integers(len(chars) - length + 1))
      del chars[pos:pos + length]
    else:
      pos = int(rng.integers(len(chars) + 1))
      chars[pos:pos] = [
        alphabet[int(code)]
        for code in rng.integers(len(alphabet), size=length)
      ]
  return ds, ''.join(chars)


def random_instances(count, seed=0, **kwargs):
  """Generate `count` instances from consecutive seeds."""
  for index in range(count):
    yield random_instance(seed + index, **kwargs)
