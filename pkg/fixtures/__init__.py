"""Built-in fixtures, addressable by name from the command line."""

import os
from typing import Any, Callable, Dict

import io_formats
import synth

_FIXTURE_DIR = os.path.dirname(os.path.abspath(__file__))


def _s3_gset():
  # (0 1) is the third permutation of range(3) in lexicographic order.
  return synth.gset_coset_algebra(synth.symmetric_group_table(3), [0, 2])


def _klein4():
  return synth.group_algebra(synth.klein_four_table(), 'V4')


FIXTURES: Dict[str, Dict[str, Any]] = {
    'fig2-poset': {
        'kind': io_formats.POSET,
        'path': 'fig2_poset.json',
    },
    'fig4-U': {
        'kind': io_formats.ALGEBRA,
        'path': 'fig4_u.json',
    },
    'fig4-G': {
        'kind': io_formats.DIGRAPH,
        'path': 'fig4_g.json',
    },
    'fig6-pentagon': {
        'kind': io_formats.ALGEBRA,
        'path': 'fig6_pentagon.json',
    },
    's3-gset': {
        'kind': io_formats.ALGEBRA,
        'builder': _s3_gset,
    },
    'klein4': {
        'kind': io_formats.ALGEBRA,
        'builder': _klein4,
    },
}


def fixture_text(name: str) -> str:
  """The canonical JSON text of a fixture.

  Raises:
    KeyError: no fixture has this name.
  """
  if name not in FIXTURES:
    raise KeyError(f'unknown fixture {name!r}; choices: {sorted(FIXTURES)}')
  entry = FIXTURES[name]
  if 'path' in entry:
    with open(os.path.join(_FIXTURE_DIR, entry['path']), encoding='utf-8') as f:
      return f.read()
  build: Callable[[], Any] = entry['builder']
  return io_formats.dump_algebra(build())
