"""Seeded key-splitting RNG over numpy, and random structures built from it.

Keys are pairs of int32 values. A key is never used twice: `split` derives
independent child keys and `fold_in` mixes data (a sample index) into a key.
"""
from typing import List, Sequence, Union

import numpy as np

import synth

# Seeds must be unsigned 32-bit, but keys are drawn as signed int32.
MAX_INT32 = 2 ** 31
MIN_INT32 = -MAX_INT32

Key = Union[int, List[int], np.ndarray]


def _signed_to_unsigned(seed: Key):
  if isinstance(seed, (int, np.integer)):
    seed = int(seed)
    return seed + 2 ** 32 if seed < 0 else seed
  return [int(s) + 2 ** 32 if s < 0 else int(s) for s in np.ravel(seed)]


def _rng(key: Key) -> np.random.RandomState:
  return np.random.RandomState(seed=_signed_to_unsigned(key))


def fold_in(key: Key, data: int) -> List[int]:
  new_seed = _rng(key).randint(MIN_INT32, MAX_INT32, dtype=np.int32)
  return [int(new_seed), int(data)]


def split(key: Key, num: int = 2) -> np.ndarray:
  return _rng(key).randint(MIN_INT32, MAX_INT32, dtype=np.int32, size=[num, 2])


def PRNGKey(seed: int) -> np.ndarray:
  return split(seed, num=2)[0]


def random_digraph(key: Key, vertex_count: int,
                   edge_probability: float = 0.5) -> synth.Digraph:
  """A digraph on `vertex_count` vertices, each possible edge kept
  independently."""
  keep = _rng(key).random_sample((vertex_count, vertex_count)) < edge_probability
  edges = frozenset((int(a), int(b)) for a, b in np.argwhere(keep))
  return synth.Digraph(vertex_count, edges)


def random_digraph_pairs(seed: int, vertex_count: int, num_pairs: int
                        ) -> List[Sequence[synth.Digraph]]:
  """`num_pairs` independent (G, H) pairs, reproducible from `seed`."""
  key = PRNGKey(seed)
  pairs = []
  for index in range(num_pairs):
    first_key, second_key = split(fold_in(key, index))
    pairs.append((random_digraph(first_key, vertex_count),
                  random_digraph(second_key, vertex_count)))
  return pairs
