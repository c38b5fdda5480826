"""Tests for random_utils.py."""

from absl.testing import absltest
from absl.testing import parameterized
import numpy as np

import random_utils as prng


class KeyTest(parameterized.TestCase):

  def test_split_shape(self):
    keys = prng.split(prng.PRNGKey(0), num=3)
    self.assertEqual(keys.shape, (3, 2))
    self.assertEqual(keys.dtype, np.int32)
    self.assertLen({tuple(k) for k in keys.tolist()}, 3)

  def test_deterministic(self):
    np.testing.assert_array_equal(prng.PRNGKey(7), prng.PRNGKey(7))
    self.assertEqual(prng.fold_in(prng.PRNGKey(7), 3),
                     prng.fold_in(prng.PRNGKey(7), 3))

  def test_fold_in_carries_data(self):
    key = prng.PRNGKey(1)
    self.assertEqual(prng.fold_in(key, 5)[1], 5)
    self.assertNotEqual(prng.split(prng.fold_in(key, 0)).tolist(),
                        prng.split(prng.fold_in(key, 1)).tolist())

  @parameterized.parameters(-1, -(2 ** 31), 2 ** 31 - 1)
  def test_signed_seeds_are_accepted(self, seed):
    self.assertEqual(prng.split(seed).shape, (2, 2))


class DigraphTest(absltest.TestCase):

  def test_edge_probability_extremes(self):
    key = prng.PRNGKey(0)
    self.assertEmpty(prng.random_digraph(key, 3, edge_probability=0.0).edges)
    self.assertLen(prng.random_digraph(key, 3, edge_probability=1.0).edges, 9)

  def test_pairs_are_reproducible(self):
    first = prng.random_digraph_pairs(0, 3, 5)
    second = prng.random_digraph_pairs(0, 3, 5)
    self.assertLen(first, 5)
    self.assertEqual([(g.edges, h.edges) for g, h in first],
                     [(g.edges, h.edges) for g, h in second])
    for g, h in first:
      self.assertEqual(g.vertex_count, 3)
      self.assertEqual(h.vertex_count, 3)

  def test_seeds_differ(self):
    first = prng.random_digraph_pairs(0, 4, 10)
    second = prng.random_digraph_pairs(1, 4, 10)
    self.assertNotEqual([(g.edges, h.edges) for g, h in first],
                        [(g.edges, h.edges) for g, h in second])


if __name__ == '__main__':
  absltest.main()
