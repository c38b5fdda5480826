"""Tests for order.py."""

import itertools

from absl.testing import absltest
from absl.testing import parameterized
import numpy as np

import order
import spec

# 1..6 with 5<3, 6<3, 6<4, 3<1, 3<2, 4<2, as indices 0..5.
FIG2_COVERS = [(4, 2), (5, 2), (5, 3), (2, 0), (2, 1), (3, 1)]
FIG2_LABELS = ['1', '2', '3', '4', '5', '6']


def fig2_poset():
  return order.Poset.from_covers(6, FIG2_COVERS, FIG2_LABELS)


def brute_force_downsets(poset):
  found = []
  for bits in itertools.product([False, True], repeat=poset.size):
    members = [i for i in range(poset.size) if bits[i]]
    if all(poset.le(j, i) is False or j in members
           for i in members for j in range(poset.size)):
      found.append(frozenset(members))
  return found


class PosetTest(parameterized.TestCase):

  def test_from_covers_closes_transitively(self):
    poset = fig2_poset()
    self.assertTrue(poset.le(4, 0))
    self.assertTrue(poset.le(5, 1))
    self.assertFalse(poset.le(4, 3))
    self.assertEqual(sorted(poset.cover_pairs), sorted(FIG2_COVERS))

  def test_queries(self):
    poset = fig2_poset()
    self.assertEqual(poset.maximals, (0, 1))
    self.assertEqual(poset.minimals, (4, 5))
    self.assertIsNone(poset.top)
    self.assertIsNone(poset.bottom)
    self.assertEqual(poset.lower_covers[2], (4, 5))
    self.assertEqual(poset.upper_covers[5], (2, 3))
    self.assertEqual(poset.heights, (2, 2, 1, 1, 0, 0))

  def test_cycle_is_rejected_with_path(self):
    with self.assertRaisesRegex(spec.CyclicCoversError, 'a -> b -> a'):
      order.Poset.from_covers(2, [(0, 1), (1, 0)], ['a', 'b'])

  def test_redundant_cover(self):
    covers = [(0, 1), (1, 2), (0, 2)]
    with self.assertRaises(spec.RedundantCoverError):
      order.Poset.from_covers(3, covers)
    poset = order.Poset.from_covers(3, covers, reduce=True)
    self.assertEqual(poset.cover_pairs, ((0, 1), (1, 2)))

  def test_leq_must_be_a_partial_order(self):
    with self.assertRaises(spec.NotQuasiOrderError):
      order.Poset([[False]])
    with self.assertRaises(spec.CyclicCoversError):
      order.Poset([[True, True], [True, True]])

  def test_remove_top(self):
    poset = order.chain(3).remove_top()
    self.assertEqual(poset.size, 2)
    with self.assertRaises(spec.NoTopError):
      order.antichain(2).remove_top()

  def test_sub_poset_keeps_labels(self):
    sub = fig2_poset().sub_poset([0, 2, 4])
    self.assertEqual(sub.labels, ('1', '3', '5'))
    self.assertEqual(sub.cover_pairs, ((1, 0), (2, 1)))


class LatticeTest(parameterized.TestCase):

  def test_chain_tables(self):
    chain = order.chain(4)
    self.assertEqual(chain.join(1, 3), 3)
    self.assertEqual(chain.meet(1, 3), 1)

  def test_antichain_is_not_a_lattice(self):
    with self.assertRaisesRegex(spec.NotALatticeError, 'no join'):
      order.Lattice.from_poset(order.antichain(2))

  def test_divisor_lattice_of_12(self):
    lattice = order.divisor_lattice(12)
    labels = list(lattice.labels)
    self.assertEqual(labels, ['1', '2', '3', '4', '6', '12'])
    four, six = labels.index('4'), labels.index('6')
    self.assertEqual(lattice.labels[lattice.join(four, six)], '12')
    self.assertEqual(lattice.labels[lattice.meet(four, six)], '2')
    self.assertTrue(order.is_distributive(lattice))

  def test_pentagon_is_not_distributive(self):
    pentagon = order.Lattice.from_poset(order.Poset.from_covers(
        5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]))
    self.assertFalse(order.is_distributive(pentagon))

  def test_diamond_is_not_distributive(self):
    diamond = order.Lattice.from_poset(order.Poset.from_covers(
        5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]))
    self.assertFalse(order.is_distributive(diamond))


class DownsetTest(parameterized.TestCase):

  @parameterized.named_parameters(
      ('fig2', fig2_poset(), 12),
      ('empty', order.antichain(0), 1),
      ('one', order.chain(1), 2),
      ('antichain2', order.antichain(2), 4),
      ('chain3', order.chain(3), 4),
  )
  def test_downset_lattice_size(self, poset, expected):
    lattice = order.downset_lattice(poset)
    self.assertLen(lattice, expected)
    self.assertTrue(order.is_distributive(lattice))

  def test_downsets_match_brute_force(self):
    for n in range(1, 5):
      for poset in order.enumerate_posets(n):
        found = {frozenset(order._mask_members(m))
                 for m in order.downsets(poset)}
        self.assertEqual(found, set(brute_force_downsets(poset)))

  def test_budget(self):
    with self.assertRaises(spec.BudgetExceededError):
      order.downsets(order.antichain(4), budget=10)

  def test_birkhoff_duality(self):
    poset = fig2_poset()
    irreducibles = order.join_irreducibles(order.downset_lattice(poset))
    self.assertIsNotNone(order.poset_iso(irreducibles, poset))

  @parameterized.parameters(1, 2, 3, 4, 5)
  def test_birkhoff_duality_over_census(self, n):
    for poset in order.enumerate_posets(n):
      lattice = order.downset_lattice(poset)
      irreducibles = order.join_irreducibles(lattice)
      self.assertIsNotNone(order.poset_iso(irreducibles, poset), repr(poset))
      self.assertIsNotNone(
          order.poset_iso(order.downset_lattice(irreducibles), lattice))

  @parameterized.parameters(6, 12, 30, 36)
  def test_divisor_lattices_are_down_sets_of_their_irreducibles(self, n):
    lattice = order.divisor_lattice(n)
    rebuilt = order.downset_lattice(order.join_irreducibles(lattice))
    self.assertIsNotNone(order.poset_iso(rebuilt, lattice))

  def test_nonempty_upsets_superset(self):
    upsets = order.nonempty_upsets(order.antichain(2))
    self.assertLen(upsets, 3)
    self.assertNotIsInstance(upsets, order.Lattice)
    # The whole set is below both singletons under reverse inclusion.
    self.assertEqual(upsets.minimals, (upsets.labels.index('{0,1}'),))

  def test_nonempty_upsets_subset_of_d6(self):
    upsets = order.nonempty_upsets(
        order.divisor_lattice(6), ordering=spec.UpsetOrdering.SUBSET)
    self.assertIsInstance(upsets, order.Lattice)
    self.assertLen(upsets, 5)
    self.assertEqual(upsets.labels[upsets.top], '{1,2,3,6}')
    square = order.downset_lattice(order.antichain(2))
    below_top = upsets.sub_poset(
        [i for i in range(upsets.size) if i != upsets.top])
    self.assertIsNotNone(order.poset_iso(below_top, square))

  def test_nonempty_upsets_of_empty_poset(self):
    with self.assertRaises(spec.EmptyPosetError):
      order.nonempty_upsets(order.antichain(0))


class ConstructionTest(parameterized.TestCase):

  def test_add_top_and_sharp(self):
    ptop = order.add_top(fig2_poset())
    self.assertEqual(ptop.top, 6)
    self.assertEqual(ptop.labels[6], spec.TOP_LABEL)
    psharp = order.sharp(ptop)
    self.assertLen(psharp, 9)
    self.assertEqual(psharp.labels[7:], ("5'", "6'"))
    self.assertEqual(psharp.upper_covers[7], (4,))
    self.assertEqual(psharp.upper_covers[8], (5,))

  def test_sharp_needs_top(self):
    with self.assertRaises(spec.NoTopError):
      order.sharp(fig2_poset())

  @parameterized.parameters((0, 1), (1, 1), (2, 2), (3, 5), (4, 16))
  def test_enumerate_posets_census(self, n, expected):
    self.assertLen(order.enumerate_posets(n), expected)

  def test_enumerated_posets_are_pairwise_non_isomorphic(self):
    posets = order.enumerate_posets(4)
    for first, second in itertools.combinations(posets, 2):
      self.assertIsNone(order.poset_iso(first, second))

  def test_poset_iso_witness_preserves_order(self):
    poset = fig2_poset()
    permutation = [3, 0, 5, 1, 2, 4]
    leq = np.zeros((6, 6), dtype=bool)
    for a, b in itertools.product(range(6), repeat=2):
      leq[permutation[a], permutation[b]] = poset.leq[a, b]
    witness = order.poset_iso(poset, order.Poset(leq))
    self.assertIsNotNone(witness)
    for a, b in itertools.product(range(6), repeat=2):
      self.assertEqual(poset.leq[a, b], leq[witness[a], witness[b]])

  def test_lcm(self):
    self.assertEqual(order.lcm([4, 6]), 12)
    self.assertEqual(order.lcm([]), 1)


class CoveringForestTest(parameterized.TestCase):

  def test_fig2_words(self):
    forest = order.covering_forest(fig2_poset())
    labels = sorted(forest.label(x, separator='')
                    for x in range(len(forest.words)))
    self.assertEqual(
        labels,
        ['1', '2', '31', '32', '42', '531', '532', '631', '632', '642'])
    self.assertIn('5.3.1', [forest.label(x) for x in range(len(forest.words))])

  def test_fig2_order_is_final_segment(self):
    forest = order.covering_forest(fig2_poset())
    for x, y in itertools.product(range(len(forest.words)), repeat=2):
      u, v = forest.words[x], forest.words[y]
      self.assertEqual(forest.order.le(x, y), u[len(u) - len(v):] == v)

  def test_phi_is_a_covering_map(self):
    poset = fig2_poset()
    forest = order.covering_forest(poset)
    self.assertTrue(order.is_covering_map(forest.phi, forest.order, poset))
    self.assertTrue(order.is_cover_preserving(forest.phi, forest.order, poset))

  def test_sharp_forest_has_16_words(self):
    forest = order.covering_forest(order.sharp(order.add_top(fig2_poset())))
    self.assertLen(forest.words, 16)

  def test_psi_and_up(self):
    forest = order.covering_forest(fig2_poset())
    x = forest.index((2, 0))
    self.assertEqual(forest.up(x), forest.index((0,)))
    self.assertIsNone(forest.up(forest.index((0,))))
    self.assertEqual(forest.psi(x, 4), forest.index((4, 2, 0)))
    with self.assertRaises(ValueError):
      forest.psi(x, 3)

  def test_down_set(self):
    forest = order.covering_forest(fig2_poset())
    down = forest.down_set(forest.index((1,)))
    self.assertLen(down, 6)

  def test_shift_map_is_an_isomorphism_over_phi(self):
    forest = order.covering_forest(fig2_poset())
    u, v = forest.index((2, 0)), forest.index((2, 1))
    mapping = order.shift_map(forest, u, v)
    self.assertEqual(sorted(mapping.values()), sorted(forest.down_set(v)))
    for x, y in mapping.items():
      self.assertEqual(forest.phi[x], forest.phi[y])
    with self.assertRaises(ValueError):
      order.shift_map(forest, u, forest.index((3, 1)))

  def test_budget(self):
    with self.assertRaises(spec.BudgetExceededError):
      order.covering_forest(fig2_poset(), budget=5)

  def test_lift_chain(self):
    poset = fig2_poset()
    forest = order.covering_forest(poset)
    lifted = order.lift_chain(forest.phi, forest.order, poset, [5, 3, 1])
    self.assertEqual(forest.words[lifted[0]], (5, 3, 1))
    self.assertEqual([forest.phi[a] for a in lifted], [5, 3, 1])

  @parameterized.parameters(1, 2, 3, 4, 5, 6)
  def test_every_covering_chain_lifts(self, n):
    for poset in order.enumerate_posets(n):
      for base in (poset, order.sharp(order.add_top(poset))):
        forest = order.covering_forest(base)
        for word in forest.words:
          lifted = order.lift_chain(forest.phi, forest.order, base, word)
          self.assertIsNotNone(lifted, f'{word} in {base!r}')
          self.assertEqual([forest.phi[a] for a in lifted], list(word))
          self.assertIn(lifted[-1], forest.order.maximals)
          for lower, upper in zip(lifted, lifted[1:]):
            self.assertTrue(forest.order.child[lower, upper])


class MapTest(parameterized.TestCase):

  def test_covering_and_quotient_maps_on_small_posets(self):
    # The covering forest projection is a covering map, and every covering
    # map onto a poset is a quotient map.
    for n in range(1, 6):
      for poset in order.enumerate_posets(n):
        forest = order.covering_forest(poset)
        self.assertTrue(
            order.is_covering_map(forest.phi, forest.order, poset))
        self.assertTrue(
            order.is_quotient_map(forest.phi, forest.order, poset))

  def test_quotient_map_must_preserve_order(self):
    with self.assertRaises(spec.NotOrderPreservingError):
      order.is_quotient_map([1, 0], order.chain(2), order.chain(2))

  def test_collapsing_map_is_not_a_quotient_of_a_chain(self):
    self.assertFalse(
        order.is_quotient_map([0, 0], order.antichain(2), order.chain(2)))

  def test_condense(self):
    relation = np.array([
        [1, 1, 1],
        [1, 1, 1],
        [0, 0, 1],
    ], dtype=bool)
    poset, block_ids = order.condense(relation, ['a', 'b', 'c'])
    self.assertEqual(block_ids, (0, 0, 1))
    self.assertEqual(poset.labels, ('a', 'c'))
    self.assertTrue(poset.le(0, 1))

  def test_condense_rejects_non_transitive(self):
    relation = np.array([[1, 1, 0], [0, 1, 1], [0, 0, 1]], dtype=bool)
    with self.assertRaises(spec.NotQuasiOrderError):
      order.condense(relation)


if __name__ == '__main__':
  absltest.main()
