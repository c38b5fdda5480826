"""Tests for synth.py."""

import itertools

from absl.testing import absltest
from absl.testing import parameterized
import numpy as np

import algebra as algebra_lib
import hom_search
import order
import spec
import synth

# 1..6 with 5<3, 6<3, 6<4, 3<1, 3<2, 4<2, as indices 0..5.
FIG2_COVERS = [(4, 2), (5, 2), (5, 3), (2, 0), (2, 1), (3, 1)]


def fig2_poset():
  return order.Poset.from_covers(6, FIG2_COVERS,
                                 ['1', '2', '3', '4', '5', '6'])


class QuasiprimalTest(parameterized.TestCase):

  def test_fig2_universe(self):
    bundle = synth.synthesize_quasiprimal(fig2_poset())
    alg = bundle.algebra
    self.assertEqual(alg.size, 16)
    self.assertEqual(alg.name, 'Q')
    self.assertEqual(alg.label(bundle.top_index), spec.TOP_LABEL)
    self.assertIn("5'.5.3.1." + spec.TOP_LABEL, alg.element_labels())
    self.assertLen(bundle.s_elements, 11)
    self.assertEqual(bundle.primes, {4: 7, 5: 8})
    self.assertEqual(
        alg.signature.names,
        ('join', 'f_0_2', 'f_1_2', 'f_1_3', 'f_2_4', 'f_2_5', 'f_3_5',
         'f_4_7', 'f_5_8', 'g_4', 'g_5', 'h', 'tau'))

  def test_operations(self):
    bundle = synth.synthesize_quasiprimal(fig2_poset())
    alg = bundle.algebra
    top = bundle.top_index
    three_one = bundle.index((2, 0, 6))
    self.assertEqual(alg.apply('f_2_5', three_one), bundle.index((5, 2, 0, 6)))
    self.assertEqual(alg.apply('f_2_5', top), top)
    primed = bundle.index((7, 4, 2, 1, 6))
    self.assertEqual(alg.apply('g_4', primed), bundle.index((4, 2, 1, 6)))
    self.assertEqual(alg.apply('join', three_one, bundle.index((4, 2, 0, 6))),
                     three_one)
    self.assertEqual(
        alg.apply('join', three_one, bundle.index((3, 1, 6))),
        bundle.index((6,)))
    for x in range(top):
      self.assertEqual(alg.apply('h', x, top), bundle.cycle[x])
      self.assertEqual(alg.apply('h', x, 0 if x else 1), x)
    self.assertEqual(alg.apply('h', top, top), top)
    self.assertEqual(sorted(bundle.cycle), list(range(top)))

  @parameterized.parameters(1, 2, 3, 4, 5)
  def test_cover_ops_step_down_every_cover(self, n):
    for poset in order.enumerate_posets(n):
      bundle = synth.synthesize_quasiprimal(poset)
      alg = bundle.algebra
      for t, word in enumerate(bundle.words):
        if t == bundle.top_index:
          continue
        for a in bundle.psharp.lower_covers[word[0]]:
          s = bundle.index((a,) + word)
          self.assertEqual(alg.apply(f'f_{word[0]}_{a}', t), s, repr(poset))
          self.assertEqual(bundle.phi_sharp(s), a)

  def test_join_is_a_semilattice(self):
    alg = synth.synthesize_quasiprimal(fig2_poset()).algebra
    join = alg.cube('join')
    for x, y, z in itertools.product(range(alg.size), repeat=3):
      self.assertEqual(join[x, x], x)
      self.assertEqual(join[x, y], join[y, x])
      self.assertEqual(join[join[x, y], z], join[x, join[y, z]])

  def test_predicted_subuniverses(self):
    bundle = synth.synthesize_quasiprimal(fig2_poset())
    predicted = bundle.predicted_subuniverses()
    self.assertLen(predicted, 12)
    self.assertEqual(algebra_lib.all_subuniverses(bundle.algebra), predicted)

  @parameterized.parameters(1, 2, 3)
  def test_small_census_subuniverses(self, n):
    for poset in order.enumerate_posets(n):
      bundle = synth.synthesize_quasiprimal(poset)
      self.assertEqual(algebra_lib.all_subuniverses(bundle.algebra),
                       bundle.predicted_subuniverses())

  def test_phi_rejects_primed_words(self):
    bundle = synth.synthesize_quasiprimal(order.chain(1))
    primed = [q for q in range(bundle.algebra.size)
              if q not in bundle.s_elements]
    self.assertLen(primed, 1)
    with self.assertRaises(ValueError):
      bundle.phi(primed[0])
    self.assertEqual(bundle.phi_sharp(primed[0]), 2)

  def test_empty_poset(self):
    with self.assertRaises(spec.EmptyPosetError):
      synth.synthesize_quasiprimal(order.antichain(0))

  def test_budget(self):
    with self.assertRaises(spec.BudgetExceededError):
      synth.synthesize_quasiprimal(fig2_poset(), budget=10)


class BirkhoffFrinkTest(parameterized.TestCase):

  def test_subuniverses_are_ideals(self):
    semilattice = order.Poset.from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    alg = synth.birkhoff_frink(semilattice)
    subuniverses = algebra_lib.all_subuniverses(alg)
    expected = [frozenset(np.flatnonzero(semilattice.leq[:, t]).tolist())
                for t in range(4)]
    self.assertCountEqual(subuniverses, expected)

  def test_needs_joins(self):
    with self.assertRaises(spec.NotJoinClosedError):
      synth.birkhoff_frink(order.antichain(2))

  def test_semilattice_algebra(self):
    alg = synth.semilattice_algebra(order.chain(3))
    self.assertEqual(alg.table('meet').tolist(), [0, 0, 0, 0, 1, 1, 0, 1, 2])
    with self.assertRaises(spec.NotJoinClosedError):
      synth.semilattice_algebra(order.antichain(2))


class DigraphTest(parameterized.TestCase):

  def test_validation(self):
    with self.assertRaises(ValueError):
      synth.Digraph(2, frozenset({(0, 2)}))

  @parameterized.parameters((1, 2), (2, 16))
  def test_all_digraphs(self, n, count):
    graphs = list(synth.all_digraphs(n))
    self.assertLen(graphs, count)
    self.assertLen({g.edges for g in graphs}, count)

  def test_hom_count(self):
    edge = synth.Digraph(2, frozenset({(0, 1)}))
    loop = synth.Digraph(1, frozenset({(0, 0)}))
    self.assertEqual(synth.digraph_hom_count(edge, loop), 1)
    self.assertEqual(synth.digraph_hom_count(loop, edge), 0)
    self.assertEqual(synth.digraph_hom_count(edge, edge), 1)

  def test_graph_star(self):
    graph = synth.Digraph(3, frozenset({(0, 0), (0, 1), (1, 2), (2, 1)}),
                          ('a', 'b', 'c'))
    star = synth.graph_star(graph)
    self.assertEqual(star.size, 9)
    self.assertEqual(star.label(3), '(a,a)')
    self.assertEqual(star.nullary_values, {'u': 7, 'v': 8})
    self.assertEqual(star.apply('f0', 5), 1)
    self.assertEqual(star.apply('f1', 5), 2)

  def test_figure4_u_is_the_star_of_an_edge(self):
    edge = synth.Digraph(2, frozenset({(0, 1)}))
    self.assertTrue(synth.edge_star_algebra().same_tables(
        synth.graph_star(edge)))


class GroupTest(parameterized.TestCase):

  @parameterized.named_parameters(
      ('cyclic5', synth.cyclic_group_table(5)),
      ('s3', synth.symmetric_group_table(3)),
      ('klein', synth.klein_four_table()))
  def test_tables_are_groups(self, table):
    self.assertEqual(synth.check_group(table), 0)

  @parameterized.named_parameters(
      ('not_square', [[0, 1]]),
      ('out_of_range', [[0, 2], [1, 0]]),
      ('no_identity', [[1, 1], [1, 1]]),
      ('not_associative', [[0, 1, 2], [1, 0, 0], [2, 1, 0]]))
  def test_rejects(self, table):
    with self.assertRaises(spec.NotAGroupError):
      synth.check_group(table)

  def test_group_algebra(self):
    group = synth.group_algebra(synth.symmetric_group_table(3), 'S3')
    self.assertEqual(group.nullary_values, {'e': 0})
    for a in range(6):
      self.assertEqual(group.apply('mul', a, group.apply('inv', a)), 0)

  def test_coset_gset(self):
    gset = synth.gset_coset_algebra(synth.symmetric_group_table(3), [0, 2])
    self.assertEqual(gset.size, 4)
    self.assertEqual(gset.label(3), '∞')
    self.assertLen(gset.signature.nullary_names, 4)
    for g in range(6):
      self.assertEqual(gset.apply(f'l{g}', 3), 3)
    congruences, _ = algebra_lib.congruence_lattice(gset)
    self.assertEqual([t.num_blocks for t in congruences], [1, 2, 4])

  def test_coset_gset_of_z4_over_trivial_subgroup(self):
    gset = synth.gset_coset_algebra(synth.cyclic_group_table(4), [0])
    self.assertEqual(gset.size, 5)
    congruences, lattice = algebra_lib.congruence_lattice(gset)
    self.assertEqual([t.num_blocks for t in congruences], [1, 2, 3, 5])
    self.assertIsNotNone(order.poset_iso(lattice, order.chain(4)))

  def test_coset_gset_needs_a_subgroup(self):
    with self.assertRaises(spec.NotASubgroupError):
      synth.gset_coset_algebra(synth.symmetric_group_table(3), [1])


class ProductTest(absltest.TestCase):

  def test_independent_product(self):
    first = synth.cycle_union_algebra([2])
    second = algebra_lib.rename_ops(synth.cycle_union_algebra([3]),
                                    {'f': 'g'})
    product = synth.independent_product(first, second)
    self.assertEqual(product.size, 6)
    self.assertEqual(product.signature.names, ('f', 'g', '*'))
    for x, y in itertools.product(range(6), repeat=2):
      self.assertEqual(product.apply('*', x, y), x // 3 * 3 + y % 3)
    for x in range(6):
      self.assertEqual(product.apply('f', x), (x // 3 + 1) % 2 * 3 + x % 3)
      self.assertEqual(product.apply('g', x), x // 3 * 3 + (x % 3 + 1) % 3)

  def test_independent_product_rejects(self):
    with self.assertRaises(spec.NullaryPresentError):
      synth.independent_product(synth.named_set(2), synth.named_set(2))
    cycle = synth.cycle_union_algebra([2])
    with self.assertRaises(spec.NameClashError):
      synth.independent_product(cycle, cycle)


class MonounaryTest(parameterized.TestCase):

  def test_cycle_sizes(self):
    self.assertEqual(
        synth.cycle_sizes(synth.cycle_union_algebra([3, 2, 3], tail=2)),
        [2, 3, 3])

  @parameterized.parameters(([1], 1), ([2], 2), ([2, 3], 5), ([4], 3),
                            ([1, 4, 6], 9))
  def test_hom_lattice_size(self, sizes, expected):
    lattice = synth.monounary_hom_lattice(synth.cycle_union_algebra(sizes))
    self.assertLen(lattice, expected)

  def test_not_monounary(self):
    with self.assertRaises(spec.NotMonounaryError):
      synth.cycle_sizes(synth.discriminator_algebra(2))

  def test_tail_runs_into_first_cycle(self):
    alg = synth.cycle_union_algebra([2], tail=2)
    self.assertEqual(alg.table('f').tolist(), [1, 0, 3, 0])
    with self.assertRaises(ValueError):
      synth.cycle_union_algebra([], tail=1)


class NamedAlgebraTest(absltest.TestCase):

  def test_discriminator_with_negation(self):
    alg = synth.discriminator_algebra(3, negation=True)
    self.assertEqual(alg.table('neg').tolist(), [1, 2, 0])
    self.assertTrue(hom_search.is_homomorphism(alg, alg, (1, 2, 0)))

  def test_named_set(self):
    alg = synth.named_set(3)
    self.assertEqual(alg.nullary_values, {'c0': 0, 'c1': 1, 'c2': 2})

  def test_bisemilattices(self):
    s, l = synth.bisemilattice_s(), synth.bisemilattice_l()
    self.assertEqual(s.signature, l.signature)
    self.assertEqual(l.table('sqcap').tolist(), [0, 1, 1, 1])

  def test_pentagon_tables(self):
    pentagon = synth.pentagon_algebra()
    self.assertEqual(pentagon.table('wedge').tolist(),
                     [0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 2, 2, 0, 1, 2, 3])
    self.assertEqual(pentagon.table('sqcap').tolist(),
                     [0, 0, 2, 2, 0, 1, 2, 3, 2, 2, 2, 2, 2, 3, 2, 3])
    self.assertEqual(pentagon.nullary_values,
                     {'0': 0, 'a': 1, 'b': 2, '1': 3})

  def test_pentagon_is_a_subdirect_product(self):
    pentagon = synth.pentagon_algebra()
    product = algebra_lib.direct_product(synth.bisemilattice_s(),
                                         synth.bisemilattice_l())
    # (x,y), (y,y), (x,z), (y,z) sit at 0, 2, 1, 3 in S x L.
    self.assertTrue(hom_search.is_homomorphism(pentagon, product,
                                               (0, 2, 1, 3)))

  def test_pentagon_quotients_are_irreducible(self):
    for name, quotient in synth.pentagon_quotients().items():
      self.assertTrue(algebra_lib.is_subdirectly_irreducible(quotient)[0],
                      name)


if __name__ == '__main__':
  absltest.main()
