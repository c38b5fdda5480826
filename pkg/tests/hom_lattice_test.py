"""Tests for hom_lattice.py."""

from absl.testing import absltest
from absl.testing import parameterized
import numpy as np

import algebra as algebra_lib
import hom_lattice
import order
import spec
import synth

# 1..6 with 5<3, 6<3, 6<4, 3<1, 3<2, 4<2, as indices 0..5.
FIG2_COVERS = [(4, 2), (5, 2), (5, 3), (2, 0), (2, 1), (3, 1)]


def fig2_poset():
  return order.Poset.from_covers(6, FIG2_COVERS,
                                 ['1', '2', '3', '4', '5', '6'])


class SubHomPosetTest(parameterized.TestCase):

  def test_fig2_classes_follow_p_with_top(self):
    bundle = synth.synthesize_quasiprimal(fig2_poset())
    shp = hom_lattice.sub_hom_poset(bundle.algebra)
    self.assertLen(shp.subuniverses, 12)
    self.assertLen(shp, 7)
    self.assertIsNotNone(order.poset_iso(shp.order, bundle.ptop))
    top_class = shp.class_of[frozenset(range(bundle.algebra.size))]
    self.assertEqual(shp.class_of[frozenset([bundle.top_index])], top_class)
    self.assertEqual(shp.order.top, top_class)
    self.assertTrue(hom_lattice.kernel_matches_phi(bundle, shp))

  def test_representatives_are_smallest_members(self):
    bundle = synth.synthesize_quasiprimal(fig2_poset())
    shp = hom_lattice.sub_hom_poset(bundle.algebra)
    for block, universe in enumerate(shp.rep_universes):
      members = [s for s in shp.subuniverses if shp.class_of[s] == block]
      self.assertEqual(universe, members[0])
      self.assertEqual(shp.representatives[block].size, len(universe))

  @parameterized.parameters(1, 2, 3)
  def test_fast_path_agrees(self, n):
    for poset in order.enumerate_posets(n):
      bundle = synth.synthesize_quasiprimal(poset)
      generic = hom_lattice.sub_hom_poset(bundle.algebra)
      fast = hom_lattice.sub_hom_poset_from_words(bundle)
      self.assertEqual(fast.subuniverses, generic.subuniverses)
      self.assertEqual(fast.class_of, generic.class_of)
      np.testing.assert_array_equal(fast.order.leq, generic.order.leq)

  def test_workers_give_the_same_answer(self):
    bundle = synth.synthesize_quasiprimal(order.chain(2))
    serial = hom_lattice.sub_hom_poset(bundle.algebra)
    parallel = hom_lattice.sub_hom_poset(bundle.algebra, num_workers=2)
    self.assertEqual(serial.class_of, parallel.class_of)
    np.testing.assert_array_equal(serial.order.leq, parallel.order.leq)

  def test_budget(self):
    bundle = synth.synthesize_quasiprimal(fig2_poset())
    with self.assertRaises(spec.BudgetExceededError):
      hom_lattice.sub_hom_poset(bundle.algebra, budget=5)


class HomLatticeTest(parameterized.TestCase):

  @parameterized.parameters(1, 2, 3, 4)
  def test_hom_lattices_of_synthesized_algebras_are_distributive(self, n):
    for poset in order.enumerate_posets(n):
      bundle = synth.synthesize_quasiprimal(poset)
      shp = hom_lattice.sub_hom_poset_from_words(bundle) if n > 3 else None
      lattice = hom_lattice.hom_lattice_quasiprimal(bundle.algebra, shp=shp)
      self.assertTrue(order.is_distributive(lattice), repr(poset))
      self.assertLen(lattice, order.downset_lattice(poset).size)

  def test_fig2_hom_lattice_is_down_p(self):
    alg = synth.synthesize_quasiprimal(fig2_poset()).algebra
    lattice = hom_lattice.hom_lattice_quasiprimal(alg)
    self.assertLen(lattice, 12)
    self.assertIsNotNone(hom_lattice.lattice_iso_report(
        lattice, order.downset_lattice(fig2_poset())))

  def test_discriminator_algebra(self):
    # Constant maps make every pair of subalgebras hom-equivalent.
    alg = synth.discriminator_algebra(3)
    self.assertTrue(hom_lattice.has_discriminator_op(alg))
    self.assertLen(hom_lattice.trivial_subuniverses(alg), 3)
    self.assertLen(hom_lattice.sub_hom_poset(alg), 1)
    self.assertLen(hom_lattice.hom_lattice_quasiprimal(alg), 1)

  def test_trivial_subalgebra_detection(self):
    self.assertFalse(hom_lattice.has_trivial_subalgebra(
        synth.discriminator_algebra(3, negation=True)))
    self.assertFalse(hom_lattice.has_discriminator_op(synth.named_set(2)))

  def test_no_top_in_p(self):
    alg = synth.discriminator_algebra(2)
    leq = np.eye(2, dtype=bool)
    shp = hom_lattice.SubHomPoset(
        subuniverses=(frozenset([0]), frozenset([1])),
        rep_universes=(frozenset([0]), frozenset([1])),
        representatives=tuple(
            algebra_lib.subalgebra(alg, [x])[0] for x in range(2)),
        order=order.Poset(leq),
        class_of={frozenset([0]): 0, frozenset([1]): 1})
    with self.assertRaises(spec.NoTopInPError):
      hom_lattice.hom_lattice_quasiprimal(alg, shp=shp)

  def test_warns_without_discriminator(self):
    alg = synth.cycle_union_algebra([1])
    with self.assertLogs(level='WARNING'):
      lattice = hom_lattice.hom_lattice_quasiprimal(alg)
    self.assertLen(lattice, 1)

  def test_lattice_iso_report(self):
    self.assertIsNotNone(hom_lattice.lattice_iso_report(
        order.downset_lattice(order.antichain(2)),
        order.divisor_lattice(6)))
    self.assertIsNone(hom_lattice.lattice_iso_report(
        order.chain(4), order.divisor_lattice(6)))


class RoundtripTest(parameterized.TestCase):

  @parameterized.parameters(False, True)
  def test_fig2(self, fast_path):
    report = hom_lattice.verify_roundtrip(fig2_poset(), fast_path=fast_path)
    self.assertTrue(report.passed)
    self.assertEqual(report.fast_path, fast_path)
    self.assertEqual(report.algebra.size, 16)
    self.assertEqual(report.computed.size, 12)
    self.assertEqual(set(report.timings),
                     {'synthesize', 'hom_lattice', 'compare'})

  def test_census(self):
    for n in range(1, 4):
      for poset in order.enumerate_posets(n):
        self.assertTrue(hom_lattice.verify_roundtrip(poset).passed, repr(poset))

  def test_empty_poset(self):
    with self.assertRaises(spec.EmptyPosetError):
      hom_lattice.verify_roundtrip(order.antichain(0))


class LawTest(parameterized.TestCase):

  def test_upset_products(self):
    bundle = synth.synthesize_quasiprimal(order.antichain(2))
    shp = hom_lattice.sub_hom_poset_from_words(bundle)
    report = hom_lattice.check_upset_products(shp)
    self.assertTrue(report.passed, report.counterexample)
    self.assertGreater(report.checked, 0)

  def test_upset_products_budget_skips(self):
    bundle = synth.synthesize_quasiprimal(order.antichain(2))
    shp = hom_lattice.sub_hom_poset_from_words(bundle)
    # Only the up-set {⊤} has a one-element product.
    report = hom_lattice.check_upset_products(shp, budget=1)
    self.assertEqual(report.checked, 1)
    self.assertEqual(report.skipped, 3)

  def test_meet_law(self):
    bundle = synth.synthesize_quasiprimal(order.chain(2))
    shp = hom_lattice.sub_hom_poset_from_words(bundle)
    report = hom_lattice.check_meet_law(shp)
    self.assertTrue(report.passed, report.counterexample)
    self.assertGreater(report.checked, 0)


class NamedCongruenceTest(parameterized.TestCase):

  def test_trivial_algebra(self):
    verdict = hom_lattice.con_hom_lattice_check(synth.named_set(1))
    self.assertTrue(verdict.product_condition)
    self.assertTrue(verdict.si_condition)
    self.assertTrue(verdict.con_is_hom_lattice)
    self.assertFalse(verdict.sis_asserted)

  def test_pentagon(self):
    verdict = hom_lattice.con_hom_lattice_check(
        synth.pentagon_algebra(), list(synth.pentagon_quotients().values()))
    self.assertTrue(verdict.product_condition)
    self.assertTrue(verdict.si_condition)
    self.assertTrue(verdict.con_is_hom_lattice)
    self.assertTrue(verdict.sis_asserted)
    self.assertLen(verdict.congruences, 5)
    self.assertFalse(order.is_distributive(verdict.lattice))

  def test_named_set(self):
    named = synth.named_set(3)
    congruences, _ = algebra_lib.congruence_lattice(named)
    sis = [algebra_lib.quotient_algebra(named, theta) for theta in congruences
           if theta.num_blocks == 2]
    verdict = hom_lattice.con_hom_lattice_check(named, sis)
    self.assertTrue(verdict.con_is_hom_lattice)
    self.assertLen(verdict.lattice, 5)

  def test_without_sis_the_verdict_is_open(self):
    verdict = hom_lattice.con_hom_lattice_check(synth.named_set(2))
    self.assertTrue(verdict.product_condition)
    self.assertIsNone(verdict.si_condition)
    self.assertFalse(verdict.con_is_hom_lattice)

  def test_failing_si(self):
    pentagon = synth.pentagon_algebra()
    # The constants generate {0, 1}, and wedge(2, 0) = 1 blocks a retraction.
    wedge = [0, 0, 0, 0, 1, 1, 1, 0, 2]
    retractless = algebra_lib.make_algebra(
        3, pentagon.signature, [wedge, wedge, [0], [1], [0], [1]])
    verdict = hom_lattice.con_hom_lattice_check(pentagon, [retractless])
    self.assertFalse(verdict.si_condition)
    self.assertEqual(verdict.failing_si, 0)
    self.assertFalse(verdict.con_is_hom_lattice)

  def test_requires_every_element_named(self):
    with self.assertRaises(spec.NotAllNamedError):
      hom_lattice.con_hom_lattice_check(synth.discriminator_algebra(2))
    partly_named = algebra_lib.make_algebra(
        2, [('f', 1), ('c', 0)], [[0, 1], [0]])
    with self.assertRaises(spec.NotAllNamedError):
      hom_lattice.con_hom_lattice_check(partly_named)


if __name__ == '__main__':
  absltest.main()
