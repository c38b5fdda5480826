"""Golden reproduction of the worked figures: the six-element poset, its
covering trees and synthesized algebra, the graph algebra G*, and the
pentagon bisemilattice with its congruences."""

import json
import os
from typing import Any, Dict, List, Optional

import algebra as algebra_lib
import fixtures
import hom_lattice
import io_formats
import order
import spec
import synth

_CONFIG_PATH = os.path.join(os.path.dirname(__file__), 'config.json')


class FiguresCheck(spec.Check):
  """Compares the built-in fixtures against their known invariants."""

  @property
  def name(self) -> str:
    return 'figures'

  def default_config(self) -> Dict[str, Any]:
    with open(_CONFIG_PATH, 'r') as config_file:
      return json.load(config_file)

  def run(self,
          config: Dict[str, Any],
          budget: Optional[int] = None,
          num_workers: int = 1) -> List[spec.CheckResult]:
    if budget is None:
      budget = spec.DEFAULT_SUBUNIVERSE_BUDGET
    poset = io_formats.load_poset(fixtures.fixture_text(config['poset_fixture']))
    pentagon = io_formats.load_algebra(
        fixtures.fixture_text(config['pentagon_fixture'])).algebra

    def forest_words():
      forest = order.covering_forest(poset)
      words = sorted(forest.label(x, separator='')
                     for x in range(len(forest.words)))
      expected = sorted(config['forest_words'])
      return words == expected, f'words {words}, expected {expected}'

    def sharp_forest():
      sharp_forest = order.covering_forest(order.sharp(order.add_top(poset)))
      bundle = synth.synthesize_quasiprimal(poset)
      sizes = (len(sharp_forest.words), bundle.algebra.size)
      expected = config['sharp_forest_size']
      return (sizes == (expected, expected),
              f'{sizes[0]} words and |Q| = {sizes[1]}, expected {expected}')

    def sub_hom_poset():
      bundle = synth.synthesize_quasiprimal(poset)
      shp = hom_lattice.sub_hom_poset(bundle.algebra, budget, num_workers)
      iso = order.poset_iso(shp.order, bundle.ptop)
      expected = config['sub_hom_poset_size']
      return (shp.order.size == expected and iso is not None,
              f'{shp.order.size} classes, expected {expected} isomorphic to '
              'P with a top')

    def hom_lattice_size():
      bundle = synth.synthesize_quasiprimal(poset)
      lattice = hom_lattice.hom_lattice_quasiprimal(
          bundle.algebra, budget, num_workers)
      down = order.downset_lattice(poset)
      expected = config['hom_lattice_size']
      iso = hom_lattice.lattice_iso_report(lattice, down)
      return (lattice.size == down.size == expected and iso is not None,
              f'|L| = {lattice.size}, |Down P| = {down.size}, expected '
              f'{expected}')

    def graph_star():
      graph_algebra = io_formats.load_algebra(
          fixtures.fixture_text(config['graph_fixture'])).algebra
      expected = config['graph_star_size']
      return (graph_algebra.size == expected,
              f'|G*| = {graph_algebra.size}, expected {expected}')

    def u_algebra():
      fixture = io_formats.load_algebra(
          fixtures.fixture_text(config['u_fixture'])).algebra
      return (fixture.same_tables(synth.edge_star_algebra()),
              'fixture tables differ from the built-in U')

    def pentagon_congruences():
      congruences, lattice = algebra_lib.congruence_lattice(pentagon)
      found = [theta.format(pentagon.element_labels()) for theta in congruences]
      expected = config['pentagon_congruences']
      is_n5 = (lattice.size == 5 and
               not order.is_distributive(lattice) and
               order.poset_iso(lattice, _pentagon_lattice()) is not None)
      return (found == expected and is_n5,
              f'congruences {found}, expected {expected}')

    def pentagon_quotients():
      quotients = [
          algebra_lib.quotient_algebra(pentagon, theta)
          for theta in synth.pentagon_congruences().values()
      ]
      sizes = sorted(q.size for q in quotients)
      expected = sorted(config['pentagon_quotient_sizes'])
      irreducible = all(
          algebra_lib.is_subdirectly_irreducible(q)[0] for q in quotients)
      return (sizes == expected and irreducible,
              f'quotient sizes {sizes}, expected {expected}; all subdirectly '
              f'irreducible: {irreducible}')

    return self.run_cases([
        ('forest_words', forest_words),
        ('sharp_forest', sharp_forest),
        ('sub_hom_poset', sub_hom_poset),
        ('hom_lattice', hom_lattice_size),
        ('graph_star', graph_star),
        ('u_algebra', u_algebra),
        ('pentagon_congruences', pentagon_congruences),
        ('pentagon_quotients', pentagon_quotients),
    ])


def _pentagon_lattice() -> order.Lattice:
  return order.Lattice.from_poset(
      order.Poset.from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]))
