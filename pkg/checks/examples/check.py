"""The worked examples: digraph hom counts through G*, monounary algebras,
congruence lattices with every element named, the coset G-set, the pentagon
bisemilattice and the Birkhoff-Frink algebras."""

import itertools
import json
import os
from typing import Any, Dict, List, Optional

import numpy as np

import algebra as algebra_lib
import hom_lattice
import hom_search
import order
import random_utils as prng
import spec
import synth

_CONFIG_PATH = os.path.join(os.path.dirname(__file__), 'config.json')


def m3_lattice() -> order.Lattice:
  return order.Lattice.from_poset(order.Poset.from_covers(
      5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]))


def _digraph_counts(pairs) -> Optional[str]:
  for first, second in pairs:
    expected = synth.digraph_hom_count(first, second)
    found = hom_search.count_homs(synth.graph_star(first),
                                  synth.graph_star(second))
    if found != expected:
      return (f'G={first.sorted_edges} on {first.vertex_count}, '
              f'H={second.sorted_edges} on {second.vertex_count}: '
              f'{found} homs G* -> H*, {expected} homs G -> H')
  return None


def _prime_power_parts(n: int) -> List[int]:
  parts, p = [], 2
  while n > 1:
    if n % p == 0:
      power = 1
      while n % p == 0:
        n //= p
        power *= p
      parts.append(power)
    p += 1
  return parts


def _multisets_with_lcm(n: int) -> List[List[int]]:
  """A few cycle multisets whose lengths have lcm n."""
  divisors = [d for d in range(1, n + 1) if n % d == 0]
  multisets = [[n], divisors]
  if len(_prime_power_parts(n)) > 1:
    multisets.append(_prime_power_parts(n))
  return multisets


def _is_chain(lattice: order.Poset) -> bool:
  return all(len(covers) <= 1 for covers in lattice.upper_covers)


class ExamplesCheck(spec.Check):
  """Exhaustive and seeded checks of the worked examples."""

  @property
  def name(self) -> str:
    return 'examples'

  def default_config(self) -> Dict[str, Any]:
    with open(_CONFIG_PATH, 'r') as config_file:
      return json.load(config_file)

  def run(self,
          config: Dict[str, Any],
          budget: Optional[int] = None,
          num_workers: int = 1) -> List[spec.CheckResult]:
    del num_workers
    if budget is None:
      budget = spec.DEFAULT_CONGRUENCE_BUDGET

    def digraph_counts():
      graphs = [g for n in range(1, config['digraph_max_vertices'] + 1)
                for g in synth.all_digraphs(n)]
      pairs = list(itertools.product(graphs, repeat=2))
      mismatch = _digraph_counts(pairs)
      return mismatch is None, mismatch or f'{len(pairs)} pairs agree'

    def random_digraph_counts():
      pairs = prng.random_digraph_pairs(
          config['seed'], config['random_vertices'], config['random_pairs'])
      mismatch = _digraph_counts(pairs)
      return mismatch is None, mismatch or f'{len(pairs)} pairs agree'

    def monounary_lattices():
      for n in config['monounary_lcms']:
        expected = (order.chain(1) if n == 1 else order.nonempty_upsets(
            order.divisor_lattice(n), ordering=spec.UpsetOrdering.SUBSET))
        for sizes in _multisets_with_lcm(n):
          for tail in (0, 2):
            alg = synth.cycle_union_algebra(sizes, tail)
            lattice = synth.monounary_hom_lattice(alg)
            if order.poset_iso(lattice, expected) is None:
              return False, f'cycles {sizes} with tail {tail}: wrong lattice'
      return True, f'lcms {config["monounary_lcms"]}'

    def monounary_hom_order():
      n = config['hom_order_lcm']
      divisors = [d for d in range(1, n + 1) if n % d == 0]
      cycles = [synth.cycle_union_algebra([d]) for d in divisors]
      for (a, first), (b, second) in itertools.product(
          zip(divisors, cycles), repeat=2):
        exists = hom_search.find_hom(first, second) is not None
        if exists != (a % b == 0):
          return False, f'C{a} -> C{b} is {exists}, expected {a % b == 0}'
      return True, f'{len(divisors) ** 2} pairs follow divisibility'

    def named_set_m3():
      _, lattice = algebra_lib.congruence_lattice(synth.named_set(3), budget)
      return (order.poset_iso(lattice, m3_lattice()) is not None,
              f'Con has {lattice.size} elements')

    def named_set_con_check():
      named = synth.named_set(3)
      congruences, _ = algebra_lib.congruence_lattice(named, budget)
      sis = [algebra_lib.quotient_algebra(named, theta) for theta in congruences
             if theta.num_blocks == 2]
      verdict = hom_lattice.con_hom_lattice_check(named, sis, budget)
      return verdict.con_is_hom_lattice, (
          f'product {verdict.product_condition}, irreducibles '
          f'{verdict.si_condition}')

    def klein_four_m3():
      group = synth.group_algebra(synth.klein_four_table())
      _, lattice = algebra_lib.congruence_lattice(group, budget)
      return (order.poset_iso(lattice, m3_lattice()) is not None,
              f'Con has {lattice.size} elements')

    def coset_gset_chain():
      gset = synth.gset_coset_algebra(synth.symmetric_group_table(3), [0, 2])
      congruences, lattice = algebra_lib.congruence_lattice(gset, budget)
      scanned = [theta for theta in algebra_lib.all_partitions(gset.size)
                 if algebra_lib.is_congruence(gset, theta)]
      agree = (sorted(scanned, key=algebra_lib.congruence_sort_key) ==
               congruences)
      return (agree and lattice.size == 3 and _is_chain(lattice),
              f'{len(congruences)} congruences, {len(scanned)} by partition '
              'scan')

    def pentagon_con_check():
      pentagon = synth.pentagon_algebra()
      quotients = synth.pentagon_quotients()
      verdict = hom_lattice.con_hom_lattice_check(
          pentagon, list(quotients.values()), budget)
      named = synth.pentagon_congruences()
      alpha, beta = named['alpha'], named['beta']
      meet_ok = alpha.meet(beta) == algebra_lib.Partition.identity(4)
      join_ok = alpha.join(beta) == algebra_lib.Partition.total(4)
      return (verdict.con_is_hom_lattice and meet_ok and join_ok,
              f'verdict {verdict.con_is_hom_lattice}, alpha ^ beta = Delta '
              f'{meet_ok}, alpha v beta = Nabla {join_ok}')

    def birkhoff_frink():
      for n in range(1, config['birkhoff_frink_max_size'] + 1):
        for poset in order.enumerate_posets(n):
          _, bad = order.least_bounds(poset.leq)
          if bad is not None:
            continue
          alg = synth.birkhoff_frink(poset)
          subuniverses = algebra_lib.all_subuniverses(alg, budget)
          leq = np.array([[s <= t for t in subuniverses]
                          for s in subuniverses])
          if order.poset_iso(order.Poset(leq), poset) is None:
            return False, f'{poset!r}: Sub is not isomorphic to S'
      return True, 'every join-semilattice is recovered'

    return self.run_cases([
        ('digraph_counts', digraph_counts),
        ('random_digraph_counts', random_digraph_counts),
        ('monounary_lattices', monounary_lattices),
        ('monounary_hom_order', monounary_hom_order),
        ('named_set_m3', named_set_m3),
        ('named_set_con_check', named_set_con_check),
        ('klein_four_m3', klein_four_m3),
        ('coset_gset_chain', coset_gset_chain),
        ('pentagon_con_check', pentagon_con_check),
        ('birkhoff_frink', birkhoff_frink),
    ])
