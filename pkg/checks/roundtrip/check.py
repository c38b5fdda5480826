"""Synthesize-and-recompute over every small poset plus the fixtures.

For each poset P the synthesized algebra Q must have hom lattice Down(P),
computed by the generic subuniverse and hom search route. Smaller instances
also confirm the shape of Sub(Q) predicted from the covering tree, and that
the down-set subalgebras are isomorphic exactly when their words share a
first letter.
"""

import concurrent.futures
import functools
import itertools
import json
import os
from typing import Any, Dict, List, Optional

from absl import logging
import numpy as np

import algebra as algebra_lib
import fixtures
import hom_lattice
import hom_search
import io_formats
import order
import spec
import synth

_CONFIG_PATH = os.path.join(os.path.dirname(__file__), 'config.json')


def _census(config: Dict[str, Any]) -> List[order.Poset]:
  posets = []
  for n in range(1, config['max_census_size'] + 1):
    posets.extend(order.enumerate_posets(n))
  for name in config.get('fixtures', []):
    posets.append(io_formats.load_poset(fixtures.fixture_text(name)))
  return posets


def _isomorphism_mismatch(bundle: synth.QPBundle) -> Optional[str]:
  """The first pair of down-set subalgebras whose isomorphism type disagrees
  with their first letters."""
  s_elements = sorted(bundle.s_elements)
  subalgebras = {
      u: algebra_lib.subalgebra(bundle.algebra, bundle.down(u))[0]
      for u in s_elements
  }
  for u, v in itertools.combinations(s_elements, 2):
    same_letter = bundle.phi(u) == bundle.phi(v)
    isomorphic = hom_search.find_isomorphism(
        subalgebras[u], subalgebras[v]) is not None
    if same_letter != isomorphic:
      return (f'{bundle.algebra.label(u)} and {bundle.algebra.label(v)}: '
              f'same first letter {same_letter}, isomorphic {isomorphic}')
  return None


def _check_one(poset: order.Poset, config: Dict[str, Any], budget: int
              ) -> spec.CheckResult:
  report = hom_lattice.verify_roundtrip(
      poset, fast_path=config.get('fast_path', False), budget=budget)
  name = repr(poset)
  if not report.passed:
    return spec.CheckResult(
        name, False,
        f'hom lattice has {report.computed.size} elements, Down(P) has '
        f'{report.expected.size}, and they are not isomorphic')
  bundle = synth.synthesize_quasiprimal(poset, budget)
  shp = report.sub_hom
  if config.get('cross_check_fast_path') and not report.fast_path:
    fast = hom_lattice.sub_hom_poset_from_words(bundle)
    if (fast.subuniverses != shp.subuniverses or
        fast.class_of != shp.class_of or
        not np.array_equal(fast.order.leq, shp.order.leq)):
      return spec.CheckResult(
          name, False, 'fast path disagrees with the generic hom search')
  if not hom_lattice.kernel_matches_phi(bundle, shp):
    return spec.CheckResult(
        name, False, 'hom classes of down-sets do not follow first letters')
  if bundle.algebra.size <= config.get('subuniverse_check_max_size', 0):
    found = list(shp.subuniverses)
    if report.fast_path:
      found = algebra_lib.all_subuniverses(bundle.algebra, budget)
    if found != bundle.predicted_subuniverses():
      return spec.CheckResult(
          name, False,
          f'{len(found)} subuniverses, expected '
          f'{len(bundle.predicted_subuniverses())}')
  if bundle.algebra.size <= config.get('isomorphism_check_max_size', 0):
    mismatch = _isomorphism_mismatch(bundle)
    if mismatch is not None:
      return spec.CheckResult(name, False, mismatch)
  return spec.CheckResult(
      name, True, f'|Q| = {bundle.algebra.size}, |L| = {report.computed.size}')


class RoundtripCheck(spec.Check):
  """Round trip P -> Q -> hom lattice over the poset census."""

  @property
  def name(self) -> str:
    return 'roundtrip'

  def default_config(self) -> Dict[str, Any]:
    with open(_CONFIG_PATH, 'r') as config_file:
      return json.load(config_file)

  def run(self,
          config: Dict[str, Any],
          budget: Optional[int] = None,
          num_workers: int = 1) -> List[spec.CheckResult]:
    if budget is None:
      budget = spec.DEFAULT_SUBUNIVERSE_BUDGET
    posets = _census(config)
    logging.info('Round trip over %d posets with %d workers.', len(posets),
                 num_workers)
    check_one = functools.partial(_check_one, config=config, budget=budget)
    if num_workers > 1:
      with concurrent.futures.ProcessPoolExecutor(num_workers) as executor:
        outcomes = list(executor.map(check_one, posets))
    else:
      outcomes = map(check_one, posets)
    results = []
    for outcome in outcomes:
      results.append(outcome._replace(name=f'{self.name}/{outcome.name}'))
      if not outcome.passed:
        break
    return results
