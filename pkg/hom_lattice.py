"""Homomorphism lattices of quasi-primal algebras.

For a quasi-primal Q, the homomorphism lattice is the down-set lattice of the
poset Sub(Q)/≡ of subalgebras up to hom-equivalence, with the top class
removed when Q has a one-element subalgebra. The generic route here enumerates
subuniverses and runs the hom search on every ordered pair. The fast route
reads the same poset off the covering tree of a synthesized algebra, and the
two must agree.
"""

import concurrent.futures
import dataclasses
import functools
import itertools
import time
from typing import Dict, List, Optional, Sequence, Tuple

from absl import logging
import numpy as np

import algebra as algebra_lib
import hom_search
import order
import spec
import synth


@dataclasses.dataclass(frozen=True)
class SubHomPoset:
  """Subalgebras of an algebra grouped into hom-equivalence classes.

  Attributes:
    subuniverses: every non-empty subuniverse, smallest first.
    rep_universes: per class, the subuniverse of its representative, which is
      the smallest member of the class (ties broken lexicographically).
    representatives: per class, the representative subalgebra.
    order: the classes ordered by the existence of homomorphisms.
    class_of: the class index of each subuniverse.
  """
  subuniverses: Tuple[spec.ElementSet, ...]
  rep_universes: Tuple[spec.ElementSet, ...]
  representatives: Tuple[algebra_lib.FiniteAlgebra, ...]
  order: order.Poset
  class_of: Dict[spec.ElementSet, int]

  def __len__(self):
    return self.order.size


def _subuniverse_label(alg: algebra_lib.FiniteAlgebra,
                       subuniverse: spec.ElementSet) -> str:
  return '{' + ','.join(alg.label(x) for x in sorted(subuniverse)) + '}'


def _hom_exists(pair: Tuple[algebra_lib.FiniteAlgebra,
                            algebra_lib.FiniteAlgebra]) -> bool:
  source, target = pair
  return hom_search.find_hom(source, target) is not None


def _assemble(
    alg: algebra_lib.FiniteAlgebra,
    subuniverses: Sequence[spec.ElementSet],
    relation: np.ndarray) -> SubHomPoset:
  labels = [_subuniverse_label(alg, s) for s in subuniverses]
  poset, block_ids = order.condense(relation, labels)
  rep_universes = [None] * poset.size
  for s, block in zip(subuniverses, block_ids):
    if rep_universes[block] is None:
      rep_universes[block] = s
  return SubHomPoset(
      subuniverses=tuple(subuniverses),
      rep_universes=tuple(rep_universes),
      representatives=tuple(
          algebra_lib.subalgebra(alg, s)[0] for s in rep_universes),
      order=poset,
      class_of=dict(zip(subuniverses, block_ids)))


def sub_hom_poset(
    alg: algebra_lib.FiniteAlgebra,
    budget: int = spec.DEFAULT_SUBUNIVERSE_BUDGET,
    num_workers: int = 1) -> SubHomPoset:
  """The poset Sub(alg)/≡ ordered by →.

  Inclusion S ⊆ T already gives S → T, so only the remaining ordered pairs
  are searched.

  Args:
    alg: the algebra.
    budget: cap on the number of subuniverses.
    num_workers: run the pairwise searches over this many processes.

  Returns:
    The condensed hom order on the subalgebras.

  Raises:
    BudgetExceededError: more than `budget` subuniverses.
  """
  subuniverses = algebra_lib.all_subuniverses(alg, budget)
  subalgebras = [algebra_lib.subalgebra(alg, s)[0] for s in subuniverses]
  k = len(subuniverses)
  relation = np.array([[s <= t for t in subuniverses] for s in subuniverses],
                      dtype=bool)
  pending = [(i, j) for i in range(k) for j in range(k) if not relation[i, j]]
  jobs = [(subalgebras[i], subalgebras[j]) for i, j in pending]
  if num_workers > 1 and len(jobs) > 1:
    with concurrent.futures.ProcessPoolExecutor(num_workers) as executor:
      found = list(executor.map(
          _hom_exists, jobs, chunksize=max(1, len(jobs) // (4 * num_workers))))
  else:
    found = [_hom_exists(job) for job in jobs]
  for (i, j), exists in zip(pending, found):
    relation[i, j] = exists
  result = _assemble(alg, subuniverses, relation)
  logging.info('%d subalgebras fall into %d hom classes (%d searches).', k,
               len(result), len(jobs))
  return result


def sub_hom_poset_from_words(bundle: synth.QPBundle) -> SubHomPoset:
  """Sub(Q)/≡ of a synthesized algebra without any hom search.

  The subuniverses are {⊤} and the down-sets of the words that start in P or
  ⊤. Two down-sets are hom-equivalent iff their words have the same first
  letter, {⊤} sits in the class of the whole algebra, and the classes are
  ordered as P with a top.
  """
  subuniverses = bundle.predicted_subuniverses()
  top_letter = bundle.poset.size
  letter_of = {bundle.down(q): bundle.phi(q) for q in bundle.s_elements}
  letter_of[frozenset([bundle.top_index])] = top_letter
  letters = [letter_of[s] for s in subuniverses]
  relation = bundle.ptop.leq[np.ix_(letters, letters)]
  return _assemble(bundle.algebra, subuniverses, relation)


def trivial_subuniverses(alg: algebra_lib.FiniteAlgebra
                        ) -> List[spec.ElementSet]:
  return [frozenset([x]) for x in range(alg.size)
          if algebra_lib.subuniverse_closure(alg, [x]) == {x}]


def has_trivial_subalgebra(alg: algebra_lib.FiniteAlgebra) -> bool:
  return bool(trivial_subuniverses(alg))


def has_discriminator_op(alg: algebra_lib.FiniteAlgebra) -> bool:
  """Whether some ternary basic operation is the discriminator."""
  discriminator = hom_search.discriminator_table(alg.size)
  return any(arity == 3 and np.array_equal(table, discriminator)
             for _, arity, table in alg.operations())


def hom_lattice_quasiprimal(
    alg: algebra_lib.FiniteAlgebra,
    budget: int = spec.DEFAULT_SUBUNIVERSE_BUDGET,
    num_workers: int = 1,
    shp: Optional[SubHomPoset] = None) -> order.Lattice:
  """The homomorphism lattice of a quasi-primal algebra.

  Quasi-primality is not decided here. Without a discriminator among the
  basic operations it is taken on trust, and a warning is logged.

  Args:
    alg: a quasi-primal algebra.
    budget: cap on the number of subuniverses.
    num_workers: processes for the pairwise hom searches.
    shp: a precomputed Sub(alg)/≡, for instance from the fast path.

  Returns:
    Down(P) for P = Sub(alg)/≡, with the top of P removed first when alg has
    a one-element subalgebra.

  Raises:
    BudgetExceededError: more than `budget` subuniverses.
    NoTopInPError: P has no top, so alg is not quasi-primal.
  """
  if not has_discriminator_op(alg):
    logging.warning('Quasi-primality of %r is assumed, not checked.', alg)
  if shp is None:
    shp = sub_hom_poset(alg, budget, num_workers)
  poset = shp.order
  if poset.top is None:
    raise spec.NoTopInPError(
        f'Sub/≡ has {len(poset.maximals)} maximal classes and no top')
  if has_trivial_subalgebra(alg):
    poset = poset.remove_top()
  return order.downset_lattice(poset)


def lattice_iso_report(first: order.Lattice, second: order.Lattice
                      ) -> Optional[spec.Mapping]:
  """A lattice isomorphism first -> second, or None.

  The witness from the order isomorphism is checked to carry meets and joins.
  """
  witness = order.lattice_iso(first, second)
  if witness is None:
    return None
  h = np.array(witness, dtype=np.int64)
  for kind, source, target in (('join', first.join_table, second.join_table),
                               ('meet', first.meet_table, second.meet_table)):
    if not np.array_equal(h[source], target[np.ix_(h, h)]):
      raise AssertionError(f'order isomorphism does not preserve {kind}s')
  return witness


@dataclasses.dataclass(frozen=True)
class HomLatticeReport:
  """The outcome of one synthesize-and-recompute round trip."""
  input_poset: order.Poset
  algebra: algebra_lib.FiniteAlgebra
  computed: order.Lattice
  expected: order.Lattice
  iso: Optional[spec.Mapping]
  timings: spec.Timings
  sub_hom: SubHomPoset
  fast_path: bool = False

  @property
  def passed(self) -> bool:
    return self.iso is not None


def verify_roundtrip(
    poset: order.Poset,
    fast_path: bool = False,
    budget: int = spec.DEFAULT_SUBUNIVERSE_BUDGET,
    num_workers: int = 1) -> HomLatticeReport:
  """Synthesize Q from `poset` and check that its hom lattice is Down(poset).

  Args:
    poset: a nonempty poset.
    fast_path: read Sub(Q)/≡ off the covering tree instead of searching.
    budget: cap on the number of subuniverses and words.
    num_workers: processes for the pairwise hom searches.

  Raises:
    EmptyPosetError: the poset is empty.
    BudgetExceededError: a budget was exceeded.
  """
  timings = {}
  start = time.time()
  bundle = synth.synthesize_quasiprimal(poset, budget)
  timings['synthesize'] = time.time() - start

  start = time.time()
  if fast_path:
    shp = sub_hom_poset_from_words(bundle)
  else:
    shp = sub_hom_poset(bundle.algebra, budget, num_workers)
  computed = hom_lattice_quasiprimal(bundle.algebra, shp=shp)
  timings['hom_lattice'] = time.time() - start

  start = time.time()
  expected = order.downset_lattice(poset)
  iso = lattice_iso_report(computed, expected)
  timings['compare'] = time.time() - start
  logging.info('Round trip on %d elements: |Q| = %d, |L| = %d vs %d, %s.',
               poset.size, bundle.algebra.size, computed.size, expected.size,
               'isomorphic' if iso is not None else 'NOT isomorphic')
  return HomLatticeReport(
      input_poset=poset,
      algebra=bundle.algebra,
      computed=computed,
      expected=expected,
      iso=iso,
      timings=timings,
      sub_hom=shp,
      fast_path=fast_path)


@dataclasses.dataclass(frozen=True)
class LawReport:
  checked: int
  skipped: int
  counterexample: Optional[str] = None

  @property
  def passed(self) -> bool:
    return self.counterexample is None


def _product(algebras: Sequence[algebra_lib.FiniteAlgebra]
            ) -> algebra_lib.FiniteAlgebra:
  return functools.reduce(algebra_lib.direct_product, algebras)


def _product_size(algebras: Sequence[algebra_lib.FiniteAlgebra]) -> int:
  return int(np.prod([a.size for a in algebras]))


def check_upset_products(
    shp: SubHomPoset,
    budget: int = spec.DEFAULT_PRODUCT_BUDGET) -> LawReport:
  """The product over an up-set is hom-equivalent to the product over its
  minimal elements.

  Up-sets whose full product has more than `budget` elements are skipped.
  """
  poset = shp.order
  full = (1 << poset.size) - 1
  checked = skipped = 0
  for down in order.downsets(poset):
    if down == full:
      continue
    upset = [i for i in range(poset.size) if not down >> i & 1]
    factors = [shp.representatives[i] for i in upset]
    if _product_size(factors) > budget:
      skipped += 1
      continue
    minimal = [i for i in upset
               if not any(poset.leq[j, i] for j in upset if j != i)]
    generators = [shp.representatives[i] for i in minimal]
    checked += 1
    if not hom_search.hom_equivalent(_product(factors), _product(generators)):
      names = ', '.join(poset.labels[i] for i in upset)
      return LawReport(checked, skipped,
                       f'product over up-set {{{names}}} is not equivalent '
                       'to the product over its minimal elements')
  return LawReport(checked, skipped)


def check_meet_law(
    shp: SubHomPoset,
    budget: int = spec.DEFAULT_PRODUCT_BUDGET) -> LawReport:
  """X x Y lands in the meet of the classes of X and Y.

  Pairs whose product is above `budget`, or is not equivalent to any
  subalgebra, are skipped.
  """
  poset = shp.order
  checked = skipped = 0
  for i, j in itertools.combinations(range(poset.size), 2):
    x, y = shp.representatives[i], shp.representatives[j]
    if x.size * y.size > budget:
      skipped += 1
      continue
    product = algebra_lib.direct_product(x, y)
    classes = [c for c, rep in enumerate(shp.representatives)
               if hom_search.hom_equivalent(product, rep)]
    if not classes:
      skipped += 1
      continue
    checked += 1
    c = classes[0]
    lower = poset.leq[:, i] & poset.leq[:, j]
    if not (lower[c] and (poset.leq[:, c] >= lower).all()):
      return LawReport(
          checked, skipped,
          f'{poset.labels[i]} x {poset.labels[j]} lands in '
          f'{poset.labels[c]}, which is not their meet')
  return LawReport(checked, skipped)


def kernel_matches_phi(bundle: synth.QPBundle, shp: SubHomPoset) -> bool:
  """Whether ↓u ≡ ↓v exactly when u and v start with the same letter."""
  class_of_letter = {}
  letter_of_class = {}
  for q in sorted(bundle.s_elements):
    letter, block = bundle.phi(q), shp.class_of[bundle.down(q)]
    if class_of_letter.setdefault(letter, block) != block:
      return False
    if letter_of_class.setdefault(block, letter) != letter:
      return False
  return True


@dataclasses.dataclass(frozen=True)
class ConHomLatticeVerdict:
  """Whether Con(A) is the homomorphism lattice of A, and why.

  Attributes:
    product_condition: (A/s) x (A/t) -> A/(s ∩ t) for all congruences s, t.
    si_condition: every supplied subdirectly irreducible maps into its zero
      subalgebra; None when no list was supplied and none could be derived.
    failing_pair: congruence indices of the first product failure.
    failing_si: index of the first failing subdirectly irreducible.
    sis_asserted: the list of subdirectly irreducibles came from the caller
      and its completeness is not checked.
    congruences: Con(A), in congruence_lattice order.
    lattice: Con(A) as a lattice.
    con_is_hom_lattice: both conditions hold.
  """
  product_condition: bool
  si_condition: Optional[bool]
  failing_pair: Optional[Tuple[int, int]]
  failing_si: Optional[int]
  sis_asserted: bool
  congruences: Tuple[algebra_lib.Partition, ...]
  lattice: order.Lattice
  con_is_hom_lattice: bool


def con_hom_lattice_check(
    alg: algebra_lib.FiniteAlgebra,
    sis: Optional[Sequence[algebra_lib.FiniteAlgebra]] = None,
    budget: int = spec.DEFAULT_CONGRUENCE_BUDGET) -> ConHomLatticeVerdict:
  """Decide whether Con(alg) is the hom lattice of an algebra with every
  element named by a constant.

  Args:
    alg: the algebra; every element must be the value of a nullary op.
    sis: the finite subdirectly irreducibles of the variety, if known.
    budget: cap on the number of congruences.

  Raises:
    NotAllNamedError: some element is not a nullary value.
    BudgetExceededError: more than `budget` congruences.
  """
  if (not alg.signature.nullary_names or
      algebra_lib.zero_subalgebra(alg)[0].size < alg.size):
    raise spec.NotAllNamedError(
        f'{alg!r}: not every element is the value of a nullary operation')
  congruences, lattice = algebra_lib.congruence_lattice(alg, budget)
  position = {theta: i for i, theta in enumerate(congruences)}
  quotients = [algebra_lib.quotient_algebra(alg, theta)
               for theta in congruences]

  failing_pair = None
  for i, j in itertools.combinations_with_replacement(
      range(len(congruences)), 2):
    meet = position[congruences[i].meet(congruences[j])]
    product = algebra_lib.direct_product(quotients[i], quotients[j])
    if hom_search.find_hom(product, quotients[meet]) is None:
      failing_pair = (i, j)
      break

  failing_si = None
  if sis is not None:
    logging.warning('Using %d subdirectly irreducibles as given; the list is '
                    'assumed complete.', len(sis))
    for index, si in enumerate(sis):
      zero, _ = algebra_lib.zero_subalgebra(si)
      if hom_search.find_hom(si, zero) is None:
        failing_si = index
        break
    si_condition = failing_si is None
  elif alg.size == 1:
    # The trivial variety has no subdirectly irreducibles.
    si_condition = True
  else:
    si_condition = None

  product_condition = failing_pair is None
  return ConHomLatticeVerdict(
      product_condition=product_condition,
      si_condition=si_condition,
      failing_pair=failing_pair,
      failing_si=failing_si,
      sis_asserted=sis is not None,
      congruences=tuple(congruences),
      lattice=lattice,
      con_is_hom_lattice=product_condition and si_condition is True)
