"""Backtracking search for homomorphisms between finite algebras.

The search assigns a target element to each source element. Candidate sets are
bit masks over the target universe, seeded by the nullary operations. After
every assignment the search forces the images of assigned argument tuples,
keeps unary operations arc consistent and assigns any variable left with one
candidate. Branching picks the variable with the fewest candidates, smallest
index first, and tries its candidates in increasing order.
"""

import dataclasses
import itertools
from typing import Iterator, List, Optional, Sequence, Tuple

from absl import logging
import numpy as np

import algebra as algebra_lib
import spec


@dataclasses.dataclass(frozen=True)
class HomWitness:
  source_size: int
  target_size: int
  mapping: spec.Mapping

  def __call__(self, x: int) -> int:
    return self.mapping[x]

  @property
  def image(self) -> spec.ElementSet:
    return frozenset(self.mapping)

  @property
  def is_injective(self) -> bool:
    return len(self.image) == self.source_size

  @property
  def is_surjective(self) -> bool:
    return len(self.image) == self.target_size

  def inverse(self) -> 'HomWitness':
    if not (self.is_injective and self.is_surjective):
      raise ValueError('only bijections have an inverse')
    inverse = [0] * self.target_size
    for a, b in enumerate(self.mapping):
      inverse[b] = a
    return HomWitness(self.target_size, self.source_size, tuple(inverse))


def _check_signatures(source: algebra_lib.FiniteAlgebra,
                      target: algebra_lib.FiniteAlgebra):
  if not source.signature.same_as(target.signature):
    raise spec.SignatureMismatchError(
        f'signatures differ: {source.signature.ops} vs {target.signature.ops}')


def _bits(mask: int) -> Iterator[int]:
  while mask:
    low = mask & -mask
    yield low.bit_length() - 1
    mask ^= low


def _popcount(mask: int) -> int:
  return bin(mask).count('1')


def _flat_index(args: Sequence[int], size: int) -> int:
  index = 0
  for arg in args:
    index = index * size + arg
  return index


class _HomSearch:
  """One search problem: maps source -> target, optionally injective."""

  def __init__(
      self,
      source: algebra_lib.FiniteAlgebra,
      target: algebra_lib.FiniteAlgebra,
      injective: bool = False,
      allowed: Optional[Sequence[int]] = None):
    _check_signatures(source, target)
    self.n = source.size
    self.m = target.size
    self.injective = injective
    self.unary = []
    self.higher = []
    domains = [(1 << self.m) - 1] * self.n
    for name, arity, table in source.operations():
      target_table = target.table(name).tolist()
      if arity == 0:
        domains[int(table[0])] &= 1 << target_table[0]
      elif arity == 1:
        preimages = [0] * self.m
        for b, fb in enumerate(target_table):
          preimages[fb] |= 1 << b
        self.unary.append((table.tolist(), target_table, preimages))
      else:
        self.higher.append((arity, table.tolist(), target_table))
    if allowed is not None:
      domains = [d & a for d, a in zip(domains, allowed)]
    self.initial_domains = domains

  def _assign(self, values, domains, queue, x: int, b: int) -> bool:
    if values[x] is not None:
      return values[x] == b
    if not domains[x] >> b & 1:
      return False
    values[x] = b
    domains[x] = 1 << b
    queue.append(x)
    return True

  def _force(self, values, domains, queue, x: int) -> bool:
    """Check every operation on argument tuples through x that are assigned."""
    b = values[x]
    if self.injective:
      bit = 1 << b
      for y in range(self.n):
        if y == x:
          continue
        if values[y] == b:
          return False
        if values[y] is None and domains[y] & bit:
          domains[y] &= ~bit
          if not domains[y]:
            return False
    for source_table, target_table, _ in self.unary:
      if not self._assign(values, domains, queue, source_table[x],
                          target_table[b]):
        return False
    if not self.higher:
      return True
    assigned = [y for y in range(self.n) if values[y] is not None]
    others = [y for y in assigned if y != x]
    for arity, source_table, target_table in self.higher:
      # Enumerate each tuple once, by the first position holding x.
      for position in range(arity):
        for before in itertools.product(others, repeat=position):
          for after in itertools.product(assigned, repeat=arity - 1 - position):
            args = before + (x,) + after
            image = target_table[_flat_index([values[y] for y in args], self.m)]
            if not self._assign(values, domains, queue,
                                source_table[_flat_index(args, self.n)], image):
              return False
    return True

  def _narrow(self, values, domains, queue, x: int, mask: int) -> bool:
    if values[x] is not None:
      return bool(mask >> values[x] & 1)
    narrowed = domains[x] & mask
    if narrowed == domains[x]:
      return True
    if not narrowed:
      return False
    domains[x] = narrowed
    if _popcount(narrowed) == 1:
      values[x] = narrowed.bit_length() - 1
      queue.append(x)
    return True

  def _arc_consistency(self, values, domains, queue) -> bool:
    changed = True
    while changed:
      changed = False
      for source_table, target_table, preimages in self.unary:
        for a in range(self.n):
          fa = source_table[a]
          before = (domains[a], domains[fa])
          allowed = 0
          for b in _bits(domains[fa]):
            allowed |= preimages[b]
          if not self._narrow(values, domains, queue, a, allowed):
            return False
          image = 0
          for b in _bits(domains[a]):
            image |= 1 << target_table[b]
          if not self._narrow(values, domains, queue, fa, image):
            return False
          changed |= before != (domains[a], domains[fa])
    for x in range(self.n):
      if values[x] is None and _popcount(domains[x]) == 1:
        values[x] = domains[x].bit_length() - 1
        queue.append(x)
    return True

  def _propagate(self, values, domains, queue) -> bool:
    while queue:
      while queue:
        if not self._force(values, domains, queue, queue.pop()):
          return False
      if not self._arc_consistency(values, domains, queue):
        return False
    return True

  def solutions(self) -> Iterator[spec.Mapping]:
    if self.injective and self.n > self.m:
      return
    values: List[Optional[int]] = [None] * self.n
    domains = list(self.initial_domains)
    if not all(domains):
      return
    queue = []
    if not self._arc_consistency(values, domains, queue):
      return
    if not self._propagate(values, domains, queue):
      return
    yield from self._search(values, domains)

  def _search(self, values, domains) -> Iterator[spec.Mapping]:
    unassigned = [x for x in range(self.n) if values[x] is None]
    if not unassigned:
      yield tuple(values)
      return
    x = min(unassigned, key=lambda y: (_popcount(domains[y]), y))
    for b in _bits(domains[x]):
      branch_values, branch_domains = list(values), list(domains)
      branch_values[x] = b
      branch_domains[x] = 1 << b
      if self._propagate(branch_values, branch_domains, [x]):
        yield from self._search(branch_values, branch_domains)


def iter_homs(
    source: algebra_lib.FiniteAlgebra,
    target: algebra_lib.FiniteAlgebra,
    injective: bool = False,
    allowed: Optional[Sequence[int]] = None) -> Iterator[HomWitness]:
  """Lazily enumerate homomorphisms in canonical search order.

  Args:
    source: domain algebra.
    target: codomain algebra with the same signature.
    injective: only enumerate embeddings.
    allowed: optional per-source-element bit mask of permitted images.

  Raises:
    SignatureMismatchError: the signatures differ.
  """
  search = _HomSearch(source, target, injective, allowed)
  for mapping in search.solutions():
    yield HomWitness(source.size, target.size, mapping)


def find_hom(source: algebra_lib.FiniteAlgebra,
             target: algebra_lib.FiniteAlgebra) -> Optional[HomWitness]:
  return next(iter_homs(source, target), None)


def count_homs(source: algebra_lib.FiniteAlgebra,
               target: algebra_lib.FiniteAlgebra) -> int:
  return sum(1 for _ in iter_homs(source, target))


def hom_equivalent(first: algebra_lib.FiniteAlgebra,
                   second: algebra_lib.FiniteAlgebra) -> bool:
  return (find_hom(first, second) is not None and
          find_hom(second, first) is not None)


def is_homomorphism(
    source: algebra_lib.FiniteAlgebra,
    target: algebra_lib.FiniteAlgebra,
    mapping: Sequence[int]) -> bool:
  """Check h(f(x...)) = f(h(x)...) for every operation and argument tuple."""
  _check_signatures(source, target)
  if len(mapping) != source.size:
    raise ValueError(
        f'map has {len(mapping)} entries for {source.size} elements')
  h = np.array(mapping, dtype=np.int64)
  if ((h < 0) | (h >= target.size)).any():
    return False
  for name, arity, table in source.operations():
    if arity == 0:
      if h[table[0]] != target.table(name)[0]:
        return False
      continue
    mapped_results = h[source.cube(name)]
    results_of_mapped = target.cube(name)[np.ix_(*[h] * arity)]
    if not np.array_equal(mapped_results, results_of_mapped):
      return False
  return True


def element_profiles(alg: algebra_lib.FiniteAlgebra) -> List[Tuple]:
  """Isomorphism invariants per element.

  Each profile holds the unary fixed-point pattern and the size of the
  one-generated subuniverse.
  """
  unary = [table for _, arity, table in alg.operations() if arity == 1]
  return [
      (tuple(bool(table[x] == x) for table in unary),
       len(algebra_lib.subuniverse_closure(alg, [x])))
      for x in range(alg.size)
  ]


def find_isomorphism(source: algebra_lib.FiniteAlgebra,
                     target: algebra_lib.FiniteAlgebra
                    ) -> Optional[HomWitness]:
  """A bijective homomorphism with homomorphic inverse, or None."""
  _check_signatures(source, target)
  if source.size != target.size:
    return None
  source_profiles = element_profiles(source)
  target_profiles = element_profiles(target)
  if sorted(source_profiles) != sorted(target_profiles):
    return None
  allowed = [
      sum(1 << b for b, q in enumerate(target_profiles) if q == p)
      for p in source_profiles
  ]
  for witness in iter_homs(source, target, injective=True, allowed=allowed):
    if is_homomorphism(target, source, witness.inverse().mapping):
      return witness
  return None


def core_of(alg: algebra_lib.FiniteAlgebra) -> algebra_lib.FiniteAlgebra:
  """A retract of `alg` all of whose endomorphisms are bijective.

  Repeatedly restricts to the image of the first non-injective endomorphism
  in search order.
  """
  current = alg
  while True:
    for witness in iter_homs(current, current):
      if not witness.is_injective:
        logging.info('Retracting %d elements onto %d.', current.size,
                     len(witness.image))
        current, _ = algebra_lib.subalgebra(current, witness.image)
        break
    else:
      return current


def discriminator_table(n: int) -> np.ndarray:
  """The ternary discriminator: x if x != y else z."""
  if n < 1:
    raise ValueError(f'discriminator_table needs n >= 1, got {n}')
  x, y, z = np.indices((n, n, n))
  return np.where(x != y, x, z).ravel()


def projection_maps(first_size: int, second_size: int
                   ) -> Tuple[spec.Mapping, spec.Mapping]:
  """The two projections out of a product encoded as a * second_size + b."""
  pairs = range(first_size * second_size)
  return (tuple(p // second_size for p in pairs),
          tuple(p % second_size for p in pairs))


def pair_maps(first: Sequence[int], second: Sequence[int], second_size: int
             ) -> spec.Mapping:
  """The map x -> (first(x), second(x)) into a product."""
  return tuple(a * second_size + b for a, b in zip(first, second))
