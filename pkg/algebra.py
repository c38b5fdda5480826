"""Finite algebras given by operation tables, with products, quotients,
subuniverses and congruences.

An operation of arity k on a universe {0..n-1} is a flat row-major table of
length n ** k: the value at (x_1, ..., x_k) sits at index
((x_1 * n + x_2) * n + ...) + x_k. Nullary tables have length 1.
"""

import dataclasses
import functools
from typing import (Dict, FrozenSet, Iterable, Iterator, List, Mapping,
                    Optional, Sequence, Tuple, Union)

from absl import logging
import numpy as np

import order
import spec


@dataclasses.dataclass(frozen=True)
class Signature:
  """Ordered operation symbols with their arities."""
  ops: Tuple[spec.OpSpec, ...]

  def __post_init__(self):
    ops = tuple((str(name), int(arity)) for name, arity in self.ops)
    seen = set()
    for name, arity in ops:
      if not name:
        raise ValueError('operation names must be nonempty')
      if arity < 0:
        raise ValueError(f'operation {name!r} has negative arity {arity}')
      if name in seen:
        raise spec.DuplicateOpNameError(f'operation {name!r} is declared twice')
      seen.add(name)
    object.__setattr__(self, 'ops', ops)

  @property
  def names(self) -> Tuple[str, ...]:
    return tuple(name for name, _ in self.ops)

  @property
  def nullary_names(self) -> Tuple[str, ...]:
    return tuple(name for name, arity in self.ops if arity == 0)

  def index(self, name: str) -> int:
    return self.names.index(name)

  def arity(self, name: str) -> int:
    return self.ops[self.index(name)][1]

  def same_as(self, other: 'Signature') -> bool:
    """Same symbols with the same arities, in the same order."""
    return self.ops == other.ops

  def __len__(self):
    return len(self.ops)


def _as_signature(signature) -> Signature:
  if isinstance(signature, Signature):
    return signature
  return Signature(tuple(signature))


@dataclasses.dataclass(frozen=True, eq=False)
class FiniteAlgebra:
  """A finite algebra on {0..size-1}. Build instances with make_algebra."""
  size: int
  signature: Signature
  tables: Tuple[np.ndarray, ...]
  name: Optional[str] = None
  labels: Optional[Tuple[str, ...]] = None

  def table(self, name: str) -> np.ndarray:
    return self.tables[self.signature.index(name)]

  def cube(self, name: str) -> np.ndarray:
    """The table of `name` reshaped to one axis per argument."""
    arity = self.signature.arity(name)
    return self.table(name).reshape((self.size,) * arity)

  def apply(self, name: str, *args: int) -> int:
    index = 0
    for arg in args:
      index = index * self.size + arg
    return int(self.table(name)[index])

  def operations(self) -> Iterator[Tuple[str, int, np.ndarray]]:
    for (name, arity), table in zip(self.signature.ops, self.tables):
      yield name, arity, table

  @functools.cached_property
  def nullary_values(self) -> Dict[str, int]:
    return {name: int(table[0])
            for name, arity, table in self.operations() if arity == 0}

  def label(self, x: int) -> str:
    return self.labels[x] if self.labels is not None else str(x)

  def element_labels(self) -> Tuple[str, ...]:
    return tuple(self.label(x) for x in range(self.size))

  def same_tables(self, other: 'FiniteAlgebra') -> bool:
    return (self.size == other.size and
            self.signature.same_as(other.signature) and
            all(np.array_equal(a, b)
                for a, b in zip(self.tables, other.tables)))

  def __repr__(self):
    name = f'{self.name!r}, ' if self.name else ''
    return f'FiniteAlgebra({name}size={self.size}, ops={self.signature.names})'


def make_algebra(
    size: int,
    signature,
    tables: Union[Sequence[Sequence[int]], Mapping[str, Sequence[int]]],
    name: Optional[str] = None,
    labels: Optional[Sequence[str]] = None) -> FiniteAlgebra:
  """Validate tables and build an algebra.

  Args:
    size: universe size n >= 1.
    signature: a Signature or a sequence of (name, arity) pairs.
    tables: one flat table per operation, in signature order or keyed by name.
    name: optional algebra name.
    labels: optional printable label per element.

  Returns:
    The algebra.

  Raises:
    TableLengthError: a table does not have n ** arity entries.
    EntryRangeError: a table entry is outside 0..n-1.
    DuplicateOpNameError: two operations share a name.
  """
  if size < 1:
    raise ValueError(f'algebra size must be positive, got {size}')
  signature = _as_signature(signature)
  if isinstance(tables, Mapping):
    missing = [n for n in signature.names if n not in tables]
    if missing:
      raise spec.TableLengthError(f'no table given for {missing}')
    tables = [tables[n] for n in signature.names]
  if len(tables) != len(signature):
    raise spec.TableLengthError(
        f'{len(signature)} operations but {len(tables)} tables')
  arrays = []
  for (op_name, arity), table in zip(signature.ops, tables):
    array = np.array(table, dtype=np.int64).ravel()
    if array.size != size ** arity:
      raise spec.TableLengthError(
          f'op {op_name!r}: expected {size ** arity} entries, got {array.size}')
    bad = np.flatnonzero((array < 0) | (array >= size))
    if bad.size:
      raise spec.EntryRangeError(
          f'op {op_name!r}: entry {int(array[bad[0]])} at position '
          f'{int(bad[0])} is outside 0..{size - 1}')
    array.flags.writeable = False
    arrays.append(array)
  if labels is not None:
    if len(labels) != size:
      raise ValueError(f'expected {size} labels, got {len(labels)}')
    labels = tuple(str(label) for label in labels)
  return FiniteAlgebra(size, signature, tuple(arrays), name, labels)


def rename_ops(algebra: FiniteAlgebra, renaming: Mapping[str, str]
              ) -> FiniteAlgebra:
  ops = [(renaming.get(n, n), a) for n, a in algebra.signature.ops]
  return make_algebra(algebra.size, ops, algebra.tables, algebra.name,
                      algebra.labels)


def direct_product(first: FiniteAlgebra, second: FiniteAlgebra
                  ) -> FiniteAlgebra:
  """The product algebra, with pair (a, b) encoded as a * |second| + b.

  Raises:
    SignatureMismatchError: the signatures differ.
  """
  if not first.signature.same_as(second.signature):
    raise spec.SignatureMismatchError(
        f'cannot multiply {first.signature.ops} by {second.signature.ops}')
  n, m = first.size, second.size
  tables = []
  for (_, arity, left), (_, _, right) in zip(first.operations(),
                                             second.operations()):
    # Interleave the axes so that axis pairs (a_i, b_i) flatten to a_i*m + b_i.
    left = left.reshape((n, 1) * arity)
    right = right.reshape((1, m) * arity)
    tables.append((left * m + right).ravel())
  labels = None
  if first.labels is not None or second.labels is not None:
    labels = [f'({first.label(a)},{second.label(b)})'
              for a in range(n) for b in range(m)]
  name = None
  if first.name and second.name:
    name = f'{first.name}x{second.name}'
  return make_algebra(n * m, first.signature, tables, name, labels)


class _UnionFind:

  def __init__(self, size: int):
    self.parent = list(range(size))
    self.rank = [0] * size

  def find(self, x: int) -> int:
    y = self.parent[x]
    if self.parent[y] != y:
      y = self.parent[x] = self.find(y)
    return y

  def union(self, x: int, y: int) -> bool:
    """Merge the classes of x and y; False if they were already merged."""
    x, y = self.find(x), self.find(y)
    if x == y:
      return False
    if self.rank[x] < self.rank[y]:
      x, y = y, x
    elif self.rank[x] == self.rank[y]:
      self.rank[x] += 1
    self.parent[y] = x
    return True

  def labels(self) -> List[int]:
    return [self.find(x) for x in range(len(self.parent))]


@dataclasses.dataclass(frozen=True)
class Partition:
  """An equivalence relation on {0..n-1} as normalized block ids.

  Blocks are numbered by their least element, so two partitions are equal iff
  their block ids are.
  """
  block_ids: Tuple[int, ...]

  def __post_init__(self):
    renumber = {}
    normalized = tuple(renumber.setdefault(b, len(renumber))
                       for b in self.block_ids)
    object.__setattr__(self, 'block_ids', normalized)

  @classmethod
  def from_labels(cls, labels: Iterable) -> 'Partition':
    return cls(tuple(labels))

  @classmethod
  def from_blocks(cls, size: int, blocks: Iterable[Iterable[int]]
                 ) -> 'Partition':
    labels = list(range(size))
    for block in blocks:
      block = list(block)
      for x in block:
        labels[x] = block[0]
    return cls(tuple(labels))

  @classmethod
  def identity(cls, size: int) -> 'Partition':
    return cls(tuple(range(size)))

  @classmethod
  def total(cls, size: int) -> 'Partition':
    return cls((0,) * size)

  @property
  def size(self) -> int:
    return len(self.block_ids)

  @property
  def num_blocks(self) -> int:
    return max(self.block_ids, default=-1) + 1

  def blocks(self) -> Tuple[Tuple[int, ...], ...]:
    grouped = [[] for _ in range(self.num_blocks)]
    for x, b in enumerate(self.block_ids):
      grouped[b].append(x)
    return tuple(tuple(block) for block in grouped)

  def related(self, a: int, b: int) -> bool:
    return self.block_ids[a] == self.block_ids[b]

  def refines(self, other: 'Partition') -> bool:
    image = {}
    return all(image.setdefault(b, c) == c
               for b, c in zip(self.block_ids, other.block_ids))

  def meet(self, other: 'Partition') -> 'Partition':
    return Partition(tuple(zip(self.block_ids, other.block_ids)))

  def join(self, other: 'Partition') -> 'Partition':
    union_find = _UnionFind(self.size)
    for partition in (self, other):
      for block in partition.blocks():
        for x in block[1:]:
          union_find.union(block[0], x)
    return Partition(tuple(union_find.labels()))

  def block_labels(self, labels: Optional[Sequence[str]] = None) -> List[str]:
    """One label per block, joining the member labels."""
    if labels is None:
      labels = [str(x) for x in range(self.size)]
    separator = '' if all(len(label) == 1 for label in labels) else ','
    return [separator.join(labels[x] for x in block) for block in self.blocks()]

  def format(self, labels: Optional[Sequence[str]] = None) -> str:
    """Blocks separated by '|', e.g. 'a1|0b'."""
    return '|'.join(self.block_labels(labels))


def all_partitions(size: int) -> Iterator[Partition]:
  """Every partition of {0..size-1}, as restricted growth strings."""

  def grow(prefix: List[int], blocks: int):
    if len(prefix) == size:
      yield Partition(tuple(prefix))
      return
    for b in range(blocks + 1):
      prefix.append(b)
      yield from grow(prefix, max(blocks, b + 1))
      prefix.pop()

  yield from grow([], 0)


def _induced_table(cube: np.ndarray, ids: np.ndarray, num_blocks: int
                  ) -> Tuple[np.ndarray, Optional[Tuple[int, ...]]]:
  """The table on blocks, plus a violating argument tuple if not well defined."""
  arity = cube.ndim
  results = ids[cube].ravel()
  keys = np.zeros((1,) * arity, dtype=np.int64)
  for grid in np.ix_(*[ids] * arity):
    keys = keys * num_blocks + grid
  keys = np.broadcast_to(keys, cube.shape).ravel()
  table = np.full(num_blocks ** arity, -1, dtype=np.int64)
  table[keys] = results
  bad = np.flatnonzero(table[keys] != results)
  if bad.size:
    return table, tuple(int(i) for i in np.unravel_index(bad[0], cube.shape))
  return table, None


def is_congruence(algebra: FiniteAlgebra, theta: Partition) -> bool:
  if theta.size != algebra.size:
    raise ValueError(
        f'partition of {theta.size} elements for algebra of size '
        f'{algebra.size}')
  ids = np.array(theta.block_ids, dtype=np.int64)
  for name, arity, _ in algebra.operations():
    if arity and _induced_table(algebra.cube(name), ids,
                                theta.num_blocks)[1] is not None:
      return False
  return True


def quotient_algebra(algebra: FiniteAlgebra, theta: Partition
                    ) -> FiniteAlgebra:
  """The algebra on the blocks of theta.

  Raises:
    NotCompatibleError: some operation does not respect theta.
  """
  if theta.size != algebra.size:
    raise ValueError(
        f'partition of {theta.size} elements for algebra of size '
        f'{algebra.size}')
  ids = np.array(theta.block_ids, dtype=np.int64)
  tables = []
  for name, arity, table in algebra.operations():
    if arity == 0:
      tables.append([ids[table[0]]])
      continue
    induced, bad = _induced_table(algebra.cube(name), ids, theta.num_blocks)
    if bad is not None:
      raise spec.NotCompatibleError(
          f'op {name!r} does not respect {theta.format()} at arguments {bad}')
    tables.append(induced)
  labels = None
  if algebra.labels is not None:
    labels = theta.block_labels(algebra.element_labels())
  name = f'{algebra.name}/{theta.format()}' if algebra.name else None
  return make_algebra(theta.num_blocks, algebra.signature, tables, name, labels)


def _check_elements(algebra: FiniteAlgebra, elements: Iterable[int]):
  for x in elements:
    if not 0 <= x < algebra.size:
      raise ValueError(f'element {x} is outside 0..{algebra.size - 1}')


def subuniverse_closure(algebra: FiniteAlgebra, seed: Iterable[int]
                       ) -> spec.ElementSet:
  """The least subuniverse containing seed and every nullary value."""
  seed = list(seed)
  _check_elements(algebra, seed)
  members = np.zeros(algebra.size, dtype=bool)
  members[seed] = True
  members[list(algebra.nullary_values.values())] = True
  cubes = [algebra.cube(name) for name, arity, _ in algebra.operations()
           if arity]
  while True:
    elements = np.flatnonzero(members)
    grown = members.copy()
    if elements.size:
      for cube in cubes:
        grown[cube[np.ix_(*[elements] * cube.ndim)].ravel()] = True
    if (grown == members).all():
      return frozenset(int(x) for x in elements)
    members = grown


def _is_closed(algebra: FiniteAlgebra, members: np.ndarray) -> bool:
  elements = np.flatnonzero(members)
  for name, arity, table in algebra.operations():
    if arity == 0:
      if not members[table[0]]:
        return False
    elif not members[algebra.cube(name)[np.ix_(*[elements] * arity)]].all():
      return False
  return True


def _subuniverses_by_scan(algebra: FiniteAlgebra, budget: int
                         ) -> List[spec.ElementSet]:
  found = []
  for mask in range(1, 1 << algebra.size):
    members = np.array([mask >> x & 1 for x in range(algebra.size)], dtype=bool)
    if _is_closed(algebra, members):
      found.append(frozenset(int(x) for x in np.flatnonzero(members)))
      if len(found) > budget:
        raise spec.BudgetExceededError('subuniverse enumeration', budget)
  return found


def _subuniverses_by_unions(algebra: FiniteAlgebra, budget: int
                           ) -> List[spec.ElementSet]:
  closures: Dict[spec.ElementSet, spec.ElementSet] = {}

  def close(generators: spec.ElementSet) -> spec.ElementSet:
    if generators not in closures:
      closures[generators] = subuniverse_closure(algebra, generators)
    return closures[generators]

  found = set()
  zero_generated = close(frozenset())
  if zero_generated:
    found.add(zero_generated)
  frontier = []
  for x in range(algebra.size):
    closure = close(frozenset([x]))
    if closure not in found:
      found.add(closure)
      frontier.append(closure)
  if len(found) > budget:
    raise spec.BudgetExceededError('subuniverse enumeration', budget)
  while frontier:
    grown = []
    for subuniverse in frontier:
      for x in range(algebra.size):
        if x in subuniverse:
          continue
        closure = close(subuniverse | {x})
        if closure not in found:
          found.add(closure)
          grown.append(closure)
          if len(found) > budget:
            raise spec.BudgetExceededError('subuniverse enumeration', budget)
    frontier = grown
  return list(found)


def subuniverse_sort_key(subuniverse: spec.ElementSet):
  return len(subuniverse), tuple(sorted(subuniverse))


def all_subuniverses(
    algebra: FiniteAlgebra,
    budget: int = spec.DEFAULT_SUBUNIVERSE_BUDGET,
    method: str = 'auto') -> List[spec.ElementSet]:
  """All non-empty subuniverses, smallest first.

  Args:
    algebra: the algebra.
    budget: cap on the number of subuniverses.
    method: 'scan' closes-checks every subset, 'unions' grows the
      one-generated subuniverses by adding generators, 'auto' scans only
      small universes.

  Raises:
    BudgetExceededError: more than `budget` subuniverses.
  """
  if method == 'auto':
    method = 'scan' if algebra.size <= spec.SUBSET_SCAN_LIMIT else 'unions'
  if method == 'scan':
    found = _subuniverses_by_scan(algebra, budget)
  elif method == 'unions':
    found = _subuniverses_by_unions(algebra, budget)
  else:
    raise ValueError(f'unknown subuniverse method {method!r}')
  return sorted(found, key=subuniverse_sort_key)


def subalgebra(algebra: FiniteAlgebra, subuniverse: Iterable[int]
              ) -> Tuple[FiniteAlgebra, Tuple[int, ...]]:
  """Restrict to a subuniverse; returns the algebra and its old elements."""
  elements = sorted(set(subuniverse))
  _check_elements(algebra, elements)
  if not elements or subuniverse_closure(algebra, elements) != set(elements):
    raise ValueError(f'{elements} is not a non-empty subuniverse')
  renumber = np.full(algebra.size, -1, dtype=np.int64)
  renumber[elements] = np.arange(len(elements))
  tables = []
  for name, arity, table in algebra.operations():
    if arity == 0:
      tables.append([renumber[table[0]]])
    else:
      tables.append(
          renumber[algebra.cube(name)[np.ix_(*[elements] * arity)]].ravel())
  labels = None
  if algebra.labels is not None:
    labels = [algebra.label(x) for x in elements]
  return (make_algebra(len(elements), algebra.signature, tables, algebra.name,
                       labels),
          tuple(elements))


def principal_congruence(algebra: FiniteAlgebra, a: int, b: int) -> Partition:
  """The least congruence identifying a and b."""
  _check_elements(algebra, (a, b))
  union_find = _UnionFind(algebra.size)
  pending = [(a, b)] if union_find.union(a, b) else []
  cubes = [algebra.cube(name) for name, arity, _ in algebra.operations()
           if arity]
  while pending:
    x, y = pending.pop()
    for cube in cubes:
      for axis in range(cube.ndim):
        left = np.take(cube, x, axis=axis).ravel()
        right = np.take(cube, y, axis=axis).ravel()
        differ = left != right
        if not differ.any():
          continue
        pairs = np.unique(np.stack([left[differ], right[differ]], axis=1),
                          axis=0)
        for p, q in pairs:
          if union_find.union(int(p), int(q)):
            pending.append((int(p), int(q)))
  return Partition(tuple(union_find.labels()))


def congruence_sort_key(theta: Partition):
  return theta.num_blocks, theta.block_ids


def congruence_lattice(
    algebra: FiniteAlgebra,
    budget: int = spec.DEFAULT_CONGRUENCE_BUDGET
) -> Tuple[List[Partition], order.Lattice]:
  """All congruences ordered by refinement.

  The list is sorted by number of blocks, then by block ids, and element i of
  the lattice is congruence i of the list.

  Raises:
    BudgetExceededError: more than `budget` congruences.
  """
  n = algebra.size
  principals = set()
  for a in range(n):
    for b in range(a + 1, n):
      principals.add(principal_congruence(algebra, a, b))
  principals = sorted(principals, key=congruence_sort_key)
  found = {Partition.identity(n)} | set(principals)
  if len(found) > budget:
    raise spec.BudgetExceededError('congruence enumeration', budget)
  frontier = list(found)
  while frontier:
    grown = []
    for theta in frontier:
      for generator in principals:
        joined = theta.join(generator)
        if joined not in found:
          found.add(joined)
          grown.append(joined)
          if len(found) > budget:
            raise spec.BudgetExceededError('congruence enumeration', budget)
    frontier = grown
  congruences = sorted(found, key=congruence_sort_key)
  leq = [[s.refines(t) for t in congruences] for s in congruences]
  labels = [theta.format(algebra.element_labels()) for theta in congruences]
  logging.info('Found %d congruences on %d elements.', len(congruences), n)
  return congruences, order.Lattice(leq, labels)


def zero_subalgebra(algebra: FiniteAlgebra
                   ) -> Tuple[FiniteAlgebra, Tuple[int, ...]]:
  """The subalgebra generated by the nullary values.

  Raises:
    NoNullariesError: the signature has no nullary operation.
  """
  if not algebra.signature.nullary_names:
    raise spec.NoNullariesError(
        f'{algebra!r} has no nullary operation')
  return subalgebra(algebra, subuniverse_closure(algebra, ()))


def name_all_elements(algebra: FiniteAlgebra) -> FiniteAlgebra:
  """Add nullary operations c0..c(n-1) naming every element.

  Raises:
    NameClashError: one of the new names is already an operation.
  """
  names = [f'c{x}' for x in range(algebra.size)]
  clashes = sorted(set(names) & set(algebra.signature.names))
  if clashes:
    raise spec.NameClashError(f'signature already contains {clashes}')
  ops = list(algebra.signature.ops) + [(name, 0) for name in names]
  tables = list(algebra.tables) + [[x] for x in range(algebra.size)]
  return make_algebra(algebra.size, ops, tables, algebra.name, algebra.labels)


def is_subdirectly_irreducible(
    algebra: FiniteAlgebra,
    budget: int = spec.DEFAULT_CONGRUENCE_BUDGET
) -> Tuple[bool, Optional[Partition]]:
  """Whether the non-identity congruences have a least element.

  Returns:
    (True, monolith) or (False, None).
  """
  congruences, _ = congruence_lattice(algebra, budget)
  nontrivial = [t for t in congruences if t.num_blocks < algebra.size]
  if not nontrivial:
    return False, None
  monolith = functools.reduce(Partition.meet, nontrivial)
  if monolith.num_blocks == algebra.size:
    return False, None
  return True, monolith
