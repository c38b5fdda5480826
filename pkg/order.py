"""Finite posets, lattices, down-set lattices and covering forests.

A poset on {0..n-1} is held as a read-only boolean matrix `leq` with
`leq[i, j]` iff i <= j. Everything else (covers, heights, meet and join tables)
is derived lazily from it.
"""

import dataclasses
import functools
import math
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from absl import logging
import networkx as nx
from networkx.algorithms import isomorphism
import numpy as np

import spec


def _read_only(array: np.ndarray) -> np.ndarray:
  array.flags.writeable = False
  return array


def _check_partial_order(leq: np.ndarray):
  n = leq.shape[0]
  if not leq[np.diag_indices(n)].all():
    raise spec.NotQuasiOrderError('relation is not reflexive')
  closure = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
  if (closure & ~leq).any():
    raise spec.NotQuasiOrderError('relation is not transitive')
  if (leq & leq.T).sum() > n:
    i, j = np.argwhere((leq & leq.T) & ~np.eye(n, dtype=bool))[0]
    raise spec.CyclicCoversError(
        f'elements {int(i)} and {int(j)} are below each other')


def least_bounds(
    leq: np.ndarray) -> Tuple[np.ndarray, Optional[Tuple[int, int]]]:
  """Least upper bounds under `leq`, plus the first pair without one.

  The least upper bound of a pair is the common upper bound with the largest
  up-set.
  """
  n = leq.shape[0]
  up_sizes = leq.sum(axis=1)
  table = np.zeros((n, n), dtype=np.int64)
  for i in range(n):
    above = leq[i][None, :] & leq
    candidates = np.where(above, up_sizes[None, :], -1).argmax(axis=1)
    exact = (leq[candidates] == above).all(axis=1) & above.any(axis=1)
    if not exact.all():
      return table, (i, int(np.flatnonzero(~exact)[0]))
    table[i] = candidates
  return table, None


class Poset:
  """An immutable finite partial order.

  Attributes:
    size: number of elements; the elements are range(size).
    leq: read-only boolean size x size matrix, leq[i, j] iff i <= j.
    labels: printable label per element.
  """

  def __init__(self, leq, labels: Optional[Sequence[str]] = None):
    leq = np.array(leq, dtype=bool)
    if leq.size == 0:
      leq = leq.reshape((0, 0))
    if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
      raise ValueError(f'leq must be square, got shape {leq.shape}')
    _check_partial_order(leq)
    self.size = leq.shape[0]
    self.leq = _read_only(leq)
    if labels is None:
      labels = [str(i) for i in range(self.size)]
    if len(labels) != self.size:
      raise ValueError(
          f'expected {self.size} labels, got {len(labels)}')
    self.labels = tuple(str(label) for label in labels)

  @classmethod
  def from_covers(
      cls,
      size: int,
      covers,
      labels: Optional[Sequence[str]] = None,
      reduce: bool = False) -> 'Poset':
    """Build a poset from cover pairs (lower, upper).

    Args:
      size: number of elements.
      covers: iterable of (a, b) pairs meaning a is covered by b.
      labels: optional element labels.
      reduce: drop pairs implied by transitivity instead of rejecting them.

    Returns:
      The poset generated by the pairs.

    Raises:
      CyclicCoversError: the pairs contain a directed cycle.
      RedundantCoverError: a pair is implied by others and reduce is False.
    """
    covers = [(int(a), int(b)) for a, b in covers]
    for a, b in covers:
      if not (0 <= a < size and 0 <= b < size):
        raise ValueError(f'cover ({a}, {b}) is out of range for size {size}')
    names = list(labels) if labels is not None else [str(i) for i in range(size)]
    graph = nx.DiGraph()
    graph.add_nodes_from(range(size))
    graph.add_edges_from(covers)
    try:
      cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
      cycle = None
    if cycle is not None:
      path = ' -> '.join([names[a] for a, _ in cycle] + [names[cycle[0][0]]])
      raise spec.CyclicCoversError(f'covers contain a cycle: {path}')
    reduced = nx.transitive_reduction(graph)
    redundant = sorted(set(covers) - set(reduced.edges()))
    if redundant:
      if not reduce:
        shown = ', '.join(f'({names[a]}, {names[b]})' for a, b in redundant)
        raise spec.RedundantCoverError(
            f'pairs implied by transitivity: {shown}; pass reduce=True to drop '
            'them')
      logging.info('Dropped %d redundant cover pairs.', len(redundant))
    leq = np.eye(size, dtype=bool)
    for a, b in nx.transitive_closure_dag(graph).edges():
      leq[a, b] = True
    return cls(leq, labels)

  @classmethod
  def from_leq(cls, leq, labels: Optional[Sequence[str]] = None) -> 'Poset':
    return cls(leq, labels)

  def __len__(self):
    return self.size

  def __repr__(self):
    pairs = ', '.join(
        f'{self.labels[a]}<{self.labels[b]}' for a, b in self.cover_pairs)
    return f'{type(self).__name__}({self.size}: {pairs})'

  def le(self, a: int, b: int) -> bool:
    return bool(self.leq[a, b])

  @functools.cached_property
  def child(self) -> np.ndarray:
    """child[i, j] iff j covers i."""
    lt = self.leq.copy()
    lt[np.diag_indices_from(lt)] = False
    any_inbetween = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
    return _read_only(lt & ~any_inbetween)

  @functools.cached_property
  def cover_pairs(self) -> Tuple[Tuple[int, int], ...]:
    return tuple((int(a), int(b)) for a, b in np.argwhere(self.child))

  @functools.cached_property
  def lower_covers(self) -> Tuple[Tuple[int, ...], ...]:
    return tuple(
        tuple(int(i) for i in np.flatnonzero(self.child[:, j]))
        for j in range(self.size))

  @functools.cached_property
  def upper_covers(self) -> Tuple[Tuple[int, ...], ...]:
    return tuple(
        tuple(int(j) for j in np.flatnonzero(self.child[i, :]))
        for i in range(self.size))

  @functools.cached_property
  def maximals(self) -> Tuple[int, ...]:
    return tuple(i for i in range(self.size) if not self.upper_covers[i])

  @functools.cached_property
  def minimals(self) -> Tuple[int, ...]:
    return tuple(i for i in range(self.size) if not self.lower_covers[i])

  @property
  def top(self) -> Optional[int]:
    return self.maximals[0] if len(self.maximals) == 1 else None

  @property
  def bottom(self) -> Optional[int]:
    return self.minimals[0] if len(self.minimals) == 1 else None

  @functools.cached_property
  def linear_extension(self) -> Tuple[int, ...]:
    # An element has strictly fewer elements below it than anything above it.
    below = self.leq.sum(axis=0)
    return tuple(sorted(range(self.size), key=lambda i: (below[i], i)))

  @functools.cached_property
  def heights(self) -> Tuple[int, ...]:
    heights = [0] * self.size
    for x in self.linear_extension:
      if self.lower_covers[x]:
        heights[x] = 1 + max(heights[c] for c in self.lower_covers[x])
    return tuple(heights)

  def sub_poset(self, elements: Sequence[int]) -> 'Poset':
    elements = list(elements)
    sub = self.leq[np.ix_(elements, elements)].copy()
    return Poset(sub, [self.labels[e] for e in elements])

  def remove_top(self) -> 'Poset':
    if self.top is None:
      raise spec.NoTopError('poset has no top element')
    return self.sub_poset([i for i in range(self.size) if i != self.top])

  def to_digraph(self) -> nx.DiGraph:
    """The cover digraph, edges lower -> upper, with height node data."""
    graph = nx.DiGraph()
    for i in range(self.size):
      graph.add_node(i, height=self.heights[i], label=self.labels[i])
    graph.add_edges_from(self.cover_pairs)
    return graph


class Lattice(Poset):
  """A poset in which every pair has a join and a meet."""

  def __init__(self, leq, labels: Optional[Sequence[str]] = None):
    super().__init__(leq, labels)
    if self.size == 0:
      raise spec.NotALatticeError('the empty poset is not a lattice')
    self.join_table = self._bound_table(self.leq, 'join')
    self.meet_table = self._bound_table(self.leq.T, 'meet')

  @classmethod
  def from_poset(cls, poset: Poset) -> 'Lattice':
    if isinstance(poset, Lattice):
      return poset
    return cls(poset.leq.copy(), poset.labels)

  def _bound_table(self, leq: np.ndarray, kind: str) -> np.ndarray:
    table, bad = least_bounds(leq)
    if bad is not None:
      i, j = bad
      raise spec.NotALatticeError(
          f'{self.labels[i]} and {self.labels[j]} have no {kind}')
    return _read_only(table)

  def join(self, a: int, b: int) -> int:
    return int(self.join_table[a, b])

  def meet(self, a: int, b: int) -> int:
    return int(self.meet_table[a, b])


def chain(n: int) -> Lattice:
  return Lattice(np.triu(np.ones((n, n), dtype=bool)))


def antichain(n: int) -> Poset:
  return Poset(np.eye(n, dtype=bool))


def _as_lattice_if_possible(poset: Poset) -> Poset:
  try:
    return Lattice.from_poset(poset)
  except spec.NotALatticeError:
    return poset


def downsets(poset: Poset, budget: int = spec.DEFAULT_DOWNSET_BUDGET
            ) -> List[int]:
  """All down-sets of `poset` as bit masks, sorted by size then elements.

  Raises:
    BudgetExceededError: more than `budget` down-sets exist.
  """
  order = poset.linear_extension
  lower_masks = [
      sum(1 << c for c in poset.lower_covers[x]) for x in range(poset.size)]
  found = []

  def extend(position: int, mask: int):
    if position == len(order):
      found.append(mask)
      if len(found) > budget:
        raise spec.BudgetExceededError('down-set enumeration', budget)
      return
    x = order[position]
    extend(position + 1, mask)
    if lower_masks[x] & ~mask == 0:
      extend(position + 1, mask | (1 << x))

  extend(0, 0)
  return sorted(found, key=lambda m: (bin(m).count('1'), _mask_members(m)))


def _mask_members(mask: int) -> Tuple[int, ...]:
  return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def _set_label(poset: Poset, mask: int) -> str:
  if not mask:
    return '∅'
  return '{' + ','.join(poset.labels[i] for i in _mask_members(mask)) + '}'


def _membership(masks: Sequence[int], size: int) -> np.ndarray:
  matrix = np.zeros((len(masks), size), dtype=np.int64)
  for row, mask in enumerate(masks):
    matrix[row, list(_mask_members(mask))] = 1
  return matrix


def _inclusion_order(masks: Sequence[int], size: int) -> np.ndarray:
  members = _membership(masks, size)
  return (members @ (1 - members).T) == 0


def downset_lattice(
    poset: Poset, budget: int = spec.DEFAULT_DOWNSET_BUDGET) -> Lattice:
  """The lattice Down(P) of down-sets ordered by inclusion."""
  masks = downsets(poset, budget)
  return Lattice(
      _inclusion_order(masks, poset.size),
      [_set_label(poset, m) for m in masks])


def nonempty_upsets(
    poset: Poset,
    ordering: Union[str, spec.UpsetOrdering] = spec.UpsetOrdering.SUPERSET,
    budget: int = spec.DEFAULT_DOWNSET_BUDGET) -> Poset:
  """Non-empty up-sets of `poset`, by reverse inclusion unless told otherwise.

  Returns a Lattice when the resulting order is a lattice, else a Poset.

  Raises:
    EmptyPosetError: `poset` has no elements.
  """
  ordering = spec.UpsetOrdering(ordering)
  if poset.size == 0:
    raise spec.EmptyPosetError('nonempty_upsets needs a nonempty poset')
  full = (1 << poset.size) - 1
  masks = [full ^ d for d in downsets(poset, budget) if d != full]
  masks.sort(key=lambda m: (bin(m).count('1'), _mask_members(m)))
  leq = _inclusion_order(masks, poset.size)
  if ordering is spec.UpsetOrdering.SUPERSET:
    leq = leq.T.copy()
  return _as_lattice_if_possible(
      Poset(leq, [_set_label(poset, m) for m in masks]))


def join_irreducibles(lattice: Lattice) -> Poset:
  return lattice.sub_poset(
      [x for x in range(lattice.size) if len(lattice.lower_covers[x]) == 1])


def is_distributive(lattice: Lattice) -> bool:
  meet, join = lattice.meet_table, lattice.join_table
  x = np.arange(lattice.size)[:, None, None]
  left = meet[x, join[None, :, :]]
  right = join[meet[:, :, None], meet[:, None, :]]
  return bool((left == right).all())


def add_top(poset: Poset) -> Poset:
  n = poset.size
  covers = list(poset.cover_pairs) + [(m, n) for m in poset.maximals]
  return Poset.from_covers(n + 1, covers, poset.labels + (spec.TOP_LABEL,))


def sharp(poset_with_top: Poset) -> Poset:
  """Add a new minimal element m' below each minimal element m.

  Raises:
    NoTopError: the input has no top element.
  """
  if poset_with_top.top is None:
    raise spec.NoTopError('sharp needs a poset with a top element')
  n = poset_with_top.size
  covers = list(poset_with_top.cover_pairs)
  labels = list(poset_with_top.labels)
  for offset, m in enumerate(poset_with_top.minimals):
    covers.append((n + offset, m))
    labels.append(labels[m] + "'")
  return Poset.from_covers(len(labels), covers, labels)


def divisor_lattice(n: int) -> Lattice:
  if n < 1:
    raise ValueError(f'divisor_lattice needs n >= 1, got {n}')
  divisors = [d for d in range(1, n + 1) if n % d == 0]
  leq = np.array([[b % a == 0 for b in divisors] for a in divisors])
  lattice = Lattice(leq, [str(d) for d in divisors])
  return lattice


def _iso(first: Poset, second: Poset) -> Optional[spec.Mapping]:
  if first.size != second.size:
    return None
  if len(first.cover_pairs) != len(second.cover_pairs):
    return None
  if sorted(first.heights) != sorted(second.heights):
    return None
  matcher = isomorphism.DiGraphMatcher(
      first.to_digraph(), second.to_digraph(),
      node_match=lambda a, b: a['height'] == b['height'])
  for mapping in matcher.isomorphisms_iter():
    return tuple(mapping[i] for i in range(first.size))
  return None


def poset_iso(first: Poset, second: Poset) -> Optional[spec.Mapping]:
  """An order-isomorphism first -> second, or None."""
  return _iso(first, second)


def lattice_iso(first: Lattice, second: Lattice) -> Optional[spec.Mapping]:
  return _iso(first, second)


@functools.lru_cache(maxsize=None)
def enumerate_posets(n: int) -> Tuple[Poset, ...]:
  """All posets on n elements up to isomorphism.

  Each poset on n elements arises from one on n - 1 elements by adding a new
  maximal element above one of its down-sets.
  """
  if n == 0:
    return (Poset(np.zeros((0, 0), dtype=bool)),)
  found: Dict[Tuple, List[Poset]] = {}
  for smaller in enumerate_posets(n - 1):
    for mask in downsets(smaller):
      leq = np.zeros((n, n), dtype=bool)
      leq[:n - 1, :n - 1] = smaller.leq
      leq[n - 1, n - 1] = True
      leq[list(_mask_members(mask)), n - 1] = True
      candidate = Poset(leq)
      key = (len(candidate.cover_pairs), tuple(sorted(candidate.heights)),
             tuple(sorted(candidate.leq.sum(axis=0))))
      bucket = found.setdefault(key, [])
      if all(poset_iso(candidate, other) is None for other in bucket):
        bucket.append(candidate)
  return tuple(p for key in sorted(found) for p in found[key])


@dataclasses.dataclass(frozen=True)
class CoveringForest:
  """The covering chains of `base` that reach a maximal element.

  A word (a_1, ..., a_k) lists a covering chain bottom-up. The word w is below
  v in `order` iff v is a final segment of w, and `phi` maps a word to its
  first letter.
  """
  base: Poset
  words: Tuple[spec.Word, ...]
  order: Poset
  phi: Tuple[int, ...]

  @functools.cached_property
  def _positions(self) -> Dict[spec.Word, int]:
    return {word: i for i, word in enumerate(self.words)}

  def index(self, word: Sequence[int]) -> int:
    return self._positions[tuple(word)]

  def up(self, x: int) -> Optional[int]:
    """The word with its first letter removed, None for a root."""
    word = self.words[x]
    return self.index(word[1:]) if len(word) > 1 else None

  def psi(self, x: int, a: int) -> int:
    """The lower cover of word x whose first letter is `a`."""
    if a not in self.base.lower_covers[self.phi[x]]:
      raise ValueError(
          f'{self.base.labels[a]} is not covered by '
          f'{self.base.labels[self.phi[x]]}')
    return self.index((a,) + self.words[x])

  def down_set(self, x: int) -> FrozenSet[int]:
    return frozenset(int(i) for i in np.flatnonzero(self.order.leq[:, x]))

  def label(self, x: int, separator: str = '.') -> str:
    return separator.join(self.base.labels[a] for a in self.words[x])


def covering_forest(
    poset: Poset, budget: int = spec.DEFAULT_WORD_BUDGET) -> CoveringForest:
  """Every covering chain of `poset` ending in a maximal element.

  Raises:
    BudgetExceededError: more than `budget` words.
  """
  words = []
  stack = [(m,) for m in reversed(poset.maximals)]
  while stack:
    word = stack.pop()
    words.append(word)
    if len(words) > budget:
      raise spec.BudgetExceededError('covering forest words', budget)
    for c in reversed(poset.lower_covers[word[0]]):
      stack.append((c,) + word)
  words.sort()
  positions = {word: i for i, word in enumerate(words)}
  covers = [(i, positions[w[1:]]) for i, w in enumerate(words) if len(w) > 1]
  labels = ['.'.join(poset.labels[a] for a in w) for w in words]
  order = Poset.from_covers(len(words), covers, labels)
  return CoveringForest(
      base=poset,
      words=tuple(words),
      order=order,
      phi=tuple(w[0] for w in words))


def is_covering_map(gamma: Sequence[int], source: Poset, target: Poset) -> bool:
  """Whether gamma is bijective on maximals and on every lower neighbourhood."""
  if len(gamma) != source.size:
    raise ValueError(f'map has {len(gamma)} entries for {source.size} elements')
  if sorted(gamma[a] for a in source.maximals) != sorted(target.maximals):
    return False
  for a in range(source.size):
    images = sorted(gamma[c] for c in source.lower_covers[a])
    if images != sorted(target.lower_covers[gamma[a]]):
      return False
  return True


def is_cover_preserving(
    gamma: Sequence[int], source: Poset, target: Poset) -> bool:
  return all(target.child[gamma[a], gamma[b]] for a, b in source.cover_pairs)


def _check_order_preserving(gamma, source: Poset, target: Poset):
  mapped = target.leq[np.ix_(list(gamma), list(gamma))]
  if (source.leq & ~mapped).any():
    a, b = np.argwhere(source.leq & ~mapped)[0]
    raise spec.NotOrderPreservingError(
        f'{source.labels[a]} <= {source.labels[b]} but their images are not '
        'related')


def is_quotient_map(alpha: Sequence[int], source: Poset, target: Poset) -> bool:
  """Whether every comparability of `target` lifts along alpha.

  Raises:
    NotOrderPreservingError: alpha does not preserve the order.
  """
  if len(alpha) != source.size:
    raise ValueError(f'map has {len(alpha)} entries for {source.size} elements')
  _check_order_preserving(alpha, source, target)
  onehot = np.zeros((source.size, target.size), dtype=np.int64)
  onehot[np.arange(source.size), list(alpha)] = 1
  lifted = (onehot.T @ source.leq.astype(np.int64) @ onehot) > 0
  return bool((target.leq <= lifted).all())


def lift_chain(
    gamma: Sequence[int],
    source: Poset,
    target: Poset,
    target_chain: Sequence[int]) -> Optional[Tuple[int, ...]]:
  """Lift a covering chain b_1 < ... < b_n, b_n maximal, along gamma."""
  del target

  def extend(i: int, above: Optional[int]) -> Optional[Tuple[int, ...]]:
    candidates = source.maximals if above is None else source.lower_covers[above]
    for a in candidates:
      if gamma[a] != target_chain[i]:
        continue
      if i == 0:
        return (a,)
      rest = extend(i - 1, a)
      if rest is not None:
        return rest + (a,)
    return None

  if not target_chain:
    return ()
  return extend(len(target_chain) - 1, None)


def shift_map(forest: CoveringForest, u: int, v: int) -> Dict[int, int]:
  """The map su -> sv from the down-set of u onto the down-set of v."""
  if forest.phi[u] != forest.phi[v]:
    raise ValueError('shift_map needs words with the same first letter')
  suffix = len(forest.words[u])
  mapping = {}
  for x in forest.down_set(u):
    prefix = forest.words[x][:len(forest.words[x]) - suffix]
    mapping[x] = forest.index(prefix + forest.words[v])
  return mapping


def condense(
    relation, labels: Optional[Sequence[str]] = None
) -> Tuple[Poset, Tuple[int, ...]]:
  """Collapse the classes of a quasi-order into a poset.

  Blocks are numbered in order of their least member, and each block is
  labelled by its least member.

  Raises:
    NotQuasiOrderError: the relation is not reflexive and transitive.
  """
  relation = np.array(relation, dtype=bool)
  k = relation.shape[0]
  if not relation[np.diag_indices(k)].all():
    raise spec.NotQuasiOrderError('relation is not reflexive')
  composed = (relation.astype(np.int64) @ relation.astype(np.int64)) > 0
  if (composed & ~relation).any():
    i, j = np.argwhere(composed & ~relation)[0]
    raise spec.NotQuasiOrderError(
        f'relation is not transitive at ({int(i)}, {int(j)})')
  graph = nx.DiGraph()
  graph.add_nodes_from(range(k))
  graph.add_edges_from((int(i), int(j)) for i, j in np.argwhere(relation))
  component_of = {}
  for component in nx.strongly_connected_components(graph):
    for item in component:
      component_of[item] = min(component)
  block_ids, representatives = [], []
  block_of_component = {}
  for item in range(k):
    component = component_of[item]
    if component not in block_of_component:
      block_of_component[component] = len(representatives)
      representatives.append(item)
    block_ids.append(block_of_component[component])
  leq = relation[np.ix_(representatives, representatives)].copy()
  names = None
  if labels is not None:
    names = [labels[r] for r in representatives]
  return Poset(leq, names), tuple(block_ids)


def lcm(values: Sequence[int]) -> int:
  return functools.reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)
