"""Constructions that manufacture finite algebras from combinatorial data."""

import dataclasses
import functools
import itertools
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from absl import logging
import numpy as np

import algebra as algebra_lib
import hom_search
import order
import spec


@dataclasses.dataclass(frozen=True)
class QPBundle:
  """A poset P together with the quasi-primal algebra synthesized from it.

  The universe of `algebra` lists the words of the covering tree of `psharp`
  in lexicographic order of their index sequences, with the one-letter word
  for the top last. Poset indices are shared: P occupies 0..|P|-1 in `ptop`
  and `psharp`, the top is |P|, and the primed minimal elements follow.
  """
  poset: order.Poset
  ptop: order.Poset
  psharp: order.Poset
  forest: order.CoveringForest
  sharp_forest: order.CoveringForest
  words: Tuple[spec.Word, ...]
  cycle: Tuple[int, ...]
  primes: Dict[int, int]
  algebra: algebra_lib.FiniteAlgebra

  @property
  def top_index(self) -> int:
    return len(self.words) - 1

  @functools.cached_property
  def _positions(self) -> Dict[spec.Word, int]:
    return {word: i for i, word in enumerate(self.words)}

  def index(self, word: Sequence[int]) -> int:
    return self._positions[tuple(word)]

  def phi_sharp(self, q: int) -> int:
    return self.words[q][0]

  def phi(self, q: int) -> int:
    if q not in self.s_elements:
      raise ValueError(f'{self.algebra.label(q)} does not start in P or ⊤')
    return self.words[q][0]

  @functools.cached_property
  def s_elements(self) -> FrozenSet[int]:
    """Elements whose word is a covering chain of the poset with top."""
    primed = set(self.primes.values())
    return frozenset(
        q for q, word in enumerate(self.words) if word[0] not in primed)

  def down(self, q: int) -> spec.ElementSet:
    suffix = self.words[q]
    return frozenset(
        i for i, word in enumerate(self.words)
        if word[len(word) - len(suffix):] == suffix)

  def predicted_subuniverses(self) -> List[spec.ElementSet]:
    predicted = {frozenset([self.top_index])}
    predicted.update(self.down(q) for q in self.s_elements)
    return sorted(predicted, key=algebra_lib.subuniverse_sort_key)


def _common_suffix(first: spec.Word, second: spec.Word) -> spec.Word:
  length = 0
  for a, b in zip(reversed(first), reversed(second)):
    if a != b:
      break
    length += 1
  return first[len(first) - length:]


def synthesize_quasiprimal(
    poset: order.Poset, budget: int = spec.DEFAULT_WORD_BUDGET) -> QPBundle:
  """Build the quasi-primal algebra whose homomorphism lattice is Down(P).

  The operations are, on words of the covering tree of P-sharp:
    join: the longest common final segment.
    f_b_a, for each cover a < b below the top: prepend a to words starting
      with b, fix everything else.
    g_m, for each minimal m of P: drop the first letter of words starting
      with m', fix everything else.
    h: h(x, top) is the lexicographic successor of x (cyclically) for x other
      than the top, and h(x, y) = x otherwise.
    tau: the ternary discriminator.

  Args:
    poset: a nonempty poset.
    budget: cap on the number of words.

  Returns:
    The synthesis record.

  Raises:
    EmptyPosetError: the poset is empty.
    BudgetExceededError: the covering tree has more than `budget` words.
  """
  if poset.size == 0:
    raise spec.EmptyPosetError('cannot synthesize from the empty poset')
  ptop = order.add_top(poset)
  top = poset.size
  psharp = order.sharp(ptop)
  primes = {m: top + 1 + offset for offset, m in enumerate(ptop.minimals)}
  forest = order.covering_forest(ptop, budget)
  sharp_forest = order.covering_forest(psharp, budget)
  words = [w for w in sharp_forest.words if w != (top,)] + [(top,)]
  positions = {word: i for i, word in enumerate(words)}
  size = len(words)
  top_index = size - 1

  join = [positions[_common_suffix(x, y)] for x in words for y in words]
  ops = [('join', 2)]
  tables = [join]
  for a, b in sorted(psharp.cover_pairs, key=lambda pair: (pair[1], pair[0])):
    if b == top:
      continue
    ops.append((f'f_{b}_{a}', 1))
    tables.append([positions[(a,) + w] if w[0] == b else i
                   for i, w in enumerate(words)])
  for m in sorted(primes):
    ops.append((f'g_{m}', 1))
    tables.append([positions[w[1:]] if w[0] == primes[m] else i
                   for i, w in enumerate(words)])
  cycle = tuple((i + 1) % (size - 1) for i in range(size - 1))
  h = [cycle[x] if x != top_index and y == top_index else x
       for x in range(size) for y in range(size)]
  ops.extend([('h', 2), ('tau', 3)])
  tables.extend([h, hom_search.discriminator_table(size)])
  labels = ['.'.join(psharp.labels[a] for a in w) for w in words]
  algebra = algebra_lib.make_algebra(size, ops, tables, 'Q', labels)
  logging.info('Synthesized a %d-element algebra with %d operations from a '
               '%d-element poset.', size, len(ops), poset.size)
  return QPBundle(
      poset=poset,
      ptop=ptop,
      psharp=psharp,
      forest=forest,
      sharp_forest=sharp_forest,
      words=tuple(words),
      cycle=cycle,
      primes=primes,
      algebra=algebra)


def birkhoff_frink(semilattice: order.Poset) -> algebra_lib.FiniteAlgebra:
  """The algebra <S; join, f_t_s> whose subuniverses are the ideals of S.

  f_t_s sends t to s for a cover s < t and fixes everything else.

  Raises:
    NotJoinClosedError: some pair has no join.
  """
  if semilattice.size == 0:
    raise spec.EmptyPosetError('birkhoff_frink needs a nonempty poset')
  join, bad = order.least_bounds(semilattice.leq)
  if bad is not None:
    i, j = bad
    raise spec.NotJoinClosedError(
        f'{semilattice.labels[i]} and {semilattice.labels[j]} have no join')
  ops, tables = [('join', 2)], [join.ravel()]
  for s, t in sorted(semilattice.cover_pairs, key=lambda p: (p[1], p[0])):
    table = list(range(semilattice.size))
    table[t] = s
    ops.append((f'f_{t}_{s}', 1))
    tables.append(table)
  return algebra_lib.make_algebra(
      semilattice.size, ops, tables, 'birkhoff_frink', semilattice.labels)


def semilattice_algebra(poset: order.Poset, name: str = 'meet'
                       ) -> algebra_lib.FiniteAlgebra:
  """The meet-semilattice of `poset` as an algebra with one binary op."""
  meet, bad = order.least_bounds(poset.leq.T)
  if bad is not None:
    raise spec.NotJoinClosedError(
        f'{poset.labels[bad[0]]} and {poset.labels[bad[1]]} have no meet')
  return algebra_lib.make_algebra(
      poset.size, [(name, 2)], [meet.ravel()], labels=poset.labels)


@dataclasses.dataclass(frozen=True)
class Digraph:
  vertex_count: int
  edges: FrozenSet[Tuple[int, int]]
  labels: Optional[Tuple[str, ...]] = None

  def __post_init__(self):
    edges = frozenset((int(a), int(b)) for a, b in self.edges)
    for a, b in edges:
      if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
        raise ValueError(
            f'edge ({a}, {b}) is outside {self.vertex_count} vertices')
    object.__setattr__(self, 'edges', edges)

  @property
  def sorted_edges(self) -> List[Tuple[int, int]]:
    return sorted(self.edges)

  def label(self, v: int) -> str:
    return self.labels[v] if self.labels is not None else str(v)


def all_digraphs(vertex_count: int) -> Iterator[Digraph]:
  """Every digraph (loops allowed) on labelled vertices 0..vertex_count-1."""
  pairs = list(itertools.product(range(vertex_count), repeat=2))
  for mask in range(1 << len(pairs)):
    yield Digraph(vertex_count,
                  frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))


def digraph_hom_count(source: Digraph, target: Digraph) -> int:
  """Number of edge-preserving vertex maps, by exhaustive enumeration."""
  count = 0
  for mapping in itertools.product(range(target.vertex_count),
                                   repeat=source.vertex_count):
    if all((mapping[a], mapping[b]) in target.edges for a, b in source.edges):
      count += 1
  return count


def graph_star(graph: Digraph) -> algebra_lib.FiniteAlgebra:
  """The two-unary algebra on vertices, edges and two extra points u, v.

  f0 sends a vertex to u, an edge to its tail, u to v and v to v; f1 sends a
  vertex to v, an edge to its head, and both u and v to u.
  """
  edges = graph.sorted_edges
  u = graph.vertex_count + len(edges)
  v = u + 1
  f0 = [u] * graph.vertex_count + [a for a, _ in edges] + [v, v]
  f1 = [v] * graph.vertex_count + [b for _, b in edges] + [u, u]
  labels = ([graph.label(g) for g in range(graph.vertex_count)] +
            [f'({graph.label(a)},{graph.label(b)})' for a, b in edges] +
            ['u', 'v'])
  return algebra_lib.make_algebra(
      v + 1, [('f0', 1), ('f1', 1), ('u', 0), ('v', 0)],
      [f0, f1, [u], [v]], 'G*', labels)


def edge_star_algebra() -> algebra_lib.FiniteAlgebra:
  """The five-element algebra on {0, 1, 2, u, v} in the graph signature."""
  u, v = 3, 4
  f0 = [u, u, 0, v, v]
  f1 = [v, v, 1, u, u]
  return algebra_lib.make_algebra(
      5, [('f0', 1), ('f1', 1), ('u', 0), ('v', 0)], [f0, f1, [u], [v]], 'U',
      ['0', '1', '2', 'u', 'v'])


def check_group(table: Sequence[Sequence[int]]) -> int:
  """Validate a multiplication table and return its identity.

  Raises:
    NotAGroupError: the table is not a group.
  """
  mul = np.array(table, dtype=np.int64)
  n = mul.shape[0]
  if mul.ndim != 2 or mul.shape != (n, n) or n == 0:
    raise spec.NotAGroupError(f'expected a square table, got shape {mul.shape}')
  if ((mul < 0) | (mul >= n)).any():
    raise spec.NotAGroupError(f'entries must lie in 0..{n - 1}')
  elements = np.arange(n)
  left = mul[mul[:, :, None], elements[None, None, :]]
  right = mul[elements[:, None, None], mul[None, :, :]]
  if not np.array_equal(left, right):
    raise spec.NotAGroupError('multiplication is not associative')
  identities = [e for e in range(n)
                if (mul[e] == np.arange(n)).all() and
                (mul[:, e] == np.arange(n)).all()]
  if not identities:
    raise spec.NotAGroupError('no identity element')
  identity = identities[0]
  if not all((mul[a] == identity).any() for a in range(n)):
    raise spec.NotAGroupError('some element has no inverse')
  return identity


def cyclic_group_table(n: int) -> List[List[int]]:
  return [[(a + b) % n for b in range(n)] for a in range(n)]


def symmetric_group_table(n: int) -> List[List[int]]:
  """Permutations of range(n) in lexicographic order, (p*q)(i) = p[q[i]]."""
  perms = list(itertools.permutations(range(n)))
  positions = {p: i for i, p in enumerate(perms)}
  return [[positions[tuple(p[q[i]] for i in range(n))] for q in perms]
          for p in perms]


def klein_four_table() -> List[List[int]]:
  return [[a ^ b for b in range(4)] for a in range(4)]


def group_algebra(table: Sequence[Sequence[int]], name: Optional[str] = None
                 ) -> algebra_lib.FiniteAlgebra:
  """A group as an algebra <G; mul, inv, e>."""
  identity = check_group(table)
  n = len(table)
  inverse = [next(b for b in range(n) if table[a][b] == identity)
             for a in range(n)]
  return algebra_lib.make_algebra(
      n, [('mul', 2), ('inv', 1), ('e', 0)],
      [np.array(table).ravel(), inverse, [identity]], name)


def gset_coset_algebra(
    table: Sequence[Sequence[int]],
    subgroup: Sequence[int]) -> algebra_lib.FiniteAlgebra:
  """Left cosets of a subgroup plus a fixed point, acted on by the group.

  There is one unary operation l<g> per group element, l<g>(aH) = gaH and
  l<g> fixes the extra point, and every element is named.

  Raises:
    NotAGroupError: `table` is not a group.
    NotASubgroupError: `subgroup` is not a subgroup.
  """
  identity = check_group(table)
  members = sorted(set(int(h) for h in subgroup))
  n = len(table)
  if (identity not in members or
      any(not 0 <= h < n for h in members) or
      any(table[a][b] not in members for a in members for b in members)):
    raise spec.NotASubgroupError(f'{members} is not a subgroup')
  cosets: List[FrozenSet[int]] = []
  coset_of = [0] * n
  for a in range(n):
    coset = frozenset(table[a][h] for h in members)
    if coset not in cosets:
      cosets.append(coset)
    coset_of[a] = cosets.index(coset)
  infinity = len(cosets)
  representatives = [min(coset) for coset in cosets]
  ops, tables = [], []
  for g in range(n):
    ops.append((f'l{g}', 1))
    tables.append([coset_of[table[g][r]] for r in representatives] +
                  [infinity])
  labels = [f'{r}H' for r in representatives] + ['∞']
  action = algebra_lib.make_algebra(infinity + 1, ops, tables, 'G-set', labels)
  return algebra_lib.name_all_elements(action)


def independent_product(
    first: algebra_lib.FiniteAlgebra,
    second: algebra_lib.FiniteAlgebra) -> algebra_lib.FiniteAlgebra:
  """The product B1 x B2 over the merged signature plus a binary '*'.

  On B1 the operations of `second` and '*' act as first projections; on B2
  the operations of `first` act as first projections and '*' as the second
  projection.

  Raises:
    NullaryPresentError: either algebra has a nullary operation.
    NameClashError: the signatures share a name or use '*'.
  """
  for alg in (first, second):
    if alg.signature.nullary_names:
      raise spec.NullaryPresentError(
          f'{alg!r} has nullary operations {alg.signature.nullary_names}')
  shared = set(first.signature.names) & set(second.signature.names)
  shared |= {'*'} & (set(first.signature.names) | set(second.signature.names))
  if shared:
    raise spec.NameClashError(f'operation names clash: {sorted(shared)}')

  def projection(size: int, arity: int, coordinate: int) -> np.ndarray:
    return np.indices((size,) * arity)[coordinate].ravel()

  ops = list(first.signature.ops) + list(second.signature.ops) + [('*', 2)]
  left = (list(first.tables) +
          [projection(first.size, a, 0) for _, a in second.signature.ops] +
          [projection(first.size, 2, 0)])
  right = ([projection(second.size, a, 0) for _, a in first.signature.ops] +
           list(second.tables) + [projection(second.size, 2, 1)])
  return algebra_lib.direct_product(
      algebra_lib.make_algebra(first.size, ops, left, 'B1', first.labels),
      algebra_lib.make_algebra(second.size, ops, right, 'B2', second.labels))


def _unary_table(alg: algebra_lib.FiniteAlgebra) -> List[int]:
  ops = alg.signature.ops
  if len(ops) != 1 or ops[0][1] != 1:
    raise spec.NotMonounaryError(
        f'expected exactly one unary operation, got {ops}')
  return alg.tables[0].tolist()


def cycle_sizes(alg: algebra_lib.FiniteAlgebra) -> List[int]:
  """Lengths of the periodic orbits of a monounary algebra, sorted."""
  f = _unary_table(alg)
  periodic = set()
  for x in range(alg.size):
    for _ in range(alg.size):
      x = f[x]
    periodic.add(x)
  sizes, seen = [], set()
  for x in sorted(periodic):
    if x in seen:
      continue
    length, y = 0, x
    while True:
      seen.add(y)
      y = f[y]
      length += 1
      if y == x:
        break
    sizes.append(length)
  return sorted(sizes)


def monounary_hom_lattice(alg: algebra_lib.FiniteAlgebra) -> order.Lattice:
  """The homomorphism lattice of a monounary algebra.

  With n the lcm of the cycle lengths this is the one-element lattice for
  n = 1, and otherwise the non-empty up-sets of the divisor lattice of n
  ordered by inclusion.

  Raises:
    NotMonounaryError: the signature is not a single unary operation.
  """
  n = order.lcm(cycle_sizes(alg))
  if n == 1:
    return order.chain(1)
  return order.Lattice.from_poset(order.nonempty_upsets(
      order.divisor_lattice(n), ordering=spec.UpsetOrdering.SUBSET))


def cycle_union_algebra(
    sizes: Sequence[int], tail: int = 0) -> algebra_lib.FiniteAlgebra:
  """Disjoint cycles of the given lengths under one unary op 'f'.

  A nonzero `tail` hangs a path of that many elements into the first cycle.
  """
  f = []
  for size in sizes:
    start = len(f)
    f.extend(start + (i + 1) % size for i in range(size))
  if tail:
    if not sizes:
      raise ValueError('a tail needs a cycle to run into')
    start = len(f)
    f.extend(start + i + 1 for i in range(tail - 1))
    f.append(0)
  name = 'C' + '+'.join(str(s) for s in sizes)
  return algebra_lib.make_algebra(len(f), [('f', 1)], [f], name)


def discriminator_algebra(n: int, negation: bool = False
                         ) -> algebra_lib.FiniteAlgebra:
  """The n-element algebra with the discriminator, plus x -> x+1 if asked."""
  ops = [('tau', 3)]
  tables = [hom_search.discriminator_table(n)]
  if negation:
    ops.append(('neg', 1))
    tables.append([(x + 1) % n for x in range(n)])
  return algebra_lib.make_algebra(n, ops, tables)


def named_set(n: int) -> algebra_lib.FiniteAlgebra:
  """An n-element set with every element named and nothing else."""
  return algebra_lib.name_all_elements(algebra_lib.make_algebra(n, [], []))


_PENTAGON_SIGNATURE = [('wedge', 2), ('sqcap', 2), ('0', 0), ('a', 0),
                       ('b', 0), ('1', 0)]


def bisemilattice_s() -> algebra_lib.FiniteAlgebra:
  """Two copies of the meet of x < y, on {x, y}, with the pentagon names."""
  meet = [0, 0, 0, 1]
  return algebra_lib.make_algebra(
      2, _PENTAGON_SIGNATURE, [meet, meet, [0], [1], [0], [1]], 'S',
      ['x', 'y'])


def bisemilattice_l() -> algebra_lib.FiniteAlgebra:
  """The meet of y < z and the meet of z < y, on {y, z}."""
  return algebra_lib.make_algebra(
      2, _PENTAGON_SIGNATURE, [[0, 0, 0, 1], [0, 1, 1, 1], [0], [0], [1], [1]],
      'L', ['y', 'z'])


def pentagon_algebra() -> algebra_lib.FiniteAlgebra:
  """The four-element bisemilattice S x L with all elements named.

  Elements 0, a, b, 1 are encoded as 0, 1, 2, 3 and stand for the pairs
  (x,y), (y,y), (x,z), (y,z).
  """
  pairs = [(0, 0), (1, 0), (0, 1), (1, 1)]
  position = {p: i for i, p in enumerate(pairs)}
  wedge = [position[(min(s, t), min(k, l))]
           for s, k in pairs for t, l in pairs]
  sqcap = [position[(min(s, t), max(k, l))]
           for s, k in pairs for t, l in pairs]
  return algebra_lib.make_algebra(
      4, _PENTAGON_SIGNATURE, [wedge, sqcap, [0], [1], [2], [3]], 'A',
      ['0', 'a', 'b', '1'])


def pentagon_congruences() -> Dict[str, algebra_lib.Partition]:
  """The three nontrivial proper congruences alpha, beta, gamma."""
  return {
      'alpha': algebra_lib.Partition.from_blocks(4, [[1, 3], [0, 2]]),
      'beta': algebra_lib.Partition.from_blocks(4, [[0, 1], [2, 3]]),
      'gamma': algebra_lib.Partition.from_blocks(4, [[0, 2]]),
  }


def pentagon_quotients() -> Dict[str, algebra_lib.FiniteAlgebra]:
  """The subdirectly irreducible quotients A/alpha, A/beta and A/gamma."""
  pentagon = pentagon_algebra()
  return {name: algebra_lib.quotient_algebra(pentagon, theta)
          for name, theta in pentagon_congruences().items()}
