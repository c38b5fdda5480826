"""File formats, text listings and DOT output.

Three JSON documents are understood, one object per file:

  algebra: {"name": str?, "size": int, "labels": [str]?, "generator": str?,
            "ops": [{"name": str, "arity": int, "table": [int]}]}
  poset:   {"elements": [str], "covers": [[lower, upper]]}
  digraph: {"vertices": [str], "edges": [[tail, head]]}

Writers emit a canonical form: fixed key order, sorted covers and edges, one
operation per line.
"""

import json
from typing import Any, Dict, List, NamedTuple, Optional, Sequence

import pydotplus

import algebra as algebra_lib
import order
import spec
import synth

ALGEBRA = 'algebra'
POSET = 'poset'
DIGRAPH = 'digraph'


class LoadedAlgebra(NamedTuple):
  algebra: algebra_lib.FiniteAlgebra
  generator: Optional[str] = None


def load_document(text: str) -> Dict[str, Any]:
  try:
    document = json.loads(text)
  except json.JSONDecodeError as e:
    raise spec.ParseError(f'line {e.lineno}, column {e.colno}: {e.msg}') from e
  if not isinstance(document, dict):
    raise spec.ParseError('top level: expected a JSON object')
  return document


def document_kind(document: Dict[str, Any]) -> str:
  if 'ops' in document:
    return ALGEBRA
  if 'covers' in document:
    return POSET
  if 'edges' in document:
    return DIGRAPH
  raise spec.ParseError(
      'top level: expected an algebra ("ops"), a poset ("covers") or a '
      'digraph ("edges")')


def _field(document: Dict[str, Any], key: str, kind, path: str,
           required: bool = True):
  if key not in document:
    if required:
      raise spec.ParseError(f'{path}{key}: missing')
    return None
  value = document[key]
  # bool is an int subclass; reject it where integers are expected.
  if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
    raise spec.ParseError(
        f'{path}{key}: expected {getattr(kind, "__name__", kind)}, got '
        f'{type(value).__name__}')
  return value


def _int_list(values: Any, path: str) -> List[int]:
  if not isinstance(values, list):
    raise spec.ParseError(f'{path}: expected a list of integers')
  for i, value in enumerate(values):
    if not isinstance(value, int) or isinstance(value, bool):
      raise spec.ParseError(f'{path}[{i}]: expected an integer')
  return values


def _pairs(values: Any, path: str) -> List[List[int]]:
  if not isinstance(values, list):
    raise spec.ParseError(f'{path}: expected a list of pairs')
  for i, pair in enumerate(values):
    _int_list(pair, f'{path}[{i}]')
    if len(pair) != 2:
      raise spec.ParseError(f'{path}[{i}]: expected 2 entries, got {len(pair)}')
  return values


def _labels(values: Any, path: str) -> List[str]:
  if not isinstance(values, list) or not all(
      isinstance(v, str) for v in values):
    raise spec.ParseError(f'{path}: expected a list of strings')
  return values


def algebra_from_document(document: Dict[str, Any]) -> LoadedAlgebra:
  """Build an algebra from a parsed algebra document.

  Raises:
    ParseError: a field is missing or has the wrong type.
    TableLengthError, EntryRangeError, DuplicateOpNameError: the tables do
      not describe an algebra.
  """
  name = _field(document, 'name', str, '', required=False)
  size = _field(document, 'size', int, '')
  labels = document.get('labels')
  if labels is not None:
    _labels(labels, 'labels')
  generator = _field(document, 'generator', str, '', required=False)
  ops = _field(document, 'ops', list, '')
  signature, tables = [], []
  for i, op in enumerate(ops):
    path = f'ops[{i}].'
    if not isinstance(op, dict):
      raise spec.ParseError(f'ops[{i}]: expected an object')
    signature.append((_field(op, 'name', str, path),
                      _field(op, 'arity', int, path)))
    tables.append(_int_list(op.get('table'), f'{path}table'))
  alg = algebra_lib.make_algebra(size, signature, tables, name, labels)
  return LoadedAlgebra(alg, generator)


def poset_from_document(document: Dict[str, Any],
                        reduce: bool = False) -> order.Poset:
  elements = _labels(_field(document, 'elements', list, ''), 'elements')
  covers = _pairs(_field(document, 'covers', list, ''), 'covers')
  for i, (a, b) in enumerate(covers):
    if not (0 <= a < len(elements) and 0 <= b < len(elements)):
      raise spec.ParseError(
          f'covers[{i}]: index out of range for {len(elements)} elements')
  return order.Poset.from_covers(len(elements), covers, elements, reduce)


def digraph_from_document(document: Dict[str, Any]) -> synth.Digraph:
  vertices = _labels(_field(document, 'vertices', list, ''), 'vertices')
  edges = _pairs(_field(document, 'edges', list, ''), 'edges')
  for i, (a, b) in enumerate(edges):
    if not (0 <= a < len(vertices) and 0 <= b < len(vertices)):
      raise spec.ParseError(
          f'edges[{i}]: index out of range for {len(vertices)} vertices')
  return synth.Digraph(
      len(vertices), frozenset(map(tuple, edges)), tuple(vertices))


def load_algebra(text: str) -> LoadedAlgebra:
  """Read an algebra, or a digraph G as the algebra G*."""
  document = load_document(text)
  kind = document_kind(document)
  if kind == ALGEBRA:
    return algebra_from_document(document)
  if kind == DIGRAPH:
    return LoadedAlgebra(synth.graph_star(digraph_from_document(document)))
  raise spec.ParseError('top level: expected an algebra, got a poset')


def load_poset(text: str, reduce: bool = False) -> order.Poset:
  document = load_document(text)
  if document_kind(document) != POSET:
    raise spec.ParseError('top level: expected a poset with "covers"')
  return poset_from_document(document, reduce)


def _dumps(value: Any) -> str:
  return json.dumps(value, ensure_ascii=False, separators=(', ', ': '))


def dump_algebra(alg: algebra_lib.FiniteAlgebra,
                 generator: Optional[str] = None) -> str:
  lines = ['{']
  if alg.name is not None:
    lines.append(f'  "name": {_dumps(alg.name)},')
  lines.append(f'  "size": {alg.size},')
  if alg.labels is not None:
    lines.append(f'  "labels": {_dumps(list(alg.labels))},')
  if generator is not None:
    lines.append(f'  "generator": {_dumps(generator)},')
  ops = [
      _dumps({'name': name, 'arity': arity, 'table': table.tolist()})
      for name, arity, table in alg.operations()
  ]
  if ops:
    lines.append('  "ops": [')
    lines.append(',\n'.join(f'    {op}' for op in ops))
    lines.append('  ]')
  else:
    lines.append('  "ops": []')
  lines.append('}')
  return '\n'.join(lines) + '\n'


def dump_poset(poset: order.Poset) -> str:
  return ('{\n'
          f'  "elements": {_dumps(list(poset.labels))},\n'
          f'  "covers": {_dumps([list(p) for p in sorted(poset.cover_pairs)])}\n'
          '}\n')


def dump_digraph(graph: synth.Digraph) -> str:
  vertices = [graph.label(v) for v in range(graph.vertex_count)]
  return ('{\n'
          f'  "vertices": {_dumps(vertices)},\n'
          f'  "edges": {_dumps([list(e) for e in graph.sorted_edges])}\n'
          '}\n')


def poset_to_dot(poset: order.Poset, name: str = 'P') -> str:
  """The Hasse diagram, drawn bottom-up with one rank per height."""
  graph = pydotplus.Dot(graph_name=name, graph_type='digraph')
  graph.set_rankdir('BT')
  for height in sorted(set(poset.heights)):
    rank = pydotplus.Subgraph(f'rank{height}', rank='same')
    for i in range(poset.size):
      if poset.heights[i] == height:
        rank.add_node(pydotplus.Node(f'n{i}', label=f'"{poset.labels[i]}"'))
    graph.add_subgraph(rank)
  for lower, upper in poset.cover_pairs:
    graph.add_edge(pydotplus.Edge(f'n{lower}', f'n{upper}'))
  return graph.to_string()


def format_poset(poset: order.Poset, title: str) -> str:
  covers = ' '.join(f'{poset.labels[a]}<{poset.labels[b]}'
                    for a, b in sorted(poset.cover_pairs))
  return (f'{title} ({poset.size} elements)\n'
          f'  elements: {" ".join(poset.labels)}\n'
          f'  covers: {covers}\n')


def format_forest(forest: order.CoveringForest) -> str:
  lines = [f'words ({len(forest.words)}):']
  for x in range(len(forest.words)):
    up = forest.up(x)
    lines.append(
        f'  {forest.label(x)}  phi={forest.base.labels[forest.phi[x]]}  '
        f'up={forest.label(up) if up is not None else "-"}')
  return '\n'.join(lines) + '\n' + format_poset(forest.order, 'order')


def format_partitions(partitions: Sequence[algebra_lib.Partition],
                      labels: Sequence[str]) -> str:
  return ''.join(f'  {i}: {theta.format(labels)}\n'
                 for i, theta in enumerate(partitions))
