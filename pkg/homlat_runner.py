r"""Command-line front end for homomorphism lattices of finite algebras.

Example commands:

homlat forest fig2-poset --dot
homlat synth fig2-poset --output=q.json
homlat homlattice q.json
homlat con fig6-pentagon --dot
homlat hom g.json h.json --count
homlat verify roundtrip --num_workers=4

Every file argument may instead name a built-in fixture (see `homlat fixture`).
Exit codes: 0 ok, 1 check failed, 2 parse/usage error, 3 budget exhausted,
4 the sub-hom poset has no top.
"""
import dataclasses
import importlib
import inspect
import json
import os
import time
from typing import Any, Dict, List, Optional, Tuple

from absl import app
from absl import flags
from absl import logging

import algebra as algebra_lib
import fixtures
import hom_lattice
import hom_search
import io_formats
import order
import spec
import synth

CHECKS = {
    'figures': {
        'check_path': 'checks/figures/check.py',
        'check_class_name': 'FiguresCheck'
    },
    'roundtrip': {
        'check_path': 'checks/roundtrip/check.py',
        'check_class_name': 'RoundtripCheck'
    },
    'examples': {
        'check_path': 'checks/examples/check.py',
        'check_class_name': 'ExamplesCheck'
    },
}

COMMANDS = ('forest', 'synth', 'homlattice', 'verify', 'con', 'hom', 'core',
            'fixture')

flags.DEFINE_boolean('dot', False, 'Print a DOT digraph instead of text.')
flags.DEFINE_boolean('json', False, 'Print machine-readable JSON.')
flags.DEFINE_integer(
    'budget', None,
    'Cap on enumerations (subuniverses, congruences, words). Defaults to the '
    'library budgets.')
flags.DEFINE_boolean(
    'reduce', False,
    'Drop poset cover pairs implied by transitivity instead of rejecting them.')
flags.DEFINE_boolean(
    'assume_quasiprimal', False,
    'Treat a foreign algebra as quasi-primal in `homlattice`. Synthesized '
    'algebras carry a marker and need no flag.')
flags.DEFINE_alias('assume-quasiprimal', 'assume_quasiprimal')
flags.DEFINE_boolean('count', False, '`hom`: print the number of homs.')
flags.DEFINE_boolean(
    'fast_path', False,
    '`verify roundtrip`: read Sub(Q)/≡ off the covering tree.')
flags.DEFINE_integer(
    'num_workers', 1, 'Processes for pairwise hom searches and the census.')
flags.DEFINE_string('output', None, 'Write the output here instead of stdout.')
flags.DEFINE_string(
    'check_config', None,
    'JSON file overriding the config.json of the check run by `verify`.')

FLAGS = flags.FLAGS


@dataclasses.dataclass(frozen=True)
class RunOptions:
  dot: bool = False
  json: bool = False
  budget: Optional[int] = None
  reduce: bool = False
  assume_quasiprimal: bool = False
  count: bool = False
  fast_path: bool = False
  num_workers: int = 1
  check_config: Optional[str] = None


class UsageError(spec.HomlatError, ValueError):
  pass


def _convert_filepath_to_module(path: str):
  base, extension = os.path.splitext(path)

  if extension != '.py':
    raise ValueError(f'Path: {path} must be a python file (*.py)')

  return base.replace('/', '.')


def _import_check(check_path: str, check_class_name: str) -> spec.Check:
  """Import a check module and instantiate its `spec.Check` class.

  Args:
    check_path: the path to the `check.py` file to load.
    check_class_name: the name of the class implementing `spec.Check`.
  """
  check_module = importlib.import_module(
      _convert_filepath_to_module(check_path))
  for name, value in inspect.getmembers(check_module):
    if name == check_class_name:
      return value()
  raise ValueError(
      f'Could not find member {check_class_name} in {check_path}. Make sure '
      'the Check class is spelled correctly and defined in the top scope of '
      'the module.')


def _read_text(argument: str) -> str:
  if argument in fixtures.FIXTURES:
    return fixtures.fixture_text(argument)
  with open(argument, 'r', encoding='utf-8') as f:
    return f.read()


def _budget(options: RunOptions, default: int) -> int:
  return default if options.budget is None else options.budget


def _expect_args(command: str, args: List[str], count: int):
  if len(args) != count:
    raise UsageError(
        f'`{command}` takes {count} argument{"s" if count > 1 else ""}, got '
        f'{len(args)}')


def _lattice_json(poset: order.Poset) -> Dict[str, Any]:
  return {
      'elements': list(poset.labels),
      'covers': [list(pair) for pair in sorted(poset.cover_pairs)],
  }


def _forest(args: List[str], options: RunOptions) -> Tuple[int, str]:
  _expect_args('forest', args, 1)
  poset = io_formats.load_poset(_read_text(args[0]), options.reduce)
  forest = order.covering_forest(
      poset, _budget(options, spec.DEFAULT_WORD_BUDGET))
  if options.dot:
    return spec.ExitCode.OK, io_formats.poset_to_dot(forest.order, 'forest')
  if options.json:
    return spec.ExitCode.OK, json.dumps({
        'words': [forest.label(x) for x in range(len(forest.words))],
        'phi': [poset.labels[a] for a in forest.phi],
        'order': _lattice_json(forest.order),
    }, ensure_ascii=False) + '\n'
  return spec.ExitCode.OK, io_formats.format_forest(forest)


def _synth(args: List[str], options: RunOptions) -> Tuple[int, str]:
  _expect_args('synth', args, 1)
  poset = io_formats.load_poset(_read_text(args[0]), options.reduce)
  bundle = synth.synthesize_quasiprimal(
      poset, _budget(options, spec.DEFAULT_WORD_BUDGET))
  return (spec.ExitCode.OK,
          io_formats.dump_algebra(bundle.algebra, spec.SYNTH_GENERATOR))


def _homlattice(args: List[str], options: RunOptions) -> Tuple[int, str]:
  _expect_args('homlattice', args, 1)
  loaded = io_formats.load_algebra(_read_text(args[0]))
  synthesized = loaded.generator == spec.SYNTH_GENERATOR
  if not (synthesized or options.assume_quasiprimal):
    raise UsageError(
        'quasi-primality of a foreign algebra is not decided; pass '
        '--assume_quasiprimal to assert it')
  shp = hom_lattice.sub_hom_poset(
      loaded.algebra, _budget(options, spec.DEFAULT_SUBUNIVERSE_BUDGET),
      options.num_workers)
  lattice = hom_lattice.hom_lattice_quasiprimal(loaded.algebra, shp=shp)
  if options.dot:
    return spec.ExitCode.OK, io_formats.poset_to_dot(lattice, 'L')
  if options.json:
    return spec.ExitCode.OK, json.dumps({
        'quasiprimal': 'synthesized' if synthesized else 'asserted',
        'sub_hom_poset': _lattice_json(shp.order),
        'lattice': _lattice_json(lattice),
    }, ensure_ascii=False) + '\n'
  text = io_formats.format_poset(shp.order, 'Sub/≡')
  text += io_formats.format_poset(lattice, 'hom lattice')
  if not synthesized:
    text += 'quasi-primality: asserted, not checked\n'
  return spec.ExitCode.OK, text


def _verify(args: List[str], options: RunOptions) -> Tuple[int, str]:
  _expect_args('verify', args, 1)
  if args[0] not in CHECKS:
    raise UsageError(f'unknown check {args[0]!r}; choices: {sorted(CHECKS)}')
  check = _import_check(**CHECKS[args[0]])
  if options.check_config is not None:
    with open(options.check_config, 'r') as config_file:
      config = json.load(config_file)
  else:
    config = check.default_config()
  if options.fast_path:
    config['fast_path'] = True
  results = check.run(config, options.budget, options.num_workers)
  lines = [f'{"PASS" if r.passed else "FAIL"} {r.name}: {r.detail}'
           for r in results]
  passed = all(r.passed for r in results)
  lines.append(f'{check.name}: {len(results)} cases, '
               f'{"all passed" if passed else "FAILED"}')
  return (spec.ExitCode.OK if passed else spec.ExitCode.CHECK_FAILED,
          '\n'.join(lines) + '\n')


def _con(args: List[str], options: RunOptions) -> Tuple[int, str]:
  _expect_args('con', args, 1)
  alg = io_formats.load_algebra(_read_text(args[0])).algebra
  congruences, lattice = algebra_lib.congruence_lattice(
      alg, _budget(options, spec.DEFAULT_CONGRUENCE_BUDGET))
  if options.dot:
    return spec.ExitCode.OK, io_formats.poset_to_dot(lattice, 'Con')
  if options.json:
    return spec.ExitCode.OK, json.dumps({
        'congruences': [list(theta.block_ids) for theta in congruences],
        'lattice': _lattice_json(lattice),
    }, ensure_ascii=False) + '\n'
  text = f'{len(congruences)} congruences\n'
  text += io_formats.format_partitions(congruences, alg.element_labels())
  text += io_formats.format_poset(lattice, 'Con')
  return spec.ExitCode.OK, text


def _hom(args: List[str], options: RunOptions) -> Tuple[int, str]:
  _expect_args('hom', args, 2)
  source = io_formats.load_algebra(_read_text(args[0])).algebra
  target = io_formats.load_algebra(_read_text(args[1])).algebra
  if options.count:
    count = hom_search.count_homs(source, target)
    if options.json:
      return spec.ExitCode.OK, json.dumps({'count': count}) + '\n'
    return spec.ExitCode.OK, f'{count}\n'
  witness = hom_search.find_hom(source, target)
  mapping = None if witness is None else list(witness.mapping)
  if options.json:
    return spec.ExitCode.OK, json.dumps({'mapping': mapping}) + '\n'
  if mapping is None:
    return spec.ExitCode.OK, 'no homomorphism\n'
  return spec.ExitCode.OK, ''.join(
      f'{source.label(x)} -> {target.label(y)}\n' for x, y in enumerate(mapping))


def _core(args: List[str], options: RunOptions) -> Tuple[int, str]:
  del options
  _expect_args('core', args, 1)
  alg = io_formats.load_algebra(_read_text(args[0])).algebra
  return spec.ExitCode.OK, io_formats.dump_algebra(hom_search.core_of(alg))


def _fixture(args: List[str], options: RunOptions) -> Tuple[int, str]:
  del options
  if not args:
    return spec.ExitCode.OK, ''.join(f'{name}\n' for name in fixtures.FIXTURES)
  _expect_args('fixture', args, 1)
  if args[0] not in fixtures.FIXTURES:
    raise UsageError(
        f'unknown fixture {args[0]!r}; choices: {sorted(fixtures.FIXTURES)}')
  return spec.ExitCode.OK, fixtures.fixture_text(args[0])


_HANDLERS = {
    'forest': _forest,
    'synth': _synth,
    'homlattice': _homlattice,
    'verify': _verify,
    'con': _con,
    'hom': _hom,
    'core': _core,
    'fixture': _fixture,
}


def run_command(argv: List[str], options: RunOptions) -> Tuple[int, str]:
  """Run one command and return its exit code and output text.

  Args:
    argv: the command name followed by its arguments.
    options: the flag values.

  Returns:
    (exit code, text). On failure the text is the diagnostic.
  """
  if not argv or argv[0] not in _HANDLERS:
    return (int(spec.ExitCode.USAGE),
            f'usage: homlat <command> [args]; commands: {", ".join(COMMANDS)}\n')
  command, args = argv[0], list(argv[1:])
  start_time = time.time()
  logging.info('Running %s %s with budget %s.', command, ' '.join(args),
               options.budget)
  try:
    code, text = _HANDLERS[command](args, options)
  except spec.BudgetExceededError as e:
    logging.error('%s: %s', command, e)
    return int(spec.ExitCode.BUDGET), f'error: {e}\n'
  except spec.NoTopInPError as e:
    logging.error('%s: %s', command, e)
    return (int(spec.ExitCode.NO_TOP),
            f'error: {e}; the input is not quasi-primal\n')
  except (spec.HomlatError, ValueError, KeyError, OSError) as e:
    logging.error('%s: %s', command, e)
    return int(spec.ExitCode.USAGE), f'error: {e}\n'
  logging.info('%s finished in %.2fs with exit code %d.', command,
               time.time() - start_time, code)
  return int(code), text


def main(argv):
  options = RunOptions(
      dot=FLAGS.dot,
      json=FLAGS.json,
      budget=FLAGS.budget,
      reduce=FLAGS.reduce,
      assume_quasiprimal=FLAGS.assume_quasiprimal,
      count=FLAGS.count,
      fast_path=FLAGS.fast_path,
      num_workers=FLAGS.num_workers,
      check_config=FLAGS.check_config)
  code, text = run_command(argv[1:], options)
  if FLAGS.output is not None and code == spec.ExitCode.OK:
    with open(FLAGS.output, 'w', encoding='utf-8') as f:
      f.write(text)
  else:
    print(text, end='')
  return code


def run():
  app.run(main)


if __name__ == '__main__':
  run()
